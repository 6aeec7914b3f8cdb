#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "proxevi/benchmarks.hpp"
#include "proxevi/net.hpp"
#include "proxevi/problem.hpp"

namespace proxevi {

// Fully resolved description of one training run. Zero-valued sizes/epochs in
// user input mean "benchmark default"; resolve_config() fills them in, and
// the emitted config.json always holds the resolved values.
struct RunConfig {
    std::string benchmark;
    std::optional<double> bench_c;    // source constant (torsion, bingham)
    std::optional<double> bench_tau;  // yield constant (bingham, friction)
    std::uint64_t seed = 0;
    long epochs = 0;
    double eta = 0.0;
    double lr = 1e-3;
    std::string loss_variant = "hard";  // hard | soft | shrink | primal
    std::size_t train_size = 0;
    std::size_t test_size = 0;
    std::size_t boundary_size = 0;  // contact/penalty sets only
    int hidden_layers = 0;
    int width = 0;
    long log_every = 100;
    int threads = 2;
    std::size_t batch_size = 0;  // 0 = full batch
    double w1 = 1.0, w2 = 1.0, w3 = 1.0, wb = 1.0;

    bool operator==(const RunConfig&) const = default;
};

RunConfig resolve_config(RunConfig cfg);

struct RunRecord {
    long epoch;
    double loss;
    double l2_rel;
    double linf_rel;
    double wall_ms;  // not part of the reproducible log file
};

struct RunLog {
    std::vector<RunRecord> records;
};

struct RunResult {
    RunConfig config;  // resolved
    RunLog log;
    MlpNet net;  // final (or last good, when aborted)
    bool aborted = false;
    long abort_epoch = -1;
    double final_l2 = 0.0;
    double final_linf = 0.0;
};

struct RelErrors {
    double l2 = 0.0;
    double linf = 0.0;
    // set when the exact values are identically zero and the norms returned
    // are absolute instead of relative
    bool absolute_fallback = false;
};

RelErrors relative_errors(std::span<const double> predicted, std::span<const double> exact);

// mean over points of |u - u_hat| / |u|, skipping points where |u| < 1e-12
double mean_pointwise_relative(std::span<const double> predicted, std::span<const double> exact);

// One full training run: sample once, train for the configured epochs with
// full-batch steps, log loss and test errors on the configured cadence.
// Deterministic for a fixed config. A non-finite loss or gradient aborts the
// run, keeping the parameters from before the failing step.
RunResult run(const RunConfig& cfg);

// Surrogate assembly shared by the trainer and the checkpoint evaluator.
SurrogateField make_surrogate(const bench::BenchmarkCase& bc, const RunConfig& cfg, MlpNet net);
EviProblem make_problem(const bench::BenchmarkCase& bc, const RunConfig& cfg);
bench::BenchmarkCase benchmark_for(const RunConfig& cfg);
Points test_points_for(const bench::BenchmarkCase& bc, const RunConfig& cfg);

}  // namespace proxevi
