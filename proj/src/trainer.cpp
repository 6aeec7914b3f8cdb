#include "proxevi/trainer.hpp"

#include <chrono>
#include <cmath>

#include "proxevi/optimizer.hpp"
#include "proxevi/rng.hpp"

namespace proxevi {

namespace {

// sub-stream tags for the per-run seeds
enum : std::uint64_t { kStreamNet = 0, kStreamTrain = 1, kStreamTest = 2, kStreamBoundary = 3, kStreamBatch = 4 };

}  // namespace

bench::BenchmarkCase benchmark_for(const RunConfig& cfg) {
    bench::BenchmarkParams bp;
    bp.c = cfg.bench_c;
    bp.tau = cfg.bench_tau;
    return bench::make_benchmark(cfg.benchmark, bp);
}

Points test_points_for(const bench::BenchmarkCase& bc, const RunConfig& cfg) {
    return test_grid(bc.domain, cfg.test_size, derive_seed(cfg.seed, kStreamTest));
}

RunConfig resolve_config(RunConfig cfg) {
    const bench::BenchmarkCase bc = benchmark_for(cfg);
    if (cfg.epochs <= 0) cfg.epochs = bc.defaults.epochs;
    if (cfg.eta <= 0.0) cfg.eta = 1e-3;
    if (cfg.train_size == 0) cfg.train_size = bc.defaults.train_size;
    if (cfg.test_size == 0) cfg.test_size = bc.defaults.test_size;
    if (cfg.boundary_size == 0) cfg.boundary_size = 256;
    if (cfg.hidden_layers <= 0) cfg.hidden_layers = bc.defaults.hidden_layers;
    if (cfg.width <= 0) cfg.width = bc.defaults.width;
    if (cfg.log_every <= 0) cfg.log_every = 100;
    if (cfg.threads <= 0) cfg.threads = 1;
    if (cfg.benchmark == "torsion2d" && !cfg.bench_c) cfg.bench_c = bc.const_c;
    if (cfg.benchmark == "bingham2d" && !cfg.bench_tau) cfg.bench_tau = bc.const_tau;

    const bool obstacle = bc.problem.tag == CaseTag::Obstacle;
    const bool bingham = bc.problem.tag == CaseTag::GradPrimal;
    if (cfg.loss_variant == "hard" || cfg.loss_variant == "primal") {
        // defaults for every benchmark
    } else if (cfg.loss_variant == "soft") {
        if (!obstacle) throw ArgumentError("loss variant 'soft' applies to obstacle benchmarks only");
    } else if (cfg.loss_variant == "shrink") {
        if (!bingham) throw ArgumentError("loss variant 'shrink' applies to bingham2d only");
    } else {
        throw ArgumentError("unknown loss variant '" + cfg.loss_variant + "'");
    }
    return cfg;
}

EviProblem make_problem(const bench::BenchmarkCase& bc, const RunConfig& cfg) {
    EviProblem p = bc.problem;
    p.eta = cfg.eta;
    p.w1 = cfg.w1;
    p.w2 = cfg.w2;
    p.w3 = cfg.w3;
    if (cfg.loss_variant == "soft") {
        p.tag = CaseTag::ObstacleSoft;
        p.wb = cfg.wb;
    } else if (cfg.loss_variant == "shrink") {
        p.tag = CaseTag::GradShrink;
    }
    return p;
}

SurrogateField make_surrogate(const bench::BenchmarkCase& bc, const RunConfig& cfg, MlpNet net) {
    SurrogateField sf;
    sf.net = std::move(net);
    sf.boundary = bc.boundary;
    sf.hard_constraint = cfg.loss_variant != "soft";
    if (bc.lambda_clamped && bc.problem.tau) sf.tau_clamp = *bc.problem.tau;
    return sf;
}

RelErrors relative_errors(std::span<const double> predicted, std::span<const double> exact) {
    if (predicted.size() != exact.size() || predicted.empty())
        throw ArgumentError("relative_errors: size mismatch");
    double diff2 = 0.0, ref2 = 0.0, diff_max = 0.0, ref_max = 0.0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        const double d = predicted[i] - exact[i];
        diff2 += d * d;
        ref2 += exact[i] * exact[i];
        diff_max = std::max(diff_max, std::abs(d));
        ref_max = std::max(ref_max, std::abs(exact[i]));
    }
    RelErrors out;
    if (ref2 == 0.0) {
        out.l2 = std::sqrt(diff2 / static_cast<double>(predicted.size()));
        out.linf = diff_max;
        out.absolute_fallback = true;
    } else {
        out.l2 = std::sqrt(diff2) / std::sqrt(ref2);
        out.linf = diff_max / ref_max;
    }
    return out;
}

double mean_pointwise_relative(std::span<const double> predicted, std::span<const double> exact) {
    if (predicted.size() != exact.size() || predicted.empty())
        throw ArgumentError("mean_pointwise_relative: size mismatch");
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (std::abs(exact[i]) < 1e-12) continue;
        sum += std::abs(predicted[i] - exact[i]) / std::abs(exact[i]);
        ++n;
    }
    return n > 0 ? sum / static_cast<double>(n) : 0.0;
}

RunResult run(const RunConfig& user_cfg) {
    const RunConfig cfg = resolve_config(user_cfg);
    const bench::BenchmarkCase bc = benchmark_for(cfg);
    const EviProblem problem = make_problem(bc, cfg);

    const int d = bc.domain.dim();
    const std::vector<int> sizes = layer_sizes(d, cfg.hidden_layers, cfg.width, bc.defaults.out_dim);
    SurrogateField sf = make_surrogate(bc, cfg, init_net(sizes, derive_seed(cfg.seed, kStreamNet)));

    // one sampling pass; the same sets are used at every epoch
    const Points train = sample_interior(bc.domain, cfg.train_size, derive_seed(cfg.seed, kStreamTrain));
    BoundaryPoints btrain;
    const BoundaryPoints* bptr = nullptr;
    if (needs_boundary_set(problem.tag)) {
        const std::string segment = problem.tag == CaseTag::Friction ? "gamma_c" : "all";
        btrain = sample_boundary(bc.domain, segment, cfg.boundary_size, derive_seed(cfg.seed, kStreamBoundary));
        bptr = &btrain;
    }

    const Points test = test_points_for(bc, cfg);
    std::vector<double> exact(test.count());
    for (std::size_t i = 0; i < test.count(); ++i) exact[i] = bc.exact_u.value(test[i]);

    RunResult result;
    result.config = cfg;

    ValueScratch vs;
    std::vector<double> pred(test.count());
    auto test_errors = [&]() {
        for (std::size_t i = 0; i < test.count(); ++i) pred[i] = eval_u_value(sf, test[i], vs);
        return relative_errors(pred, exact);
    };

    LossContext loss_ctx;
    AdamState adam(sf.net.param_count(), cfg.lr);
    Rng batch_rng(derive_seed(cfg.seed, kStreamBatch));
    std::vector<std::size_t> batch_index(train.count());
    for (std::size_t i = 0; i < batch_index.size(); ++i) batch_index[i] = i;
    Points batch;
    batch.dim = train.dim;

    auto clock_start = std::chrono::steady_clock::now();
    for (long epoch = 1; epoch <= cfg.epochs; ++epoch) {
        const Points* step_points = &train;
        if (cfg.batch_size > 0 && cfg.batch_size < train.count()) {
            // partial Fisher-Yates draw without replacement
            for (std::size_t i = 0; i < cfg.batch_size; ++i) {
                const std::size_t j = i + static_cast<std::size_t>(batch_rng.uniform() *
                                                                   static_cast<double>(batch_index.size() - i));
                std::swap(batch_index[i], batch_index[j]);
            }
            batch.xs.clear();
            for (std::size_t i = 0; i < cfg.batch_size; ++i) batch.push(train[batch_index[i]]);
            step_points = &batch;
        }

        LossResult lr = loss_ctx.evaluate(problem, sf, *step_points, bptr, cfg.threads);
        bool finite = std::isfinite(lr.loss);
        for (std::size_t k = 0; finite && k < lr.grad.size(); ++k) finite = std::isfinite(lr.grad[k]);
        if (!finite) {
            result.aborted = true;
            result.abort_epoch = epoch;
            break;
        }

        adam_step(adam, sf.net.params, lr.grad);

        // loss column: value before this epoch's update; error columns: after,
        // so the final row is recomputable from the emitted checkpoint
        if (epoch % cfg.log_every == 0 || epoch == cfg.epochs || epoch == 1) {
            const RelErrors err = test_errors();
            const auto now = std::chrono::steady_clock::now();
            const double ms = std::chrono::duration<double, std::milli>(now - clock_start).count();
            clock_start = now;
            result.log.records.push_back({epoch, lr.loss, err.l2, err.linf, ms});
        }
    }

    const RelErrors err = test_errors();
    result.final_l2 = err.l2;
    result.final_linf = err.linf;
    result.net = sf.net;
    return result;
}

}  // namespace proxevi
