#pragma once

#include <string>

#include "proxevi/trainer.hpp"

namespace proxevi {

// Artifact bundle layout inside a run directory:
//   run_log.csv    epoch,loss,l2_rel,linf_rel           (deterministic)
//   timings.csv    epoch,wall_ms                        (not deterministic)
//   solution.csv   x[,y],u_exact,u_pred,abs_err on the test grid
//   config.json    resolved RunConfig + provenance version string
//   checkpoint.bin network parameters (header + raw float64)
// All floating-point CSV fields are printed with 17 significant digits so
// they parse back to the exact double.
struct OutputBundle {
    std::string dir;
    std::string run_log() const { return dir + "/run_log.csv"; }
    std::string timings() const { return dir + "/timings.csv"; }
    std::string solution() const { return dir + "/solution.csv"; }
    std::string config() const { return dir + "/config.json"; }
    std::string checkpoint() const { return dir + "/checkpoint.bin"; }
};

std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);

// Writes the full bundle for a finished (or aborted) run.
OutputBundle write_run_artifacts(const std::string& dir, const RunResult& result);

// Evaluates a surrogate on a point set against the exact solution and writes
// solution.csv rows; returns the error summary.
RelErrors write_solution_csv(const std::string& path, const SurrogateField& sf,
                             const bench::BenchmarkCase& bc, const Points& pts);

void ensure_dir(const std::string& dir);

}  // namespace proxevi
