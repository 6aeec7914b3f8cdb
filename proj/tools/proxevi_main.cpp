#include <cstdlib>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "proxevi/runio.hpp"

namespace {

using namespace proxevi;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNan = 3;

std::string default_out_root() {
    if (const char* env = std::getenv("PROX_EVI_OUT")) return env;
    return "runs";
}

struct RunFlags {
    RunConfig cfg;
    std::string out;
    double c = 0.0, tau = 0.0;
    bool c_set = false, tau_set = false;

    void fold() {
        if (c_set) cfg.bench_c = c;
        if (tau_set) cfg.bench_tau = tau;
    }
};

void add_run_options(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--benchmark", f.cfg.benchmark, "benchmark name")->required();
    cmd->add_option("--seed", f.cfg.seed, "random seed");
    cmd->add_option("--epochs", f.cfg.epochs, "training epochs (0 = benchmark default)");
    cmd->add_option("--eta", f.cfg.eta, "pointwise reformulation step (0 = default 1e-3)");
    cmd->add_option("--lr", f.cfg.lr, "learning rate");
    cmd->add_option("--loss-variant", f.cfg.loss_variant, "hard | soft | shrink | primal");
    cmd->add_option("--train-size", f.cfg.train_size, "training points (0 = default)");
    cmd->add_option("--test-size", f.cfg.test_size, "test points (0 = default)");
    cmd->add_option("--boundary-size", f.cfg.boundary_size, "boundary training points");
    cmd->add_option("--hidden-layers", f.cfg.hidden_layers, "hidden layer count (0 = default)");
    cmd->add_option("--width", f.cfg.width, "hidden layer width (0 = default)");
    cmd->add_option("--log-every", f.cfg.log_every, "logging cadence in epochs");
    cmd->add_option("--threads", f.cfg.threads, "worker threads for the loss");
    cmd->add_option("--batch-size", f.cfg.batch_size, "minibatch size (0 = full batch)");
    cmd->add_option("--w1", f.cfg.w1, "first residual weight");
    cmd->add_option("--w2", f.cfg.w2, "second residual weight");
    cmd->add_option("--w3", f.cfg.w3, "third residual weight");
    cmd->add_option("--wb", f.cfg.wb, "boundary penalty weight (soft mode)");
    cmd->add_option("--c", f.c, "source constant (torsion2d, bingham2d)")->each([&f](const std::string&) { f.c_set = true; });
    cmd->add_option("--tau", f.tau, "yield constant (bingham2d, friction2d)")->each([&f](const std::string&) { f.tau_set = true; });
    cmd->add_option("--out", f.out, "output directory");
}

int finish_run(const RunResult& result, const std::string& outdir) {
    const OutputBundle bundle = write_run_artifacts(outdir, result);
    if (result.aborted) {
        std::cerr << "aborted: non-finite loss at epoch " << result.abort_epoch
                  << "; last good checkpoint written to " << bundle.checkpoint() << "\n";
        return kExitNan;
    }
    std::cout << "benchmark " << result.config.benchmark << ": relative l2 " << result.final_l2
              << ", relative linf " << result.final_linf << "\n";
    std::cout << "artifacts in " << outdir << "\n";
    return kExitOk;
}

int cmd_run(RunFlags& f) {
    f.fold();
    if (f.out.empty()) f.out = default_out_root() + "/" + f.cfg.benchmark;
    return finish_run(run(f.cfg), f.out);
}

int cmd_sweep_eta(RunFlags& f, std::vector<double>& etas) {
    f.fold();
    if (f.out.empty()) f.out = default_out_root() + "/" + f.cfg.benchmark + "_eta_sweep";
    if (etas.empty()) etas = {1e-2, 1e-3, 1e-4, 1e-5};

    {
        // the sweep is defined for the pointwise-bound benchmarks
        const bench::BenchmarkCase bc = benchmark_for(resolve_config(f.cfg));
        if (bc.problem.tag != CaseTag::Obstacle)
            throw ArgumentError("sweep-eta: benchmark has no eta-controlled bound residual");
    }

    ensure_dir(f.out);
    std::ofstream summary(f.out + "/summary.csv");
    summary << "eta,l2_rel,linf_rel\n";
    std::cout << "eta         l2_rel        linf_rel\n";
    int exit_code = kExitOk;
    for (double eta : etas) {
        RunConfig cfg = f.cfg;
        cfg.eta = eta;
        char tag[32];
        std::snprintf(tag, sizeof(tag), "eta_%.0e", eta);
        const RunResult result = run(cfg);
        write_run_artifacts(f.out + "/" + tag, result);
        if (result.aborted) {
            std::cerr << "aborted at eta " << eta << "\n";
            exit_code = kExitNan;
            continue;
        }
        char line[128];
        std::snprintf(line, sizeof(line), "%-10.0e  %-12.4e  %-12.4e", eta, result.final_l2,
                      result.final_linf);
        std::cout << line << "\n";
        summary << eta << ',' << result.final_l2 << ',' << result.final_linf << '\n';
    }
    return exit_code;
}

int cmd_eval(const std::string& run_dir, const std::string& checkpoint, std::size_t grid,
             const std::string& out) {
    const std::string cfg_path = run_dir + "/config.json";
    const std::string ckpt_path = checkpoint.empty() ? run_dir + "/checkpoint.bin" : checkpoint;
    if (!std::filesystem::exists(ckpt_path) || !std::filesystem::exists(cfg_path)) {
        std::cerr << "eval: missing checkpoint or config under " << run_dir << "\n";
        return kExitUsage;
    }
    std::ifstream cf(cfg_path);
    std::string text((std::istreambuf_iterator<char>(cf)), std::istreambuf_iterator<char>());
    const RunConfig cfg = config_from_json(text);
    const bench::BenchmarkCase bc = benchmark_for(cfg);
    const SurrogateField sf = make_surrogate(bc, cfg, load_checkpoint(ckpt_path));

    const Points pts = eval_grid(bc.domain, grid);
    const std::string out_path = out.empty() ? run_dir + "/solution_eval.csv" : out;
    if (!out.empty()) ensure_dir(std::filesystem::path(out_path).parent_path().string());
    const RelErrors err = write_solution_csv(out_path, sf, bc, pts);

    double linf_abs = 0.0;
    {
        ValueScratch vs;
        for (std::size_t i = 0; i < pts.count(); ++i)
            linf_abs = std::max(linf_abs,
                                std::abs(eval_u_value(sf, pts[i], vs) - bc.exact_u.value(pts[i])));
    }
    std::cout << "grid " << grid << ": relative l2 " << err.l2 << ", relative linf " << err.linf
              << ", absolute linf " << linf_abs << "\n";
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic variational inequality solver with neural surrogates"};
    app.require_subcommand(1);

    RunFlags run_flags;
    CLI::App* c_run = app.add_subcommand("run", "train one benchmark");
    add_run_options(c_run, run_flags);

    RunFlags sweep_flags;
    std::vector<double> etas;
    CLI::App* c_sweep = app.add_subcommand("sweep-eta", "train across a grid of eta values");
    add_run_options(c_sweep, sweep_flags);
    c_sweep->add_option("--etas", etas, "eta values (default 1e-2 1e-3 1e-4 1e-5)")->delimiter(',');

    std::string eval_dir, eval_ckpt, eval_out;
    std::size_t eval_grid_n = 64;
    CLI::App* c_eval = app.add_subcommand("eval", "evaluate a trained checkpoint on a fresh grid");
    c_eval->add_option("--run-dir", eval_dir, "run directory holding config.json + checkpoint.bin")
        ->required();
    c_eval->add_option("--checkpoint", eval_ckpt, "explicit checkpoint path (optional)");
    c_eval->add_option("--grid", eval_grid_n, "points per axis");
    c_eval->add_option("--out", eval_out, "output csv path");

    try {
        app.parse(argc, argv);
        if (c_run->parsed()) return cmd_run(run_flags);
        if (c_sweep->parsed()) return cmd_sweep_eta(sweep_flags, etas);
        return cmd_eval(eval_dir, eval_ckpt, eval_grid_n, eval_out);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    } catch (const proxevi::TrainingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNan;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
