#include "proxevi/runio.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#ifndef PROXEVI_VERSION
#define PROXEVI_VERSION "unversioned"
#endif

namespace proxevi {

namespace {

// 17 significant digits: parses back to the identical double
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ArgumentError("cannot create output directory " + dir);
}

std::string config_to_json(const RunConfig& cfg) {
    nlohmann::json j;
    j["benchmark"] = cfg.benchmark;
    if (cfg.bench_c) j["c"] = *cfg.bench_c;
    if (cfg.bench_tau) j["tau"] = *cfg.bench_tau;
    j["seed"] = cfg.seed;
    j["epochs"] = cfg.epochs;
    j["eta"] = cfg.eta;
    j["lr"] = cfg.lr;
    j["loss_variant"] = cfg.loss_variant;
    j["train_size"] = cfg.train_size;
    j["test_size"] = cfg.test_size;
    j["boundary_size"] = cfg.boundary_size;
    j["hidden_layers"] = cfg.hidden_layers;
    j["width"] = cfg.width;
    j["log_every"] = cfg.log_every;
    j["threads"] = cfg.threads;
    j["batch_size"] = cfg.batch_size;
    j["weights"] = {{"w1", cfg.w1}, {"w2", cfg.w2}, {"w3", cfg.w3}, {"wb", cfg.wb}};
    j["version"] = PROXEVI_VERSION;
    return j.dump(2);
}

RunConfig config_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    RunConfig cfg;
    cfg.benchmark = j.at("benchmark").get<std::string>();
    if (j.contains("c")) cfg.bench_c = j["c"].get<double>();
    if (j.contains("tau")) cfg.bench_tau = j["tau"].get<double>();
    cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.epochs = j.at("epochs").get<long>();
    cfg.eta = j.at("eta").get<double>();
    cfg.lr = j.at("lr").get<double>();
    cfg.loss_variant = j.at("loss_variant").get<std::string>();
    cfg.train_size = j.at("train_size").get<std::size_t>();
    cfg.test_size = j.at("test_size").get<std::size_t>();
    cfg.boundary_size = j.at("boundary_size").get<std::size_t>();
    cfg.hidden_layers = j.at("hidden_layers").get<int>();
    cfg.width = j.at("width").get<int>();
    cfg.log_every = j.at("log_every").get<long>();
    cfg.threads = j.at("threads").get<int>();
    cfg.batch_size = j.at("batch_size").get<std::size_t>();
    cfg.w1 = j.at("weights").at("w1").get<double>();
    cfg.w2 = j.at("weights").at("w2").get<double>();
    cfg.w3 = j.at("weights").at("w3").get<double>();
    cfg.wb = j.at("weights").at("wb").get<double>();
    return cfg;
}

RelErrors write_solution_csv(const std::string& path, const SurrogateField& sf,
                             const bench::BenchmarkCase& bc, const Points& pts) {
    std::ofstream f(path);
    if (!f) throw ArgumentError("cannot write " + path);
    f << (pts.dim == 1 ? "x" : "x1,x2") << ",u_exact,u_pred,abs_err\n";
    ValueScratch vs;
    std::vector<double> pred(pts.count()), exact(pts.count());
    for (std::size_t i = 0; i < pts.count(); ++i) {
        const auto x = pts[i];
        exact[i] = bc.exact_u.value(x);
        pred[i] = eval_u_value(sf, x, vs);
        for (int k = 0; k < pts.dim; ++k) f << num(x[static_cast<std::size_t>(k)]) << ',';
        f << num(exact[i]) << ',' << num(pred[i]) << ',' << num(std::abs(exact[i] - pred[i])) << '\n';
    }
    return relative_errors(pred, exact);
}

OutputBundle write_run_artifacts(const std::string& dir, const RunResult& result) {
    ensure_dir(dir);
    OutputBundle out{dir};

    {
        std::ofstream f(out.run_log());
        f << "epoch,loss,l2_rel,linf_rel\n";
        for (const RunRecord& r : result.log.records)
            f << r.epoch << ',' << num(r.loss) << ',' << num(r.l2_rel) << ',' << num(r.linf_rel) << '\n';
    }
    {
        std::ofstream f(out.timings());
        f << "epoch,wall_ms\n";
        for (const RunRecord& r : result.log.records) f << r.epoch << ',' << num(r.wall_ms) << '\n';
    }
    {
        std::ofstream f(out.config());
        f << config_to_json(result.config) << '\n';
    }
    save_checkpoint(result.net, out.checkpoint());

    const bench::BenchmarkCase bc = benchmark_for(result.config);
    const SurrogateField sf = make_surrogate(bc, result.config, result.net);
    const Points test = test_points_for(bc, result.config);
    write_solution_csv(out.solution(), sf, bc, test);
    return out;
}

}  // namespace proxevi
