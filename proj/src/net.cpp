#include "proxevi/net.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "proxevi/errors.hpp"

namespace proxevi {

std::size_t mlp_param_count(std::span<const int> sizes) {
    std::size_t n = 0;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l)
        n += static_cast<std::size_t>(sizes[l]) * sizes[l + 1] + static_cast<std::size_t>(sizes[l + 1]);
    return n;
}

std::size_t MlpNet::param_count() const { return mlp_param_count(sizes); }

std::vector<int> layer_sizes(int in, int hidden_layers, int width, int out) {
    std::vector<int> s;
    s.push_back(in);
    for (int i = 0; i < hidden_layers; ++i) s.push_back(width);
    s.push_back(out);
    return s;
}

MlpNet init_net(std::span<const int> sizes, std::uint64_t seed) {
    if (sizes.size() < 2) throw ArgumentError("init_net: need at least input and output layer");
    for (int s : sizes)
        if (s < 1) throw ArgumentError("init_net: layer sizes must be >= 1");

    MlpNet net;
    net.sizes.assign(sizes.begin(), sizes.end());
    net.params.resize(mlp_param_count(sizes));

    Rng rng(seed);
    std::size_t off = 0;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const double bound = 1.0 / std::sqrt(static_cast<double>(sizes[l]));
        const std::size_t n = static_cast<std::size_t>(sizes[l]) * sizes[l + 1] + static_cast<std::size_t>(sizes[l + 1]);
        for (std::size_t k = 0; k < n; ++k) net.params[off + k] = rng.uniform(-bound, bound);
        off += n;
    }
    return net;
}

NetEval<ad::Var> bind_net(const MlpNet& net, ad::Tape& tape, std::vector<ad::Var>& leaves) {
    leaves.clear();
    leaves.reserve(net.params.size());
    for (double p : net.params) leaves.push_back(tape.leaf(p));
    tape.set_checkpoint();
    NetEval<ad::Var> ctx;
    ctx.sizes = &net.sizes;
    ctx.params = leaves;
    return ctx;
}

std::vector<ad::Jet2d> eval_raw(const MlpNet& net, std::span<const double> x) {
    NetEval<double> ctx = make_eval(net);
    std::vector<ad::Jet2d> out;
    eval_raw(ctx, x, out);
    return out;
}

std::vector<double> eval_values(const MlpNet& net, std::span<const double> x, ValueScratch& scratch) {
    const std::vector<int>& sizes = net.sizes;
    if (static_cast<int>(x.size()) != sizes.front())
        throw ArgumentError("eval_values: input dimension mismatch");
    int max_width = 0;
    for (int s : sizes) max_width = std::max(max_width, s);
    scratch.a.assign(static_cast<std::size_t>(max_width), 0.0);
    scratch.b.assign(static_cast<std::size_t>(max_width), 0.0);
    double* cur = scratch.a.data();
    double* nxt = scratch.b.data();
    for (std::size_t i = 0; i < x.size(); ++i) cur[i] = x[i];

    std::size_t off = 0;
    const int n_layers = static_cast<int>(sizes.size()) - 1;
    for (int l = 0; l < n_layers; ++l) {
        const int n_in = sizes[static_cast<std::size_t>(l)];
        const int n_out = sizes[static_cast<std::size_t>(l) + 1];
        const double* w = net.params.data() + off;
        const double* b = w + static_cast<std::size_t>(n_in) * n_out;
        off += static_cast<std::size_t>(n_in) * n_out + static_cast<std::size_t>(n_out);
        const bool hidden = l + 1 < n_layers;
        for (int j = 0; j < n_out; ++j) {
            double acc = b[j];
            const double* row = w + static_cast<std::size_t>(j) * n_in;
            for (int k = 0; k < n_in; ++k) acc += row[k] * cur[k];
            nxt[j] = hidden ? std::tanh(acc) : acc;
        }
        std::swap(cur, nxt);
    }
    return std::vector<double>(cur, cur + sizes.back());
}

void save_checkpoint(const MlpNet& net, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("save_checkpoint: cannot open " + path);
    f << "proxevi-net 1";
    for (int s : net.sizes) f << ' ' << s;
    f << '\n';
    f.write(reinterpret_cast<const char*>(net.params.data()),
            static_cast<std::streamsize>(net.params.size() * sizeof(double)));
    if (!f) throw StateError("save_checkpoint: write failed for " + path);
}

MlpNet load_checkpoint(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ArgumentError("load_checkpoint: cannot open " + path);
    std::string header;
    std::getline(f, header);
    std::istringstream hs(header);
    std::string magic;
    int version = 0;
    hs >> magic >> version;
    if (magic != "proxevi-net" || version != 1)
        throw ArgumentError("load_checkpoint: bad header in " + path);
    MlpNet net;
    int s;
    while (hs >> s) net.sizes.push_back(s);
    if (net.sizes.size() < 2) throw ArgumentError("load_checkpoint: bad layer list in " + path);
    net.params.resize(mlp_param_count(net.sizes));
    f.read(reinterpret_cast<char*>(net.params.data()),
           static_cast<std::streamsize>(net.params.size() * sizeof(double)));
    if (!f) throw ArgumentError("load_checkpoint: truncated parameter block in " + path);
    return net;
}

}  // namespace proxevi
