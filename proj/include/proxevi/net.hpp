#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "proxevi/jet.hpp"
#include "proxevi/rng.hpp"
#include "proxevi/tape.hpp"

namespace proxevi {

// Fully connected network, tanh on hidden layers, identity on the output
// layer. Parameters are stored flat in canonical order: layer by layer,
// weight matrix row-major (out x in), then biases. Checkpoints and gradient
// vectors use the same ordering.
struct MlpNet {
    std::vector<int> sizes;      // [d, n1, ..., nL, out]
    std::vector<double> params;  // canonical flat layout

    int input_dim() const { return sizes.front(); }
    int output_dim() const { return sizes.back(); }
    std::size_t param_count() const;
};

std::size_t mlp_param_count(std::span<const int> sizes);

// Weights and biases drawn from uniform(-1/sqrt(fan_in), 1/sqrt(fan_in)),
// deterministic per seed.
MlpNet init_net(std::span<const int> sizes, std::uint64_t seed);

// sizes helper: [in, width x hidden_layers, out]
std::vector<int> layer_sizes(int in, int hidden_layers, int width, int out);

// Checkpoint format (documented in README): one ASCII header line
//   "proxevi-net 1 <s0> <s1> ... <sk>\n"
// followed by param_count little-endian IEEE-754 float64 values in canonical
// order.
void save_checkpoint(const MlpNet& net, const std::string& path);
MlpNet load_checkpoint(const std::string& path);

// --- forward evaluation ------------------------------------------------------

// Evaluation context bound to a parameter vector of scalar type S. Holds the
// ping-pong scratch buffers so repeated point evaluations do not allocate.
template <typename S>
struct NetEval {
    const std::vector<int>* sizes = nullptr;
    std::span<const S> params;

    std::vector<S> buf_a, buf_b;  // (1 + 2d) planes of max layer width each

    int input_dim() const { return sizes->front(); }
    int output_dim() const { return sizes->back(); }
};

inline NetEval<double> make_eval(const MlpNet& net) {
    NetEval<double> ctx;
    ctx.sizes = &net.sizes;
    ctx.params = net.params;
    return ctx;
}

// Registers every parameter as a tape leaf (canonical order) and sets the
// tape checkpoint behind them. `leaves` owns the Var storage.
NetEval<ad::Var> bind_net(const MlpNet& net, ad::Tape& tape, std::vector<ad::Var>& leaves);

namespace detail {

template <typename S>
inline S dot_span(std::span<const S> w, std::span<const S> x, const S* bias) {
    if constexpr (std::is_same_v<S, double>) {
        double acc = bias ? *bias : 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) acc += w[i] * x[i];
        return acc;
    } else {
        return ad::active_tape()->dot(w, x, bias);
    }
}

}  // namespace detail

// Exact value / gradient / Hessian-diagonal of every output at x, propagated
// through the layers by the jet chain rules. For S = Var the arithmetic is
// recorded, so parameter gradients of any function of these jets are exact.
template <typename S>
void eval_raw(NetEval<S>& ctx, std::span<const double> x, std::vector<ad::Jet2<S>>& out) {
    const std::vector<int>& sizes = *ctx.sizes;
    const int d = sizes.front();
    if (static_cast<int>(x.size()) != d) throw ArgumentError("eval_raw: input dimension mismatch");

    const int planes = 1 + 2 * d;  // value, d gradients, d second derivatives
    int max_width = 0;
    for (int s : sizes) max_width = std::max(max_width, s);
    ctx.buf_a.assign(static_cast<std::size_t>(planes * max_width), ad::make_constant<S>(0.0));
    ctx.buf_b.assign(static_cast<std::size_t>(planes * max_width), ad::make_constant<S>(0.0));

    S* cur = ctx.buf_a.data();
    S* nxt = ctx.buf_b.data();
    auto plane = [max_width](S* base, int p) { return base + p * max_width; };

    // input jets: value x_i, grad e_i, zero curvature (all passive)
    for (int i = 0; i < d; ++i) {
        plane(cur, 0)[i] = ad::make_constant<S>(x[static_cast<std::size_t>(i)]);
        for (int p = 0; p < d; ++p)
            plane(cur, 1 + p)[i] = ad::make_constant<S>(p == i ? 1.0 : 0.0);
        for (int p = 0; p < d; ++p) plane(cur, 1 + d + p)[i] = ad::make_constant<S>(0.0);
    }

    std::size_t off = 0;
    const int n_layers = static_cast<int>(sizes.size()) - 1;
    for (int l = 0; l < n_layers; ++l) {
        const int n_in = sizes[static_cast<std::size_t>(l)];
        const int n_out = sizes[static_cast<std::size_t>(l) + 1];
        const std::span<const S> weights = ctx.params.subspan(off, static_cast<std::size_t>(n_in) * n_out);
        const std::span<const S> biases =
            ctx.params.subspan(off + static_cast<std::size_t>(n_in) * n_out, static_cast<std::size_t>(n_out));
        off += static_cast<std::size_t>(n_in) * n_out + static_cast<std::size_t>(n_out);

        const bool hidden = l + 1 < n_layers;
        for (int j = 0; j < n_out; ++j) {
            const std::span<const S> row = weights.subspan(static_cast<std::size_t>(j) * n_in,
                                                           static_cast<std::size_t>(n_in));
            const S b = biases[static_cast<std::size_t>(j)];
            S v = detail::dot_span<S>(row, {plane(cur, 0), static_cast<std::size_t>(n_in)}, &b);
            if (!hidden) {
                plane(nxt, 0)[j] = v;
                for (int p = 0; p < 2 * d; ++p)
                    plane(nxt, 1 + p)[j] =
                        detail::dot_span<S>(row, {plane(cur, 1 + p), static_cast<std::size_t>(n_in)}, nullptr);
                continue;
            }
                    const S t = tanh(v);
            const S u = 1.0 - t * t;
            const S tu2 = 2.0 * (t * u);
            plane(nxt, 0)[j] = t;
            for (int p = 0; p < d; ++p) {
                const S g = detail::dot_span<S>(row, {plane(cur, 1 + p), static_cast<std::size_t>(n_in)}, nullptr);
                const S h = detail::dot_span<S>(row, {plane(cur, 1 + d + p), static_cast<std::size_t>(n_in)}, nullptr);
                plane(nxt, 1 + p)[j] = u * g;
                plane(nxt, 1 + d + p)[j] = u * h - tu2 * (g * g);
            }
        }
        std::swap(cur, nxt);
    }

    const int n_out = sizes.back();
    out.assign(static_cast<std::size_t>(n_out), ad::Jet2<S>(d));
    for (int j = 0; j < n_out; ++j) {
        out[static_cast<std::size_t>(j)].value = plane(cur, 0)[j];
        for (int p = 0; p < d; ++p) {
            out[static_cast<std::size_t>(j)].grad[p] = plane(cur, 1 + p)[j];
            out[static_cast<std::size_t>(j)].hess[p] = plane(cur, 1 + d + p)[j];
        }
    }
}

// Convenience wrapper for plain evaluation.
std::vector<ad::Jet2d> eval_raw(const MlpNet& net, std::span<const double> x);

// Value-only forward pass (used on test grids, where derivatives are not
// needed and the jet planes would triple the cost).
struct ValueScratch {
    std::vector<double> a, b;
};
std::vector<double> eval_values(const MlpNet& net, std::span<const double> x, ValueScratch& scratch);

}  // namespace proxevi
