#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "proxevi/errors.hpp"

namespace proxevi::ad {

class Tape;

// Scalar value together with its node handle on the active tape.
// idx == kPassive marks a constant that does not participate in
// differentiation; arithmetic on passive values never touches the tape.
struct Var {
    static constexpr std::uint32_t kPassive = 0xffffffffu;

    double val = 0.0;
    std::uint32_t idx = kPassive;

    bool active() const { return idx != kPassive; }
    static Var constant(double v) { return Var{v, kPassive}; }
};

// Append-only record of the scalar arithmetic of a forward pass.
//
// Node arguments live in a shared CSR layout (arg_start_/arg_idx_/arg_partial_)
// so that a fused dot product is a single node regardless of its arity.
// Topological order holds by construction: an argument index always precedes
// the node that consumes it.
//
// The checkpoint separates long-lived leaves (network parameters) from
// per-point scratch: rewind() truncates back to the checkpoint while the
// leaf values and accumulated leaf adjoints survive. That is what makes a
// many-point loss differentiable with one small tape.
class Tape {
  public:
    Var leaf(double value) {
        arg_start_.push_back(static_cast<std::uint32_t>(arg_idx_.size()));
        return Var{value, static_cast<std::uint32_t>(arg_start_.size() - 2)};
    }

    std::size_t size() const { return arg_start_.size() - 1; }
    bool empty() const { return size() == 0; }

    void set_checkpoint() { checkpoint_ = size(); }
    std::size_t checkpoint() const { return checkpoint_; }

    void rewind() {
        arg_start_.resize(checkpoint_ + 1);
        const std::uint32_t a = arg_start_.back();
        arg_idx_.resize(a);
        arg_partial_.resize(a);
    }

    void clear() {
        arg_start_.assign(1, 0);
        arg_idx_.clear();
        arg_partial_.clear();
        adjoint_.clear();
        checkpoint_ = 0;
    }

    Var emit1(double value, Var a, double pa) {
        if (!a.active()) return Var::constant(value);
        arg_idx_.push_back(a.idx);
        arg_partial_.push_back(pa);
        arg_start_.push_back(static_cast<std::uint32_t>(arg_idx_.size()));
        return Var{value, static_cast<std::uint32_t>(arg_start_.size() - 2)};
    }

    Var emit2(double value, Var a, double pa, Var b, double pb) {
        if (!a.active() && !b.active()) return Var::constant(value);
        if (a.active()) {
            arg_idx_.push_back(a.idx);
            arg_partial_.push_back(pa);
        }
        if (b.active()) {
            arg_idx_.push_back(b.idx);
            arg_partial_.push_back(pb);
        }
        arg_start_.push_back(static_cast<std::uint32_t>(arg_idx_.size()));
        return Var{value, static_cast<std::uint32_t>(arg_start_.size() - 2)};
    }

    // Fused dot product: sum_i a[i]*b[i] (+ bias). One node, 2n arguments.
    // This is the layer-affine hot path; everything else composes emit1/emit2.
    Var dot(std::span<const Var> a, std::span<const Var> b, const Var* bias = nullptr) {
        assert(a.size() == b.size());
        const std::size_t args_before = arg_idx_.size();
        double value = bias ? bias->val : 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            value += a[i].val * b[i].val;
            if (a[i].active()) {
                arg_idx_.push_back(a[i].idx);
                arg_partial_.push_back(b[i].val);
            }
            if (b[i].active()) {
                arg_idx_.push_back(b[i].idx);
                arg_partial_.push_back(a[i].val);
            }
        }
        if (bias && bias->active()) {
            arg_idx_.push_back(bias->idx);
            arg_partial_.push_back(1.0);
        }
        if (arg_idx_.size() == args_before) return Var::constant(value);
        arg_start_.push_back(static_cast<std::uint32_t>(arg_idx_.size()));
        return Var{value, static_cast<std::uint32_t>(arg_start_.size() - 2)};
    }

    // --- reverse sweeps -----------------------------------------------------

    // Adjoints of every node for a single seeded output (adjoint 1).
    std::vector<double> gradient(Var output) {
        if (empty()) throw StateError("gradient of an empty tape");
        if (!output.active() || output.idx >= size())
            throw ArgumentError("gradient: output is not a tape node");
        adjoint_.assign(size(), 0.0);
        adjoint_[output.idx] = 1.0;
        sweep_down_to(0);
        return adjoint_;
    }

    // Multi-seed interface used by the loss assembly. Typical cycle per point:
    //   rewind(); build nodes; start_segment(); seed(r, w)...; sweep_segment();
    // Leaf adjoints below the checkpoint accumulate across points until
    // zero_leaf_adjoints() is called.
    void zero_leaf_adjoints() {
        if (adjoint_.size() < checkpoint_) adjoint_.resize(checkpoint_, 0.0);
        std::fill(adjoint_.begin(), adjoint_.begin() + static_cast<long>(checkpoint_), 0.0);
    }

    void start_segment() {
        if (adjoint_.size() < size()) adjoint_.resize(size(), 0.0);
        std::fill(adjoint_.begin() + static_cast<long>(checkpoint_),
                  adjoint_.begin() + static_cast<long>(size()), 0.0);
    }

    void seed(Var v, double weight) {
        if (!v.active()) return;
        assert(v.idx < adjoint_.size());
        adjoint_[v.idx] += weight;
    }

    void sweep_segment() { sweep_down_to(checkpoint_); }

    std::span<const double> leaf_adjoints() const {
        return {adjoint_.data(), checkpoint_};
    }

  private:
    void sweep_down_to(std::size_t lo) {
        for (std::size_t n = size(); n-- > lo;) {
            const double a = adjoint_[n];
            if (a == 0.0) continue;
            const std::uint32_t begin = arg_start_[n];
            const std::uint32_t end = arg_start_[n + 1];
            for (std::uint32_t k = begin; k < end; ++k)
                adjoint_[arg_idx_[k]] += a * arg_partial_[k];
        }
    }

    std::vector<std::uint32_t> arg_start_{0};  // size() + 1 entries
    std::vector<std::uint32_t> arg_idx_;
    std::vector<double> arg_partial_;
    std::vector<double> adjoint_;
    std::size_t checkpoint_ = 0;
};

// Gradient of `output` with respect to the first n_params leaves, in the
// order they were registered. Deterministic replay: the same tape always
// yields bitwise-identical results.
std::vector<double> backward(Tape& tape, Var output, std::size_t n_params);

// --- operator overloads on the thread-local active tape ---------------------

Tape*& active_tape();

// RAII binder; evaluation code brackets its tape use with one of these.
class TapeScope {
  public:
    explicit TapeScope(Tape& t) : saved_(active_tape()) { active_tape() = &t; }
    ~TapeScope() { active_tape() = saved_; }
    TapeScope(const TapeScope&) = delete;
    TapeScope& operator=(const TapeScope&) = delete;

  private:
    Tape* saved_;
};

inline Tape& tape_for([[maybe_unused]] Var a) {
    assert(a.active() && active_tape() != nullptr);
    return *active_tape();
}

inline Var operator+(Var a, Var b) {
    if (!a.active() && !b.active()) return Var::constant(a.val + b.val);
    return tape_for(a.active() ? a : b).emit2(a.val + b.val, a, 1.0, b, 1.0);
}
inline Var operator-(Var a, Var b) {
    if (!a.active() && !b.active()) return Var::constant(a.val - b.val);
    return tape_for(a.active() ? a : b).emit2(a.val - b.val, a, 1.0, b, -1.0);
}
inline Var operator*(Var a, Var b) {
    if (!a.active() && !b.active()) return Var::constant(a.val * b.val);
    return tape_for(a.active() ? a : b).emit2(a.val * b.val, a, b.val, b, a.val);
}
inline Var operator/(Var a, Var b) {
    if (!a.active() && !b.active()) return Var::constant(a.val / b.val);
    const double inv = 1.0 / b.val;
    return tape_for(a.active() ? a : b).emit2(a.val * inv, a, inv, b, -a.val * inv * inv);
}
inline Var operator-(Var a) {
    if (!a.active()) return Var::constant(-a.val);
    return tape_for(a).emit1(-a.val, a, -1.0);
}
inline Var operator+(Var a, double c) { return a.active() ? tape_for(a).emit1(a.val + c, a, 1.0) : Var::constant(a.val + c); }
inline Var operator+(double c, Var a) { return a + c; }
inline Var operator-(Var a, double c) { return a + (-c); }
inline Var operator-(double c, Var a) { return a.active() ? tape_for(a).emit1(c - a.val, a, -1.0) : Var::constant(c - a.val); }
inline Var operator*(Var a, double c) { return a.active() ? tape_for(a).emit1(a.val * c, a, c) : Var::constant(a.val * c); }
inline Var operator*(double c, Var a) { return a * c; }
inline Var operator/(Var a, double c) { return a * (1.0 / c); }
inline Var operator/(double c, Var a) {
    if (!a.active()) return Var::constant(c / a.val);
    const double inv = 1.0 / a.val;
    return tape_for(a).emit1(c * inv, a, -c * inv * inv);
}

inline Var tanh(Var a) {
    const double t = std::tanh(a.val);
    if (!a.active()) return Var::constant(t);
    return tape_for(a).emit1(t, a, 1.0 - t * t);
}
// max(x, 0); the inactive branch owns the derivative at exactly 0
inline Var relu(Var a) {
    if (!a.active()) return Var::constant(a.val > 0.0 ? a.val : 0.0);
    return a.val > 0.0 ? tape_for(a).emit1(a.val, a, 1.0) : Var::constant(0.0);
}
// derivative convention sgn(0) = 0
inline Var abs(Var a) {
    const double s = a.val > 0.0 ? 1.0 : (a.val < 0.0 ? -1.0 : 0.0);
    if (!a.active()) return Var::constant(std::abs(a.val));
    return tape_for(a).emit1(std::abs(a.val), a, s);
}
// callers guard a.val > 0
inline Var sqrt(Var a) {
    const double s = std::sqrt(a.val);
    if (!a.active()) return Var::constant(s);
    return tape_for(a).emit1(s, a, 0.5 / s);
}

// --- generic-scalar helpers so jet code instantiates for double and Var -----

inline double value_of(double x) { return x; }
inline double value_of(Var x) { return x.val; }

inline double relu(double x) { return x > 0.0 ? x : 0.0; }
inline double abs(double x) { return std::abs(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double tanh(double x) { return std::tanh(x); }

template <typename S>
inline S make_constant(double v) {
    if constexpr (std::is_same_v<S, Var>) return Var::constant(v);
    else return v;
}

}  // namespace proxevi::ad
