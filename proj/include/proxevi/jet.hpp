#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "proxevi/errors.hpp"
#include "proxevi/tape.hpp"

namespace proxevi::ad {

// Second-order coordinate jet of a scalar field: value, gradient, and the
// diagonal of the Hessian (one entry per input coordinate). Off-diagonal
// second derivatives are never tracked; the operators in this project only
// consume Laplacians and divergences.
//
// The scalar type S is double for plain evaluation and Var when the jet
// arithmetic itself must be recorded for parameter gradients.
template <typename S>
struct Jet2 {
    S value{};
    std::vector<S> grad;
    std::vector<S> hess;  // d²/dx_i² only

    Jet2() = default;
    explicit Jet2(int d) : grad(static_cast<std::size_t>(d)), hess(static_cast<std::size_t>(d)) {}
    Jet2(S v, std::vector<S> g, std::vector<S> h)
        : value(v), grad(std::move(g)), hess(std::move(h)) {}

    int dim() const { return static_cast<int>(grad.size()); }
};

using Jet2d = Jet2<double>;

template <typename S>
Jet2<S> jet_constant(double v, int d) {
    Jet2<S> j(d);
    j.value = make_constant<S>(v);
    for (int i = 0; i < d; ++i) {
        j.grad[i] = make_constant<S>(0.0);
        j.hess[i] = make_constant<S>(0.0);
    }
    return j;
}

// Seed jet of coordinate i: value x_i, gradient e_i, zero second derivative.
template <typename S = double>
Jet2<S> lift(std::span<const double> x, int i) {
    const int d = static_cast<int>(x.size());
    if (i < 0 || i >= d) throw ArgumentError("lift: coordinate index out of range");
    Jet2<S> j = jet_constant<S>(x[static_cast<std::size_t>(i)], d);
    j.grad[i] = make_constant<S>(1.0);
    return j;
}

template <typename S>
Jet2<S> operator+(const Jet2<S>& a, const Jet2<S>& b) {
    if (a.dim() != b.dim()) throw ArgumentError("jet +: dimension mismatch");
    Jet2<S> r(a.dim());
    r.value = a.value + b.value;
    for (int i = 0; i < a.dim(); ++i) {
        r.grad[i] = a.grad[i] + b.grad[i];
        r.hess[i] = a.hess[i] + b.hess[i];
    }
    return r;
}

template <typename S>
Jet2<S> operator-(const Jet2<S>& a, const Jet2<S>& b) {
    if (a.dim() != b.dim()) throw ArgumentError("jet -: dimension mismatch");
    Jet2<S> r(a.dim());
    r.value = a.value - b.value;
    for (int i = 0; i < a.dim(); ++i) {
        r.grad[i] = a.grad[i] - b.grad[i];
        r.hess[i] = a.hess[i] - b.hess[i];
    }
    return r;
}

template <typename S>
Jet2<S> scale(const Jet2<S>& a, double c) {
    Jet2<S> r(a.dim());
    r.value = a.value * c;
    for (int i = 0; i < a.dim(); ++i) {
        r.grad[i] = a.grad[i] * c;
        r.hess[i] = a.hess[i] * c;
    }
    return r;
}

// Leibniz rule through second order.
template <typename S>
Jet2<S> product(const Jet2<S>& a, const Jet2<S>& b) {
    if (a.dim() != b.dim()) throw ArgumentError("jet product: dimension mismatch");
    Jet2<S> r(a.dim());
    r.value = a.value * b.value;
    for (int i = 0; i < a.dim(); ++i) {
        r.grad[i] = a.grad[i] * b.value + a.value * b.grad[i];
        r.hess[i] = a.hess[i] * b.value + 2.0 * (a.grad[i] * b.grad[i]) + a.value * b.hess[i];
    }
    return r;
}

template <typename S>
Jet2<S> operator*(const Jet2<S>& a, const Jet2<S>& b) {
    return product(a, b);
}

// Weighted sum of jets plus bias; linear, so componentwise.
template <typename S>
Jet2<S> affine(std::span<const Jet2<S>> inputs, std::span<const double> weights, double bias) {
    if (inputs.size() != weights.size()) throw ArgumentError("jet affine: weight/input length mismatch");
    if (inputs.empty()) throw ArgumentError("jet affine: empty input list");
    const int d = inputs[0].dim();
    Jet2<S> r = jet_constant<S>(0.0, d);
    r.value = r.value + bias;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        if (inputs[k].dim() != d) throw ArgumentError("jet affine: dimension mismatch");
        r.value = r.value + inputs[k].value * weights[k];
        for (int i = 0; i < d; ++i) {
            r.grad[i] = r.grad[i] + inputs[k].grad[i] * weights[k];
            r.hess[i] = r.hess[i] + inputs[k].hess[i] * weights[k];
        }
    }
    return r;
}

// tanh chain rule: t' = (1 - t^2) a', t'' = (1 - t^2) a'' - 2 t (1 - t^2) a'^2.
template <typename S>
Jet2<S> tanh(const Jet2<S>& a) {
    Jet2<S> r(a.dim());
    const S t = tanh(a.value);
    const S u = 1.0 - t * t;
    const S tu2 = 2.0 * (t * u);
    r.value = t;
    for (int i = 0; i < a.dim(); ++i) {
        r.grad[i] = u * a.grad[i];
        r.hess[i] = u * a.hess[i] - tu2 * (a.grad[i] * a.grad[i]);
    }
    return r;
}

// Quotient rule; caller guarantees b.value != 0.
template <typename S>
Jet2<S> divide(const Jet2<S>& a, const Jet2<S>& b) {
    if (a.dim() != b.dim()) throw ArgumentError("jet divide: dimension mismatch");
    Jet2<S> q(a.dim());
    q.value = a.value / b.value;
    for (int i = 0; i < a.dim(); ++i) {
        q.grad[i] = (a.grad[i] - q.value * b.grad[i]) / b.value;
        q.hess[i] = (a.hess[i] - 2.0 * (q.grad[i] * b.grad[i]) - q.value * b.hess[i]) / b.value;
    }
    return q;
}

// Square root; caller guarantees a.value > 0.
template <typename S>
Jet2<S> sqrt(const Jet2<S>& a) {
    Jet2<S> r(a.dim());
    r.value = sqrt(a.value);
    for (int i = 0; i < a.dim(); ++i) {
        r.grad[i] = a.grad[i] / (2.0 * r.value);
        r.hess[i] = (a.hess[i] - 2.0 * (r.grad[i] * r.grad[i])) / (2.0 * r.value);
    }
    return r;
}

template <typename S>
S laplacian(const Jet2<S>& a) {
    S sum = make_constant<S>(0.0);
    for (int i = 0; i < a.dim(); ++i) sum = sum + a.hess[i];
    return sum;
}

// --- analytic-field helpers (plain double jets) ------------------------------

// g(inner) for a scalar function g with supplied first/second derivative
// values at inner.value.
inline Jet2d compose1(double g, double dg, double ddg, const Jet2d& inner) {
    Jet2d r(inner.dim());
    r.value = g;
    for (int i = 0; i < inner.dim(); ++i) {
        r.grad[i] = dg * inner.grad[i];
        r.hess[i] = ddg * inner.grad[i] * inner.grad[i] + dg * inner.hess[i];
    }
    return r;
}

// Jet of r = |x|; caller guarantees x != 0.
inline Jet2d radial(std::span<const double> x) {
    const int d = static_cast<int>(x.size());
    double r2 = 0.0;
    for (double xi : x) r2 += xi * xi;
    const double r = std::sqrt(r2);
    Jet2d j(d);
    j.value = r;
    for (int i = 0; i < d; ++i) {
        j.grad[i] = x[static_cast<std::size_t>(i)] / r;
        j.hess[i] = 1.0 / r - x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)] / (r2 * r);
    }
    return j;
}

// Promote a plain double jet to a passive jet of scalar type S (used when an
// analytic field multiplies a recorded network output).
template <typename S>
Jet2<S> passive_jet(const Jet2d& j) {
    if constexpr (std::is_same_v<S, double>) {
        return j;
    } else {
        Jet2<S> r(j.dim());
        r.value = make_constant<S>(j.value);
        for (int i = 0; i < j.dim(); ++i) {
            r.grad[i] = make_constant<S>(j.grad[i]);
            r.hess[i] = make_constant<S>(j.hess[i]);
        }
        return r;
    }
}

}  // namespace proxevi::ad
