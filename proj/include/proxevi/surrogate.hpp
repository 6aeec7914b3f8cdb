#pragma once

#include <optional>

#include "proxevi/field.hpp"
#include "proxevi/net.hpp"

namespace proxevi {

// Boundary-conforming factor h (zero exactly on the constrained boundary
// part, nonzero inside) and lift g carrying the prescribed boundary values
// (the zero field for homogeneous conditions).
struct BoundaryData {
    ScalarField h;
    ScalarField g;
};

// Neural surrogate u = g + h * N_u, with optional extra outputs for the
// multiplier field. When tau_clamp is set the multiplier is radially clamped
// to |lambda| <= tau. With hard_constraint off (soft boundary mode) the raw
// first output is used directly and the boundary data is ignored.
struct SurrogateField {
    MlpNet net;
    BoundaryData boundary;
    std::optional<double> tau_clamp;
    bool hard_constraint = true;

    int input_dim() const { return net.input_dim(); }
    // number of multiplier components behind the primary output
    int lambda_dim() const { return net.output_dim() - 1; }
};

namespace detail {

template <typename S>
ad::Jet2<S> vec_norm_jet(std::span<const ad::Jet2<S>> v) {
    ad::Jet2<S> n2 = ad::jet_constant<S>(0.0, v[0].dim());
    for (const auto& c : v) n2 = n2 + c * c;
    return ad::sqrt(n2);
}

// Radial clamp tau * N / max(tau, |N|) with two-branch jets: identity while
// |N| <= tau, scaled branch outside. The trailing rescale loop keeps the
// recomputed norm of the clamped value at or below tau despite rounding; the
// factor is within a few ulp of 1 and is treated as a constant on the tape.
template <typename S>
void clamp_lambda(std::vector<ad::Jet2<S>>& lam, double tau) {
    if (lam.empty()) return;
    double n2 = 0.0;
    for (const auto& c : lam) n2 += ad::value_of(c.value) * ad::value_of(c.value);
    if (std::sqrt(n2) <= tau) return;

    const ad::Jet2<S> norm = vec_norm_jet<S>(std::span<const ad::Jet2<S>>(lam));
    for (auto& c : lam) c = ad::scale(ad::divide(c, norm), tau);
    for (int guard = 0; guard < 4; ++guard) {
        double m2 = 0.0;
        for (const auto& c : lam) m2 += ad::value_of(c.value) * ad::value_of(c.value);
        const double m = std::sqrt(m2);
        if (m <= tau) break;
        for (auto& c : lam) c = ad::scale(c, tau / m);
    }
}

}  // namespace detail

// One shared forward pass producing the surrogate jet and (optionally) the
// multiplier jets. u and lambda always come from the same trunk evaluation.
template <typename S>
struct SurrogateJets {
    ad::Jet2<S> u;
    std::vector<ad::Jet2<S>> lambda;
};

template <typename S>
SurrogateJets<S> eval_surrogate(const SurrogateField& sf, NetEval<S>& ctx,
                                std::span<const double> x, bool want_lambda) {
    std::vector<ad::Jet2<S>> raw;
    eval_raw(ctx, x, raw);

    SurrogateJets<S> out;
    if (sf.hard_constraint) {
        const ad::Jet2<S> h = ad::passive_jet<S>(sf.boundary.h.jet(x));
        const ad::Jet2<S> g = ad::passive_jet<S>(sf.boundary.g.jet(x));
        out.u = g + ad::product(h, raw[0]);
    } else {
        out.u = raw[0];
    }

    if (want_lambda) {
        if (sf.net.output_dim() < 2)
            throw StateError("eval_surrogate: multiplier requested from a single-output net");
        out.lambda.assign(raw.begin() + 1, raw.end());
        if (sf.tau_clamp) detail::clamp_lambda<S>(out.lambda, *sf.tau_clamp);
    }
    return out;
}

// Plain-evaluation conveniences.
ad::Jet2d eval_u(const SurrogateField& sf, std::span<const double> x);
std::vector<ad::Jet2d> eval_lambda(const SurrogateField& sf, std::span<const double> x);
double eval_u_value(const SurrogateField& sf, std::span<const double> x, ValueScratch& scratch);

}  // namespace proxevi
