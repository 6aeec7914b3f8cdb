#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "proxevi/points.hpp"
#include "proxevi/surrogate.hpp"

namespace proxevi {

using ScalarFn = std::function<double(std::span<const double>)>;

// Constant or spatially varying coefficient.
struct Coef {
    std::variant<double, ScalarFn> v{0.0};

    Coef() = default;
    Coef(double c) : v(c) {}
    Coef(ScalarFn fn) : v(std::move(fn)) {}

    double operator()(std::span<const double> x) const {
        if (const double* c = std::get_if<double>(&v)) return *c;
        return std::get<ScalarFn>(v)(x);
    }
};

// A v = -alpha * lap(v) + beta . grad(v) + gamma * v
struct OperatorSpec {
    Coef alpha{1.0};
    std::vector<Coef> beta;  // empty means zero drift
    Coef gamma{0.0};
};

template <typename S>
S apply_operator(const OperatorSpec& op, const ad::Jet2<S>& u, std::span<const double> x) {
    if (!op.beta.empty() && static_cast<int>(op.beta.size()) != u.dim())
        throw ArgumentError("apply_operator: drift dimension mismatch");
    S res = (-op.alpha(x)) * ad::laplacian(u);
    for (std::size_t i = 0; i < op.beta.size(); ++i) res = res + op.beta[i](x) * u.grad[i];
    return res + op.gamma(x) * u.value;
}

// Which nonsmooth structure the problem carries, i.e. which pointwise
// reformulation the loss uses.
enum class CaseTag {
    Obstacle,      // pointwise bound u >= psi
    AbsValue,      // tau * integral of |u|
    GradientBall,  // constraint |grad u| <= 1, with multiplier field
    GradShrink,    // tau * integral of |grad u|, shrink residual
    GradPrimal,    // tau * integral of |grad u|, alignment residual
    Friction,      // tau * integral of |u| over the contact boundary
    ObstacleSoft,  // Obstacle with the boundary condition penalized, not built in
};

struct EviProblem {
    CaseTag tag = CaseTag::Obstacle;
    OperatorSpec op;
    ScalarFn f;
    std::optional<ScalarFn> psi;  // Obstacle / ObstacleSoft
    std::optional<double> tau;    // AbsValue / Grad* / Friction
    double eta = 1e-3;
    double w1 = 1.0, w2 = 1.0, w3 = 1.0;
    std::optional<double> wb;  // ObstacleSoft boundary weight
};

// --- pointwise residuals ------------------------------------------------------
//
// Every residual is the defining fixed-point equation evaluated literally, so
// plugging an exact solution (with its consistent multiplier where one
// exists) drives each component to zero.

namespace detail {
inline double sign_of(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }
}  // namespace detail

// relu((I - eta A)u + eta f - psi) + psi - u
template <typename S>
S residual_obstacle(const EviProblem& p, const ad::Jet2<S>& u, std::span<const double> x) {
    if (!p.psi) throw StateError("residual_obstacle: no obstacle in problem");
    const S au = apply_operator(p.op, u, x);
    const double psi = (*p.psi)(x);
    const S w = u.value - p.eta * au + p.eta * p.f(x);
    return ad::relu(w - psi) + (psi - u.value);
}

// sgn(w) relu(|w| - tau eta) - u  with  w = (I - eta A)u + eta f
template <typename S>
S residual_absvalue(const EviProblem& p, const ad::Jet2<S>& u, std::span<const double> x) {
    if (!p.tau) throw StateError("residual_absvalue: no tau in problem");
    const S au = apply_operator(p.op, u, x);
    const S w = u.value - p.eta * au + p.eta * p.f(x);
    const double s = detail::sign_of(ad::value_of(w));
    return s * ad::relu(ad::abs(w) - *p.tau * p.eta) - u.value;
}

template <typename S>
struct VecScalarResidual {
    std::vector<S> r1;
    S r2;
};

namespace detail {

template <typename S>
std::vector<S> shifted_gradient(const ad::Jet2<S>& u, std::span<const ad::Jet2<S>> lambda, double eta) {
    std::vector<S> q(static_cast<std::size_t>(u.dim()));
    for (int i = 0; i < u.dim(); ++i) q[static_cast<std::size_t>(i)] = u.grad[i] - eta * lambda[static_cast<std::size_t>(i)].value;
    return q;
}

template <typename S>
S pde_with_divergence(const EviProblem& p, const ad::Jet2<S>& u,
                      std::span<const ad::Jet2<S>> lambda, std::span<const double> x) {
    S div = ad::make_constant<S>(0.0);
    for (int i = 0; i < u.dim(); ++i) div = div + lambda[static_cast<std::size_t>(i)].grad[i];
    return apply_operator(p.op, u, x) - p.f(x) + div;
}

template <typename S>
S norm_value(std::span<const S> q, double* out_val) {
    double n2 = 0.0;
    for (const S& qi : q) n2 += ad::value_of(qi) * ad::value_of(qi);
    *out_val = std::sqrt(n2);
    S acc = ad::make_constant<S>(0.0);
    for (const S& qi : q) acc = acc + qi * qi;
    return acc;  // recorded |q|^2; caller takes sqrt only off zero
}

}  // namespace detail

// r1 = q / (relu(|q| - 1) + 1) - grad u,  q = grad u - eta lambda
// r2 = A u - f + div lambda
// The denominator is kept in this literal form; it equals max(1, |q|).
template <typename S>
VecScalarResidual<S> residual_gradient_ball(const EviProblem& p, const ad::Jet2<S>& u,
                                            std::span<const ad::Jet2<S>> lambda,
                                            std::span<const double> x) {
    if (static_cast<int>(lambda.size()) != u.dim())
        throw ArgumentError("residual_gradient_ball: multiplier dimension mismatch");
    const std::vector<S> q = detail::shifted_gradient(u, lambda, p.eta);
    double qn;
    const S q2 = detail::norm_value<S>(q, &qn);
    VecScalarResidual<S> out;
    out.r1.resize(q.size());
    if (qn == 0.0) {
        for (std::size_t i = 0; i < q.size(); ++i) out.r1[i] = q[i] - u.grad[static_cast<int>(i)];
    } else {
        const S denom = ad::relu(ad::sqrt(q2) - 1.0) + 1.0;
        for (std::size_t i = 0; i < q.size(); ++i) out.r1[i] = q[i] / denom - u.grad[static_cast<int>(i)];
    }
    out.r2 = detail::pde_with_divergence(p, u, lambda, x);
    return out;
}

// r1 = (q / |q|) relu(|q| - tau eta) - grad u, zero-vector branch when
// |q| <= tau eta (including q = 0); r2 as above.
template <typename S>
VecScalarResidual<S> residual_grad_shrink(const EviProblem& p, const ad::Jet2<S>& u,
                                          std::span<const ad::Jet2<S>> lambda,
                                          std::span<const double> x) {
    if (!p.tau) throw StateError("residual_grad_shrink: no tau in problem");
    if (static_cast<int>(lambda.size()) != u.dim())
        throw ArgumentError("residual_grad_shrink: multiplier dimension mismatch");
    const double kappa = *p.tau * p.eta;
    const std::vector<S> q = detail::shifted_gradient(u, lambda, p.eta);
    double qn;
    const S q2 = detail::norm_value<S>(q, &qn);
    VecScalarResidual<S> out;
    out.r1.resize(q.size());
    if (qn <= kappa) {
        for (std::size_t i = 0; i < q.size(); ++i) out.r1[i] = -u.grad[static_cast<int>(i)];
    } else {
        const S qnorm = ad::sqrt(q2);
        const S factor = ad::relu(qnorm - kappa) / qnorm;
        for (std::size_t i = 0; i < q.size(); ++i) out.r1[i] = q[i] * factor - u.grad[static_cast<int>(i)];
    }
    out.r2 = detail::pde_with_divergence(p, u, lambda, x);
    return out;
}

template <typename S>
struct TwoScalarResidual {
    S r1;
    S r2;
};

// r1 = lambda . grad u + tau |grad u|   (multiplier must be clamped)
// r2 = A u - f + div lambda
// |grad u| uses subgradient 0 at grad u = 0: the term vanishes there.
template <typename S>
TwoScalarResidual<S> residual_grad_primal(const EviProblem& p, const ad::Jet2<S>& u,
                                          std::span<const ad::Jet2<S>> lambda,
                                          std::span<const double> x, bool lambda_clamped) {
    if (!p.tau) throw StateError("residual_grad_primal: no tau in problem");
    if (!lambda_clamped) throw StateError("residual_grad_primal: multiplier is not clamped");
    if (static_cast<int>(lambda.size()) != u.dim())
        throw ArgumentError("residual_grad_primal: multiplier dimension mismatch");
    S dot = ad::make_constant<S>(0.0);
    for (int i = 0; i < u.dim(); ++i) dot = dot + lambda[static_cast<std::size_t>(i)].value * u.grad[i];
    double gn;
    const S g2 = detail::norm_value<S>(std::span<const S>(u.grad), &gn);
    TwoScalarResidual<S> out;
    out.r1 = gn == 0.0 ? dot : dot + *p.tau * ad::sqrt(g2);
    out.r2 = detail::pde_with_divergence(p, u, lambda, x);
    return out;
}

// Contact-boundary residuals: slip = lambda u + tau |u|, flux = du/dn - lambda.
template <typename S>
TwoScalarResidual<S> residual_friction_boundary(const EviProblem& p, const ad::Jet2<S>& u,
                                                const ad::Jet2<S>& lambda,
                                                std::span<const double> normal) {
    if (!p.tau) throw StateError("residual_friction_boundary: no tau in problem");
    if (static_cast<int>(normal.size()) != u.dim())
        throw ArgumentError("residual_friction_boundary: normal dimension mismatch");
    TwoScalarResidual<S> out;
    out.r1 = lambda.value * u.value + *p.tau * ad::abs(u.value);
    S dn = ad::make_constant<S>(0.0);
    for (int i = 0; i < u.dim(); ++i) dn = dn + normal[static_cast<std::size_t>(i)] * u.grad[i];
    out.r2 = dn - lambda.value;
    return out;
}

// Plain equation residual A u - f (friction interior term).
template <typename S>
S residual_pde(const EviProblem& p, const ad::Jet2<S>& u, std::span<const double> x) {
    return apply_operator(p.op, u, x) - p.f(x);
}

// --- residual collection and the training loss -------------------------------

enum class ResidualSet { Interior, Boundary };

template <typename S>
struct ResidualTerm {
    S r;
    double weight;
    ResidualSet set;
    const char* name;
};

template <typename S>
void collect_interior_residuals(const EviProblem& p, const SurrogateField& sf, NetEval<S>& ctx,
                                std::span<const double> x, std::vector<ResidualTerm<S>>& out) {
    switch (p.tag) {
        case CaseTag::Obstacle:
        case CaseTag::ObstacleSoft: {
            auto s = eval_surrogate<S>(sf, ctx, x, false);
            out.push_back({residual_obstacle(p, s.u, x), p.w1, ResidualSet::Interior, "prox"});
            break;
        }
        case CaseTag::AbsValue: {
            auto s = eval_surrogate<S>(sf, ctx, x, false);
            out.push_back({residual_absvalue(p, s.u, x), p.w1, ResidualSet::Interior, "prox"});
            break;
        }
        case CaseTag::GradientBall: {
            auto s = eval_surrogate<S>(sf, ctx, x, true);
            auto r = residual_gradient_ball<S>(p, s.u, s.lambda, x);
            for (S& c : r.r1) out.push_back({c, p.w1, ResidualSet::Interior, "prox"});
            out.push_back({r.r2, p.w2, ResidualSet::Interior, "pde"});
            break;
        }
        case CaseTag::GradShrink: {
            auto s = eval_surrogate<S>(sf, ctx, x, true);
            auto r = residual_grad_shrink<S>(p, s.u, s.lambda, x);
            for (S& c : r.r1) out.push_back({c, p.w1, ResidualSet::Interior, "prox"});
            out.push_back({r.r2, p.w2, ResidualSet::Interior, "pde"});
            break;
        }
        case CaseTag::GradPrimal: {
            auto s = eval_surrogate<S>(sf, ctx, x, true);
            auto r = residual_grad_primal<S>(p, s.u, s.lambda, x, sf.tau_clamp.has_value());
            out.push_back({r.r1, p.w1, ResidualSet::Interior, "align"});
            out.push_back({r.r2, p.w2, ResidualSet::Interior, "pde"});
            break;
        }
        case CaseTag::Friction: {
            auto s = eval_surrogate<S>(sf, ctx, x, false);
            out.push_back({residual_pde(p, s.u, x), p.w3, ResidualSet::Interior, "pde"});
            break;
        }
    }
}

template <typename S>
void collect_boundary_residuals(const EviProblem& p, const SurrogateField& sf, NetEval<S>& ctx,
                                std::span<const double> x, std::span<const double> normal,
                                std::vector<ResidualTerm<S>>& out) {
    switch (p.tag) {
        case CaseTag::Friction: {
            auto s = eval_surrogate<S>(sf, ctx, x, true);
            auto r = residual_friction_boundary<S>(p, s.u, s.lambda[0], normal);
            out.push_back({r.r1, p.w1, ResidualSet::Boundary, "slip"});
            out.push_back({r.r2, p.w2, ResidualSet::Boundary, "flux"});
            break;
        }
        case CaseTag::ObstacleSoft: {
            auto s = eval_surrogate<S>(sf, ctx, x, false);
            out.push_back({s.u.value, p.wb.value_or(1.0), ResidualSet::Boundary, "boundary"});
            break;
        }
        default:
            throw StateError("collect_boundary_residuals: problem has no boundary residual");
    }
}

inline bool needs_boundary_set(CaseTag tag) {
    return tag == CaseTag::Friction || tag == CaseTag::ObstacleSoft;
}

// Named per-point residual components; loss = sum_k weight_k * mean(comp_k^2),
// means taken over that component's own point set.
struct ResidualReport {
    struct Component {
        std::string name;
        double weight = 1.0;
        std::vector<double> values;
    };
    std::vector<Component> components;
    double loss = 0.0;
};

ResidualReport residual_report(const EviProblem& p, const SurrogateField& sf,
                               const Points& interior, const BoundaryPoints* boundary);

struct LossResult {
    double loss = 0.0;
    std::vector<double> grad;  // canonical parameter order
};

// Mean-square residual loss and its exact parameter gradient. Reusable across
// epochs; point chunks are split statically and partial results are combined
// in chunk order, so a given (points, threads) pair always reduces in the
// same order and the result is bitwise reproducible.
class LossContext {
  public:
    LossResult evaluate(const EviProblem& p, const SurrogateField& sf, const Points& interior,
                        const BoundaryPoints* boundary, int threads);

  private:
    struct Worker {
        ad::Tape tape;
        std::vector<ad::Var> leaves;
        std::vector<ResidualTerm<ad::Var>> terms;
        double loss = 0.0;
        std::vector<double> grad;
    };
    std::vector<Worker> workers_;
};

}  // namespace proxevi
