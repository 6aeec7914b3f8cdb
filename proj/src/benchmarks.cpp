#include "proxevi/benchmarks.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace proxevi::bench {

namespace {

using ad::Jet2d;

constexpr double kInf = std::numeric_limits<double>::infinity();

Jet2d jet1(double v, double d1, double d2) { return Jet2d{v, {d1}, {d2}}; }

// |x|^2 in 2D: value, grad 2x, hess (2, 2)
Jet2d rho_jet(std::span<const double> x) {
    return Jet2d{x[0] * x[0] + x[1] * x[1], {2.0 * x[0], 2.0 * x[1]}, {2.0, 2.0}};
}

double norm2d(std::span<const double> x) { return std::hypot(x[0], x[1]); }

// --- the symmetric 1D obstacle problem ---------------------------------------

// contact boundary 1/(2 sqrt 2)
const double kSym_s = 0.5 / std::numbers::sqrt2;
const double kSym_slope = 100.0 - 50.0 * std::numbers::sqrt2;

double sym_psi(double x) {
    if (x > 0.5) x = 1.0 - x;
    if (x <= 0.25) return 100.0 * x * x;
    return 100.0 * x * (1.0 - x) - 12.5;
}

Jet2d sym_exact(std::span<const double> xs) {
    const double x = xs[0];
    if (x < kSym_s) return jet1(kSym_slope * x, kSym_slope, 0.0);
    if (x < 1.0 - kSym_s) return jet1(100.0 * x * (1.0 - x) - 12.5, 100.0 - 200.0 * x, -200.0);
    return jet1(kSym_slope * (1.0 - x), -kSym_slope, 0.0);
}

// --- the non-symmetric 1D obstacle problem -----------------------------------

const double kNs_k = 4.0 - 2.0 * std::numbers::sqrt3;  // slope of the linear pieces
const double kNs_a = -2.0 + std::numbers::sqrt3;       // left contact boundary

double nonsym_f(double x) {
    if (x < kNs_a) return kNs_k;
    if (x <= -kNs_a) return -(2.0 * std::numbers::sqrt3 - 2.0);
    return -kNs_k;
}

Jet2d nonsym_exact(std::span<const double> xs) {
    const double x = xs[0];
    if (x < kNs_a) return jet1(kNs_k * (x + 2.0), kNs_k, 0.0);
    if (x < -kNs_a) return jet1(1.0 - x * x, -2.0 * x, -2.0);
    return jet1(kNs_k * (2.0 - x), -kNs_k, 0.0);
}

// --- the piecewise-smooth 1D obstacle problem --------------------------------

constexpr double kPwBeta = 0.02376;
constexpr double kPwExponent = 0.4;  // obstacle cusp exponent

struct Val2 {
    double v, d1, d2;
};

// exp(-1/x) extended by zero for x <= 0; flushed to zero for tiny positive x
// so that the 1/x^4 factor in the second derivative cannot overflow into the
// product.
Val2 mu_exp(double x) {
    constexpr double x_min = 1e-3 / 709.0;
    if (x <= x_min) return {0.0, 0.0, 0.0};
    const double inv = 1.0 / x;
    const double v = std::exp(-inv);
    return {v, v * inv * inv, v * (inv * inv * inv * inv - 2.0 * inv * inv * inv)};
}

// smooth partition function: 1 for |t| <= 0.3, 0 for |t| >= 0.4
Val2 pw_phi(double t) {
    const double a = std::abs(t);
    if (a <= 0.3) return {1.0, 0.0, 0.0};
    if (a >= 0.4) return {0.0, 0.0, 0.0};
    const double s = t > 0.0 ? 1.0 : -1.0;
    const Val2 m1 = mu_exp(0.4 - a);
    const Val2 m2 = mu_exp(a - 0.3);
    const double m1t = -m1.d1 * s, m2t = m2.d1 * s;
    const double D = m1.v + m2.v;
    const double N = m1t * m2.v - m1.v * m2t;
    const double Np = m1.d2 * m2.v - m1.v * m2.d2;
    const double Dp = m1t + m2t;
    return {m1.v / D, N / (D * D), Np / (D * D) - 2.0 * N * Dp / (D * D * D)};
}

// phi(t) (3/2 - 12 |t|^(2-alpha)) - 1/2 as a function of t
Val2 pw_psi_of_t(double t) {
    const double a = std::abs(t);
    const double s = t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
    const double e = 2.0 - kPwExponent;
    const Val2 f = pw_phi(t);
    const double p = 1.5 - 12.0 * std::pow(a, e);
    const double p1 = -12.0 * e * std::pow(a, e - 1.0) * s;
    const double p2 = -12.0 * e * (e - 1.0) * std::pow(a, e - 2.0);
    return {f.v * p - 0.5, f.d1 * p + f.v * p1, f.d2 * p + 2.0 * f.d1 * p1 + f.v * p2};
}

Jet2d pw_psi(std::span<const double> xs) {
    const double x = xs[0];
    const Val2 r = pw_psi_of_t(x <= 0.0 ? x + 0.5 : x - 0.5);
    return jet1(r.v, r.d1, r.d2);
}

Jet2d pw_exact(std::span<const double> xs) {
    const double x = xs[0];
    // contact value at the edge pieces (obstacle is even)
    const double pc = pw_psi_of_t(-kPwBeta).v;
    if (x < -0.5 - kPwBeta) {
        const double slope = pc / (0.5 - kPwBeta);
        return jet1(slope * (x + 1.0), slope, 0.0);
    }
    if (x < -0.5) return pw_psi(xs);
    if (x < 0.5) return jet1(1.0, 0.0, 0.0);
    if (x < 0.5 + kPwBeta) return pw_psi(xs);
    const double slope = pc / (kPwBeta - 0.5);
    return jet1(slope * (x - 1.0), slope, 0.0);
}

// --- the 2D obstacle problem --------------------------------------------------

constexpr double kContactRadius = 0.6979651482;

// sqrt(1 - |x|^2) via rho = |x|^2
Jet2d dome_jet(std::span<const double> x) {
    const Jet2d rho = rho_jet(x);
    const double s = std::sqrt(1.0 - rho.value);
    return ad::compose1(s, -0.5 / s, -0.25 / (s * s * s), rho);
}

// outer branch -(r*)^2 ln(|x|/2) / sqrt(1-(r*)^2) = -(k/2) ln(rho/4)
Jet2d log_branch_jet(std::span<const double> x) {
    const double r2 = kContactRadius * kContactRadius;
    const double k = r2 / std::sqrt(1.0 - r2);
    const Jet2d rho = rho_jet(x);
    const double v = -0.5 * k * std::log(rho.value / 4.0);
    return ad::compose1(v, -0.5 * k / rho.value, 0.5 * k / (rho.value * rho.value), rho);
}

Jet2d ob2d_exact(std::span<const double> x) {
    return norm2d(x) <= kContactRadius ? dome_jet(x) : log_branch_jet(x);
}

Jet2d ob2d_psi(std::span<const double> x) {
    if (norm2d(x) <= 1.0) return dome_jet(x);
    return ad::jet_constant<double>(-1.0, 2);
}

// Edge trace of the exact solution as a field of x, e.g. x -> u(a, x2):
// the frozen coordinate contributes no derivatives.
Jet2d ob2d_edge_trace(int frozen_axis, double frozen_value, std::span<const double> x) {
    const double p[2] = {frozen_axis == 0 ? frozen_value : x[0],
                         frozen_axis == 1 ? frozen_value : x[1]};
    Jet2d full = log_branch_jet(p);  // |p| >= 2 on every edge
    full.grad[frozen_axis] = 0.0;
    full.hess[frozen_axis] = 0.0;
    return full;
}

// Bilinear blend of the four edge traces of the exact solution, so the lift
// agrees with it on the whole frame of the square.
Jet2d ob2d_lift(std::span<const double> x) {
    constexpr double a = -2.0, b = 2.0, c = -2.0, d = 2.0;
    const Jet2d w1 = Jet2d{(x[0] - a) / (b - a), {1.0 / (b - a), 0.0}, {0.0, 0.0}};
    const Jet2d w2 = Jet2d{(x[1] - c) / (d - c), {0.0, 1.0 / (d - c)}, {0.0, 0.0}};
    const Jet2d one = ad::jet_constant<double>(1.0, 2);
    const Jet2d om1 = one - w1;
    const Jet2d om2 = one - w2;

    const Jet2d ua = ob2d_edge_trace(0, a, x);
    const Jet2d ub = ob2d_edge_trace(0, b, x);
    const Jet2d uc = ob2d_edge_trace(1, c, x);
    const Jet2d ud = ob2d_edge_trace(1, d, x);
    auto corner = [&](double cx, double cy) {
        const double p[2] = {cx, cy};
        return log_branch_jet(p).value;
    };

    Jet2d g = om1 * ua + w1 * ub + om2 * uc + w2 * ud;
    g = g - ad::scale(om1 * om2, corner(a, c));
    g = g - ad::scale(om1 * w2, corner(a, d));
    g = g - ad::scale(w1 * om2, corner(b, c));
    g = g - ad::scale(w1 * w2, corner(b, d));
    return g;
}

// (x1-a)(b-x1)(x2-c)(d-x2) normalized by its max (b-a)^2 (d-c)^2 / 16
Jet2d ob2d_h(std::span<const double> x) {
    const double n = 16.0;  // (4^2 * 4^2) / 16
    const double p = 4.0 - x[0] * x[0], q = 4.0 - x[1] * x[1];
    return Jet2d{p * q / n,
                 {-2.0 * x[0] * q / n, -2.0 * x[1] * p / n},
                 {-2.0 * q / n, -2.0 * p / n}};
}

// --- disk problems (torsion and visco-plastic flow) ---------------------------

// radial multiplier s(r) * x / r as jets, for s(r) = c/2 * r - kappa (i.e.
// lambda_j = (c/2) x_j - kappa x_j / r)
std::vector<Jet2d> radial_multiplier(std::span<const double> x, double c_half, double kappa) {
    const Jet2d r = ad::radial(x);
    const Jet2d invr = ad::compose1(1.0 / r.value, -1.0 / (r.value * r.value),
                                    2.0 / (r.value * r.value * r.value), r);
    std::vector<Jet2d> lam(2);
    for (int j = 0; j < 2; ++j) {
        const Jet2d xj = ad::lift<double>(x, j);
        lam[static_cast<std::size_t>(j)] = ad::scale(xj, c_half) - ad::scale(xj * invr, kappa);
    }
    return lam;
}

Jet2d torsion_exact(std::span<const double> x, double c, double R) {
    const Jet2d rho = rho_jet(x);
    if (c * R <= 2.0) {
        // fully elastic: c/4 (R^2 - |x|^2)
        return ad::compose1(0.25 * c * (R * R - rho.value), -0.25 * c, 0.0, rho);
    }
    const double r0 = 2.0 / c;
    if (norm2d(x) >= r0) {
        const Jet2d r = ad::radial(x);
        return ad::compose1(R - r.value, -1.0, 0.0, r);
    }
    const double shift = (R - r0) * (R - r0);
    return ad::compose1(0.25 * c * (R * R - rho.value - shift), -0.25 * c, 0.0, rho);
}

std::vector<Jet2d> torsion_lambda(std::span<const double> x, double c, double R) {
    const double r0 = 2.0 / c;
    if (c * R <= 2.0 || norm2d(x) <= r0)
        return {ad::jet_constant<double>(0.0, 2), ad::jet_constant<double>(0.0, 2)};
    return radial_multiplier(x, 0.5 * c, 1.0);
}

Jet2d bingham_exact(std::span<const double> x, double c, double tau, double R) {
    if (c * R <= 2.0 * tau) return ad::jet_constant<double>(0.0, 2);
    const double rc = 2.0 * tau / c;  // rigid-core radius
    const double r = norm2d(x);
    if (r <= rc) {
        const double v = 0.5 * (R - rc) * (0.5 * c * (R + rc) - 2.0 * tau);
        return ad::jet_constant<double>(v, 2);
    }
    // c/4 (R^2 - |x|^2) - tau (R - |x|)
    const Jet2d rho = rho_jet(x);
    const Jet2d quad = ad::compose1(0.25 * c * (R * R - rho.value), -0.25 * c, 0.0, rho);
    const Jet2d rad = ad::radial(x);
    const Jet2d lin = ad::compose1(tau * (R - rad.value), -tau, 0.0, rad);
    return quad - lin;
}

std::vector<Jet2d> bingham_lambda(std::span<const double> x, double c, double tau, double R) {
    const double rc = 2.0 * tau / c;
    if (c * R <= 2.0 * tau || norm2d(x) <= rc) {
        std::vector<Jet2d> lam(2);
        for (int j = 0; j < 2; ++j) {
            Jet2d l = ad::jet_constant<double>(0.0, 2);
            l.value = 0.5 * c * x[static_cast<std::size_t>(j)];
            l.grad[j] = 0.5 * c;
            lam[static_cast<std::size_t>(j)] = l;
        }
        return lam;
    }
    return radial_multiplier(x, 0.0, -tau);  // tau x / r
}

Jet2d disk_h(std::span<const double> x, double R) {
    const Jet2d rho = rho_jet(x);
    return ad::compose1(R * R - rho.value, -1.0, 0.0, rho);
}

// --- the friction problem ------------------------------------------------------

Jet2d friction_exact(std::span<const double> x) {
    const double s1 = std::sin(1.0);
    const double F = std::sin(x[0]) - x[0] * s1;
    const double F1 = std::cos(x[0]) - s1;
    const double F2 = -std::sin(x[0]);
    const double tp = 2.0 * std::numbers::pi;
    const double G = std::sin(tp * x[1]);
    const double G1 = tp * std::cos(tp * x[1]);
    const double G2 = -tp * tp * G;
    return Jet2d{F * G, {F1 * G, F * G1}, {F2 * G, F * G2}};
}

double friction_f(std::span<const double> x) {
    const double pi2 = 4.0 * std::numbers::pi * std::numbers::pi;
    return ((2.0 + pi2) * std::sin(x[0]) - (1.0 + pi2) * x[0] * std::sin(1.0)) *
           std::sin(2.0 * std::numbers::pi * x[1]);
}

// normal derivative field du/dx1, which on the contact edge equals the
// multiplier of the exact solution
std::vector<Jet2d> friction_lambda(std::span<const double> x) {
    const double s1 = std::sin(1.0);
    const double tp = 2.0 * std::numbers::pi;
    const double F1 = std::cos(x[0]) - s1;
    const double F2 = -std::sin(x[0]);
    const double F3 = -std::cos(x[0]);
    const double G = std::sin(tp * x[1]);
    const double G1 = tp * std::cos(tp * x[1]);
    const double G2 = -tp * tp * G;
    return {Jet2d{F1 * G, {F2 * G, F1 * G1}, {F3 * G, F1 * G2}}};
}

Jet2d friction_h(std::span<const double> x) {
    // 4 x1 x2 (1 - x2): zero exactly on the three Dirichlet edges
    return Jet2d{4.0 * x[0] * x[1] * (1.0 - x[1]),
                 {4.0 * x[1] * (1.0 - x[1]), 4.0 * x[0] * (1.0 - 2.0 * x[1])},
                 {0.0, -8.0 * x[0]}};
}

// -------------------------------------------------------------------------------

ScalarField field1(std::function<Jet2d(std::span<const double>)> f) { return {1, std::move(f)}; }
ScalarField field2(std::function<Jet2d(std::span<const double>)> f) { return {2, std::move(f)}; }

double seam_dist_1d(double x, std::initializer_list<double> seams) {
    double d = kInf;
    for (double s : seams) d = std::min(d, std::abs(x - s));
    return d;
}

}  // namespace

std::vector<std::string> benchmark_names() {
    return {"obstacle1d_sym", "obstacle1d_nonsym", "obstacle1d_piecewise", "obstacle2d",
            "torsion2d",      "bingham2d",         "friction2d"};
}

BenchmarkCase make_benchmark(const std::string& name, const BenchmarkParams& params) {
    BenchmarkCase bc;
    bc.name = name;

    if (name == "obstacle1d_sym") {
        bc.domain.shape = Interval{0.0, 1.0};
        bc.problem.tag = CaseTag::Obstacle;
        bc.problem.op.alpha = 1.0;
        bc.problem.f = [](std::span<const double>) { return 0.0; };
        bc.problem.psi = [](std::span<const double> x) { return sym_psi(x[0]); };
        bc.boundary.h = field1([](std::span<const double> x) {
            return jet1(x[0] * (1.0 - x[0]), 1.0 - 2.0 * x[0], -2.0);
        });
        bc.boundary.g = ScalarField::zero(1);
        bc.exact_u = field1(sym_exact);
        bc.seam_distance = [](std::span<const double> x) {
            return seam_dist_1d(x[0], {kSym_s, 1.0 - kSym_s});
        };
        bc.defaults = {50, 1000, 10000, 3, 100, 1};
        return bc;
    }

    if (name == "obstacle1d_nonsym") {
        bc.domain.shape = Interval{-2.0, 2.0};
        bc.problem.tag = CaseTag::Obstacle;
        bc.problem.op.alpha = 1.0;
        bc.problem.op.beta = {Coef(1.0)};  // divergence-free (constant drift)
        bc.problem.f = [](std::span<const double> x) { return nonsym_f(x[0]); };
        bc.problem.psi = [](std::span<const double> x) { return 1.0 - x[0] * x[0]; };
        bc.boundary.h = field1([](std::span<const double> x) {
            return jet1(0.25 * (4.0 - x[0] * x[0]), -0.5 * x[0], -0.5);
        });
        bc.boundary.g = ScalarField::zero(1);
        bc.exact_u = field1(nonsym_exact);
        bc.seam_distance = [](std::span<const double> x) {
            return seam_dist_1d(x[0], {kNs_a, -kNs_a});
        };
        bc.defaults = {50, 1000, 10000, 3, 100, 1};
        return bc;
    }

    if (name == "obstacle1d_piecewise") {
        bc.domain.shape = Interval{-1.0, 1.0};
        bc.problem.tag = CaseTag::Obstacle;
        bc.problem.op.alpha = 1.0;
        bc.problem.f = [](std::span<const double>) { return 0.0; };
        bc.problem.psi = [](std::span<const double> x) { return pw_psi(x).value; };
        bc.boundary.h = field1([](std::span<const double> x) {
            return jet1(1.0 - x[0] * x[0], -2.0 * x[0], -2.0);
        });
        bc.boundary.g = ScalarField::zero(1);
        bc.exact_u = field1(pw_exact);
        bc.seam_distance = [](std::span<const double> x) {
            return seam_dist_1d(x[0], {-0.5 - kPwBeta, -0.5, 0.5, 0.5 + kPwBeta});
        };
        bc.defaults = {50, 1000, 10000, 3, 100, 1};
        return bc;
    }

    if (name == "obstacle2d") {
        bc.domain.shape = Rectangle{-2.0, 2.0, -2.0, 2.0};
        bc.problem.tag = CaseTag::Obstacle;
        bc.problem.op.alpha = 1.0;
        bc.problem.f = [](std::span<const double>) { return 0.0; };
        bc.problem.psi = [](std::span<const double> x) { return ob2d_psi(x).value; };
        bc.boundary.h = field2(ob2d_h);
        bc.boundary.g = field2(ob2d_lift);
        bc.exact_u = field2(ob2d_exact);
        bc.seam_distance = [](std::span<const double> x) {
            return std::abs(norm2d(x) - kContactRadius);
        };
        bc.defaults = {1000, 10000, 10000, 5, 100, 1};
        return bc;
    }

    if (name == "torsion2d") {
        const double c = params.c.value_or(1.0);
        const double R = 1.0;
        bc.domain.shape = Disk{0.0, 0.0, R};
        bc.problem.tag = CaseTag::GradientBall;
        bc.problem.op.alpha = 1.0;
        bc.problem.f = [c](std::span<const double>) { return c; };
        bc.boundary.h = field2([R](std::span<const double> x) { return disk_h(x, R); });
        bc.boundary.g = ScalarField::zero(2);
        bc.exact_u = field2([c, R](std::span<const double> x) { return torsion_exact(x, c, R); });
        bc.exact_lambda = VectorField{
            2, [c, R](std::span<const double> x) { return torsion_lambda(x, c, R); }};
        bc.seam_distance = [c](std::span<const double> x) {
            return c <= 2.0 ? kInf : std::abs(norm2d(x) - 2.0 / c);
        };
        bc.defaults = {1000, 10000, 10000, 3, 100, 3};
        bc.const_c = c;
        bc.radius = R;
        return bc;
    }

    if (name == "bingham2d") {
        const double tau = params.tau.value_or(1.0);
        const double c = params.c.value_or(10.0);
        const double R = 1.0;
        const double nu = 1.0;  // unit viscosity
        bc.domain.shape = Disk{0.0, 0.0, R};
        bc.problem.tag = CaseTag::GradPrimal;
        bc.problem.op.alpha = nu;
        bc.problem.tau = tau;
        bc.problem.f = [c](std::span<const double>) { return c; };
        bc.boundary.h = field2([R](std::span<const double> x) { return disk_h(x, R); });
        bc.boundary.g = ScalarField::zero(2);
        bc.exact_u =
            field2([c, tau, R](std::span<const double> x) { return bingham_exact(x, c, tau, R); });
        bc.exact_lambda = VectorField{
            2, [c, tau, R](std::span<const double> x) { return bingham_lambda(x, c, tau, R); }};
        bc.seam_distance = [c, tau](std::span<const double> x) {
            return c <= 2.0 * tau ? kInf : std::abs(norm2d(x) - 2.0 * tau / c);
        };
        bc.defaults = {1000, 10000, 20000, 10, 50, 3};
        bc.lambda_clamped = true;
        bc.const_c = c;
        bc.const_tau = tau;
        bc.radius = R;
        return bc;
    }

    if (name == "friction2d") {
        const double tau = params.tau.value_or(1.0);
        bc.domain.shape = Rectangle{0.0, 1.0, 0.0, 1.0};
        bc.domain.has_contact_edge = true;
        bc.problem.tag = CaseTag::Friction;
        bc.problem.op.alpha = 1.0;
        bc.problem.op.gamma = 1.0;
        bc.problem.tau = tau;
        bc.problem.f = friction_f;
        bc.boundary.h = field2(friction_h);
        bc.boundary.g = ScalarField::zero(2);
        bc.exact_u = field2(friction_exact);
        bc.exact_lambda = VectorField{2, friction_lambda};
        bc.seam_distance = [](std::span<const double>) { return kInf; };
        bc.defaults = {1000, 10000, 10000, 4, 50, 2};
        bc.lambda_clamped = true;
        bc.const_tau = tau;
        return bc;
    }

    throw ArgumentError("unknown benchmark '" + name + "'");
}

double refine_contact_radius() {
    // root of r^2 (1 - ln(r/2)) = 1 in (0.5, 0.9)
    auto g = [](double r) { return r * r * (1.0 - std::log(0.5 * r)) - 1.0; };
    double lo = 0.5, hi = 0.9;  // g < 0 at lo, g > 0 at hi
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

double refine_piecewise_beta() {
    // root of psi(-b-0.5) - (0.5-b) psi'(-b-0.5) = 0 in (0, 0.3)
    auto g = [](double b) {
        const Val2 p = pw_psi_of_t(-b);
        return p.v - (0.5 - b) * p.d1;
    };
    double lo = 1e-6, hi = 0.3;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace proxevi::bench
