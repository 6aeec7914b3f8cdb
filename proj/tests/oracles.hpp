#pragma once

// Test-only oracles, kept independent of the library paths they check:
// central finite differences for every derivative claim and brute-force grid
// minimizers for the proximal maps.

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace oracles {

inline double fd_grad(const std::function<double(double)>& f, double x, double h = 1e-4) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double fd_hess(const std::function<double(double)>& f, double x, double h = 1e-3) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// partial derivatives of a multivariate scalar along coordinate i
inline double fd_grad_i(const std::function<double(std::span<const double>)>& f,
                        std::span<const double> x, std::size_t i, double h = 1e-4) {
    std::vector<double> p(x.begin(), x.end());
    p[i] = x[i] + h;
    const double fp = f(p);
    p[i] = x[i] - h;
    const double fm = f(p);
    return (fp - fm) / (2.0 * h);
}

inline double fd_hess_i(const std::function<double(std::span<const double>)>& f,
                        std::span<const double> x, std::size_t i, double h = 1e-3) {
    std::vector<double> p(x.begin(), x.end());
    const double f0 = f(p);
    p[i] = x[i] + h;
    const double fp = f(p);
    p[i] = x[i] - h;
    const double fm = f(p);
    return (fp - 2.0 * f0 + fm) / (h * h);
}

// |a - b| measured against max(1, |a|, |b|)
inline double rel_err(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return std::abs(a - b) / scale;
}

// argmin over the grid {lo + k step} of a 1d objective
inline double grid_argmin(const std::function<double(double)>& objective, double lo, double hi,
                          double step) {
    double best_v = lo, best = objective(lo);
    for (double v = lo; v <= hi; v += step) {
        const double o = objective(v);
        if (o < best) {
            best = o;
            best_v = v;
        }
    }
    return best_v;
}

// argmin over an n x n grid on [lo, hi]^2
inline std::vector<double> grid_argmin_2d(
    const std::function<double(double, double)>& objective, double lo, double hi, int n) {
    double best = objective(lo, lo);
    std::vector<double> best_v{lo, lo};
    for (int i = 0; i < n; ++i) {
        const double a = lo + (hi - lo) * i / (n - 1.0);
        for (int j = 0; j < n; ++j) {
            const double b = lo + (hi - lo) * j / (n - 1.0);
            const double o = objective(a, b);
            if (o < best) {
                best = o;
                best_v = {a, b};
            }
        }
    }
    return best_v;
}

}  // namespace oracles
