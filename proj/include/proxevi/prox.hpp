#pragma once

#include <cmath>
#include <span>
#include <variant>
#include <vector>

#include "proxevi/errors.hpp"

namespace proxevi::prox {

// Pointwise proximal maps. Each has a closed form; the test suite pairs every
// one with a brute-force grid minimizer of its defining objective.

// argmin over {v >= psi} of (v - w)^2 / (2 eta): clamp from below.
inline double obstacle_clamp(double w, double psi) { return w > psi ? w : psi; }

// argmin of kappa |v| + (v - w)^2 / 2: shrink toward zero by kappa.
inline double soft_threshold(double w, double kappa) {
    if (kappa < 0.0) throw ArgumentError("soft_threshold: negative kappa");
    if (w > kappa) return w - kappa;
    if (w < -kappa) return w + kappa;
    return 0.0;
}

// Projection onto the closed unit ball.
inline std::vector<double> unit_ball_project(std::span<const double> q) {
    double n2 = 0.0;
    for (double qi : q) n2 += qi * qi;
    std::vector<double> r(q.begin(), q.end());
    if (n2 > 1.0) {
        const double inv = 1.0 / std::sqrt(n2);
        for (double& ri : r) ri *= inv;
    }
    return r;
}

// argmin of kappa |v| + |v - w|^2 / 2 over vectors. The objective is
// minimized at the origin whenever |w| <= kappa, including w = 0 where the
// closed form reads 0/0.
inline std::vector<double> vector_shrink(std::span<const double> w, double kappa) {
    if (kappa < 0.0) throw ArgumentError("vector_shrink: negative kappa");
    double n2 = 0.0;
    for (double wi : w) n2 += wi * wi;
    const double n = std::sqrt(n2);
    std::vector<double> r(w.size(), 0.0);
    // w - kappa * w/|w| rather than w * (|w|-kappa)/|w|: same map, but the
    // scalar specialization reduces to w -+ kappa without rounding detours
    if (n > kappa)
        for (std::size_t i = 0; i < w.size(); ++i) r[i] = w[i] - kappa * (w[i] / n);
    return r;
}

// Tagged operator kind, mostly useful for table-driven tests.
struct ObstacleClamp {
    double psi;
};
struct SoftThreshold {
    double kappa;
};
struct UnitBallProject {};
struct VectorShrink {
    double kappa;
};
using ProxKind = std::variant<ObstacleClamp, SoftThreshold, UnitBallProject, VectorShrink>;

inline std::vector<double> apply(const ProxKind& kind, std::span<const double> w) {
    return std::visit(
        [&](const auto& k) -> std::vector<double> {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ObstacleClamp>) return {obstacle_clamp(w[0], k.psi)};
            else if constexpr (std::is_same_v<T, SoftThreshold>) return {soft_threshold(w[0], k.kappa)};
            else if constexpr (std::is_same_v<T, UnitBallProject>) return unit_ball_project(w);
            else return vector_shrink(w, k.kappa);
        },
        kind);
}

}  // namespace proxevi::prox
