#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "proxevi/errors.hpp"

namespace proxevi {

// Bias-corrected Adam with fixed hyperparameters; full-batch by default, the
// trainer decides what the gradient covers.
struct AdamState {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    long t = 0;
    std::vector<double> m;
    std::vector<double> v;

    explicit AdamState(std::size_t n_params, double learning_rate = 1e-3)
        : lr(learning_rate), m(n_params, 0.0), v(n_params, 0.0) {}
};

inline void adam_step(AdamState& st, std::span<double> params, std::span<const double> grad) {
    if (params.size() != st.m.size() || grad.size() != st.m.size())
        throw ArgumentError("adam_step: size mismatch");
    for (double g : grad)
        if (!std::isfinite(g)) throw TrainingError("adam_step: non-finite gradient", st.t + 1);
    ++st.t;
    const double c1 = 1.0 - std::pow(st.beta1, static_cast<double>(st.t));
    const double c2 = 1.0 - std::pow(st.beta2, static_cast<double>(st.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        st.m[i] = st.beta1 * st.m[i] + (1.0 - st.beta1) * grad[i];
        st.v[i] = st.beta2 * st.v[i] + (1.0 - st.beta2) * grad[i] * grad[i];
        const double mhat = st.m[i] / c1;
        const double vhat = st.v[i] / c2;
        params[i] -= st.lr * mhat / (std::sqrt(vhat) + st.eps);
    }
}

}  // namespace proxevi
