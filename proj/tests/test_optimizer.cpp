#include <doctest.h>

#include <cmath>

#include "proxevi/optimizer.hpp"

using namespace proxevi;

TEST_CASE("first step from zero with unit gradient") {
    AdamState st(1, 1e-3);
    std::vector<double> theta{0.0};
    const std::vector<double> g{1.0};
    adam_step(st, theta, g);
    // m-hat = v-hat = 1 after bias correction, so the step is lr / (1 + eps)
    CHECK(std::abs(theta[0] + 1e-3 / (1.0 + 1e-8)) < 1e-12);
    CHECK(st.t == 1);
}

TEST_CASE("zero gradients never move the parameters") {
    AdamState st(3, 1e-2);
    std::vector<double> theta{0.5, -1.0, 2.0};
    const std::vector<double> theta0 = theta;
    const std::vector<double> g{0.0, 0.0, 0.0};
    for (int k = 0; k < 50; ++k) adam_step(st, theta, g);
    CHECK(theta == theta0);
}

TEST_CASE("identical inputs give bitwise identical trajectories") {
    auto trajectory = [] {
        AdamState st(2, 1e-3);
        std::vector<double> theta{1.0, -0.5};
        std::vector<double> out;
        for (int k = 0; k < 100; ++k) {
            const std::vector<double> g{2.0 * theta[0], 2.0 * theta[1]};
            adam_step(st, theta, g);
            out.push_back(theta[0]);
            out.push_back(theta[1]);
        }
        return out;
    };
    CHECK(trajectory() == trajectory());
}

TEST_CASE("quadratic descent reaches 1e-2 in about two thousand steps") {
    // the bias-corrected update crosses 1e-2 at step 2203 exactly (the decaying
    // gradient keeps m-hat / sqrt(v-hat) below one near the minimum)
    AdamState st(1, 1e-3);
    std::vector<double> theta{1.0};
    int crossed_at = -1;
    for (int k = 1; k <= 2500 && crossed_at < 0; ++k) {
        const std::vector<double> g{2.0 * theta[0]};
        adam_step(st, theta, g);
        if (std::abs(theta[0]) < 1e-2) crossed_at = k;
    }
    CHECK(crossed_at == 2203);
}

TEST_CASE("non-finite gradients raise a training error with the step index") {
    AdamState st(1, 1e-3);
    std::vector<double> theta{0.0};
    const std::vector<double> good{1.0};
    adam_step(st, theta, good);
    const std::vector<double> bad{std::nan("")};
    CHECK_THROWS_AS(adam_step(st, theta, bad), TrainingError);
    try {
        adam_step(st, theta, bad);
    } catch (const TrainingError& e) {
        CHECK(e.epoch() == 2);
    }
}

TEST_CASE("updates preserve the parameter-vector length") {
    AdamState st(4, 1e-3);
    std::vector<double> theta{1, 2, 3, 4};
    const std::vector<double> g{1, 1, 1, 1};
    adam_step(st, theta, g);
    CHECK(theta.size() == 4);
    CHECK(st.m.size() == 4);
    std::vector<double> wrong{1, 2};
    CHECK_THROWS_AS(adam_step(st, wrong, g), ArgumentError);
}
