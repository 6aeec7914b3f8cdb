#pragma once

#include <functional>
#include <span>
#include <vector>

#include "proxevi/jet.hpp"

namespace proxevi {

// Closed-form scalar field with exact jets: lifts (h, g), obstacles, sources,
// and exact solutions are all supplied this way.
struct ScalarField {
    int dim = 0;
    std::function<ad::Jet2d(std::span<const double>)> jet;

    double value(std::span<const double> x) const { return jet(x).value; }

    static ScalarField zero(int d) {
        return ScalarField{d, [d](std::span<const double>) { return ad::jet_constant<double>(0.0, d); }};
    }
    static ScalarField constant(int d, double c) {
        return ScalarField{d, [d, c](std::span<const double>) { return ad::jet_constant<double>(c, d); }};
    }
};

// Closed-form vector field (e.g. an analytic multiplier), one jet per
// component.
struct VectorField {
    int dim = 0;
    std::function<std::vector<ad::Jet2d>(std::span<const double>)> jet;
};

}  // namespace proxevi
