#pragma once

#include <optional>
#include <string>
#include <vector>

#include "proxevi/domain.hpp"
#include "proxevi/field.hpp"
#include "proxevi/problem.hpp"

namespace proxevi::bench {

// Default run settings attached to each benchmark (data-set sizes, training
// epochs, architecture).
struct RunDefaults {
    std::size_t train_size;
    std::size_t test_size;
    long epochs;
    int hidden_layers;
    int width;
    int out_dim;
};

struct BenchmarkCase {
    std::string name;
    DomainSpec domain;
    EviProblem problem;
    BoundaryData boundary;  // conforming factor h and lift g
    ScalarField exact_u;
    // Multiplier consistent with the exact solution, where the formulation has
    // one; used to certify the residual formulas independently of training.
    std::optional<VectorField> exact_lambda;
    // Distance from x to the nearest derivative seam of the exact solution
    // (+inf when the solution is globally smooth).
    std::function<double(std::span<const double>)> seam_distance;
    RunDefaults defaults;
    bool lambda_clamped = false;

    // physical constants, where meaningful
    double const_c = 0.0;
    double const_tau = 0.0;
    double radius = 0.0;
};

struct BenchmarkParams {
    std::optional<double> c;
    std::optional<double> tau;
};

// Registry: obstacle1d_sym, obstacle1d_nonsym, obstacle1d_piecewise,
// obstacle2d, torsion2d (param c), bingham2d (param tau), friction2d.
BenchmarkCase make_benchmark(const std::string& name, const BenchmarkParams& params = {});
std::vector<std::string> benchmark_names();

// Root refinements for the two tabulated constants of the piecewise and 2D
// obstacle solutions. The coarse published values stay the defaults; these
// let tests report how far off they are.
double refine_contact_radius();
double refine_piecewise_beta();

}  // namespace proxevi::bench
