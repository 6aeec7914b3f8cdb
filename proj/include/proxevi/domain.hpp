#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "proxevi/points.hpp"

namespace proxevi {

struct Interval {
    double a, b;
};
struct Rectangle {
    double ax, bx, ay, by;
};
struct Disk {
    double cx, cy, R;
};

// Rectangle boundaries can carry a Dirichlet/contact partition. For the
// friction setup gamma_c is the right edge {bx} x [ay, by] and gamma_d the
// rest; domains without a partition treat gamma_d as the whole boundary.
struct DomainSpec {
    std::variant<Interval, Rectangle, Disk> shape;
    bool has_contact_edge = false;

    int dim() const { return std::holds_alternative<Interval>(shape) ? 1 : 2; }
    bool contains(std::span<const double> x) const;
};

// Uniform i.i.d. interior samples, deterministic per seed. Disks are sampled
// by radius R*sqrt(U) and uniform angle.
Points sample_interior(const DomainSpec& domain, std::size_t count, std::uint64_t seed);

// Boundary segments: "all" (perimeter-proportional for rectangles),
// "gamma_d", "gamma_c". Each sample carries the outward unit normal.
BoundaryPoints sample_boundary(const DomainSpec& domain, const std::string& segment,
                               std::size_t count, std::uint64_t seed);

// Deterministic test set: uniform grids (endpoints included) for intervals
// and rectangles, seeded uniform samples for disks where no canonical grid
// exists. n is the total budget; rectangles use a sqrt(n) x sqrt(n) grid.
Points test_grid(const DomainSpec& domain, std::size_t n, std::uint64_t seed);

// n points per axis over the closure (single midpoint row for n = 1);
// disk grids keep only points inside the closure.
Points eval_grid(const DomainSpec& domain, std::size_t n);

}  // namespace proxevi
