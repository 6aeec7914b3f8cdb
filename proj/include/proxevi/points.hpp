#pragma once

#include <span>
#include <vector>

#include "proxevi/errors.hpp"

namespace proxevi {

// Flat row-major point set.
struct Points {
    int dim = 0;
    std::vector<double> xs;

    std::size_t count() const { return dim > 0 ? xs.size() / static_cast<std::size_t>(dim) : 0; }

    std::span<const double> operator[](std::size_t i) const {
        return {xs.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
    }

    void push(std::span<const double> x) {
        if (static_cast<int>(x.size()) != dim) throw ArgumentError("Points::push: dimension mismatch");
        xs.insert(xs.end(), x.begin(), x.end());
    }
};

// Boundary samples carry the outward unit normal of their segment.
struct BoundaryPoints {
    Points pts;
    std::vector<double> normals;  // same row-major shape as pts.xs

    std::size_t count() const { return pts.count(); }
    std::span<const double> point(std::size_t i) const { return pts[i]; }
    std::span<const double> normal(std::size_t i) const {
        return {normals.data() + i * static_cast<std::size_t>(pts.dim), static_cast<std::size_t>(pts.dim)};
    }
};

}  // namespace proxevi
