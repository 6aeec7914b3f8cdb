#include "proxevi/domain.hpp"

#include <cmath>
#include <numbers>

#include "proxevi/rng.hpp"

namespace proxevi {

bool DomainSpec::contains(std::span<const double> x) const {
    if (const Interval* iv = std::get_if<Interval>(&shape))
        return x[0] >= iv->a && x[0] <= iv->b;
    if (const Rectangle* rc = std::get_if<Rectangle>(&shape))
        return x[0] >= rc->ax && x[0] <= rc->bx && x[1] >= rc->ay && x[1] <= rc->by;
    const Disk& dk = std::get<Disk>(shape);
    const double dx = x[0] - dk.cx, dy = x[1] - dk.cy;
    return dx * dx + dy * dy <= dk.R * dk.R * (1.0 + 1e-15);
}

Points sample_interior(const DomainSpec& domain, std::size_t count, std::uint64_t seed) {
    if (count < 1) throw ArgumentError("sample_interior: count must be >= 1");
    Rng rng(seed);
    Points pts;
    pts.dim = domain.dim();
    pts.xs.reserve(count * static_cast<std::size_t>(pts.dim));
    if (const Interval* iv = std::get_if<Interval>(&domain.shape)) {
        for (std::size_t i = 0; i < count; ++i) pts.xs.push_back(rng.uniform(iv->a, iv->b));
    } else if (const Rectangle* rc = std::get_if<Rectangle>(&domain.shape)) {
        for (std::size_t i = 0; i < count; ++i) {
            pts.xs.push_back(rng.uniform(rc->ax, rc->bx));
            pts.xs.push_back(rng.uniform(rc->ay, rc->by));
        }
    } else {
        const Disk& dk = std::get<Disk>(domain.shape);
        for (std::size_t i = 0; i < count; ++i) {
            const double r = dk.R * std::sqrt(rng.uniform());
            const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
            pts.xs.push_back(dk.cx + r * std::cos(t));
            pts.xs.push_back(dk.cy + r * std::sin(t));
        }
    }
    return pts;
}

namespace {

void push_bpoint(BoundaryPoints& out, std::initializer_list<double> x, std::initializer_list<double> n) {
    out.pts.xs.insert(out.pts.xs.end(), x.begin(), x.end());
    out.normals.insert(out.normals.end(), n.begin(), n.end());
}

// side order: left, right, bottom, top
void rect_side_point(const Rectangle& rc, int side, double t, BoundaryPoints& out) {
    switch (side) {
        case 0: push_bpoint(out, {rc.ax, rc.ay + t * (rc.by - rc.ay)}, {-1.0, 0.0}); break;
        case 1: push_bpoint(out, {rc.bx, rc.ay + t * (rc.by - rc.ay)}, {1.0, 0.0}); break;
        case 2: push_bpoint(out, {rc.ax + t * (rc.bx - rc.ax), rc.ay}, {0.0, -1.0}); break;
        default: push_bpoint(out, {rc.ax + t * (rc.bx - rc.ax), rc.by}, {0.0, 1.0}); break;
    }
}

}  // namespace

BoundaryPoints sample_boundary(const DomainSpec& domain, const std::string& segment,
                               std::size_t count, std::uint64_t seed) {
    const bool want_all = segment == "all";
    const bool want_d = segment == "gamma_d";
    const bool want_c = segment == "gamma_c";
    if (!want_all && !want_d && !want_c)
        throw ArgumentError("sample_boundary: unknown segment '" + segment + "'");
    if (want_c && !domain.has_contact_edge)
        throw ArgumentError("sample_boundary: domain has no contact segment");

    Rng rng(seed);
    BoundaryPoints out;
    out.pts.dim = domain.dim();

    if (const Interval* iv = std::get_if<Interval>(&domain.shape)) {
        // two endpoint "sides", alternating
        for (std::size_t i = 0; i < count; ++i) {
            if (rng.uniform() < 0.5) {
                out.pts.xs.push_back(iv->a);
                out.normals.push_back(-1.0);
            } else {
                out.pts.xs.push_back(iv->b);
                out.normals.push_back(1.0);
            }
        }
        return out;
    }

    if (const Rectangle* rc = std::get_if<Rectangle>(&domain.shape)) {
        if (want_c) {
            for (std::size_t i = 0; i < count; ++i) rect_side_point(*rc, 1, rng.uniform(), out);
            return out;
        }
        const double w = rc->bx - rc->ax, h = rc->by - rc->ay;
        // side weights proportional to length; gamma_d drops the right edge
        double len[4] = {h, h, w, w};
        if (want_d && domain.has_contact_edge) len[1] = 0.0;
        const double total = len[0] + len[1] + len[2] + len[3];
        for (std::size_t i = 0; i < count; ++i) {
            double u = rng.uniform() * total;
            int side = 0;
            while (side < 3 && u >= len[side]) u -= len[side], ++side;
            rect_side_point(*rc, side, rng.uniform(), out);
        }
        return out;
    }

    const Disk& dk = std::get<Disk>(domain.shape);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double c = std::cos(t), s = std::sin(t);
        push_bpoint(out, {dk.cx + dk.R * c, dk.cy + dk.R * s}, {c, s});
    }
    return out;
}

Points test_grid(const DomainSpec& domain, std::size_t n, std::uint64_t seed) {
    Points pts;
    pts.dim = domain.dim();
    if (const Interval* iv = std::get_if<Interval>(&domain.shape)) {
        for (std::size_t i = 0; i < n; ++i) {
            const double t = n > 1 ? static_cast<double>(i) / static_cast<double>(n - 1) : 0.5;
            pts.xs.push_back(iv->a + t * (iv->b - iv->a));
        }
        return pts;
    }
    if (const Rectangle* rc = std::get_if<Rectangle>(&domain.shape)) {
        const std::size_t m = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n)))));
        for (std::size_t i = 0; i < m; ++i) {
            const double tx = m > 1 ? static_cast<double>(i) / static_cast<double>(m - 1) : 0.5;
            for (std::size_t j = 0; j < m; ++j) {
                const double ty = m > 1 ? static_cast<double>(j) / static_cast<double>(m - 1) : 0.5;
                pts.xs.push_back(rc->ax + tx * (rc->bx - rc->ax));
                pts.xs.push_back(rc->ay + ty * (rc->by - rc->ay));
            }
        }
        return pts;
    }
    return sample_interior(domain, n, seed);
}

Points eval_grid(const DomainSpec& domain, std::size_t n) {
    if (n < 1) throw ArgumentError("eval_grid: need n >= 1");
    Points pts;
    pts.dim = domain.dim();
    auto axis = [n](double a, double b, std::size_t i) {
        return n > 1 ? a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1)
                     : 0.5 * (a + b);
    };
    if (const Interval* iv = std::get_if<Interval>(&domain.shape)) {
        for (std::size_t i = 0; i < n; ++i) pts.xs.push_back(axis(iv->a, iv->b, i));
        return pts;
    }
    if (const Rectangle* rc = std::get_if<Rectangle>(&domain.shape)) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                pts.xs.push_back(axis(rc->ax, rc->bx, i));
                pts.xs.push_back(axis(rc->ay, rc->by, j));
            }
        return pts;
    }
    const Disk& dk = std::get<Disk>(domain.shape);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double x = axis(dk.cx - dk.R, dk.cx + dk.R, i);
            const double y = axis(dk.cy - dk.R, dk.cy + dk.R, j);
            const double p[2] = {x, y};
            if (domain.contains(p)) {
                pts.xs.push_back(x);
                pts.xs.push_back(y);
            }
        }
    return pts;
}

}  // namespace proxevi
