#include "proxevi/problem.hpp"

#include <algorithm>
#include <thread>

namespace proxevi {

namespace {

// Contiguous index range of chunk t out of n over `count` items.
std::pair<std::size_t, std::size_t> chunk_range(std::size_t count, int n, int t) {
    const std::size_t base = count / static_cast<std::size_t>(n);
    const std::size_t rem = count % static_cast<std::size_t>(n);
    const std::size_t begin = base * static_cast<std::size_t>(t) + std::min<std::size_t>(t, rem);
    const std::size_t len = base + (static_cast<std::size_t>(t) < rem ? 1 : 0);
    return {begin, begin + len};
}

void run_worker(const EviProblem& p, const SurrogateField& sf, const Points& interior,
                std::size_t i_begin, std::size_t i_end, const BoundaryPoints* boundary,
                std::size_t b_begin, std::size_t b_end, double m_interior, double m_boundary,
                ad::Tape& tape, std::vector<ad::Var>& leaves,
                std::vector<ResidualTerm<ad::Var>>& terms, double& loss_out,
                std::vector<double>& grad_out) {
    tape.clear();
    NetEval<ad::Var> ctx = bind_net(sf.net, tape, leaves);
    tape.zero_leaf_adjoints();
    ad::TapeScope scope(tape);

    double loss = 0.0;
    auto flush = [&](void) {
        tape.start_segment();
        for (const auto& t : terms) {
            const double div = t.set == ResidualSet::Interior ? m_interior : m_boundary;
            const double v = t.r.val;
            loss += t.weight * v * v / div;
            tape.seed(t.r, 2.0 * t.weight * v / div);
        }
        tape.sweep_segment();
        terms.clear();
    };

    for (std::size_t i = i_begin; i < i_end; ++i) {
        tape.rewind();
        collect_interior_residuals<ad::Var>(p, sf, ctx, interior[i], terms);
        flush();
    }
    if (boundary) {
        for (std::size_t i = b_begin; i < b_end; ++i) {
            tape.rewind();
            collect_boundary_residuals<ad::Var>(p, sf, ctx, boundary->point(i), boundary->normal(i), terms);
            flush();
        }
    }

    loss_out = loss;
    const std::span<const double> adj = tape.leaf_adjoints();
    grad_out.assign(adj.begin(), adj.end());
}

}  // namespace

LossResult LossContext::evaluate(const EviProblem& p, const SurrogateField& sf,
                                 const Points& interior, const BoundaryPoints* boundary,
                                 int threads) {
    if (interior.count() == 0) throw ArgumentError("loss: empty training set");
    if (needs_boundary_set(p.tag) && (boundary == nullptr || boundary->count() == 0))
        throw ArgumentError("loss: this problem needs a boundary training set");
    if (!needs_boundary_set(p.tag)) boundary = nullptr;

    const std::size_t total = interior.count() + (boundary ? boundary->count() : 0);
    int n = std::max(1, threads);
    n = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), total));
    workers_.resize(static_cast<std::size_t>(n));

    const double mi = static_cast<double>(interior.count());
    const double mb = boundary ? static_cast<double>(boundary->count()) : 1.0;

    std::vector<std::thread> pool;
    for (int t = 1; t < n; ++t) {
        auto [ib, ie] = chunk_range(interior.count(), n, t);
        auto [bb, be] = boundary ? chunk_range(boundary->count(), n, t)
                                 : std::pair<std::size_t, std::size_t>{0, 0};
        Worker& w = workers_[static_cast<std::size_t>(t)];
        pool.emplace_back([&, ib, ie, bb, be] {
            run_worker(p, sf, interior, ib, ie, boundary, bb, be, mi, mb, w.tape, w.leaves,
                       w.terms, w.loss, w.grad);
        });
    }
    {
        auto [ib, ie] = chunk_range(interior.count(), n, 0);
        auto [bb, be] = boundary ? chunk_range(boundary->count(), n, 0)
                                 : std::pair<std::size_t, std::size_t>{0, 0};
        Worker& w = workers_[0];
        run_worker(p, sf, interior, ib, ie, boundary, bb, be, mi, mb, w.tape, w.leaves, w.terms,
                   w.loss, w.grad);
    }
    for (std::thread& th : pool) th.join();

    // fixed-order reduction over chunks
    LossResult out;
    out.grad.assign(sf.net.param_count(), 0.0);
    for (int t = 0; t < n; ++t) {
        const Worker& w = workers_[static_cast<std::size_t>(t)];
        out.loss += w.loss;
        for (std::size_t k = 0; k < out.grad.size(); ++k) out.grad[k] += w.grad[k];
    }
    return out;
}

ResidualReport residual_report(const EviProblem& p, const SurrogateField& sf,
                               const Points& interior, const BoundaryPoints* boundary) {
    if (interior.count() == 0) throw ArgumentError("residual_report: empty point set");
    NetEval<double> ctx = make_eval(sf.net);
    std::vector<ResidualTerm<double>> terms;

    ResidualReport report;
    auto slot = [&report](const char* name, double weight) -> ResidualReport::Component& {
        for (auto& c : report.components)
            if (c.name == name) return c;
        report.components.push_back({name, weight, {}});
        return report.components.back();
    };

    auto absorb = [&](std::size_t, ResidualSet) {
        for (const auto& t : terms) slot(t.name, t.weight).values.push_back(t.r);
        terms.clear();
    };

    for (std::size_t i = 0; i < interior.count(); ++i) {
        collect_interior_residuals<double>(p, sf, ctx, interior[i], terms);
        absorb(i, ResidualSet::Interior);
    }
    std::vector<std::string> interior_names;
    for (const auto& c : report.components) interior_names.push_back(c.name);

    if (boundary && needs_boundary_set(p.tag)) {
        for (std::size_t i = 0; i < boundary->count(); ++i) {
            collect_boundary_residuals<double>(p, sf, ctx, boundary->point(i), boundary->normal(i), terms);
            absorb(i, ResidualSet::Boundary);
        }
    }

    const double mi = static_cast<double>(interior.count());
    const double mb = boundary ? static_cast<double>(boundary->count()) : 1.0;
    for (const auto& c : report.components) {
        const bool is_interior =
            std::find(interior_names.begin(), interior_names.end(), c.name) != interior_names.end();
        double sq = 0.0;
        for (double v : c.values) sq += v * v;
        report.loss += c.weight * sq / (is_interior ? mi : mb);
    }
    return report;
}

}  // namespace proxevi
