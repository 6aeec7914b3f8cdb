#include "proxevi/surrogate.hpp"

namespace proxevi {

ad::Jet2d eval_u(const SurrogateField& sf, std::span<const double> x) {
    NetEval<double> ctx = make_eval(sf.net);
    return eval_surrogate<double>(sf, ctx, x, /*want_lambda=*/false).u;
}

std::vector<ad::Jet2d> eval_lambda(const SurrogateField& sf, std::span<const double> x) {
    NetEval<double> ctx = make_eval(sf.net);
    return eval_surrogate<double>(sf, ctx, x, /*want_lambda=*/true).lambda;
}

double eval_u_value(const SurrogateField& sf, std::span<const double> x, ValueScratch& scratch) {
    const double n = eval_values(sf.net, x, scratch)[0];
    if (!sf.hard_constraint) return n;
    return sf.boundary.g.value(x) + sf.boundary.h.value(x) * n;
}

}  // namespace proxevi
