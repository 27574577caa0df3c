#include "potts/algo1.hpp"

#include <cmath>
#include <stdexcept>

#include "potts/directional.hpp"

namespace potts {

SplitStack forward_step(const SplitStack& stack, const LinearOperator& a, const DataVector& f,
                        const CouplingScheme& scheme, double rho, double l) {
    return forward_step(stack, a, a.adjoint(f), scheme, rho, l);
}

SplitStack forward_step(const SplitStack& stack, const LinearOperator& a, const Image& atf,
                        const CouplingScheme& scheme, double rho, double l) {
    const int s_count = stack.size();
    if (scheme.size() != s_count) throw std::invalid_argument("forward_step: S mismatch");
    const double l2 = l * l;
    if (atf.size() != stack.components[0].size())
        throw std::invalid_argument("forward_step: dimension mismatch");

    SplitStack h = stack;
    for (int s = 0; s < s_count; ++s) {
        const Image atau = a.adjoint(a.apply(stack.components[s]));
        auto& hs = h.components[s].values;
        const double scale = 1.0 / (s_count * l2);
        for (std::size_t i = 0; i < hs.size(); ++i)
            hs[i] += scale * (atf.values[i] - atau.values[i]);
        for (int t = 0; t < s_count; ++t) {
            if (t == s) continue;
            const double w = rho * scheme.pair_weight(s, t) / l2;
            if (w == 0.0) continue;
            const auto& us = stack.components[s].values;
            const auto& ut = stack.components[t].values;
            for (std::size_t i = 0; i < hs.size(); ++i) hs[i] -= w * (us[i] - ut[i]);
        }
    }
    return h;
}

SplitStack backward_step(const SplitStack& h, double gamma, const DirectionModel& model,
                         double l) {
    if (h.size() != model.size()) throw std::invalid_argument("backward_step: S mismatch");
    SplitStack out = h;
    for (int s = 0; s < model.size(); ++s)
        out.components[s] = solve_directional(h.components[s], model.directions[s],
                                              gamma * model.weights[s] / (l * l));
    return out;
}

double coupling_residual(const SplitStack& stack, const CouplingScheme& scheme) {
    double total = 0.0;
    for (const auto& [s, t] : scheme.coupled_pairs()) {
        const double c = scheme.pair_weight(s, t);
        double d2 = 0.0;
        const auto& us = stack.components[s].values;
        const auto& ut = stack.components[t].values;
        for (std::size_t i = 0; i < us.size(); ++i) {
            const double d = us[i] - ut[i];
            d2 += d * d;
        }
        total += 2.0 * c * d2;  // ordered sum counts each pair twice
    }
    return total;
}

double relaxed_l(double l, double lambda, int n) {
    return l * (lambda + (1.0 - 1.0 / std::sqrt(n + 1.0)) * (1.0 - lambda));
}

namespace {

double pair_distance(const Image& a, const Image& b) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        d2 += d * d;
    }
    return std::sqrt(d2);
}

double rel_change(const Image& now, const Image& prev) {
    const double num = pair_distance(now, prev);
    const double den = norm2(now.values) + norm2(prev.values);
    return den == 0.0 ? 0.0 : num / den;
}

SplitStack make_init(const LinearOperator& a, const DataVector& f, InitStrategy init,
                     int landweber_steps, int s_count) {
    switch (init) {
        case InitStrategy::Zero:
            return SplitStack(Image(a.input_width(), a.input_height()), s_count);
        case InitStrategy::AdjointData:
            return SplitStack(a.adjoint(f), s_count);
        case InitStrategy::Landweber:
        default:
            return SplitStack(landweber(a, f, landweber_steps), s_count);
    }
}

}  // namespace

std::pair<SplitStack, IterationTrace> run_algo1(const LinearOperator& a, const DataVector& f,
                                                const Algo1Config& cfg,
                                                const std::optional<SplitStack>& init) {
    const int s_count = cfg.model.size();
    if (cfg.scheme.size() != s_count)
        throw std::invalid_argument("run_algo1: scheme/model S mismatch");
    if (!(cfg.epsilon > 0.0)) throw std::invalid_argument("run_algo1: epsilon must be positive");

    const double norm_a = a.norm();
    const double norm_f = norm2(f.values);
    const double rho = choose_rho(cfg.epsilon, cfg.scheme, norm_a, norm_f);
    const double l = l_rho(norm_a, s_count, rho, cfg.scheme);
    const double lambda = cfg.strict_mode ? 1.0 : cfg.lambda;

    SplitStack stack = init ? *init : make_init(a, f, cfg.init, cfg.landweber_steps, s_count);

    IterationTrace trace;
    trace.rho = rho;
    trace.l = l;
    const double eps2 = cfg.epsilon * cfg.epsilon;

    const Image atf = a.adjoint(f);
    for (int n = 0; n < cfg.max_iters; ++n) {
        const double ln = cfg.strict_mode ? l : relaxed_l(l, lambda, n);
        const SplitStack h = forward_step(stack, a, atf, cfg.scheme, rho, ln);
        SplitStack next = backward_step(h, cfg.gamma, cfg.model, ln);

        IterRecord rec;
        rec.energy = relaxed_energy(a, f, next, cfg.gamma, rho, cfg.scheme, cfg.model);
        bool near = true;
        for (const auto& [s, t] : cfg.scheme.coupled_pairs()) {
            const double d = pair_distance(next.components[s], next.components[t]);
            rec.max_pair_distance = std::max(rec.max_pair_distance, d);
            if (cfg.per_pair_tolerance &&
                d * d >= eps2 / cfg.scheme.pair_weight(s, t))
                near = false;
        }
        if (!cfg.per_pair_tolerance) near = coupling_residual(next, cfg.scheme) <= eps2;
        rec.rel_change_u1 = rel_change(next.components[0], stack.components[0]);
        rec.rel_change_u2 =
            s_count > 1 ? rel_change(next.components[1], stack.components[1]) : rec.rel_change_u1;
        trace.records.push_back(rec);

        stack = std::move(next);
        if (near && rec.rel_change_u1 < cfg.rel_change_tol &&
            rec.rel_change_u2 < cfg.rel_change_tol) {
            trace.converged = true;
            break;
        }
    }
    return {std::move(stack), std::move(trace)};
}

}  // namespace potts
