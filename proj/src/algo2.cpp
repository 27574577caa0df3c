#include "potts/algo2.hpp"

#include <cmath>
#include <stdexcept>

namespace potts {

namespace {

double pair_distance(const Image& a, const Image& b) {
    double d2 = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        d2 += d * d;
    }
    return std::sqrt(d2);
}

double effective_eta(const Algo2Config& cfg) {
    if (cfg.eta > 0.0) return cfg.eta;
    return cfg.scheme.kind() == CouplingKind::Cyclic ? 0.98 : 0.95;
}

bool pairs_within(const SplitStack& stack, const CouplingScheme& scheme, double rho, double t,
                  double* max_dist) {
    bool ok = true;
    for (const auto& [s, s2] : scheme.coupled_pairs()) {
        const double c = scheme.pair_weight(s, s2);
        const double d = pair_distance(stack.components[s], stack.components[s2]);
        if (max_dist) *max_dist = std::max(*max_dist, d);
        if (d > t / (rho * std::sqrt(c))) ok = false;
    }
    return ok;
}

}  // namespace

InnerResult inner_loop(const SplitStack& state, double rho, double delta, double t,
                       const LinearOperator& a, const DataVector& f, const Algo2Config& cfg) {
    const double norm_a = a.norm();
    const double l = l_rho(norm_a, cfg.scheme.size(), rho, cfg.scheme);
    const Image atf = a.adjoint(f);

    // An iterate is accepted when its coupled pairs are within the Lagrange
    // bound and one more forward+backward step moves it by at most delta/L;
    // an already compliant input state is returned after 0 iterations.
    InnerResult out{state, 0, true};
    while (true) {
        const double ln = relaxed_l(l, cfg.lambda, out.iterations);
        const SplitStack h = forward_step(out.stack, a, atf, cfg.scheme, rho, ln);
        SplitStack next = backward_step(h, cfg.gamma, cfg.model, ln);

        bool change_ok = true;
        for (int s = 0; s < cfg.scheme.size(); ++s)
            if (pair_distance(next.components[s], out.stack.components[s]) > delta / l)
                change_ok = false;
        if (change_ok && pairs_within(out.stack, cfg.scheme, rho, t, nullptr)) break;
        if (out.iterations >= cfg.inner_max) {
            out.converged = false;
            break;
        }
        out.stack = std::move(next);
        ++out.iterations;
    }
    return out;
}

Algo2Result run_algo2(const LinearOperator& a, const DataVector& f, const Algo2Config& cfg,
                      const std::optional<SplitStack>& init) {
    const int s_count = cfg.model.size();
    if (cfg.scheme.size() != s_count)
        throw std::invalid_argument("run_algo2: scheme/model S mismatch");
    if (!(cfg.tau > 1.0)) throw std::invalid_argument("run_algo2: tau must exceed 1");
    if (!(cfg.rho0 > 0.0)) throw std::invalid_argument("run_algo2: rho0 must be positive");
    const double eta = effective_eta(cfg);
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("run_algo2: eta not in (0,1)");

    const double norm_a = a.norm();
    const double norm_f = norm2(f.values);
    const double t = cfg.t_multiplier * choose_t(cfg.scheme, norm_a, norm_f);

    SplitStack stack = init ? *init : SplitStack(a.adjoint(f), s_count);

    Algo2Result res{Image(a.input_width(), a.input_height()), Partition{}, stack, Algo2Trace{}};
    res.trace.t = t;

    double rho = cfg.rho0;
    {
        // One bootstrap step so an all-equal init separates before the
        // discrepancy stop is first evaluated; a fixed point stays put.
        const double l = l_rho(norm_a, s_count, rho, cfg.scheme);
        const double ln = relaxed_l(l, cfg.lambda, 0);
        stack = backward_step(forward_step(stack, a, f, cfg.scheme, rho, ln), cfg.gamma,
                              cfg.model, ln);
    }
    for (int k = 0; k < cfg.outer_max; ++k) {
        const double delta = 1.0 / (eta * rho);
        InnerResult inner = inner_loop(stack, rho, delta, t, a, f, cfg);
        stack = std::move(inner.stack);

        OuterRecord rec;
        rec.k = k;
        rec.n_inner = inner.iterations;
        rec.rho = rho;
        rec.delta = delta;
        rec.energy = relaxed_energy(a, f, stack, cfg.gamma, rho, cfg.scheme, cfg.model);
        pairs_within(stack, cfg.scheme, rho, t, &rec.max_pair_distance);
        rec.inner_converged = inner.converged;
        res.trace.records.push_back(rec);

        const Image& u1 = stack.components[0];
        const Image& u2 = stack.components[s_count > 1 ? 1 : 0];
        const double den = norm2(u1.values) + norm2(u2.values);
        if (den == 0.0 || pair_distance(u1, u2) / den < cfg.final_tol) {
            res.trace.converged = true;
            break;
        }
        rho *= cfg.tau;
    }

    res.stack = stack;
    auto [img, part] = project(stack, cfg.model);
    res.image = std::move(img);
    res.partition = std::move(part);
    return res;
}

}  // namespace potts
