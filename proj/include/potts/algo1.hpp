#pragma once

#include <optional>
#include <vector>

#include "potts/coupling.hpp"
#include "potts/image.hpp"
#include "potts/operators.hpp"

namespace potts {

enum class InitStrategy { Landweber, Zero, AdjointData };

/// Surrogate iteration for the quadratic penalty relaxation.
struct Algo1Config {
    double gamma = 0.1;
    double epsilon = 0.01;  // tolerance for the pairwise nearness condition
    CouplingScheme scheme{CouplingKind::Full, 4};
    DirectionModel model = build_direction_model(DirectionSystem::Compass4);
    double lambda = 0.4;  // step relaxation, 1 = exact step sizes
    int max_iters = 20000;
    double rel_change_tol = 1e-6;
    bool strict_mode = false;        // lambda = 1, exact L_rho; guarantees descent
    bool per_pair_tolerance = false; // stop on the per-pair bound instead of the aggregate
    InitStrategy init = InitStrategy::Landweber;
    int landweber_steps = 1000;
};

struct IterRecord {
    double energy = 0.0;
    double max_pair_distance = 0.0;  // max over coupled pairs of ||u_s - u_s'||
    double rel_change_u1 = 0.0;
    double rel_change_u2 = 0.0;
};

struct IterationTrace {
    std::vector<IterRecord> records;
    bool converged = false;
    double rho = 0.0;
    double l = 0.0;  // nominal L_rho
};

/// h_s = u_s + (1/(S L^2)) A^T f - (1/(S L^2)) A^T A u_s
///       - sum_{s' != s} (rho_{s,s'}/L^2) (u_s - u_{s'})
SplitStack forward_step(const SplitStack& stack, const LinearOperator& a, const DataVector& f,
                        const CouplingScheme& scheme, double rho, double l);

/// Same with A^T f precomputed (hot loop of both algorithms).
SplitStack forward_step(const SplitStack& stack, const LinearOperator& a, const Image& atf,
                        const CouplingScheme& scheme, double rho, double l);

/// Component s solves the directional Potts subproblem with penalty
/// gamma * w_s / L^2; an exact global minimizer of the separable problem.
SplitStack backward_step(const SplitStack& h, double gamma, const DirectionModel& model, double l);

std::pair<SplitStack, IterationTrace> run_algo1(const LinearOperator& a, const DataVector& f,
                                                const Algo1Config& cfg,
                                                const std::optional<SplitStack>& init = {});

/// sum over ordered pairs (s,s') of c_{s,s'} ||u_s - u_{s'}||^2.
double coupling_residual(const SplitStack& stack, const CouplingScheme& scheme);

/// Relaxed step normalization L_rho^lambda = L_rho [lambda + (1-(n+1)^{-1/2})(1-lambda)].
double relaxed_l(double l, double lambda, int n);

}  // namespace potts
