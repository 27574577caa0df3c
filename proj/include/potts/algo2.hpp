#pragma once

#include <optional>
#include <vector>

#include "potts/algo1.hpp"
#include "potts/projection.hpp"

namespace potts {

/// Step-size relaxation parameters used in the experiments.
inline constexpr double kLambdaAlgo1Deblur = 0.4;
inline constexpr double kLambdaGaussianBlur = 0.35;
inline constexpr double kLambdaMotionBlur = 0.25;
inline constexpr double kLambdaRadon = 0.11;
inline constexpr double kLambdaSegmentation = 0.55;

/// Increasing-penalty method for the non-relaxed Potts problem.
struct Algo2Config {
    double gamma = 0.1;
    CouplingScheme scheme{CouplingKind::Full, 4};
    DirectionModel model = build_direction_model(DirectionSystem::Compass4);
    double rho0 = 1e-3;
    double tau = 1.05;         // rho^{(k)} = tau^k rho0
    double eta = 0.0;          // 0 -> 0.95 full / 0.98 cyclic; delta_k = 1/(eta rho^{(k)})
    double lambda = 0.35;
    int outer_max = 20000;
    int inner_max = 100000;
    double final_tol = 1e-6;
    double t_multiplier = 1.0;  // scales the Lagrange-bound threshold t
    InitStrategy init = InitStrategy::AdjointData;
    int landweber_steps = 1000;
};

struct OuterRecord {
    int k = 0;
    int n_inner = 0;
    double rho = 0.0;
    double delta = 0.0;
    double energy = 0.0;  // relaxed energy of the stack after the inner loop
    double max_pair_distance = 0.0;
    bool inner_converged = true;
};

struct Algo2Trace {
    std::vector<OuterRecord> records;
    bool converged = false;
    double t = 0.0;
};

struct InnerResult {
    SplitStack stack;
    int iterations = 0;
    bool converged = true;  // false when inner_max was exhausted
};

/// Runs forward+backward steps until both termination bounds of the inner
/// loop hold: all coupled pairs satisfy ||u_s - u_s'|| <= t/(rho sqrt(c)) and
/// the last update moved every component by at most delta/L_rho.
InnerResult inner_loop(const SplitStack& state, double rho, double delta, double t,
                       const LinearOperator& a, const DataVector& f, const Algo2Config& cfg);

struct Algo2Result {
    Image image;
    Partition partition;
    SplitStack stack;  // pre-projection splitting variables
    Algo2Trace trace;
};

Algo2Result run_algo2(const LinearOperator& a, const DataVector& f, const Algo2Config& cfg,
                      const std::optional<SplitStack>& init = {});

}  // namespace potts
