#pragma once

#include <utility>
#include <vector>

namespace potts {

enum class CouplingKind { Full, Cyclic };

/// Coupling weights c_{s,s'} between the splitting variables.
///
/// FULL couples every pair with weight 1. CYCLIC couples consecutive
/// variables s -> (s mod S)+1; for S=2 this produces the constraint
/// u_1 - u_2 twice, so the effective pair weight is 2 there.
class CouplingScheme {
public:
    struct Row {
        int s, t;  // 0-based, s < t
        double c;
    };

    CouplingScheme(CouplingKind kind, int s_count);

    CouplingKind kind() const { return kind_; }
    int size() const { return s_count_; }

    /// Constraint rows of the matrix C, one per soft constraint c(u_s - u_t).
    const std::vector<Row>& rows() const { return rows_; }

    /// c_{s,s'} as used in the penalty sums (total weight on the unordered pair).
    double pair_weight(int s, int t) const;

    /// Unordered pairs with nonzero weight.
    std::vector<std::pair<int, int>> coupled_pairs() const;

private:
    CouplingKind kind_;
    int s_count_;
    std::vector<Row> rows_;
};

/// Smallest admissible step normalization L_rho (with relative slack 1e-9):
/// L^2 just above ||A||^2/S + S*rho (full), ||A||^2/S + alpha*rho (cyclic),
/// or the general Gershgorin bound ||A||^2/S + 2 max_s sum_{s'} rho_{s,s'}.
double l_rho(double norm_a, int s_count, double rho, const CouplingScheme& scheme);

/// Smallest nonzero eigenvalue of C^T C: S (full), 2-2cos(2pi/S) (cyclic).
double sigma1(const CouplingScheme& scheme);

/// sigma1 from a dense symmetric eigensolve of the S x S pattern matrix.
double sigma1_numeric(const CouplingScheme& scheme);

/// rho > 2/eps * sigma1^{-1/2} S^{-1/2} ||A|| ||f||, enforced with slack 1e-6.
double choose_rho(double epsilon, const CouplingScheme& scheme, double norm_a, double norm_f);

/// t > 2 sigma1^{-1/2} S^{-1/2} ||A|| ||f||, enforced with slack 1e-6.
double choose_t(const CouplingScheme& scheme, double norm_a, double norm_f);

}  // namespace potts
