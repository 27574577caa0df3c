#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace potts {

/// Piecewise-constant fit of a 1D signal: interval k is
/// [ends[k-1], ends[k]) in 0-based indices (ends.back() == n) with value
/// levels[k].
struct Segmentation1D {
    std::vector<std::size_t> ends;
    std::vector<double> levels;
    double energy = 0.0;

    std::size_t segment_count() const { return ends.size(); }
};

/// Prefix first/second moments of a signal; interval deviations in O(1).
struct PrefixMoments {
    std::vector<double> m1;  // m1[i] = sum g_0..g_{i-1}
    std::vector<double> m2;

    explicit PrefixMoments(std::span<const double> g);
};

/// Quadratic deviation of g_l..g_r (0-based, inclusive) from its mean,
/// clamped at 0 against roundoff.
double interval_error(const PrefixMoments& pm, std::size_t l, std::size_t r);

/// Exact global minimizer of ||x - g||^2 + gamma ||grad x||_0 by the O(n^2)
/// Bellman recursion. Ties prefer the longer final segment. With prune=true
/// candidates l with F[l-1] + E(l,r) > F[r] are dropped for later r.
Segmentation1D solve_univariate(std::span<const double> g, double gamma, bool prune = false);

/// Enumeration oracle over all 2^{n-1} jump configurations (n <= 16). Ties:
/// fewest jumps, then lexicographically earliest breakpoint list.
Segmentation1D brute_force_univariate(std::span<const double> g, double gamma);

/// Reconstruct the fitted signal values.
std::vector<double> expand(const Segmentation1D& seg);

}  // namespace potts
