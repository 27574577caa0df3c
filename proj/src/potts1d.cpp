#include "potts/potts1d.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace potts {

PrefixMoments::PrefixMoments(std::span<const double> g)
    : m1(g.size() + 1, 0.0), m2(g.size() + 1, 0.0) {
    for (std::size_t i = 0; i < g.size(); ++i) {
        m1[i + 1] = m1[i] + g[i];
        m2[i + 1] = m2[i] + g[i] * g[i];
    }
}

double interval_error(const PrefixMoments& pm, std::size_t l, std::size_t r) {
    if (l > r || r + 1 >= pm.m1.size()) throw std::out_of_range("interval_error: bad indices");
    const double s1 = pm.m1[r + 1] - pm.m1[l];
    const double s2 = pm.m2[r + 1] - pm.m2[l];
    const double len = static_cast<double>(r - l + 1);
    return std::max(0.0, s2 - s1 * s1 / len);
}

Segmentation1D solve_univariate(std::span<const double> g, double gamma, bool prune) {
    const std::size_t n = g.size();
    if (n == 0) throw std::invalid_argument("solve_univariate: empty signal");
    if (!(gamma > 0.0)) throw std::invalid_argument("solve_univariate: gamma must be positive");

    const PrefixMoments pm(g);
    std::vector<double> best(n + 1);
    std::vector<std::size_t> last_start(n + 1, 0);  // l* for signal prefix of length r
    best[0] = -gamma;

    std::vector<std::size_t> candidates;
    candidates.reserve(n);
    for (std::size_t r = 1; r <= n; ++r) {
        candidates.push_back(r);
        double b = std::numeric_limits<double>::infinity();
        std::size_t arg = r;
        for (std::size_t l : candidates) {
            const double v = best[l - 1] + gamma + interval_error(pm, l - 1, r - 1);
            if (v <= b) {  // exact ties resolved toward the larger l
                b = v;
                arg = l;
            }
        }
        best[r] = b;
        last_start[r] = arg;
        if (prune) {
            // safe to drop l once its partial cost exceeds best[r]: future
            // errors only grow by at least the error of the tail interval
            std::erase_if(candidates, [&](std::size_t l) {
                return best[l - 1] + interval_error(pm, l - 1, r - 1) > best[r];
            });
        }
    }

    Segmentation1D seg;
    std::size_t r = n;
    while (r > 0) {
        const std::size_t l = last_start[r];
        seg.ends.push_back(r);
        const double mean = (pm.m1[r] - pm.m1[l - 1]) / static_cast<double>(r - l + 1);
        seg.levels.push_back(mean);
        r = l - 1;
    }
    std::reverse(seg.ends.begin(), seg.ends.end());
    std::reverse(seg.levels.begin(), seg.levels.end());
    seg.energy = best[n];
    return seg;
}

Segmentation1D brute_force_univariate(std::span<const double> g, double gamma) {
    const std::size_t n = g.size();
    if (n == 0) throw std::invalid_argument("brute_force_univariate: empty signal");
    if (n > 16) throw std::invalid_argument("brute_force_univariate: n too large");

    const PrefixMoments pm(g);
    Segmentation1D best;
    best.energy = std::numeric_limits<double>::infinity();
    int best_jumps = -1;

    const std::uint32_t configs = n == 1 ? 1u : (1u << (n - 1));
    for (std::uint32_t mask = 0; mask < configs; ++mask) {
        Segmentation1D cand;
        double sse = 0.0;
        std::size_t start = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const bool cut = (i + 1 == n) || (mask >> i) & 1u;
            if (!cut) continue;
            sse += interval_error(pm, start, i);
            cand.ends.push_back(i + 1);
            cand.levels.push_back((pm.m1[i + 1] - pm.m1[start]) /
                                  static_cast<double>(i + 1 - start));
            start = i + 1;
        }
        const int jumps = static_cast<int>(std::popcount(mask));
        cand.energy = sse + gamma * jumps;
        const bool better =
            cand.energy < best.energy ||
            (cand.energy == best.energy &&
             (jumps < best_jumps || (jumps == best_jumps && cand.ends < best.ends)));
        if (better) {
            best = std::move(cand);
            best_jumps = jumps;
        }
    }
    return best;
}

std::vector<double> expand(const Segmentation1D& seg) {
    std::vector<double> x;
    x.reserve(seg.ends.empty() ? 0 : seg.ends.back());
    std::size_t start = 0;
    for (std::size_t k = 0; k < seg.ends.size(); ++k) {
        for (std::size_t i = start; i < seg.ends[k]; ++i) x.push_back(seg.levels[k]);
        start = seg.ends[k];
    }
    return x;
}

}  // namespace potts
