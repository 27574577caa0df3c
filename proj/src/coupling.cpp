#include "potts/coupling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace potts {

namespace {
constexpr double kSlackL = 1e-9;
constexpr double kSlack = 1e-6;
}  // namespace

CouplingScheme::CouplingScheme(CouplingKind kind, int s_count) : kind_(kind), s_count_(s_count) {
    if (s_count < 2) throw std::invalid_argument("CouplingScheme: S must be >= 2");
    if (kind == CouplingKind::Full) {
        for (int s = 0; s < s_count; ++s)
            for (int t = s + 1; t < s_count; ++t) rows_.push_back({s, t, 1.0});
    } else {
        // one row per consecutive link s -> (s mod S)+1; for S=2 the two links
        // hit the same unordered pair, matching the two-row constraint matrix
        for (int s = 0; s < s_count; ++s) {
            const int t = (s + 1) % s_count;
            rows_.push_back({std::min(s, t), std::max(s, t), 1.0});
        }
    }
}

double CouplingScheme::pair_weight(int s, int t) const {
    double c = 0.0;
    for (const Row& r : rows_)
        if ((r.s == s && r.t == t) || (r.s == t && r.t == s)) c += r.c;
    return c;
}

std::vector<std::pair<int, int>> CouplingScheme::coupled_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int s = 0; s < s_count_; ++s)
        for (int t = s + 1; t < s_count_; ++t)
            if (pair_weight(s, t) > 0.0) out.emplace_back(s, t);
    return out;
}

double l_rho(double norm_a, int s_count, double rho, const CouplingScheme& scheme) {
    const double data_part = norm_a * norm_a / s_count;
    double bound;
    if (scheme.kind() == CouplingKind::Full) {
        bound = data_part + s_count * rho;
    } else if (scheme.kind() == CouplingKind::Cyclic) {
        const double alpha = (s_count % 2 == 0)
                                 ? 4.0
                                 : 2.0 - 2.0 * std::cos(std::numbers::pi * (s_count - 1) / s_count);
        bound = data_part + alpha * rho;
    } else {
        double max_row = 0.0;
        for (int s = 0; s < scheme.size(); ++s) {
            double row = 0.0;
            for (int t = 0; t < scheme.size(); ++t)
                if (t != s) row += rho * scheme.pair_weight(s, t);
            if (row > max_row) max_row = row;
        }
        bound = data_part + 2.0 * max_row;
    }
    return std::sqrt(bound) * (1.0 + kSlackL);
}

double sigma1(const CouplingScheme& scheme) {
    if (scheme.kind() == CouplingKind::Full) return static_cast<double>(scheme.size());
    return 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi / scheme.size());
}

double sigma1_numeric(const CouplingScheme& scheme) {
    const int n = scheme.size();
    // S x S pattern matrix of C^T C (each pixel contributes the same block)
    std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
    for (const auto& r : scheme.rows()) {
        const double c2 = r.c * r.c;
        m[static_cast<std::size_t>(r.s) * n + r.s] += c2;
        m[static_cast<std::size_t>(r.t) * n + r.t] += c2;
        m[static_cast<std::size_t>(r.s) * n + r.t] -= c2;
        m[static_cast<std::size_t>(r.t) * n + r.s] -= c2;
    }
    // cyclic Jacobi sweeps; S is tiny so cost is irrelevant
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::abs(m[static_cast<std::size_t>(p) * n + q]);
        if (off < 1e-14) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = m[static_cast<std::size_t>(p) * n + q];
                if (std::abs(apq) < 1e-300) continue;
                const double app = m[static_cast<std::size_t>(p) * n + p];
                const double aqq = m[static_cast<std::size_t>(q) * n + q];
                const double theta = 0.5 * std::atan2(2.0 * apq, aqq - app);
                const double c = std::cos(theta), s = std::sin(theta);
                for (int k = 0; k < n; ++k) {
                    const double mkp = m[static_cast<std::size_t>(k) * n + p];
                    const double mkq = m[static_cast<std::size_t>(k) * n + q];
                    m[static_cast<std::size_t>(k) * n + p] = c * mkp - s * mkq;
                    m[static_cast<std::size_t>(k) * n + q] = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double mpk = m[static_cast<std::size_t>(p) * n + k];
                    const double mqk = m[static_cast<std::size_t>(q) * n + k];
                    m[static_cast<std::size_t>(p) * n + k] = c * mpk - s * mqk;
                    m[static_cast<std::size_t>(q) * n + k] = s * mpk + c * mqk;
                }
            }
        }
    }
    double max_ev = 0.0;
    for (int k = 0; k < n; ++k)
        max_ev = std::max(max_ev, m[static_cast<std::size_t>(k) * n + k]);
    double smallest = -1.0;
    for (int k = 0; k < n; ++k) {
        const double ev = m[static_cast<std::size_t>(k) * n + k];
        if (ev > 1e-10 * std::max(max_ev, 1.0) && (smallest < 0.0 || ev < smallest)) smallest = ev;
    }
    if (smallest < 0.0) throw std::runtime_error("sigma1_numeric: coupling graph disconnected");
    return smallest;
}

double choose_rho(double epsilon, const CouplingScheme& scheme, double norm_a, double norm_f) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("choose_rho: epsilon must be positive");
    return (1.0 + kSlack) * 2.0 / epsilon / std::sqrt(sigma1(scheme)) /
           std::sqrt(static_cast<double>(scheme.size())) * norm_a * norm_f;
}

double choose_t(const CouplingScheme& scheme, double norm_a, double norm_f) {
    if (norm_a < 0.0 || norm_f < 0.0) throw std::invalid_argument("choose_t: negative norm");
    return (1.0 + kSlack) * 2.0 / std::sqrt(sigma1(scheme)) /
           std::sqrt(static_cast<double>(scheme.size())) * norm_a * norm_f;
}

}  // namespace potts
