#include "potts/image.hpp"

#include <cmath>
#include <numeric>

#include "potts/coupling.hpp"
#include "potts/operators.hpp"

namespace potts {

double DirectionModel::min_weight() const {
    double m = weights[0];
    for (double w : weights)
        if (w < m) m = w;
    return m;
}

DirectionModel build_direction_model(DirectionSystem kind) {
    const double s2 = std::sqrt(2.0);
    const double s5 = std::sqrt(5.0);
    if (kind == DirectionSystem::Compass4) {
        return DirectionModel({{0, 1}, {1, 0}, {1, 1}, {1, -1}},
                              {s2 - 1.0, s2 - 1.0, 1.0 - s2 / 2.0, 1.0 - s2 / 2.0});
    }
    return DirectionModel(
        {{0, 1}, {1, 0}, {1, 1}, {1, -1}, {1, 2}, {2, 1}, {1, -2}, {2, -1}},
        {s5 - 2.0, s5 - 2.0, s5 - 1.5 * s2, s5 - 1.5 * s2, (1.0 + s2 - s5) / 2.0,
         (1.0 + s2 - s5) / 2.0, (1.0 + s2 - s5) / 2.0, (1.0 + s2 - s5) / 2.0});
}

std::vector<DirectionalDifference> directional_difference(const Image& u, Direction a) {
    std::vector<DirectionalDifference> out;
    out.reserve(u.size());
    for (int i = 0; i < u.height; ++i) {
        for (int j = 0; j < u.width; ++j) {
            const int ni = i + a.di, nj = j + a.dj;
            if (!u.inside(ni, nj)) continue;
            out.push_back({static_cast<std::size_t>(i) * u.width + j, u.at(ni, nj) - u.at(i, j)});
        }
    }
    return out;
}

std::size_t count_jumps(const Image& u, Direction a) {
    std::size_t n = 0;
    for (int i = 0; i < u.height; ++i) {
        for (int j = 0; j < u.width; ++j) {
            const int ni = i + a.di, nj = j + a.dj;
            if (!u.inside(ni, nj)) continue;
            if (std::abs(u.at(ni, nj) - u.at(i, j)) > kJumpThreshold) ++n;
        }
    }
    return n;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

double potts_energy(const LinearOperator& A, const DataVector& f, const Image& u, double gamma,
                    const DirectionModel& model) {
    const DataVector au = A.apply(u);
    if (au.size() != f.size()) throw std::invalid_argument("potts_energy: data dimension mismatch");
    double fit = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double r = au.values[i] - f.values[i];
        fit += r * r;
    }
    double jumps = 0.0;
    for (int s = 0; s < model.size(); ++s)
        jumps += model.weights[s] * static_cast<double>(count_jumps(u, model.directions[s]));
    return fit + gamma * jumps;
}

double relaxed_energy(const LinearOperator& A, const DataVector& f, const SplitStack& stack,
                      double gamma, double rho, const CouplingScheme& coupling,
                      const DirectionModel& model) {
    const int s_count = model.size();
    if (stack.size() != s_count || coupling.size() != s_count)
        throw std::invalid_argument("relaxed_energy: stack/coupling size mismatch");
    double total = 0.0;
    for (int s = 0; s < s_count; ++s) {
        const DataVector au = A.apply(stack.components[s]);
        if (au.size() != f.size())
            throw std::invalid_argument("relaxed_energy: data dimension mismatch");
        double fit = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            const double r = au.values[i] - f.values[i];
            fit += r * r;
        }
        total += fit / s_count;
        total += gamma * model.weights[s] *
                 static_cast<double>(count_jumps(stack.components[s], model.directions[s]));
    }
    for (int s = 0; s < s_count; ++s) {
        for (int t = s + 1; t < s_count; ++t) {
            const double c = coupling.pair_weight(s, t);
            if (c == 0.0) continue;
            double d2 = 0.0;
            const auto& us = stack.components[s].values;
            const auto& ut = stack.components[t].values;
            for (std::size_t i = 0; i < us.size(); ++i) {
                const double d = us[i] - ut[i];
                d2 += d * d;
            }
            total += rho * c * d2;
        }
    }
    return total;
}

}  // namespace potts
