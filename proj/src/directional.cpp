#include "potts/directional.hpp"

#include <stdexcept>

#include "potts/parallel.hpp"
#include "potts/potts1d.hpp"

namespace potts {

std::vector<LinePath> extract_lines(int width, int height, Direction a) {
    if (width <= 0 || height <= 0) throw std::invalid_argument("extract_lines: bad grid");
    if (a.di == 0 && a.dj == 0) throw std::invalid_argument("extract_lines: zero direction");
    std::vector<LinePath> lines;
    auto inside = [&](int i, int j) { return i >= 0 && i < height && j >= 0 && j < width; };
    for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
            if (inside(i - a.di, j - a.dj)) continue;  // has predecessor, not a start
            LinePath line;
            line.direction = a;
            for (int pi = i, pj = j; inside(pi, pj); pi += a.di, pj += a.dj)
                line.pixels.push_back(static_cast<std::size_t>(pi) * width + pj);
            lines.push_back(std::move(line));
        }
    }
    return lines;
}

Image solve_directional(const Image& h, Direction a, double gamma_prime) {
    if (!(gamma_prime > 0.0))
        throw std::invalid_argument("solve_directional: gamma' must be positive");
    const std::vector<LinePath> lines = extract_lines(h.width, h.height, a);
    Image out(h.width, h.height);
    parallel_for(lines.size(), [&](std::size_t k) {
        const LinePath& line = lines[k];
        std::vector<double> g(line.pixels.size());
        for (std::size_t i = 0; i < line.pixels.size(); ++i) g[i] = h.values[line.pixels[i]];
        // pruning is exact (see the oracle tests) and pays off on the long
        // near-piecewise-constant lines this solver sees in the inner loops
        const std::vector<double> x = expand(solve_univariate(g, gamma_prime, true));
        for (std::size_t i = 0; i < line.pixels.size(); ++i) out.values[line.pixels[i]] = x[i];
    });
    return out;
}

}  // namespace potts
