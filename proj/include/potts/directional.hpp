#pragma once

#include <vector>

#include "potts/image.hpp"

namespace potts {

/// Maximal run of grid pixels v, v+a, v+2a, ... inside the grid.
struct LinePath {
    Direction direction;
    std::vector<std::size_t> pixels;  // row-major indices, consecutive entries differ by a
};

/// Partition of the grid into maximal a-lines, ordered by start pixel
/// (row-major). Start pixels are exactly those with no in-grid predecessor.
std::vector<LinePath> extract_lines(int width, int height, Direction a);

/// argmin_u ||u - h||^2 + gamma' ||grad_a u||_0, solved exactly line by line.
Image solve_directional(const Image& h, Direction a, double gamma_prime);

}  // namespace potts
