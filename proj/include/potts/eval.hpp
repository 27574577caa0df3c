#pragma once

#include <cstdint>

#include "potts/image.hpp"

namespace potts {

struct NoiseSpec {
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

/// Modified (high-contrast) Shepp-Logan phantom at n x n, values in [0,1].
Image shepp_logan(int n);

Image add_noise(const Image& img, const NoiseSpec& spec);
DataVector add_noise(const DataVector& v, const NoiseSpec& spec);

/// Mean SSIM: 11x11 Gaussian window (sigma 1.5), K1=0.01, K2=0.03, dynamic
/// range 1; inputs clamped to [0,1].
double mssim(const Image& x, const Image& y);

}  // namespace potts
