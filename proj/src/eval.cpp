#include "potts/eval.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace potts {

namespace {

struct Ellipse {
    double value;  // additive intensity
    double a, b;   // semi-axes (x, y) in [-1,1] coordinates
    double x0, y0;
    double phi_deg;
};

// Modified (high-contrast) Shepp-Logan ellipse set.
constexpr Ellipse kSheppLogan[] = {
    {1.0, 0.69, 0.92, 0.0, 0.0, 0.0},
    {-0.8, 0.6624, 0.8740, 0.0, -0.0184, 0.0},
    {-0.2, 0.1100, 0.3100, 0.22, 0.0, -18.0},
    {-0.2, 0.1600, 0.4100, -0.22, 0.0, 18.0},
    {0.1, 0.2100, 0.2500, 0.0, 0.35, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, 0.1, 0.0},
    {0.1, 0.0460, 0.0460, 0.0, -0.1, 0.0},
    {0.1, 0.0460, 0.0230, -0.08, -0.605, 0.0},
    {0.1, 0.0230, 0.0230, 0.0, -0.606, 0.0},
    {0.1, 0.0230, 0.0460, 0.06, -0.605, 0.0},
};

}  // namespace

Image shepp_logan(int n) {
    if (n < 16) throw std::invalid_argument("shepp_logan: n must be at least 16");
    Image img(n, n);
    for (int r = 0; r < n; ++r) {
        // y runs top-down in the raster, bottom-up in phantom coordinates
        const double y = 1.0 - 2.0 * (r + 0.5) / n;
        for (int c = 0; c < n; ++c) {
            const double x = 2.0 * (c + 0.5) / n - 1.0;
            double v = 0.0;
            for (const Ellipse& e : kSheppLogan) {
                const double phi = e.phi_deg * M_PI / 180.0;
                const double dx = x - e.x0;
                const double dy = y - e.y0;
                const double xr = dx * std::cos(phi) + dy * std::sin(phi);
                const double yr = -dx * std::sin(phi) + dy * std::cos(phi);
                if ((xr * xr) / (e.a * e.a) + (yr * yr) / (e.b * e.b) <= 1.0) v += e.value;
            }
            img.at(r, c) = std::clamp(v, 0.0, 1.0);
        }
    }
    return img;
}

namespace {

std::vector<double> noisy(const std::vector<double>& in, const NoiseSpec& spec) {
    if (spec.sigma == 0.0) return in;
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> dist(0.0, spec.sigma);
    std::vector<double> out = in;
    for (double& v : out) v += dist(rng);
    return out;
}

}  // namespace

Image add_noise(const Image& img, const NoiseSpec& spec) {
    Image out = img;
    out.values = noisy(img.values, spec);
    return out;
}

DataVector add_noise(const DataVector& v, const NoiseSpec& spec) {
    DataVector out = v;
    out.values = noisy(v.values, spec);
    return out;
}

double mssim(const Image& x, const Image& y) {
    if (!x.same_shape(y)) throw std::invalid_argument("mssim: dimension mismatch");
    constexpr int kWin = 11;
    constexpr double kSigma = 1.5;
    constexpr double kC1 = 0.01 * 0.01;  // (K1 L)^2, L = 1
    constexpr double kC2 = 0.03 * 0.03;
    if (x.width < kWin || x.height < kWin)
        throw std::invalid_argument("mssim: image smaller than the 11x11 window");

    double w[kWin][kWin];
    double wsum = 0.0;
    for (int i = 0; i < kWin; ++i)
        for (int j = 0; j < kWin; ++j) {
            const double di = i - (kWin - 1) / 2.0;
            const double dj = j - (kWin - 1) / 2.0;
            w[i][j] = std::exp(-(di * di + dj * dj) / (2.0 * kSigma * kSigma));
            wsum += w[i][j];
        }
    for (auto& row : w)
        for (double& v : row) v /= wsum;

    auto clamp01 = [](double v) { return std::clamp(v, 0.0, 1.0); };
    double total = 0.0;
    std::size_t windows = 0;
    for (int r = 0; r + kWin <= x.height; ++r) {
        for (int c = 0; c + kWin <= x.width; ++c) {
            double mx = 0, my = 0, sxx = 0, syy = 0, sxy = 0;
            for (int i = 0; i < kWin; ++i)
                for (int j = 0; j < kWin; ++j) {
                    const double a = clamp01(x.at(r + i, c + j));
                    const double b = clamp01(y.at(r + i, c + j));
                    mx += w[i][j] * a;
                    my += w[i][j] * b;
                    sxx += w[i][j] * a * a;
                    syy += w[i][j] * b * b;
                    sxy += w[i][j] * a * b;
                }
            const double vx = sxx - mx * mx;
            const double vy = syy - my * my;
            const double cov = sxy - mx * my;
            total += ((2 * mx * my + kC1) * (2 * cov + kC2)) /
                     ((mx * mx + my * my + kC1) * (vx + vy + kC2));
            ++windows;
        }
    }
    return total / static_cast<double>(windows);
}

}  // namespace potts
