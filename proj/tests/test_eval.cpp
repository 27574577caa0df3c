#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "potts/eval.hpp"

using namespace potts;

TEST_CASE("shepp_logan phantom") {
    const Image p = shepp_logan(128);
    REQUIRE(p.width == 128);
    REQUIRE(p.height == 128);
    SUBCASE("range and support") {
        double mx = 0.0;
        for (double v : p.values) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            mx = std::max(mx, v);
        }
        CHECK(mx > 0.5);
        // corners lie outside the skull
        CHECK(p.at(0, 0) == 0.0);
        CHECK(p.at(127, 127) == 0.0);
    }
    SUBCASE("landmark intensities") {
        // soft tissue between the ventricles: 1.0 - 0.8 = 0.2
        CHECK(p.at(64, 64) == doctest::Approx(0.2).epsilon(1e-12));
        // skull rim near the top: only the outermost ellipse contributes
        CHECK(p.at(7, 64) == doctest::Approx(1.0).epsilon(1e-12));
        // inside the left ventricle: 1.0 - 0.8 - 0.2 = 0
        CHECK(p.at(64, 49) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("piecewise constancy") {
        // most pixels share a value with a 4-neighbor
        int good = 0, total = 0;
        for (int r = 1; r < 127; ++r)
            for (int c = 1; c < 127; ++c) {
                ++total;
                if (p.at(r, c) == p.at(r - 1, c) || p.at(r, c) == p.at(r + 1, c) ||
                    p.at(r, c) == p.at(r, c - 1) || p.at(r, c) == p.at(r, c + 1))
                    ++good;
            }
        CHECK(good >= total * 95 / 100);
    }
    CHECK_THROWS(shepp_logan(8));
}

TEST_CASE("add_noise") {
    std::mt19937_64 rng(41);
    const Image base = testing::random_image(10, 10, rng);
    SUBCASE("sigma zero is the identity") {
        const Image out = add_noise(base, {0.0, 7});
        CHECK(out.values == base.values);
    }
    SUBCASE("same seed gives identical noise") {
        const Image a = add_noise(base, {0.3, 123});
        const Image b = add_noise(base, {0.3, 123});
        CHECK(a.values == b.values);
        const Image c = add_noise(base, {0.3, 124});
        CHECK(a.values != c.values);
    }
    SUBCASE("sample statistics") {
        Image big(1000, 1000, 0.0);
        const double sigma = 0.25;
        const Image noisy = add_noise(big, {sigma, 99});
        const double n = static_cast<double>(noisy.size());
        double mean = 0.0;
        for (double v : noisy.values) mean += v;
        mean /= n;
        double var = 0.0;
        for (double v : noisy.values) var += (v - mean) * (v - mean);
        var /= n - 1;
        CHECK(std::abs(mean) < 3.0 * sigma / std::sqrt(n));
        CHECK(var == doctest::Approx(sigma * sigma).epsilon(0.01));
    }
    SUBCASE("data vectors too") {
        DataVector f(4, 4, 1.0);
        const DataVector noisy = add_noise(f, {0.1, 5});
        CHECK(noisy.values != f.values);
        CHECK(noisy.rows == 4);
        CHECK(noisy.cols == 4);
    }
}

TEST_CASE("mssim") {
    std::mt19937_64 rng(42);
    const Image a = testing::random_image(32, 32, rng);
    SUBCASE("self similarity is one") { CHECK(mssim(a, a) == doctest::Approx(1.0).epsilon(1e-12)); }
    SUBCASE("symmetric and bounded") {
        const Image b = add_noise(a, {0.2, 9});
        const double s1 = mssim(a, b), s2 = mssim(b, a);
        CHECK(s1 == doctest::Approx(s2).epsilon(1e-12));
        CHECK(s1 <= 1.0);
        CHECK(s1 >= 0.0);
    }
    SUBCASE("heavy noise scores low") {
        const Image clean = shepp_logan(64);
        const Image noisy = add_noise(clean, {0.5, 3});
        CHECK(mssim(clean, noisy) < 0.5);
        CHECK(mssim(clean, noisy) < mssim(clean, add_noise(clean, {0.05, 3})));
    }
    SUBCASE("errors") {
        CHECK_THROWS(mssim(a, Image(16, 32, 0.0)));
        CHECK_THROWS(mssim(Image(8, 8, 0.0), Image(8, 8, 0.0)));
    }
}
