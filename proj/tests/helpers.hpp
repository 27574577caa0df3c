#pragma once

#include <random>
#include <vector>

#include "potts/operators.hpp"

namespace potts::testing {

/// Dense matrix operator for oracle tests; rows x (w*h) row-major.
class MatrixOperator final : public LinearOperator {
public:
    MatrixOperator(int w, int h, int out_rows, std::vector<double> m)
        : LinearOperator(w, h, out_rows, 1), m_(std::move(m)) {
        if (m_.size() != static_cast<std::size_t>(out_rows) * w * h)
            throw std::invalid_argument("MatrixOperator: bad matrix size");
    }

    DataVector apply(const Image& u) const override {
        const std::size_t n = u.size();
        DataVector out(output_rows(), 1);
        for (int r = 0; r < output_rows(); ++r) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += m_[r * n + j] * u.values[j];
            out.values[r] = acc;
        }
        return out;
    }

    Image adjoint(const DataVector& v) const override {
        const std::size_t n = static_cast<std::size_t>(input_width()) * input_height();
        Image out(input_width(), input_height());
        for (int r = 0; r < output_rows(); ++r)
            for (std::size_t j = 0; j < n; ++j) out.values[j] += m_[r * n + j] * v.values[r];
        return out;
    }

private:
    std::vector<double> m_;
};

inline Image random_image(int w, int h, std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    Image img(w, h);
    for (double& v : img.values) v = dist(rng);
    return img;
}

inline std::vector<double> random_signal(std::size_t n, std::mt19937_64& rng, double lo = 0.0,
                                         double hi = 1.0) {
    std::uniform_real_distribution<double> dist(lo, hi);
    std::vector<double> g(n);
    for (double& v : g) v = dist(rng);
    return g;
}

}  // namespace potts::testing
