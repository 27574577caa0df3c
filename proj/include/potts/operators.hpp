#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "potts/image.hpp"

namespace potts {

/// Linear forward map between image space and data space. Implementations
/// are immutable after construction; apply/adjoint are pure.
class LinearOperator {
public:
    virtual ~LinearOperator() = default;

    virtual DataVector apply(const Image& u) const = 0;
    virtual Image adjoint(const DataVector& v) const = 0;

    int input_width() const { return in_w_; }
    int input_height() const { return in_h_; }
    int output_rows() const { return out_rows_; }
    int output_cols() const { return out_cols_; }

    /// Spectral norm estimate, cached after the first call (power iteration,
    /// 100 steps, fixed seed).
    double norm() const;

protected:
    LinearOperator(int in_w, int in_h, int out_rows, int out_cols)
        : in_w_(in_w), in_h_(in_h), out_rows_(out_rows), out_cols_(out_cols) {}
    void set_norm(double n) const { cached_norm_ = n; }

private:
    int in_w_, in_h_, out_rows_, out_cols_;
    mutable double cached_norm_ = -1.0;
};

std::unique_ptr<LinearOperator> identity_operator(int width, int height);

/// 2D convolution with a normalized truncated Gaussian kernel of odd side
/// floor(6*sigma)+1, symmetric (mirror) boundary extension; the adjoint is
/// the exact transpose of the extended convolution.
std::unique_ptr<LinearOperator> gaussian_blur_operator(int width, int height, double sigma);

/// Horizontal 1 x length box blur of weight 1/length, mirror extension.
std::unique_ptr<LinearOperator> motion_blur_operator(int width, int height, int length);

/// General mirror-extended 2D convolution; kernel is kh x kw row-major with
/// the anchor at the center element.
std::unique_ptr<LinearOperator> convolution_operator(int width, int height,
                                                     std::vector<double> kernel, int kw, int kh);

struct RadonGeometry {
    int num_angles = 0;    // equispaced in [0, pi)
    int num_detectors = 0; // 0 -> ceil(sqrt(2) * max(w, h))
    double detector_spacing = 1.0;  // pixel units
};

/// Ray-driven interpolating projector: unit-step sampling with bilinear
/// weights along each (angle, detector) line; the adjoint is the transposed
/// scatter of the same weights.
std::unique_ptr<LinearOperator> radon_operator(int width, int height, RadonGeometry geom);

int default_detector_count(int width, int height);

/// Power iteration on A^T A from a seeded random start; the Rayleigh-quotient
/// estimates are monotone non-decreasing over the iterations.
double estimate_norm(const LinearOperator& a, int iters, std::uint64_t seed);

/// u^0 = 0, u^{k+1} = u^k + (1/||A||^2) A^T (f - A u^k).
Image landweber(const LinearOperator& a, const DataVector& f, int steps);

/// Filtered backprojection with the Ram-Lak (ramp) filter, zero-padded to the
/// next power of two. Baseline quality only.
Image fbp(const DataVector& sinogram, const RadonGeometry& geom, int width, int height);

}  // namespace potts
