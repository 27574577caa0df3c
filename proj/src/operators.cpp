#include "potts/operators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

namespace potts {

double LinearOperator::norm() const {
    if (cached_norm_ < 0.0) cached_norm_ = estimate_norm(*this, 100, 0x9e3779b97f4a7c15ULL);
    return cached_norm_;
}

namespace {

int reflect_index(int i, int n) {
    // half-sample symmetric extension: ..., u1, u0 | u0, u1, ...
    while (i < 0 || i >= n) {
        if (i < 0) i = -1 - i;
        if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
}

class IdentityOperator final : public LinearOperator {
public:
    IdentityOperator(int w, int h) : LinearOperator(w, h, h, w) { set_norm(1.0); }

    DataVector apply(const Image& u) const override {
        return DataVector(u.height, u.width, u.values);
    }
    Image adjoint(const DataVector& v) const override { return Image(v.cols, v.rows, v.values); }
};

class ConvolutionOperator final : public LinearOperator {
public:
    ConvolutionOperator(int w, int h, std::vector<double> kernel, int kw, int kh)
        : LinearOperator(w, h, h, w), kernel_(std::move(kernel)), kw_(kw), kh_(kh) {
        if (kw <= 0 || kh <= 0 || kernel_.size() != static_cast<std::size_t>(kw) * kh)
            throw std::invalid_argument("ConvolutionOperator: bad kernel");
    }

    DataVector apply(const Image& u) const override {
        DataVector out(u.height, u.width);
        const int ci = kh_ / 2, cj = kw_ / 2;
        for (int r = 0; r < u.height; ++r) {
            for (int c = 0; c < u.width; ++c) {
                double acc = 0.0;
                for (int ki = 0; ki < kh_; ++ki) {
                    const int ri = reflect_index(r + ki - ci, u.height);
                    for (int kj = 0; kj < kw_; ++kj) {
                        const int rj = reflect_index(c + kj - cj, u.width);
                        acc += kernel_[static_cast<std::size_t>(ki) * kw_ + kj] * u.at(ri, rj);
                    }
                }
                out.at(r, c) = acc;
            }
        }
        return out;
    }

    Image adjoint(const DataVector& v) const override {
        Image out(v.cols, v.rows);
        const int ci = kh_ / 2, cj = kw_ / 2;
        for (int r = 0; r < v.rows; ++r) {
            for (int c = 0; c < v.cols; ++c) {
                const double val = v.at(r, c);
                for (int ki = 0; ki < kh_; ++ki) {
                    const int ri = reflect_index(r + ki - ci, v.rows);
                    for (int kj = 0; kj < kw_; ++kj) {
                        const int rj = reflect_index(c + kj - cj, v.cols);
                        out.at(ri, rj) += kernel_[static_cast<std::size_t>(ki) * kw_ + kj] * val;
                    }
                }
            }
        }
        return out;
    }

private:
    std::vector<double> kernel_;
    int kw_, kh_;
};

class RadonOperator final : public LinearOperator {
public:
    RadonOperator(int w, int h, RadonGeometry geom)
        : LinearOperator(w, h, geom.num_angles, geom.num_detectors), geom_(geom) {
        if (geom.num_angles <= 0 || geom.num_detectors <= 0 || !(geom.detector_spacing > 0.0))
            throw std::invalid_argument("RadonOperator: bad geometry");
        half_range_ = static_cast<int>(std::ceil(std::hypot(w, h) / 2.0)) + 1;
        build_matrix();
    }

    DataVector apply(const Image& u) const override {
        DataVector out(geom_.num_angles, geom_.num_detectors);
        const std::size_t rays = out.size();
        for (std::size_t ray = 0; ray < rays; ++ray) {
            double acc = 0.0;
            for (std::size_t k = row_ptr_[ray]; k < row_ptr_[ray + 1]; ++k)
                acc += weight_[k] * u.values[pixel_[k]];
            out.values[ray] = acc;
        }
        return out;
    }

    Image adjoint(const DataVector& v) const override {
        Image out(input_width(), input_height());
        const std::size_t npix = out.size();
        for (std::size_t p = 0; p < npix; ++p) {
            double acc = 0.0;
            for (std::size_t k = col_ptr_[p]; k < col_ptr_[p + 1]; ++k)
                acc += t_weight_[k] * v.values[t_ray_[k]];
            out.values[p] = acc;
        }
        return out;
    }

private:
    // The matrix is assembled once: rays are short, so both orientations are
    // stored (ray-major for apply, pixel-major for the adjoint gather).
    void build_matrix() {
        struct Entry {
            int ray, pix;
            double w;
        };
        std::vector<Entry> entries;
        const int nd = geom_.num_detectors;
        trace([&](int a, int d, int row, int col, double w) {
            entries.push_back({a * nd + d, row * input_width() + col, w});
        });
        std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
            return x.ray != y.ray ? x.ray < y.ray : x.pix < y.pix;
        });

        const std::size_t rays =
            static_cast<std::size_t>(geom_.num_angles) * geom_.num_detectors;
        const std::size_t npix = static_cast<std::size_t>(input_width()) * input_height();
        row_ptr_.assign(rays + 1, 0);
        for (std::size_t i = 0; i < entries.size();) {
            std::size_t j = i;
            double w = 0.0;
            while (j < entries.size() && entries[j].ray == entries[i].ray &&
                   entries[j].pix == entries[i].pix)
                w += entries[j++].w;
            pixel_.push_back(entries[i].pix);
            weight_.push_back(w);
            ++row_ptr_[entries[i].ray + 1];
            i = j;
        }
        for (std::size_t r = 0; r < rays; ++r) row_ptr_[r + 1] += row_ptr_[r];

        col_ptr_.assign(npix + 1, 0);
        for (int p : pixel_) ++col_ptr_[p + 1];
        for (std::size_t p = 0; p < npix; ++p) col_ptr_[p + 1] += col_ptr_[p];
        t_ray_.resize(pixel_.size());
        t_weight_.resize(pixel_.size());
        std::vector<std::size_t> cursor(col_ptr_.begin(), col_ptr_.end() - 1);
        for (std::size_t ray = 0; ray < rays; ++ray)
            for (std::size_t k = row_ptr_[ray]; k < row_ptr_[ray + 1]; ++k) {
                const std::size_t slot = cursor[pixel_[k]]++;
                t_ray_[slot] = static_cast<int>(ray);
                t_weight_[slot] = weight_[k];
            }
    }
    // Visits every nonzero matrix entry: bilinear weights of unit-step
    // samples along the line s*theta + t*theta_perp.
    template <typename Fn>
    void trace(Fn&& fn) const {
        const int w = input_width(), h = input_height();
        const double cx = (w - 1) / 2.0, cy = (h - 1) / 2.0;
        for (int a = 0; a < geom_.num_angles; ++a) {
            const double phi = std::numbers::pi * a / geom_.num_angles;
            const double ct = std::cos(phi), st = std::sin(phi);
            for (int d = 0; d < geom_.num_detectors; ++d) {
                const double s = (d - (geom_.num_detectors - 1) / 2.0) * geom_.detector_spacing;
                for (int t = -half_range_; t <= half_range_; ++t) {
                    const double x = s * ct - t * st;  // y axis points up
                    const double y = s * st + t * ct;
                    const double colf = cx + x;
                    const double rowf = cy - y;
                    const int c0 = static_cast<int>(std::floor(colf));
                    const int r0 = static_cast<int>(std::floor(rowf));
                    const double fc = colf - c0, fr = rowf - r0;
                    const double wts[4] = {(1 - fr) * (1 - fc), (1 - fr) * fc, fr * (1 - fc),
                                           fr * fc};
                    const int rr[4] = {r0, r0, r0 + 1, r0 + 1};
                    const int cc[4] = {c0, c0 + 1, c0, c0 + 1};
                    for (int k = 0; k < 4; ++k) {
                        if (rr[k] < 0 || rr[k] >= h || cc[k] < 0 || cc[k] >= w) continue;
                        if (wts[k] == 0.0) continue;
                        fn(a, d, rr[k], cc[k], wts[k]);
                    }
                }
            }
        }
    }

    RadonGeometry geom_;
    int half_range_;
    std::vector<std::size_t> row_ptr_, col_ptr_;
    std::vector<int> pixel_, t_ray_;
    std::vector<double> weight_, t_weight_;
};

void fft_radix2(std::vector<std::complex<double>>& x, bool inverse) {
    const std::size_t n = x.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * std::numbers::pi / len * (inverse ? 1.0 : -1.0);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto even = x[i + k];
                const auto odd = x[i + k + len / 2] * w;
                x[i + k] = even + odd;
                x[i + k + len / 2] = even - odd;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& v : x) v /= static_cast<double>(n);
}

}  // namespace

std::unique_ptr<LinearOperator> identity_operator(int width, int height) {
    return std::make_unique<IdentityOperator>(width, height);
}

std::unique_ptr<LinearOperator> convolution_operator(int width, int height,
                                                     std::vector<double> kernel, int kw, int kh) {
    return std::make_unique<ConvolutionOperator>(width, height, std::move(kernel), kw, kh);
}

std::unique_ptr<LinearOperator> gaussian_blur_operator(int width, int height, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_blur_operator: sigma must be > 0");
    int side = static_cast<int>(std::floor(6.0 * sigma)) + 1;
    if (side % 2 == 0) ++side;
    const int half = side / 2;
    std::vector<double> kernel(static_cast<std::size_t>(side) * side);
    double sum = 0.0;
    for (int i = 0; i < side; ++i) {
        for (int j = 0; j < side; ++j) {
            const double di = i - half, dj = j - half;
            const double v = std::exp(-(di * di + dj * dj) / (2.0 * sigma * sigma));
            kernel[static_cast<std::size_t>(i) * side + j] = v;
            sum += v;
        }
    }
    for (double& v : kernel) v /= sum;
    return convolution_operator(width, height, std::move(kernel), side, side);
}

std::unique_ptr<LinearOperator> motion_blur_operator(int width, int height, int length) {
    if (length < 1) throw std::invalid_argument("motion_blur_operator: length must be >= 1");
    std::vector<double> kernel(static_cast<std::size_t>(length), 1.0 / length);
    return convolution_operator(width, height, std::move(kernel), length, 1);
}

int default_detector_count(int width, int height) {
    return static_cast<int>(std::ceil(std::numbers::sqrt2 * std::max(width, height)));
}

std::unique_ptr<LinearOperator> radon_operator(int width, int height, RadonGeometry geom) {
    if (geom.num_detectors == 0) geom.num_detectors = default_detector_count(width, height);
    return std::make_unique<RadonOperator>(width, height, geom);
}

double estimate_norm(const LinearOperator& a, int iters, std::uint64_t seed) {
    if (iters < 10) throw std::invalid_argument("estimate_norm: iters must be >= 10");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Image v(a.input_width(), a.input_height());
    for (double& x : v.values) x = dist(rng);
    double nv = norm2(v.values);
    if (nv == 0.0) return 0.0;
    for (double& x : v.values) x /= nv;
    double rayleigh = 0.0;
    for (int it = 0; it < iters; ++it) {
        const Image w = a.adjoint(a.apply(v));
        rayleigh = dot(v.values, w.values);
        const double nw = norm2(w.values);
        if (nw == 0.0) return 0.0;
        v = w;
        for (double& x : v.values) x /= nw;
    }
    return std::sqrt(std::max(0.0, rayleigh));
}

Image landweber(const LinearOperator& a, const DataVector& f, int steps) {
    if (steps < 0) throw std::invalid_argument("landweber: negative step count");
    const double n = a.norm();
    const double tau = 1.0 / (n * n);
    Image u(a.input_width(), a.input_height());
    for (int k = 0; k < steps; ++k) {
        DataVector r = a.apply(u);
        for (std::size_t i = 0; i < r.size(); ++i) r.values[i] = f.values[i] - r.values[i];
        const Image g = a.adjoint(r);
        for (std::size_t i = 0; i < u.size(); ++i) u.values[i] += tau * g.values[i];
    }
    return u;
}

Image fbp(const DataVector& sinogram, const RadonGeometry& geom, int width, int height) {
    if (sinogram.rows != geom.num_angles || sinogram.cols != geom.num_detectors)
        throw std::invalid_argument("fbp: sinogram shape does not match geometry");
    const int nd = geom.num_detectors;
    std::size_t n = 1;
    while (n < 2 * static_cast<std::size_t>(nd)) n <<= 1;

    std::vector<std::vector<double>> filtered(geom.num_angles, std::vector<double>(nd));
    std::vector<std::complex<double>> buf(n);
    for (int a = 0; a < geom.num_angles; ++a) {
        std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
        for (int d = 0; d < nd; ++d) buf[d] = sinogram.at(a, d);
        fft_radix2(buf, false);
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t sym = k <= n / 2 ? k : n - k;
            buf[k] *= static_cast<double>(sym) / (static_cast<double>(n) * geom.detector_spacing);
        }
        fft_radix2(buf, true);
        for (int d = 0; d < nd; ++d) filtered[a][d] = buf[d].real();
    }

    Image out(width, height);
    const double cx = (width - 1) / 2.0, cy = (height - 1) / 2.0;
    const double scale = std::numbers::pi / geom.num_angles;
    for (int a = 0; a < geom.num_angles; ++a) {
        const double phi = std::numbers::pi * a / geom.num_angles;
        const double ct = std::cos(phi), st = std::sin(phi);
        for (int r = 0; r < height; ++r) {
            const double y = cy - r;
            for (int c = 0; c < width; ++c) {
                const double x = c - cx;
                const double s = x * ct + y * st;
                const double idx = s / geom.detector_spacing + (nd - 1) / 2.0;
                const int i0 = static_cast<int>(std::floor(idx));
                const double frac = idx - i0;
                double q = 0.0;
                if (i0 >= 0 && i0 < nd) q += (1.0 - frac) * filtered[a][i0];
                if (i0 + 1 >= 0 && i0 + 1 < nd) q += frac * filtered[a][i0 + 1];
                out.at(r, c) += scale * q;
            }
        }
    }
    return out;
}

}  // namespace potts
