#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace potts {

// Any |difference| above this counts as a jump. True jumps produced by the
// solvers are bounded below by the minimal jump height, orders of magnitude
// above this value.
inline constexpr double kJumpThreshold = 1e-12;

/// Single-channel real-valued image, row-major.
struct Image {
    int width = 0;   // columns
    int height = 0;  // rows
    std::vector<double> values;

    Image() = default;
    Image(int w, int h, double fill = 0.0)
        : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("Image: non-positive dimensions");
    }
    Image(int w, int h, std::vector<double> v) : width(w), height(h), values(std::move(v)) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("Image: non-positive dimensions");
        if (values.size() != static_cast<std::size_t>(w) * h)
            throw std::invalid_argument("Image: value count does not match dimensions");
    }

    std::size_t size() const { return values.size(); }
    double& at(int row, int col) { return values[static_cast<std::size_t>(row) * width + col]; }
    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * width + col]; }
    bool inside(int row, int col) const { return row >= 0 && row < height && col >= 0 && col < width; }
    bool same_shape(const Image& o) const { return width == o.width && height == o.height; }
};

/// Element of the data space of a forward operator (blurred image pixels or
/// sinogram bins), stored as a flat vector with a 2D shape descriptor.
struct DataVector {
    int rows = 0;  // e.g. projection angles, or image height
    int cols = 0;  // e.g. detector bins, or image width
    std::vector<double> values;

    DataVector() = default;
    DataVector(int r, int c, double fill = 0.0)
        : rows(r), cols(c), values(static_cast<std::size_t>(r) * c, fill) {}
    DataVector(int r, int c, std::vector<double> v) : rows(r), cols(c), values(std::move(v)) {
        if (values.size() != static_cast<std::size_t>(r) * c)
            throw std::invalid_argument("DataVector: value count does not match shape");
    }

    std::size_t size() const { return values.size(); }
    double& at(int r, int c) { return values[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
};

/// Grid offset a = (di, dj): di steps in row direction, dj in column direction.
struct Direction {
    int di = 0;
    int dj = 0;
    bool operator==(const Direction&) const = default;
};

enum class DirectionSystem { Compass4, Knight8 };

/// Finite direction system a_1..a_S with positive weights.
struct DirectionModel {
    std::vector<Direction> directions;
    std::vector<double> weights;

    DirectionModel() = default;
    DirectionModel(std::vector<Direction> dirs, std::vector<double> w)
        : directions(std::move(dirs)), weights(std::move(w)) {
        if (directions.empty() || directions.size() != weights.size())
            throw std::invalid_argument("DirectionModel: direction/weight count mismatch");
        for (double x : weights)
            if (!(x > 0.0)) throw std::invalid_argument("DirectionModel: weights must be positive");
        for (const Direction& d : directions)
            if (d.di == 0 && d.dj == 0) throw std::invalid_argument("DirectionModel: zero direction");
    }

    int size() const { return static_cast<int>(directions.size()); }
    double min_weight() const;
};

/// Coordinate+diagonal system (0,1),(1,0),(1,1),(1,-1) or its knight-move
/// extension, with the matching near-isotropic boundary weights.
DirectionModel build_direction_model(DirectionSystem kind);

/// One image per direction; the splitting variables u_1..u_S.
struct SplitStack {
    std::vector<Image> components;

    SplitStack() = default;
    explicit SplitStack(std::vector<Image> comps) : components(std::move(comps)) {
        for (std::size_t s = 1; s < components.size(); ++s)
            if (!components[s].same_shape(components[0]))
                throw std::invalid_argument("SplitStack: component shapes differ");
    }
    /// All S components equal to u.
    SplitStack(const Image& u, int s_count) : components(s_count, u) {}

    int size() const { return static_cast<int>(components.size()); }
};

struct DirectionalDifference {
    std::size_t pixel;  // row-major index of the base pixel (i,j)
    double value;       // u_{(i,j)+a} - u_{i,j}
};

/// All finite differences of u along a; pixels whose neighbor falls outside
/// the grid contribute nothing.
std::vector<DirectionalDifference> directional_difference(const Image& u, Direction a);

/// Number of differences along a with |d| > kJumpThreshold.
std::size_t count_jumps(const Image& u, Direction a);

double dot(const std::vector<double>& a, const std::vector<double>& b);
double norm2(const std::vector<double>& a);

class LinearOperator;

/// ||Au - f||^2 + gamma * sum_s w_s ||grad_{a_s} u||_0
double potts_energy(const LinearOperator& A, const DataVector& f, const Image& u, double gamma,
                    const DirectionModel& model);

class CouplingScheme;

/// sum_s (1/S)||Au_s - f||^2 + gamma sum_s w_s||grad_{a_s} u_s||_0
///   + rho sum_{s<s'} c_{s,s'} ||u_s - u_{s'}||^2
double relaxed_energy(const LinearOperator& A, const DataVector& f, const SplitStack& stack,
                      double gamma, double rho, const CouplingScheme& coupling,
                      const DirectionModel& model);

}  // namespace potts
