#include "potts/projection.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "potts/directional.hpp"

namespace potts {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    std::vector<std::size_t> size;

    explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        std::size_t root = x;
        while (parent[root] != root) root = parent[root];
        while (parent[x] != root) {
            const std::size_t next = parent[x];
            parent[x] = root;
            x = next;
        }
        return root;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }
};

}  // namespace

DirectionalPartition induced_directional_partition(const SplitStack& stack,
                                                   const DirectionModel& model) {
    if (stack.size() != model.size())
        throw std::invalid_argument("induced_directional_partition: stack/model size mismatch");
    const Image& first = stack.components[0];
    DirectionalPartition dp;
    dp.width = first.width;
    dp.height = first.height;
    for (int s = 0; s < model.size(); ++s) {
        const Image& u = stack.components[s];
        const Direction a = model.directions[s];
        const std::ptrdiff_t stride = static_cast<std::ptrdiff_t>(a.di) * u.width + a.dj;
        for (const LinePath& line : extract_lines(u.width, u.height, a)) {
            std::size_t start = 0;
            for (std::size_t i = 1; i <= line.pixels.size(); ++i) {
                const bool cut = i == line.pixels.size() ||
                                 std::abs(u.values[line.pixels[i]] -
                                          u.values[line.pixels[i - 1]]) > kJumpThreshold;
                if (!cut) continue;
                dp.intervals.push_back({s, line.pixels[start], i - start, stride});
                start = i;
            }
        }
    }
    return dp;
}

Partition merge_to_partition(const DirectionalPartition& dp, int width, int height) {
    if (width != dp.width || height != dp.height)
        throw std::invalid_argument("merge_to_partition: dimension mismatch");
    const std::size_t n = static_cast<std::size_t>(width) * height;
    UnionFind uf(n);
    for (const auto& iv : dp.intervals) {
        std::size_t pix = iv.start;
        for (std::size_t k = 1; k < iv.length; ++k) {
            const std::size_t next =
                static_cast<std::size_t>(static_cast<std::ptrdiff_t>(pix) + iv.stride);
            uf.unite(pix, next);
            pix = next;
        }
    }
    Partition p;
    p.width = width;
    p.height = height;
    p.labels.assign(n, -1);
    std::vector<int> root_label(n, -1);
    int next_label = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = uf.find(i);
        if (root_label[r] < 0) root_label[r] = next_label++;
        p.labels[i] = root_label[r];
    }
    p.segment_count = next_label;
    return p;
}

std::pair<Image, Partition> project(const SplitStack& stack, const DirectionModel& model) {
    const DirectionalPartition dp = induced_directional_partition(stack, model);
    Partition part = merge_to_partition(dp, dp.width, dp.height);
    const int s_count = stack.size();
    std::vector<double> sums(part.segment_count, 0.0);
    std::vector<std::size_t> counts(part.segment_count, 0);
    const std::size_t n = static_cast<std::size_t>(part.width) * part.height;
    for (std::size_t i = 0; i < n; ++i) {
        double v = 0.0;
        for (int s = 0; s < s_count; ++s) v += stack.components[s].values[i];
        sums[part.labels[i]] += v;
        counts[part.labels[i]] += 1;
    }
    Image out(part.width, part.height);
    for (std::size_t i = 0; i < n; ++i)
        out.values[i] =
            sums[part.labels[i]] / (static_cast<double>(s_count) * counts[part.labels[i]]);
    return {std::move(out), std::move(part)};
}

}  // namespace potts
