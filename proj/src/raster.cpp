#include "eff/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace eff {

RasterImage::RasterImage(int w, int h, std::uint8_t fill)
    : width(w), height(h), data(static_cast<std::size_t>(w) * h * kChannels, fill) {}

BinaryMask::BinaryMask(int w, int h, bool fill)
    : width(w), height(h), bits(static_cast<std::size_t>(w) * h, fill ? 1 : 0) {}

std::size_t BinaryMask::count() const {
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

bool BinaryMask::any() const {
    return std::find(bits.begin(), bits.end(), std::uint8_t{1}) != bits.end();
}

void mask_or(BinaryMask& dst, const BinaryMask& src) {
    for (std::size_t i = 0; i < dst.bits.size(); ++i) dst.bits[i] |= src.bits[i];
}

BinaryMask mask_not(const BinaryMask& m) {
    BinaryMask out(m.width, m.height);
    for (std::size_t i = 0; i < m.bits.size(); ++i) out.bits[i] = m.bits[i] ? 0 : 1;
    return out;
}

namespace {

// 1-D squared distance transform: d[p] = min_q (p-q)^2 + f[q].
// Lower envelope of parabolas; exact for integer-valued f.
void dt_1d(const double* f, int n, double* d, int* v, double* z) {
    int k = 0;
    v[0] = 0;
    z[0] = -kUnreachable;
    z[1] = kUnreachable;
    for (int q = 1; q < n; ++q) {
        double s = ((f[q] + static_cast<double>(q) * q) -
                    (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
                   (2.0 * q - 2.0 * v[k]);
        while (s <= z[k]) {
            --k;
            s = ((f[q] + static_cast<double>(q) * q) -
                 (f[v[k]] + static_cast<double>(v[k]) * v[k])) /
                (2.0 * q - 2.0 * v[k]);
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kUnreachable;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const double dq = q - v[k];
        d[q] = dq * dq + f[v[k]];
    }
}

} // namespace

std::vector<double> squared_distance_grid(const BinaryMask& mask) {
    const int w = mask.width;
    const int h = mask.height;
    std::vector<double> grid(static_cast<std::size_t>(w) * h);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = mask.bits[i] ? 0.0 : kUnreachable;

    const int n = std::max(w, h);
    std::vector<double> f(n), d(n), z(n + 1);
    std::vector<int> v(n);

    // columns first, then rows
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) f[y] = grid[static_cast<std::size_t>(y) * w + x];
        dt_1d(f.data(), h, d.data(), v.data(), z.data());
        for (int y = 0; y < h; ++y) grid[static_cast<std::size_t>(y) * w + x] = d[y];
    }
    for (int y = 0; y < h; ++y) {
        double* row = grid.data() + static_cast<std::size_t>(y) * w;
        std::copy(row, row + w, f.begin());
        dt_1d(f.data(), w, row, v.data(), z.data());
    }
    // cap accumulated unreachable values (empty-mask case)
    for (double& g : grid) g = std::min(g, kUnreachable);
    return grid;
}

BinaryMask pad_mask(const BinaryMask& mask, double pad) {
    if (pad == 0.0) return mask;
    if (!mask.any()) return mask;
    const std::vector<double> sq = squared_distance_grid(mask);
    BinaryMask out(mask.width, mask.height);
    const double pad_sq = pad * pad;
    for (std::size_t i = 0; i < sq.size(); ++i) out.bits[i] = sq[i] <= pad_sq ? 1 : 0;
    return out;
}

} // namespace eff
