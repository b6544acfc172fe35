#pragma once

#include <cstdint>
#include <vector>

namespace eff {

/// 8-bit RGB image, row-major, top-left origin. Alpha is stripped on load.
struct RasterImage {
    static constexpr int kChannels = 3;

    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // width*height*3 samples

    RasterImage() = default;
    RasterImage(int w, int h, std::uint8_t fill = 0);

    std::size_t pixel_count() const { return static_cast<std::size_t>(width) * height; }
    std::size_t sample_count() const { return pixel_count() * kChannels; }

    std::uint8_t* pixel(int x, int y) {
        return data.data() + (static_cast<std::size_t>(y) * width + x) * kChannels;
    }
    const std::uint8_t* pixel(int x, int y) const {
        return data.data() + (static_cast<std::size_t>(y) * width + x) * kChannels;
    }

    bool same_dims(const RasterImage& other) const {
        return width == other.width && height == other.height;
    }

    friend bool operator==(const RasterImage&, const RasterImage&) = default;
};

/// One boolean per pixel, row-major. Dimensions always match the associated image.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits; // 0 or 1

    BinaryMask() = default;
    BinaryMask(int w, int h, bool fill = false);

    bool get(int x, int y) const {
        return bits[static_cast<std::size_t>(y) * width + x] != 0;
    }
    void set(int x, int y, bool v = true) {
        bits[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0;
    }

    std::size_t count() const;
    bool empty() const { return count() == 0; }
    bool any() const;

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;
};

/// Union (boolean OR) into `dst`. Dimensions must match.
void mask_or(BinaryMask& dst, const BinaryMask& src);

/// Complement of a mask.
BinaryMask mask_not(const BinaryMask& m);

/// Exact squared Euclidean distance (pixel-center metric) from each pixel to
/// the nearest set pixel. Two-pass lower-envelope transform over squared
/// distances; results are exact integers stored in double. Unset everywhere
/// yields kUnreachable at every pixel.
std::vector<double> squared_distance_grid(const BinaryMask& mask);

constexpr double kUnreachable = 1e20;

/// Circular (Euclidean) dilation: output bit set iff the distance from the
/// pixel center to the nearest set pixel center is <= pad. pad == 0 returns
/// the input unchanged; an empty mask stays empty.
BinaryMask pad_mask(const BinaryMask& mask, double pad);

} // namespace eff
