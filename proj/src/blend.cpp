#include "eff/blend.hpp"

#include <algorithm>
#include <cmath>

#include "eff/errors.hpp"

namespace eff {

namespace {

std::uint8_t round_byte(float v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

} // namespace

RasterImage resize_bilinear(const RasterImage& img, int width, int height) {
    if (width < 1 || height < 1) throw ConfigError("resize target must be at least 1x1");
    if (width == img.width && height == img.height) return img;

    RasterImage out(width, height);
    const double sx = static_cast<double>(img.width) / width;
    const double sy = static_cast<double>(img.height) / height;
    for (int y = 0; y < height; ++y) {
        const double src_y = (y + 0.5) * sy - 0.5;
        const int y0 = static_cast<int>(std::floor(src_y));
        const double ty = src_y - y0;
        const int ya = std::clamp(y0, 0, img.height - 1);
        const int yb = std::clamp(y0 + 1, 0, img.height - 1);
        for (int x = 0; x < width; ++x) {
            const double src_x = (x + 0.5) * sx - 0.5;
            const int x0 = static_cast<int>(std::floor(src_x));
            const double tx = src_x - x0;
            const int xa = std::clamp(x0, 0, img.width - 1);
            const int xb = std::clamp(x0 + 1, 0, img.width - 1);
            const std::uint8_t* p00 = img.pixel(xa, ya);
            const std::uint8_t* p10 = img.pixel(xb, ya);
            const std::uint8_t* p01 = img.pixel(xa, yb);
            const std::uint8_t* p11 = img.pixel(xb, yb);
            std::uint8_t* dst = out.pixel(x, y);
            for (int c = 0; c < RasterImage::kChannels; ++c) {
                const double top = p00[c] + tx * (p10[c] - p00[c]);
                const double bot = p01[c] + tx * (p11[c] - p01[c]);
                dst[c] = round_byte(static_cast<float>(top + ty * (bot - top)));
            }
        }
    }
    return out;
}

RasterImage blend(const RasterImage& src, const RasterImage& edited, const FidelityField& field,
                  ResizePolicy policy) {
    if (field.width != src.width || field.height != src.height)
        throw ConfigError("field dimensions do not match the source image");

    const RasterImage* ed = &edited;
    RasterImage resized;
    if (!edited.same_dims(src)) {
        if (policy == ResizePolicy::Strict)
            throw ConfigError("edited image is " + std::to_string(edited.width) + "x" +
                              std::to_string(edited.height) + " but source is " +
                              std::to_string(src.width) + "x" + std::to_string(src.height) +
                              " (use the bilinear resize policy to allow this)");
        resized = resize_bilinear(edited, src.width, src.height);
        ed = &resized;
    }

    RasterImage out(src.width, src.height);
    for (std::size_t p = 0; p < src.pixel_count(); ++p) {
        const float w = field.weights[p];
        const std::size_t s = p * RasterImage::kChannels;
        if (w == 0.0f) {
            out.data[s] = src.data[s];
            out.data[s + 1] = src.data[s + 1];
            out.data[s + 2] = src.data[s + 2];
        } else if (w == 1.0f) {
            out.data[s] = ed->data[s];
            out.data[s + 1] = ed->data[s + 1];
            out.data[s + 2] = ed->data[s + 2];
        } else {
            const float inv = 1.0f - w;
            for (int c = 0; c < RasterImage::kChannels; ++c)
                out.data[s + c] = round_byte(src.data[s + c] * inv + ed->data[s + c] * w);
        }
    }
    return out;
}

} // namespace eff
