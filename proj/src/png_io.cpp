#include "eff/png_io.hpp"

#include <png.h>

#include <cstdio>
#include <memory>

#include "eff/errors.hpp"

namespace eff {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
    throw ImageIoError(std::string("libpng: ") + (msg ? msg : "unknown error"));
    (void)png;
}

void png_warn_fn(png_structp, png_const_charp) {}

} // namespace

RasterImage read_png_rgb8(const std::filesystem::path& path) {
    FilePtr fp(std::fopen(path.string().c_str(), "rb"));
    if (!fp) throw ImageIoError("cannot open image: " + path.string());

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                             png_error_fn, png_warn_fn);
    if (!png) throw ImageIoError("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw ImageIoError("png_create_info_struct failed");
    }

    RasterImage img;
    try {
        png_init_io(png, fp.get());
        png_read_info(png, info);

        png_set_palette_to_rgb(png);
        png_set_expand_gray_1_2_4_to_8(png);
        png_set_gray_to_rgb(png);
        png_set_strip_16(png);
        png_set_strip_alpha(png);
        png_read_update_info(png, info);

        img.width = static_cast<int>(png_get_image_width(png, info));
        img.height = static_cast<int>(png_get_image_height(png, info));
        if (png_get_channels(png, info) != 3)
            throw ImageIoError("unexpected channel count after RGB conversion: " + path.string());
        img.data.resize(img.sample_count());

        std::vector<png_bytep> rows(img.height);
        for (int y = 0; y < img.height; ++y)
            rows[y] = img.data.data() + static_cast<std::size_t>(y) * img.width * 3;
        png_read_image(png, rows.data());
        png_read_end(png, nullptr);
    } catch (...) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw;
    }
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

namespace {

void write_png(const std::filesystem::path& path, int width, int height, int color_type,
               const std::uint8_t* samples, int channels) {
    if (width < 1 || height < 1) throw ImageIoError("cannot write empty image: " + path.string());
    FilePtr fp(std::fopen(path.string().c_str(), "wb"));
    if (!fp) throw ImageIoError("cannot create image: " + path.string());

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                              png_error_fn, png_warn_fn);
    if (!png) throw ImageIoError("png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw ImageIoError("png_create_info_struct failed");
    }

    try {
        png_init_io(png, fp.get());
        png_set_IHDR(png, info, static_cast<png_uint_32>(width),
                     static_cast<png_uint_32>(height), 8, color_type,
                     PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                     PNG_FILTER_TYPE_DEFAULT);
        png_write_info(png, info);
        std::vector<png_bytep> rows(height);
        for (int y = 0; y < height; ++y)
            rows[y] = const_cast<png_bytep>(samples + static_cast<std::size_t>(y) * width * channels);
        png_write_image(png, rows.data());
        png_write_end(png, nullptr);
    } catch (...) {
        png_destroy_write_struct(&png, &info);
        throw;
    }
    png_destroy_write_struct(&png, &info);
}

} // namespace

void write_png_rgb8(const std::filesystem::path& path, const RasterImage& img) {
    if (img.data.size() != img.sample_count())
        throw ImageIoError("image buffer size does not match dimensions");
    write_png(path, img.width, img.height, PNG_COLOR_TYPE_RGB, img.data.data(), 3);
}

void write_png_gray8(const std::filesystem::path& path, int width, int height,
                     const std::vector<std::uint8_t>& samples) {
    if (samples.size() != static_cast<std::size_t>(width) * height)
        throw ImageIoError("grayscale buffer size does not match dimensions");
    write_png(path, width, height, PNG_COLOR_TYPE_GRAY, samples.data(), 1);
}

} // namespace eff
