#include "eff/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "eff/errors.hpp"
#include "eff/format.hpp"
#include "eff/geometry.hpp"
#include "eff/png_io.hpp"

namespace eff {

BinaryMask build_core(const SceneSpec& scene, double pad_core, int width, int height) {
    const TextRegion& target = scene.target();
    BinaryMask raw = rasterize_quad(target.quad, width, height);
    if (!raw.any())
        throw DegenerateRegionError("target region '" + target.id + "' covers no pixel centers");
    return pad_mask(raw, pad_core);
}

DistanceGrid distance_transform(const BinaryMask& mask) {
    if (!mask.any())
        throw DegenerateRegionError("distance transform of an empty mask is undefined");
    DistanceGrid grid;
    grid.width = mask.width;
    grid.height = mask.height;
    const std::vector<double> sq = squared_distance_grid(mask);
    grid.distances.resize(sq.size());
    for (std::size_t i = 0; i < sq.size(); ++i) grid.distances[i] = std::sqrt(sq[i]);
    return grid;
}

FidelityField build_decay(const DistanceGrid& dist, double sigma, int width, int height) {
    if (!(sigma > 0.0)) throw ConfigError("sigma must be > 0");
    const double diagonal = std::sqrt(static_cast<double>(width) * width +
                                      static_cast<double>(height) * height);
    const double scale = sigma * diagonal;
    FidelityField field(width, height);
    for (std::size_t i = 0; i < field.weights.size(); ++i)
        field.weights[i] = static_cast<float>(std::exp(-dist.distances[i] / scale));
    return field;
}

BinaryMask build_protect(const SceneSpec& scene, double pad_protect, int width, int height,
                         std::vector<std::string>* warnings) {
    BinaryMask mask(width, height);
    for (const TextRegion* region : scene.non_targets()) {
        try {
            BinaryMask raw = rasterize_quad(region->quad, width, height);
            mask_or(mask, pad_mask(raw, pad_protect));
        } catch (const DegenerateRegionError& e) {
            if (warnings)
                warnings->push_back("non-target region '" + region->id + "' skipped: " + e.what());
        }
    }
    return mask;
}

FidelityField gaussian_smooth(const FidelityField& field, double smooth_sigma) {
    if (smooth_sigma < 0.0) throw ConfigError("smooth_sigma must be >= 0");
    if (smooth_sigma == 0.0) return field;

    const int radius = static_cast<int>(std::ceil(3.0 * smooth_sigma));
    std::vector<double> kernel(2 * radius + 1);
    double sum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-(static_cast<double>(i) * i) /
                                      (2.0 * smooth_sigma * smooth_sigma));
        sum += kernel[i + radius];
    }
    for (double& k : kernel) k /= sum;

    const int w = field.width;
    const int h = field.height;
    std::vector<double> tmp(static_cast<std::size_t>(w) * h);

    // horizontal pass, replicate edges
    for (int y = 0; y < h; ++y) {
        const std::size_t row = static_cast<std::size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                const int xi = std::clamp(x + i, 0, w - 1);
                acc += kernel[i + radius] * field.weights[row + xi];
            }
            tmp[row + x] = acc;
        }
    }
    // vertical pass
    FidelityField out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                const int yi = std::clamp(y + i, 0, h - 1);
                acc += kernel[i + radius] * tmp[static_cast<std::size_t>(yi) * w + x];
            }
            out.weights[static_cast<std::size_t>(y) * w + x] =
                static_cast<float>(std::clamp(acc, 0.0, 1.0));
        }
    }
    return out;
}

FidelityField build_field(const SceneSpec& scene, const FieldConfig& config, int width, int height,
                          std::vector<std::string>* warnings) {
    config.validate();

    const BinaryMask core = build_core(scene, config.pad_core, width, height);
    const DistanceGrid dist = distance_transform(core);
    FidelityField field = build_decay(dist, config.sigma, width, height);

    // Distances are measured from the padded core, so decay is already 1
    // there; the max keeps the field correct if that ever changes.
    for (std::size_t i = 0; i < field.weights.size(); ++i)
        if (core.bits[i]) field.weights[i] = std::max(field.weights[i], 1.0f);

    const BinaryMask protect = build_protect(scene, config.pad_protect, width, height, warnings);
    for (std::size_t i = 0; i < field.weights.size(); ++i)
        if (protect.bits[i]) field.weights[i] = 0.0f;

    field = gaussian_smooth(field, config.smooth_sigma);

    // Re-enforce after smoothing: protected zones must be exactly zero.
    for (std::size_t i = 0; i < field.weights.size(); ++i) {
        if (protect.bits[i]) field.weights[i] = 0.0f;
        else field.weights[i] = std::clamp(field.weights[i], 0.0f, 1.0f);
    }
    return field;
}

double field_mass(const FidelityField& field) {
    double sum = 0.0;
    for (float w : field.weights) sum += w;
    return sum;
}

void write_pfm(const std::filesystem::path& path, const FidelityField& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ImageIoError("cannot create PFM: " + path.string());
    out << "Pf\n" << field.width << ' ' << field.height << "\n-1.0\n";
    // PFM stores rows bottom-to-top; scale -1.0 marks little-endian samples.
    for (int y = field.height - 1; y >= 0; --y) {
        const float* row = field.weights.data() + static_cast<std::size_t>(y) * field.width;
        out.write(reinterpret_cast<const char*>(row),
                  static_cast<std::streamsize>(sizeof(float)) * field.width);
    }
    if (!out) throw ImageIoError("failed writing PFM: " + path.string());
}

FidelityField read_pfm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ImageIoError("cannot open PFM: " + path.string());
    std::string magic;
    int w = 0, h = 0;
    double scale = 0.0;
    in >> magic >> w >> h >> scale;
    if (magic != "Pf" || w < 1 || h < 1)
        throw ImageIoError("not a grayscale PFM: " + path.string());
    if (scale >= 0.0)
        throw ImageIoError("big-endian PFM not supported: " + path.string());
    in.get(); // single whitespace after the scale line
    FidelityField field(w, h);
    for (int y = h - 1; y >= 0; --y) {
        float* row = field.weights.data() + static_cast<std::size_t>(y) * w;
        in.read(reinterpret_cast<char*>(row), static_cast<std::streamsize>(sizeof(float)) * w);
    }
    if (!in) throw ImageIoError("truncated PFM: " + path.string());
    return field;
}

void write_heatmap_png(const std::filesystem::path& path, const FidelityField& field) {
    std::vector<std::uint8_t> samples(field.weights.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const long v = std::lround(255.0 * static_cast<double>(field.weights[i]));
        samples[i] = static_cast<std::uint8_t>(std::clamp(v, 0L, 255L));
    }
    write_png_gray8(path, field.width, field.height, samples);
}

void write_profile_csv(const std::filesystem::path& path, const FidelityField& field, int row) {
    if (row < 0 || row >= field.height)
        throw ConfigError("profile row " + std::to_string(row) + " outside field height " +
                          std::to_string(field.height));
    std::ofstream out(path);
    if (!out) throw ImageIoError("cannot create profile CSV: " + path.string());
    out << "x,weight\n";
    for (int x = 0; x < field.width; ++x)
        out << x << ',' << format_double(static_cast<double>(field.at(x, row))) << '\n';
}

} // namespace eff
