#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "eff/raster.hpp"
#include "eff/scene.hpp"

namespace eff {

/// Per-pixel fidelity weights in [0,1], row-major, 32-bit storage.
/// 1 = take the edited image, 0 = keep the source verbatim.
struct FidelityField {
    int width = 0;
    int height = 0;
    std::vector<float> weights;

    FidelityField() = default;
    FidelityField(int w, int h, float fill = 0.0f)
        : width(w), height(h), weights(static_cast<std::size_t>(w) * h, fill) {}

    float at(int x, int y) const { return weights[static_cast<std::size_t>(y) * width + x]; }
    float& at(int x, int y) { return weights[static_cast<std::size_t>(y) * width + x]; }

    friend bool operator==(const FidelityField&, const FidelityField&) = default;
};

/// Euclidean pixel distances to a seed mask; zero exactly on seed pixels.
struct DistanceGrid {
    int width = 0;
    int height = 0;
    std::vector<double> distances;

    double at(int x, int y) const { return distances[static_cast<std::size_t>(y) * width + x]; }
};

/// Padded target-region mask (the edit core, weight 1).
BinaryMask build_core(const SceneSpec& scene, double pad_core, int width, int height);

/// Exact Euclidean distance transform. Throws on an empty mask: the decay is
/// undefined without a core.
DistanceGrid distance_transform(const BinaryMask& mask);

/// weight(x,y) = exp(-d(x,y) / (sigma * D)), D = sqrt(width^2 + height^2).
FidelityField build_decay(const DistanceGrid& dist, double sigma, int width, int height);

/// Union of padded non-target region masks. Degenerate non-target quads are
/// skipped; a note per skip is appended to `warnings` when provided.
BinaryMask build_protect(const SceneSpec& scene, double pad_protect, int width, int height,
                         std::vector<std::string>* warnings = nullptr);

/// Separable Gaussian convolution, kernel radius ceil(3*sigma), kernel
/// normalized to sum 1, replicate-edge borders. sigma == 0 is the identity.
/// Output values are clamped to [0,1].
FidelityField gaussian_smooth(const FidelityField& field, double smooth_sigma);

/// Full field: smooth(max(core, decay) * (1 - protect)), then protected
/// pixels forced back to exactly 0, then clamped to [0,1].
FidelityField build_field(const SceneSpec& scene, const FieldConfig& config, int width, int height,
                          std::vector<std::string>* warnings = nullptr);

/// Sum of all weights (the editable mass of the field).
double field_mass(const FidelityField& field);

// --- export / import -------------------------------------------------------

/// Grayscale PFM: "Pf\n{w} {h}\n-1.0\n" then rows bottom-to-top,
/// 32-bit little-endian floats.
void write_pfm(const std::filesystem::path& path, const FidelityField& field);
FidelityField read_pfm(const std::filesystem::path& path);

/// 8-bit grayscale heatmap, sample = round(255 * w).
void write_heatmap_png(const std::filesystem::path& path, const FidelityField& field);

/// CSV cross-section of one row: header "x,weight" then one line per column.
void write_profile_csv(const std::filesystem::path& path, const FidelityField& field, int row);

} // namespace eff
