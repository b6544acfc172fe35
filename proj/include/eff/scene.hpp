#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eff/geometry.hpp"

namespace eff {

enum class Role { Target, NonTarget };

struct TextRegion {
    std::string id;
    Quad quad;
    std::string text; // recognized text on the source image
    Role role = Role::NonTarget;

    friend bool operator==(const TextRegion&, const TextRegion&) = default;
};

/// One benchmark scene. Image refs are stored as written in the manifest and
/// resolved lazily against the manifest directory; no file is opened at load.
struct SceneSpec {
    std::string scene_id;
    std::string category;
    std::string source_ref;
    std::vector<TextRegion> regions;
    std::string target_region_id;
    std::string target_text;
    std::optional<std::string> edited_ref;
    std::optional<std::map<std::string, std::string>> edited_ocr; // region id -> text on edited image

    const TextRegion& target() const;
    std::vector<const TextRegion*> non_targets() const;

    friend bool operator==(const SceneSpec&, const SceneSpec&) = default;
};

/// Field construction and evaluation thresholds.
struct FieldConfig {
    double sigma = 0.12;         // decay rate, fraction of the image diagonal
    double pad_core = 15.0;      // px around the target region
    double pad_protect = 8.0;    // px around each non-target region
    double smooth_sigma = 3.0;   // px, Gaussian smoothing scale
    double sim_threshold = 0.85; // OCR similarity below this flags a text change
    double psnr_threshold = 35.0; // dB, region PSNR below this flags spillover
    double psnr_cap = 150.0;      // dB reported for zero-MSE regions

    void validate() const; // throws ConfigError
};

struct Manifest {
    std::filesystem::path base_dir; // directory the manifest was loaded from
    std::vector<SceneSpec> scenes;

    std::filesystem::path resolve(const std::string& ref) const;
    const SceneSpec* find(const std::string& scene_id) const;
};

/// Throws ManifestError unless: ids unique, exactly one Target role, the
/// target id present, N >= 1, and all vertices finite.
void validate_scene(const SceneSpec& scene);

Manifest load_manifest(const std::filesystem::path& path);
void save_manifest(const std::filesystem::path& path, const std::vector<SceneSpec>& scenes);

} // namespace eff
