#pragma once

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eff/raster.hpp"
#include "eff/scene.hpp"

namespace eff {

/// Where recognized text regions come from.
///   GroundTruth     — regions copied from the manifest (default; no external deps).
///   ExternalCommand — spawn `command... <image-path>`; the command prints the
///                     OCR wire JSON {"regions":[{"id","text","quad",("confidence")}]}
///                     on stdout.
///   Disabled        — detection unavailable (evaluation falls back to PSNR only).
struct OcrBackend {
    enum class Mode { GroundTruth, ExternalCommand, Disabled };

    Mode mode = Mode::GroundTruth;
    std::vector<std::string> command;
    double confidence_floor = 0.0;
    std::chrono::milliseconds timeout{120000};
};

/// Where the edited image comes from.
///   Precomputed     — loaded from the manifest's `edited` reference.
///   ExternalCommand — spawn `command... --source <path> --target-id <id>
///                     --target-text <text> --quad x1,y1,...,x4,y4`; the last
///                     stdout line is the absolute path of the edited image.
struct EditorBackend {
    enum class Mode { Precomputed, ExternalCommand };

    Mode mode = Mode::Precomputed;
    std::vector<std::string> command;
    std::chrono::milliseconds timeout{120000};
};

/// Stage PARSE. GroundTruth returns the manifest regions verbatim; an external
/// command's wire JSON is parsed and validated (target id must be present).
/// Throws BackendError with captured diagnostics on command failure.
std::vector<TextRegion> detect_text(const OcrBackend& backend, const SceneSpec& scene,
                                    const std::filesystem::path& image_path,
                                    const std::filesystem::path& work_dir = {});

/// Parse the OCR wire JSON into regions (roles assigned from target_region_id
/// later). Regions with confidence below the floor are dropped.
std::vector<TextRegion> parse_ocr_wire(const std::string& json_text, double confidence_floor);

/// Stage EDIT. Precomputed loads the manifest's edited image; an external
/// command is spawned per the wire contract above.
RasterImage run_editor(const EditorBackend& backend, const SceneSpec& scene,
                       const Manifest& manifest, const std::filesystem::path& source_path,
                       const std::filesystem::path& work_dir = {});

} // namespace eff
