#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eff/raster.hpp"
#include "eff/scene.hpp"

namespace eff {

enum class OcrMode { GroundTruth, External, Disabled };

std::string to_string(OcrMode mode);

/// Recognized texts observed on an output image, keyed by region id.
struct OutputOcr {
    OcrMode mode = OcrMode::GroundTruth;
    std::map<std::string, std::string> texts;
};

struct RegionReport {
    std::string region_id;
    std::string text_src;
    std::optional<std::string> text_out;
    std::optional<double> text_similarity;
    double region_psnr = 0.0; // dB, capped
    std::optional<bool> text_changed;
    bool spillover = false;
    OcrMode ocr_mode = OcrMode::Disabled;
};

struct SceneReport {
    std::string scene_id;
    std::string category;
    std::optional<bool> target_found;
    std::optional<double> spill_rate;       // absent when no non-target regions
    std::optional<double> avg_region_psnr;  // dB
    std::optional<double> min_region_psnr;  // dB
    std::optional<double> bg_psnr;          // dB over pixels outside all padded text regions
    std::vector<RegionReport> region_reports;
    std::vector<std::string> warnings;
};

enum class SpillWeighting { Region, Scene };

struct MetricRow {
    int scene_count = 0;
    long regions_total = 0;   // evaluated non-target regions
    long regions_flagged = 0;
    std::optional<double> found_rate;
    std::optional<double> spill_rate;
    std::optional<double> avg_region_psnr;
    std::optional<double> min_region_psnr; // mean of per-scene minima
    std::optional<double> bg_psnr;
};

struct CorpusReport {
    SpillWeighting weighting = SpillWeighting::Region;
    MetricRow overall;
    std::vector<std::pair<std::string, MetricRow>> categories; // sorted by name
};

/// PSNR over the masked pixels (3 channels). Zero MSE reports psnr_cap; all
/// results are capped there. Throws on an empty mask or dimension mismatch.
double region_psnr(const RasterImage& src, const RasterImage& out, const BinaryMask& mask,
                   double psnr_cap);

/// Casefold (ASCII), trim, collapse internal whitespace runs to single spaces.
std::string normalize_text(const std::string& s);

/// 1 - Levenshtein(a,b)/max(|a|,|b|) over normalized code points.
/// Both empty -> 1.0; exactly one empty -> 0.0.
double text_similarity(const std::string& a, const std::string& b);

/// The flagging rule: text similarity strictly below sim_threshold OR PSNR
/// strictly below psnr_threshold. A missing similarity never flags by itself.
bool spillover_decision(const std::optional<double>& similarity, double psnr,
                        const FieldConfig& config);

/// Evaluate one non-target region of an output image against the source.
/// The PSNR mask is the region quad padded by pad_protect, matching the
/// protected-zone extent.
RegionReport classify_region(const RasterImage& src, const RasterImage& out,
                             const TextRegion& region, const std::optional<std::string>& out_text,
                             OcrMode ocr_mode, const FieldConfig& config);

/// Full per-scene protocol: per-region classification, spill rate, PSNR
/// aggregates, background PSNR over the complement of all padded text
/// regions, and the target-found flag when OCR text is available.
SceneReport evaluate_scene(const SceneSpec& scene, const RasterImage& source,
                           const RasterImage& output, const FieldConfig& config,
                           const std::optional<OutputOcr>& ocr);

/// Corpus aggregation. Region weighting counts each non-target region once;
/// scene weighting averages per-scene spill rates.
CorpusReport aggregate_corpus(const std::vector<SceneReport>& reports,
                              SpillWeighting weighting = SpillWeighting::Region);

} // namespace eff
