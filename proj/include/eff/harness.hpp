#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "eff/adapters.hpp"
#include "eff/blend.hpp"
#include "eff/eval.hpp"
#include "eff/scene.hpp"

namespace eff {

struct RunOptions {
    FieldConfig field;
    OcrBackend ocr;
    EditorBackend editor;
    ResizePolicy resize = ResizePolicy::Strict;
    int jobs = 1;
    bool write_outputs = true;   // per-scene PNG/PFM/report files
    bool per_region_csv = false;
    SpillWeighting weighting = SpillWeighting::Region;
};

/// Per-scene result. Failures are scene-scoped: `ok == false` carries the
/// reason and never aborts the rest of the corpus.
struct SceneOutcome {
    std::string scene_id;
    std::string category;
    bool ok = false;
    std::string error;
    SceneReport baseline; // raw edited image vs source
    SceneReport eff;      // blended output vs source
    double field_mass = 0.0;
    std::vector<std::string> warnings;
};

struct RunResult {
    std::vector<SceneOutcome> scenes; // manifest order, independent of --jobs
    std::optional<CorpusReport> baseline_corpus;
    std::optional<CorpusReport> eff_corpus;
    int ok_count = 0;
    int error_count = 0;
};

/// Ground-truth OCR maps for evaluation (no external engine). The edited
/// image is read from the manifest's `edited_ocr`; the blended output reads
/// source text in every protected region (they are restored bit-exactly) and
/// the edited target text in the core.
std::optional<OutputOcr> ground_truth_ocr_for_edited(const SceneSpec& scene);
std::optional<OutputOcr> ground_truth_ocr_for_blended(const SceneSpec& scene);

/// Full pipeline over a manifest: detect regions, build the field, obtain the
/// edited image, blend, evaluate the raw edited image (baseline) and the
/// blended output (EFF) from the same editor invocation. Scene files go to
/// out_dir/<scene_id>/.
RunResult run_pipeline(const Manifest& manifest, const RunOptions& options,
                       const std::filesystem::path& out_dir);

/// Corpus JSON/CSV plus run.json under out_dir.
void write_run_reports(const RunResult& result, const RunOptions& options,
                       const std::filesystem::path& out_dir);

// --- standalone evaluation (any method's outputs) ---------------------------

struct EvalOutcome {
    std::string scene_id;
    std::string category;
    bool ok = false;
    std::string error;
    SceneReport report;
};

struct EvalResult {
    std::vector<EvalOutcome> scenes;
    std::optional<CorpusReport> corpus;
    int ok_count = 0;
    int error_count = 0;
};

/// Evaluate pre-existing output images named <outputs_dir>/<scene_id>.png
/// (or <outputs_dir>/<scene_id>/output.png). Missing outputs are recorded and
/// the run continues.
EvalResult evaluate_outputs(const Manifest& manifest, const RunOptions& options,
                            const std::filesystem::path& outputs_dir);

void write_eval_reports(const EvalResult& result, const RunOptions& options,
                        const std::filesystem::path& out_dir);

// --- parameter sweep ---------------------------------------------------------

struct SweepSpec {
    std::vector<double> sigma_values;
    std::vector<double> pad_core_values;
};

struct SweepCell {
    double sigma = 0.0;
    double pad_core = 0.0;
    int scenes_ok = 0;
    int scenes_errored = 0;
    std::optional<double> found_rate;
    std::optional<double> spill_rate;
    std::optional<double> avg_region_psnr;
    std::optional<double> min_region_psnr;
    std::optional<double> bg_psnr;
    double mean_field_mass = 0.0;
};

/// Cartesian product of the two value lists; each cell runs the full pipeline
/// with the remaining config fields fixed. Cells are emitted in grid order
/// (sigma outer, pad_core inner).
std::vector<SweepCell> run_sweep(const Manifest& manifest, const RunOptions& base,
                                 const SweepSpec& sweep);

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepCell>& cells);

} // namespace eff
