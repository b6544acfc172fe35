#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>

#include "eff/blend.hpp"
#include "eff/errors.hpp"
#include "eff/field.hpp"
#include "eff/format.hpp"
#include "eff/harness.hpp"
#include "eff/png_io.hpp"
#include "eff/report_io.hpp"
#include "eff/synth.hpp"

namespace {

namespace fs = std::filesystem;

// Split a command string into argv without invoking a shell; single and
// double quotes group words.
std::vector<std::string> split_command(const std::string& cmd) {
    std::vector<std::string> out;
    std::string cur;
    char quote = 0;
    bool have = false;
    for (char c : cmd) {
        if (quote) {
            if (c == quote) quote = 0;
            else cur += c;
        } else if (c == '\'' || c == '"') {
            quote = c;
            have = true;
        } else if (c == ' ' || c == '\t') {
            if (have || !cur.empty()) out.push_back(cur);
            cur.clear();
            have = false;
        } else {
            cur += c;
        }
    }
    if (have || !cur.empty()) out.push_back(cur);
    return out;
}

struct CommonFlags {
    eff::RunOptions options;
    std::string manifest_path;
    std::string out_dir;
    std::string ocr_mode = "groundtruth";
    std::string ocr_cmd;
    std::string editor_mode = "precomputed";
    std::string editor_cmd;
    std::string resize = "strict";
    bool scene_weighted = false;
};

void add_field_flags(CLI::App* cmd, CommonFlags& flags) {
    eff::FieldConfig& f = flags.options.field;
    cmd->add_option("--sigma", f.sigma, "Decay rate (fraction of the image diagonal)")
        ->envname("EFF_SIGMA")->capture_default_str();
    cmd->add_option("--pad-core", f.pad_core, "Edit core padding in px")
        ->envname("EFF_PAD_CORE")->capture_default_str();
    cmd->add_option("--pad-protect", f.pad_protect, "Protected zone padding in px")
        ->envname("EFF_PAD_PROTECT")->capture_default_str();
    cmd->add_option("--smooth-sigma", f.smooth_sigma, "Gaussian smoothing sigma in px")
        ->envname("EFF_SMOOTH_SIGMA")->capture_default_str();
    cmd->add_option("--sim-threshold", f.sim_threshold, "OCR similarity threshold")
        ->envname("EFF_SIM_THRESHOLD")->capture_default_str();
    cmd->add_option("--psnr-threshold", f.psnr_threshold, "Region PSNR threshold in dB")
        ->envname("EFF_PSNR_THRESHOLD")->capture_default_str();
    cmd->add_option("--psnr-cap", f.psnr_cap, "PSNR reported for identical regions")
        ->envname("EFF_PSNR_CAP")->capture_default_str();
}

void add_backend_flags(CLI::App* cmd, CommonFlags& flags, bool editor) {
    cmd->add_option("--ocr-mode", flags.ocr_mode, "groundtruth | external | disabled")
        ->envname("EFF_OCR_MODE")->capture_default_str();
    cmd->add_option("--ocr-cmd", flags.ocr_cmd, "External OCR command (appended: <image path>)")
        ->envname("EFF_OCR_CMD");
    if (editor) {
        cmd->add_option("--editor-mode", flags.editor_mode, "precomputed | external")
            ->envname("EFF_EDITOR_MODE")->capture_default_str();
        cmd->add_option("--editor-cmd", flags.editor_cmd, "External editor command")
            ->envname("EFF_EDITOR_CMD");
        cmd->add_option("--resize", flags.resize, "strict | bilinear")
            ->envname("EFF_RESIZE")->capture_default_str();
    }
}

void add_eval_flags(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_flag("--per-region", flags.options.per_region_csv, "Also write per-region CSV rows");
    cmd->add_flag("--scene-weighted", flags.scene_weighted,
                  "Average per-scene spill rates instead of counting regions");
}

void resolve_backends(CommonFlags& flags) {
    if (flags.ocr_mode == "groundtruth") flags.options.ocr.mode = eff::OcrBackend::Mode::GroundTruth;
    else if (flags.ocr_mode == "external") flags.options.ocr.mode = eff::OcrBackend::Mode::ExternalCommand;
    else if (flags.ocr_mode == "disabled") flags.options.ocr.mode = eff::OcrBackend::Mode::Disabled;
    else throw eff::ConfigError("unknown --ocr-mode '" + flags.ocr_mode + "'");
    flags.options.ocr.command = split_command(flags.ocr_cmd);

    if (flags.editor_mode == "precomputed") flags.options.editor.mode = eff::EditorBackend::Mode::Precomputed;
    else if (flags.editor_mode == "external") flags.options.editor.mode = eff::EditorBackend::Mode::ExternalCommand;
    else throw eff::ConfigError("unknown --editor-mode '" + flags.editor_mode + "'");
    flags.options.editor.command = split_command(flags.editor_cmd);

    if (flags.resize == "strict") flags.options.resize = eff::ResizePolicy::Strict;
    else if (flags.resize == "bilinear") flags.options.resize = eff::ResizePolicy::Bilinear;
    else throw eff::ConfigError("unknown --resize policy '" + flags.resize + "'");

    flags.options.weighting =
        flags.scene_weighted ? eff::SpillWeighting::Scene : eff::SpillWeighting::Region;
}

void print_corpus_summary(const char* label, const eff::CorpusReport& corpus) {
    const eff::MetricRow& row = corpus.overall;
    auto pct = [](const std::optional<double>& v) {
        return v ? eff::format_double(*v) : std::string("n/a");
    };
    std::printf("%s: scenes=%d regions=%ld spill_rate=%s found_rate=%s avg_psnr=%s min_psnr=%s\n",
                label, row.scene_count, row.regions_total, pct(row.spill_rate).c_str(),
                pct(row.found_rate).c_str(), pct(row.avg_region_psnr).c_str(),
                pct(row.min_region_psnr).c_str());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edit Fidelity Field toolkit: field construction, field-guided "
                 "blending, and per-region spillover evaluation"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::uint64_t seed = 1;

    // field
    auto* cmd_field = app.add_subcommand("field", "Build and export the fidelity field of one scene");
    std::string scene_id, out_pfm, out_heatmap, profile_csv;
    int profile_row = -1;
    cmd_field->add_option("--manifest", flags.manifest_path)->required()->envname("EFF_MANIFEST");
    cmd_field->add_option("--scene-id", scene_id, "Scene to build the field for")->required();
    cmd_field->add_option("--out-pfm", out_pfm, "Output PFM path");
    cmd_field->add_option("--out-heatmap", out_heatmap, "Output grayscale PNG path");
    cmd_field->add_option("--profile-csv", profile_csv, "Cross-section CSV path");
    cmd_field->add_option("--profile-row", profile_row, "Row index for the cross-section");
    add_field_flags(cmd_field, flags);

    // blend
    auto* cmd_blend = app.add_subcommand("blend", "Blend a source and an edited image with a field");
    std::string blend_src, blend_edited, blend_field, blend_out;
    cmd_blend->add_option("--source", blend_src)->required();
    cmd_blend->add_option("--edited", blend_edited)->required();
    cmd_blend->add_option("--field", blend_field, "PFM field path")->required();
    cmd_blend->add_option("--out", blend_out)->required();
    cmd_blend->add_option("--resize", flags.resize, "strict | bilinear")
        ->envname("EFF_RESIZE")->capture_default_str();

    // run
    auto* cmd_run = app.add_subcommand("run", "Run the full pipeline over a manifest");
    cmd_run->add_option("--manifest", flags.manifest_path)->required()->envname("EFF_MANIFEST");
    cmd_run->add_option("--out-dir", flags.out_dir)->required()->envname("EFF_OUT_DIR");
    cmd_run->add_option("--jobs", flags.options.jobs, "Concurrent scenes")
        ->envname("EFF_JOBS")->capture_default_str();
    cmd_run->add_option("--seed", seed)->envname("EFF_SEED")->capture_default_str();
    add_field_flags(cmd_run, flags);
    add_backend_flags(cmd_run, flags, true);
    add_eval_flags(cmd_run, flags);

    // eval
    auto* cmd_eval = app.add_subcommand("eval", "Evaluate pre-existing outputs against a manifest");
    std::string outputs_dir;
    cmd_eval->add_option("--manifest", flags.manifest_path)->required()->envname("EFF_MANIFEST");
    cmd_eval->add_option("--outputs", outputs_dir, "Directory of <scene_id>.png outputs")->required();
    cmd_eval->add_option("--out-dir", flags.out_dir)->required()->envname("EFF_OUT_DIR");
    cmd_eval->add_option("--jobs", flags.options.jobs)->envname("EFF_JOBS")->capture_default_str();
    add_field_flags(cmd_eval, flags);
    add_backend_flags(cmd_eval, flags, false);
    add_eval_flags(cmd_eval, flags);

    // sweep
    auto* cmd_sweep = app.add_subcommand("sweep", "Sweep sigma x pad_core and emit a Pareto CSV");
    std::vector<double> sigma_values, pad_core_values;
    std::string sweep_csv;
    cmd_sweep->add_option("--manifest", flags.manifest_path)->required()->envname("EFF_MANIFEST");
    cmd_sweep->add_option("--out", sweep_csv, "Sweep CSV path")->required();
    cmd_sweep->add_option("--sigma-values", sigma_values, "Comma-separated sigma grid")
        ->required()->delimiter(',');
    cmd_sweep->add_option("--pad-core-values", pad_core_values, "Comma-separated pad_core grid")
        ->required()->delimiter(',');
    cmd_sweep->add_option("--jobs", flags.options.jobs)->envname("EFF_JOBS")->capture_default_str();
    cmd_sweep->add_option("--seed", seed)->envname("EFF_SEED")->capture_default_str();
    add_field_flags(cmd_sweep, flags);
    add_backend_flags(cmd_sweep, flags, true);

    // synth
    auto* cmd_synth = app.add_subcommand("synth", "Generate a seeded synthetic benchmark corpus");
    eff::SyntheticCorpusSpec corpus_spec;
    std::string corrupt = "fill-black";
    std::string categories = "synthetic";
    cmd_synth->add_option("--out-dir", flags.out_dir)->required()->envname("EFF_OUT_DIR");
    cmd_synth->add_option("--scenes", corpus_spec.scene_count)->capture_default_str();
    cmd_synth->add_option("--regions", corpus_spec.region_count)->capture_default_str();
    cmd_synth->add_option("--width", corpus_spec.width)->capture_default_str();
    cmd_synth->add_option("--height", corpus_spec.height)->capture_default_str();
    cmd_synth->add_option("--seed", seed)->envname("EFF_SEED")->capture_default_str();
    cmd_synth->add_option("--corrupt", corrupt,
                          "preserve | fill-black | repaint | shift | mixed")->capture_default_str();
    cmd_synth->add_option("--categories", categories, "Comma-separated, assigned round-robin")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage problems are configuration errors
    }

    try {
        if (*cmd_field) {
            const eff::Manifest manifest = eff::load_manifest(flags.manifest_path);
            const eff::SceneSpec* scene = manifest.find(scene_id);
            if (!scene) throw eff::ConfigError("scene '" + scene_id + "' not in manifest");
            const eff::RasterImage source = eff::read_png_rgb8(manifest.resolve(scene->source_ref));
            std::vector<std::string> warnings;
            const eff::FidelityField field =
                eff::build_field(*scene, flags.options.field, source.width, source.height, &warnings);
            for (const std::string& w : warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
            if (out_pfm.empty() && out_heatmap.empty() && profile_csv.empty())
                throw eff::ConfigError("nothing to write: pass --out-pfm, --out-heatmap or --profile-csv");
            if (!out_pfm.empty()) eff::write_pfm(out_pfm, field);
            if (!out_heatmap.empty()) eff::write_heatmap_png(out_heatmap, field);
            if (!profile_csv.empty()) {
                if (profile_row < 0)
                    throw eff::ConfigError("--profile-csv requires --profile-row");
                eff::write_profile_csv(profile_csv, field, profile_row);
            }
            return 0;
        }
        if (*cmd_blend) {
            resolve_backends(flags);
            const eff::RasterImage src = eff::read_png_rgb8(blend_src);
            const eff::RasterImage edited = eff::read_png_rgb8(blend_edited);
            const eff::FidelityField field = eff::read_pfm(blend_field);
            eff::write_png_rgb8(blend_out, eff::blend(src, edited, field, flags.options.resize));
            return 0;
        }
        if (*cmd_run) {
            resolve_backends(flags);
            const eff::Manifest manifest = eff::load_manifest(flags.manifest_path);
            const eff::RunResult result = eff::run_pipeline(manifest, flags.options, flags.out_dir);
            eff::write_run_reports(result, flags.options, flags.out_dir);
            if (result.baseline_corpus) print_corpus_summary("baseline", *result.baseline_corpus);
            if (result.eff_corpus) print_corpus_summary("eff", *result.eff_corpus);
            for (const eff::SceneOutcome& outcome : result.scenes)
                if (!outcome.ok)
                    std::fprintf(stderr, "scene %s failed: %s\n", outcome.scene_id.c_str(),
                                 outcome.error.c_str());
            return result.error_count > 0 ? 1 : 0;
        }
        if (*cmd_eval) {
            resolve_backends(flags);
            const eff::Manifest manifest = eff::load_manifest(flags.manifest_path);
            const eff::EvalResult result =
                eff::evaluate_outputs(manifest, flags.options, outputs_dir);
            eff::write_eval_reports(result, flags.options, flags.out_dir);
            if (result.corpus) print_corpus_summary("corpus", *result.corpus);
            for (const eff::EvalOutcome& outcome : result.scenes)
                if (!outcome.ok)
                    std::fprintf(stderr, "scene %s failed: %s\n", outcome.scene_id.c_str(),
                                 outcome.error.c_str());
            return result.error_count > 0 ? 1 : 0;
        }
        if (*cmd_sweep) {
            resolve_backends(flags);
            const eff::Manifest manifest = eff::load_manifest(flags.manifest_path);
            eff::SweepSpec sweep{sigma_values, pad_core_values};
            const std::vector<eff::SweepCell> cells =
                eff::run_sweep(manifest, flags.options, sweep);
            eff::write_sweep_csv(sweep_csv, cells);
            int errors = 0;
            for (const eff::SweepCell& c : cells) errors += c.scenes_errored;
            return errors > 0 ? 1 : 0;
        }
        if (*cmd_synth) {
            corpus_spec.categories = split_command(
                [&categories] {
                    std::string spaced = categories;
                    for (char& c : spaced)
                        if (c == ',') c = ' ';
                    return spaced;
                }());
            if (corrupt == "preserve") corpus_spec.plan = eff::SyntheticCorpusSpec::PlanKind::Preserve;
            else if (corrupt == "fill-black") corpus_spec.plan = eff::SyntheticCorpusSpec::PlanKind::FillBlack;
            else if (corrupt == "repaint") corpus_spec.plan = eff::SyntheticCorpusSpec::PlanKind::Repaint;
            else if (corrupt == "shift") corpus_spec.plan = eff::SyntheticCorpusSpec::PlanKind::Shift;
            else if (corrupt == "mixed") corpus_spec.plan = eff::SyntheticCorpusSpec::PlanKind::Mixed;
            else throw eff::ConfigError("unknown --corrupt plan '" + corrupt + "'");
            eff::write_synthetic_corpus(corpus_spec, seed, flags.out_dir);
            std::printf("wrote %d scenes under %s\n", corpus_spec.scene_count,
                        flags.out_dir.c_str());
            return 0;
        }
    } catch (const eff::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
