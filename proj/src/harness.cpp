#include "eff/harness.hpp"

#include <atomic>
#include <fstream>
#include <thread>

#include "eff/errors.hpp"
#include "eff/field.hpp"
#include "eff/format.hpp"
#include "eff/png_io.hpp"
#include "eff/report_io.hpp"

namespace eff {

using json = nlohmann::ordered_json;

std::optional<OutputOcr> ground_truth_ocr_for_edited(const SceneSpec& scene) {
    if (!scene.edited_ocr) return std::nullopt;
    OutputOcr ocr;
    ocr.mode = OcrMode::GroundTruth;
    ocr.texts = *scene.edited_ocr;
    return ocr;
}

std::optional<OutputOcr> ground_truth_ocr_for_blended(const SceneSpec& scene) {
    OutputOcr ocr;
    ocr.mode = OcrMode::GroundTruth;
    for (const TextRegion& region : scene.regions) {
        if (region.role == Role::NonTarget) {
            // protected zones are restored bit-exactly, so they read as source
            ocr.texts[region.id] = region.text;
        } else if (scene.edited_ocr) {
            const auto it = scene.edited_ocr->find(region.id);
            if (it != scene.edited_ocr->end()) ocr.texts[region.id] = it->second;
        }
    }
    return ocr;
}

namespace {

// Evaluation-side OCR: ground truth from the manifest, an external command on
// the written output, or none (PSNR-only).
std::optional<OutputOcr> observe_ocr(const OcrBackend& backend, const SceneSpec& scene,
                                     const std::filesystem::path& image_path, bool blended) {
    switch (backend.mode) {
        case OcrBackend::Mode::Disabled:
            return std::nullopt;
        case OcrBackend::Mode::GroundTruth:
            return blended ? ground_truth_ocr_for_blended(scene)
                           : ground_truth_ocr_for_edited(scene);
        case OcrBackend::Mode::ExternalCommand:
            break;
    }
    std::vector<std::string> argv = backend.command;
    argv.push_back(image_path.string());
    const CommandResult result = run_command(argv, backend.timeout);
    if (result.timed_out || result.exit_code != 0)
        throw BackendError("evaluation OCR failed on " + image_path.string() +
                           (result.timed_out ? " (timeout)" : "; stderr: " + result.err));
    OutputOcr ocr;
    ocr.mode = OcrMode::External;
    for (const TextRegion& region : parse_ocr_wire(result.out, backend.confidence_floor))
        ocr.texts[region.id] = region.text;
    return ocr;
}

SceneOutcome run_one_scene(const Manifest& manifest, const SceneSpec& scene,
                           const RunOptions& options, const std::filesystem::path& scene_dir) {
    SceneOutcome outcome;
    outcome.scene_id = scene.scene_id;
    outcome.category = scene.category;

    const std::filesystem::path source_path = manifest.resolve(scene.source_ref);
    const RasterImage source = read_png_rgb8(source_path);

    std::filesystem::create_directories(scene_dir / "tmp");

    // PARSE: region geometry always comes from the manifest unless an
    // external engine is configured; Disabled only affects text checks.
    SceneSpec working = scene;
    if (options.ocr.mode == OcrBackend::Mode::ExternalCommand) {
        working.regions = detect_text(options.ocr, scene, source_path, scene_dir / "tmp");
        validate_scene(working);
    }

    // PLAN
    const FidelityField field =
        build_field(working, options.field, source.width, source.height, &outcome.warnings);
    outcome.field_mass = field_mass(field);

    // EDIT (one editor invocation; baseline and EFF both evaluate its result)
    RasterImage edited = run_editor(options.editor, scene, manifest, source_path, scene_dir / "tmp");
    if (!edited.same_dims(source)) {
        if (options.resize == ResizePolicy::Strict)
            throw ConfigError("edited image dimensions differ from source (" +
                              std::to_string(edited.width) + "x" + std::to_string(edited.height) +
                              " vs " + std::to_string(source.width) + "x" +
                              std::to_string(source.height) + "); pass --resize bilinear to allow");
        edited = resize_bilinear(edited, source.width, source.height);
    }

    // BLEND
    const RasterImage blended = blend(source, edited, field, ResizePolicy::Strict);

    std::filesystem::path edited_path = scene_dir / "edited.png";
    std::filesystem::path output_path = scene_dir / "output.png";
    if (options.write_outputs || options.ocr.mode == OcrBackend::Mode::ExternalCommand) {
        std::filesystem::create_directories(scene_dir);
        write_png_rgb8(edited_path, edited);
        write_png_rgb8(output_path, blended);
    }

    // EVALUATE both routes
    outcome.baseline = evaluate_scene(working, source, edited, options.field,
                                      observe_ocr(options.ocr, working, edited_path, false));
    outcome.eff = evaluate_scene(working, source, blended, options.field,
                                 observe_ocr(options.ocr, working, output_path, true));

    if (options.write_outputs) {
        write_pfm(scene_dir / "field.pfm", field);
        write_heatmap_png(scene_dir / "field_heatmap.png", field);
        json report;
        report["schema_version"] = kReportSchemaVersion;
        report["scene_id"] = scene.scene_id;
        report["category"] = scene.category;
        report["field_mass"] = outcome.field_mass;
        report["baseline"] = scene_report_to_json(outcome.baseline);
        report["eff"] = scene_report_to_json(outcome.eff);
        report["warnings"] = outcome.warnings;
        write_json_file(scene_dir / "report.json", report);
    }

    outcome.ok = true;
    return outcome;
}

template <typename Fn>
void parallel_for_scenes(std::size_t count, int jobs, Fn&& fn) {
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (std::thread& t : pool) t.join();
}

} // namespace

RunResult run_pipeline(const Manifest& manifest, const RunOptions& options,
                       const std::filesystem::path& out_dir) {
    options.field.validate();
    if (manifest.scenes.empty()) throw ManifestError("manifest contains no scenes");
    std::filesystem::create_directories(out_dir);

    RunResult result;
    result.scenes.resize(manifest.scenes.size());

    parallel_for_scenes(manifest.scenes.size(), options.jobs, [&](std::size_t i) {
        const SceneSpec& scene = manifest.scenes[i];
        try {
            result.scenes[i] = run_one_scene(manifest, scene, options, out_dir / scene.scene_id);
        } catch (const std::exception& e) {
            SceneOutcome failed;
            failed.scene_id = scene.scene_id;
            failed.category = scene.category;
            failed.ok = false;
            failed.error = e.what();
            result.scenes[i] = std::move(failed);
        }
    });

    std::vector<SceneReport> baseline_reports, eff_reports;
    for (const SceneOutcome& outcome : result.scenes) {
        if (!outcome.ok) {
            ++result.error_count;
            continue;
        }
        ++result.ok_count;
        baseline_reports.push_back(outcome.baseline);
        eff_reports.push_back(outcome.eff);
    }
    if (result.ok_count > 0) {
        result.baseline_corpus = aggregate_corpus(baseline_reports, options.weighting);
        result.eff_corpus = aggregate_corpus(eff_reports, options.weighting);
    }
    return result;
}

void write_run_reports(const RunResult& result, const RunOptions& options,
                       const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    json run;
    run["schema_version"] = kReportSchemaVersion;
    run["scenes_ok"] = result.ok_count;
    run["scenes_errored"] = result.error_count;
    run["scenes"] = json::array();
    for (const SceneOutcome& outcome : result.scenes) {
        json js;
        js["scene_id"] = outcome.scene_id;
        js["category"] = outcome.category;
        js["status"] = outcome.ok ? "ok" : "error";
        if (!outcome.ok) js["error"] = outcome.error;
        else {
            js["field_mass"] = outcome.field_mass;
            js["baseline"] = scene_report_to_json(outcome.baseline);
            js["eff"] = scene_report_to_json(outcome.eff);
            js["warnings"] = outcome.warnings;
        }
        run["scenes"].push_back(std::move(js));
    }
    write_json_file(out_dir / "run.json", run);

    std::vector<SceneReport> baseline_reports, eff_reports;
    for (const SceneOutcome& outcome : result.scenes) {
        if (!outcome.ok) continue;
        baseline_reports.push_back(outcome.baseline);
        eff_reports.push_back(outcome.eff);
    }
    write_scene_csv(out_dir / "scenes_baseline.csv", baseline_reports);
    write_scene_csv(out_dir / "scenes_eff.csv", eff_reports);
    if (options.per_region_csv) {
        write_region_csv(out_dir / "regions_baseline.csv", baseline_reports);
        write_region_csv(out_dir / "regions_eff.csv", eff_reports);
    }
    if (result.baseline_corpus) {
        write_json_file(out_dir / "corpus_baseline.json",
                        corpus_report_to_json(*result.baseline_corpus));
        write_corpus_csv(out_dir / "corpus_baseline.csv", *result.baseline_corpus);
    }
    if (result.eff_corpus) {
        write_json_file(out_dir / "corpus_eff.json", corpus_report_to_json(*result.eff_corpus));
        write_corpus_csv(out_dir / "corpus_eff.csv", *result.eff_corpus);
    }
}

EvalResult evaluate_outputs(const Manifest& manifest, const RunOptions& options,
                            const std::filesystem::path& outputs_dir) {
    options.field.validate();
    if (manifest.scenes.empty()) throw ManifestError("manifest contains no scenes");

    EvalResult result;
    result.scenes.resize(manifest.scenes.size());

    parallel_for_scenes(manifest.scenes.size(), options.jobs, [&](std::size_t i) {
        const SceneSpec& scene = manifest.scenes[i];
        EvalOutcome outcome;
        outcome.scene_id = scene.scene_id;
        outcome.category = scene.category;
        try {
            std::filesystem::path output_path = outputs_dir / (scene.scene_id + ".png");
            if (!std::filesystem::exists(output_path))
                output_path = outputs_dir / scene.scene_id / "output.png";
            if (!std::filesystem::exists(output_path))
                throw ImageIoError("no output image for scene '" + scene.scene_id + "' under " +
                                   outputs_dir.string());
            const RasterImage source = read_png_rgb8(manifest.resolve(scene.source_ref));
            const RasterImage output = read_png_rgb8(output_path);
            // Third-party outputs are treated like edited images: ground
            // truth texts come from edited_ocr when present.
            outcome.report = evaluate_scene(scene, source, output, options.field,
                                            observe_ocr(options.ocr, scene, output_path, false));
            outcome.ok = true;
        } catch (const std::exception& e) {
            outcome.ok = false;
            outcome.error = e.what();
        }
        result.scenes[i] = std::move(outcome);
    });

    std::vector<SceneReport> reports;
    for (const EvalOutcome& outcome : result.scenes) {
        if (!outcome.ok) {
            ++result.error_count;
            continue;
        }
        ++result.ok_count;
        reports.push_back(outcome.report);
    }
    if (result.ok_count > 0) result.corpus = aggregate_corpus(reports, options.weighting);
    return result;
}

void write_eval_reports(const EvalResult& result, const RunOptions& options,
                        const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);

    json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["scenes_ok"] = result.ok_count;
    doc["scenes_errored"] = result.error_count;
    doc["scenes"] = json::array();
    std::vector<SceneReport> reports;
    for (const EvalOutcome& outcome : result.scenes) {
        json js;
        js["scene_id"] = outcome.scene_id;
        js["category"] = outcome.category;
        js["status"] = outcome.ok ? "ok" : "error";
        if (!outcome.ok) js["error"] = outcome.error;
        else {
            js["report"] = scene_report_to_json(outcome.report);
            reports.push_back(outcome.report);
        }
        doc["scenes"].push_back(std::move(js));
    }
    write_json_file(out_dir / "eval.json", doc);
    write_scene_csv(out_dir / "scenes.csv", reports);
    if (options.per_region_csv) write_region_csv(out_dir / "regions.csv", reports);
    if (result.corpus) {
        write_json_file(out_dir / "corpus.json", corpus_report_to_json(*result.corpus));
        write_corpus_csv(out_dir / "corpus.csv", *result.corpus);
    }
}

std::vector<SweepCell> run_sweep(const Manifest& manifest, const RunOptions& base,
                                 const SweepSpec& sweep) {
    if (sweep.sigma_values.empty() || sweep.pad_core_values.empty())
        throw ConfigError("sweep needs at least one sigma and one pad_core value");

    std::vector<SweepCell> cells;
    for (double sigma : sweep.sigma_values) {
        for (double pad_core : sweep.pad_core_values) {
            RunOptions options = base;
            options.field.sigma = sigma;
            options.field.pad_core = pad_core;
            options.write_outputs = false;

            const std::filesystem::path tmp =
                std::filesystem::temp_directory_path() /
                ("eff_sweep_" + std::to_string(::getpid()) + "_" +
                 format_double(sigma) + "_" + format_double(pad_core));
            const RunResult run = run_pipeline(manifest, options, tmp);
            std::filesystem::remove_all(tmp);

            SweepCell cell;
            cell.sigma = sigma;
            cell.pad_core = pad_core;
            cell.scenes_ok = run.ok_count;
            cell.scenes_errored = run.error_count;
            if (run.eff_corpus) {
                cell.found_rate = run.eff_corpus->overall.found_rate;
                cell.spill_rate = run.eff_corpus->overall.spill_rate;
                cell.avg_region_psnr = run.eff_corpus->overall.avg_region_psnr;
                cell.min_region_psnr = run.eff_corpus->overall.min_region_psnr;
                cell.bg_psnr = run.eff_corpus->overall.bg_psnr;
            }
            double mass = 0.0;
            for (const SceneOutcome& outcome : run.scenes)
                if (outcome.ok) mass += outcome.field_mass;
            cell.mean_field_mass = run.ok_count > 0 ? mass / run.ok_count : 0.0;
            cells.push_back(cell);
        }
    }
    return cells;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepCell>& cells) {
    std::ofstream out(path);
    if (!out) throw ImageIoError("cannot create sweep CSV: " + path.string());
    out << "sigma,pad_core,scenes_ok,scenes_errored,found_rate,spill_rate,"
           "avg_region_psnr,min_region_psnr,bg_psnr,mean_field_mass\n";
    auto cell_str = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    for (const SweepCell& c : cells) {
        out << format_double(c.sigma) << ',' << format_double(c.pad_core) << ',' << c.scenes_ok
            << ',' << c.scenes_errored << ',' << cell_str(c.found_rate) << ','
            << cell_str(c.spill_rate) << ',' << cell_str(c.avg_region_psnr) << ','
            << cell_str(c.min_region_psnr) << ',' << cell_str(c.bg_psnr) << ','
            << format_double(c.mean_field_mass) << '\n';
    }
}

} // namespace eff
