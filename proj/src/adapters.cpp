#include "eff/adapters.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "eff/errors.hpp"
#include "eff/format.hpp"
#include "eff/png_io.hpp"
#include "eff/subprocess.hpp"

namespace eff {

using json = nlohmann::json;

namespace {

std::string summarize(const std::string& s, std::size_t limit = 400) {
    if (s.size() <= limit) return s;
    return s.substr(0, limit) + "... (" + std::to_string(s.size()) + " bytes)";
}

[[noreturn]] void command_failure(const char* what, const std::vector<std::string>& argv,
                                  const CommandResult& result) {
    std::string msg = std::string(what) + ": '" + argv[0] + "'";
    if (result.timed_out) msg += " timed out";
    else msg += " exited with code " + std::to_string(result.exit_code);
    if (!result.err.empty()) msg += "; stderr: " + summarize(result.err);
    throw BackendError(msg);
}

} // namespace

std::vector<TextRegion> parse_ocr_wire(const std::string& json_text, double confidence_floor) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw BackendError(std::string("OCR output is not valid JSON: ") + e.what() +
                           "; output: " + summarize(json_text));
    }
    if (!doc.is_object() || !doc.contains("regions") || !doc["regions"].is_array())
        throw BackendError("OCR output missing top-level 'regions' array");

    std::vector<TextRegion> regions;
    for (std::size_t i = 0; i < doc["regions"].size(); ++i) {
        const json& jr = doc["regions"][i];
        const std::string where = "OCR regions[" + std::to_string(i) + "]";
        if (!jr.is_object() || !jr.contains("id") || !jr["id"].is_string() ||
            !jr.contains("text") || !jr["text"].is_string() || !jr.contains("quad"))
            throw BackendError(where + ": expected {id, text, quad}");
        if (jr.contains("confidence")) {
            if (!jr["confidence"].is_number())
                throw BackendError(where + ": confidence must be a number");
            if (jr["confidence"].get<double>() < confidence_floor) continue;
        }
        TextRegion region;
        region.id = jr["id"].get<std::string>();
        region.text = jr["text"].get<std::string>();
        const json& jq = jr["quad"];
        if (!jq.is_array() || jq.size() != 4)
            throw BackendError(where + ": quad must be 4 [x,y] points");
        for (std::size_t k = 0; k < 4; ++k) {
            if (!jq[k].is_array() || jq[k].size() != 2 || !jq[k][0].is_number() ||
                !jq[k][1].is_number())
                throw BackendError(where + ": quad point " + std::to_string(k) + " must be [x,y]");
            region.quad.v[k] = {jq[k][0].get<double>(), jq[k][1].get<double>()};
        }
        regions.push_back(std::move(region));
    }
    return regions;
}

std::vector<TextRegion> detect_text(const OcrBackend& backend, const SceneSpec& scene,
                                    const std::filesystem::path& image_path,
                                    const std::filesystem::path& work_dir) {
    switch (backend.mode) {
        case OcrBackend::Mode::GroundTruth:
            return scene.regions;
        case OcrBackend::Mode::Disabled:
            throw BackendError("text detection is disabled but required for the PARSE stage");
        case OcrBackend::Mode::ExternalCommand:
            break;
    }
    if (backend.command.empty())
        throw ConfigError("external OCR mode requires a command");

    std::vector<std::string> argv = backend.command;
    argv.push_back(image_path.string());
    const CommandResult result = run_command(argv, backend.timeout, work_dir);
    if (result.timed_out || result.exit_code != 0)
        command_failure("OCR command failed", argv, result);

    std::vector<TextRegion> regions = parse_ocr_wire(result.out, backend.confidence_floor);

    std::set<std::string> ids;
    bool has_target = false;
    for (TextRegion& region : regions) {
        if (!ids.insert(region.id).second)
            throw BackendError("OCR output contains duplicate region id '" + region.id + "'");
        region.role = region.id == scene.target_region_id ? Role::Target : Role::NonTarget;
        has_target |= region.role == Role::Target;
    }
    if (!has_target)
        throw BackendError("OCR output does not contain the target region id '" +
                           scene.target_region_id + "'");
    return regions;
}

RasterImage run_editor(const EditorBackend& backend, const SceneSpec& scene,
                       const Manifest& manifest, const std::filesystem::path& source_path,
                       const std::filesystem::path& work_dir) {
    if (backend.mode == EditorBackend::Mode::Precomputed) {
        if (!scene.edited_ref)
            throw BackendError("scene '" + scene.scene_id +
                               "' has no edited image reference for the precomputed editor");
        return read_png_rgb8(manifest.resolve(*scene.edited_ref));
    }

    if (backend.command.empty())
        throw ConfigError("external editor mode requires a command");

    const TextRegion& target = scene.target();
    std::string quad_arg;
    for (const Vec2& p : target.quad.v) {
        if (!quad_arg.empty()) quad_arg += ',';
        quad_arg += format_double(p.x) + ',' + format_double(p.y);
    }

    std::vector<std::string> argv = backend.command;
    argv.insert(argv.end(), {"--source", source_path.string(), "--target-id", target.id,
                             "--target-text", scene.target_text, "--quad", quad_arg});
    const CommandResult result = run_command(argv, backend.timeout, work_dir);
    if (result.timed_out || result.exit_code != 0)
        command_failure("editor command failed", argv, result);

    // last non-empty stdout line is the output image path
    std::string path_line;
    std::size_t end = result.out.size();
    while (end > 0) {
        std::size_t begin = result.out.rfind('\n', end - 1);
        const std::size_t line_start = begin == std::string::npos ? 0 : begin + 1;
        std::string line = result.out.substr(line_start, end - line_start);
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) {
            path_line = line;
            break;
        }
        if (begin == std::string::npos) break;
        end = begin;
    }
    if (path_line.empty())
        throw BackendError("editor command printed no output path; stdout: " +
                           summarize(result.out));
    return read_png_rgb8(path_line);
}

} // namespace eff
