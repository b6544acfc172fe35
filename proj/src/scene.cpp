#include "eff/scene.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "eff/errors.hpp"

namespace eff {

using json = nlohmann::ordered_json;

const TextRegion& SceneSpec::target() const {
    for (const TextRegion& r : regions)
        if (r.role == Role::Target) return r;
    throw ManifestError("scene '" + scene_id + "' has no target region");
}

std::vector<const TextRegion*> SceneSpec::non_targets() const {
    std::vector<const TextRegion*> out;
    for (const TextRegion& r : regions)
        if (r.role == Role::NonTarget) out.push_back(&r);
    return out;
}

void FieldConfig::validate() const {
    if (!(sigma > 0.0)) throw ConfigError("sigma must be > 0");
    if (pad_core < 0.0 || pad_protect < 0.0) throw ConfigError("pads must be >= 0");
    if (smooth_sigma < 0.0) throw ConfigError("smooth_sigma must be >= 0");
    if (sim_threshold < 0.0 || sim_threshold > 1.0)
        throw ConfigError("sim_threshold must be in [0,1]");
    if (!(psnr_cap > psnr_threshold)) throw ConfigError("psnr_cap must exceed psnr_threshold");
}

std::filesystem::path Manifest::resolve(const std::string& ref) const {
    std::filesystem::path p(ref);
    return p.is_absolute() ? p : base_dir / p;
}

const SceneSpec* Manifest::find(const std::string& scene_id) const {
    for (const SceneSpec& s : scenes)
        if (s.scene_id == scene_id) return &s;
    return nullptr;
}

void validate_scene(const SceneSpec& scene) {
    if (scene.regions.empty())
        throw ManifestError("scene '" + scene.scene_id + "': at least one region required");
    std::set<std::string> ids;
    int targets = 0;
    bool target_id_found = false;
    for (const TextRegion& r : scene.regions) {
        if (!ids.insert(r.id).second)
            throw ManifestError("scene '" + scene.scene_id + "': duplicate region id '" + r.id + "'");
        if (r.role == Role::Target) ++targets;
        if (r.id == scene.target_region_id) target_id_found = true;
        for (const Vec2& p : r.quad.v)
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw ManifestError("scene '" + scene.scene_id + "', region '" + r.id +
                                    "': non-finite quad vertex");
    }
    if (!target_id_found)
        throw ManifestError("scene '" + scene.scene_id + "': target_region_id '" +
                            scene.target_region_id + "' not among regions");
    if (targets != 1)
        throw ManifestError("scene '" + scene.scene_id + "': expected exactly one Target role, got " +
                            std::to_string(targets));
    if (scene.target().id != scene.target_region_id)
        throw ManifestError("scene '" + scene.scene_id + "': Target role does not match target_region_id");
}

namespace {

Quad parse_quad(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 4)
        throw ManifestError(where + ": quad must be an array of 4 [x,y] points");
    Quad q;
    for (std::size_t i = 0; i < 4; ++i) {
        const json& pt = j[i];
        if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number())
            throw ManifestError(where + ": quad point " + std::to_string(i) + " must be [x,y]");
        q.v[i] = {pt[0].get<double>(), pt[1].get<double>()};
    }
    return q;
}

std::string require_string(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_string())
        throw ManifestError(where + ": missing or non-string field '" + key + "'");
    return j[key].get<std::string>();
}

SceneSpec parse_scene(const json& js, std::size_t index) {
    const std::string where = "scenes[" + std::to_string(index) + "]";
    SceneSpec scene;
    scene.scene_id = require_string(js, "scene_id", where);
    scene.category = require_string(js, "category", where);
    scene.source_ref = require_string(js, "source", where);
    scene.target_region_id = require_string(js, "target_region_id", where);
    scene.target_text = require_string(js, "target_text", where);
    if (js.contains("edited")) {
        if (!js["edited"].is_string()) throw ManifestError(where + ".edited: must be a string");
        scene.edited_ref = js["edited"].get<std::string>();
    }
    if (!js.contains("regions") || !js["regions"].is_array())
        throw ManifestError(where + ": missing 'regions' array");
    for (std::size_t i = 0; i < js["regions"].size(); ++i) {
        const json& jr = js["regions"][i];
        const std::string rwhere = where + ".regions[" + std::to_string(i) + "]";
        TextRegion region;
        region.id = require_string(jr, "id", rwhere);
        region.text = require_string(jr, "text", rwhere);
        if (!jr.contains("quad")) throw ManifestError(rwhere + ": missing 'quad'");
        region.quad = parse_quad(jr["quad"], rwhere);
        region.role = region.id == scene.target_region_id ? Role::Target : Role::NonTarget;
        scene.regions.push_back(std::move(region));
    }
    if (js.contains("edited_ocr")) {
        if (!js["edited_ocr"].is_object())
            throw ManifestError(where + ".edited_ocr: must be an object of id -> text");
        std::map<std::string, std::string> ocr;
        for (const auto& [key, value] : js["edited_ocr"].items()) {
            if (!value.is_string())
                throw ManifestError(where + ".edited_ocr['" + key + "']: must be a string");
            ocr[key] = value.get<std::string>();
        }
        scene.edited_ocr = std::move(ocr);
    }
    validate_scene(scene);
    return scene;
}

} // namespace

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ManifestError("cannot open manifest: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ManifestError("manifest parse error in " + path.string() + ": " + e.what());
    }
    if (!doc.is_object() || !doc.contains("scenes") || !doc["scenes"].is_array())
        throw ManifestError("manifest " + path.string() + ": top level must be {\"scenes\": [...]}");

    Manifest manifest;
    manifest.base_dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    std::set<std::string> scene_ids;
    for (std::size_t i = 0; i < doc["scenes"].size(); ++i) {
        SceneSpec scene = parse_scene(doc["scenes"][i], i);
        if (!scene_ids.insert(scene.scene_id).second)
            throw ManifestError("duplicate scene_id '" + scene.scene_id + "'");
        manifest.scenes.push_back(std::move(scene));
    }
    return manifest;
}

void save_manifest(const std::filesystem::path& path, const std::vector<SceneSpec>& scenes) {
    json doc;
    doc["scenes"] = json::array();
    for (const SceneSpec& scene : scenes) {
        json js;
        js["scene_id"] = scene.scene_id;
        js["category"] = scene.category;
        js["source"] = scene.source_ref;
        if (scene.edited_ref) js["edited"] = *scene.edited_ref;
        js["target_region_id"] = scene.target_region_id;
        js["target_text"] = scene.target_text;
        js["regions"] = json::array();
        for (const TextRegion& r : scene.regions) {
            json jr;
            jr["id"] = r.id;
            jr["text"] = r.text;
            jr["quad"] = json::array();
            for (const Vec2& p : r.quad.v) jr["quad"].push_back(json::array({p.x, p.y}));
            js["regions"].push_back(std::move(jr));
        }
        if (scene.edited_ocr) {
            json jo = json::object();
            for (const auto& [id, text] : *scene.edited_ocr) jo[id] = text;
            js["edited_ocr"] = std::move(jo);
        }
        doc["scenes"].push_back(std::move(js));
    }
    std::ofstream out(path);
    if (!out) throw ManifestError("cannot write manifest: " + path.string());
    out << doc.dump(2) << '\n';
}

} // namespace eff
