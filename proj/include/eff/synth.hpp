#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "eff/raster.hpp"
#include "eff/scene.hpp"

namespace eff {

/// What the synthetic "editor" does to a region when producing the edited
/// image. The target region's intended edit is modeled as RepaintText with
/// the target text.
struct Corruption {
    enum class Kind { Preserve, FillBlack, ShiftPixels, RepaintText };

    Kind kind = Kind::Preserve;
    int dx = 0;
    int dy = 0;
    std::string new_text;

    static Corruption preserve() { return {}; }
    static Corruption fill_black() { return {Kind::FillBlack, 0, 0, {}}; }
    static Corruption shift(int dx, int dy) { return {Kind::ShiftPixels, dx, dy, {}}; }
    static Corruption repaint(std::string text) {
        return {Kind::RepaintText, 0, 0, std::move(text)};
    }
};

/// Deterministic scene blueprint: N high-contrast glyph blocks at seeded
/// non-overlapping positions on a plain background. Region ids are "r1".."rN"
/// and "r1" is always the target.
struct SyntheticSceneSpec {
    int width = 400;
    int height = 300;
    int region_count = 4; // N >= 2
    std::map<std::string, Corruption> plan; // region id -> action; missing = Preserve
    int glyph_scale = 2;
    int min_separation = 28; // gap between blocks and to the borders, px
    std::string scene_id = "scene";
    std::string category = "synthetic";
};

struct SyntheticScene {
    SceneSpec scene;
    RasterImage source;
    RasterImage edited;
};

/// Same spec and seed always produce bitwise-identical images and an
/// identical manifest entry. The scene's edited_ocr carries the ground-truth
/// texts after the plan is applied (FillBlack erases to "").
/// Throws when N blocks cannot be placed within the retry budget.
SyntheticScene generate_synthetic(const SyntheticSceneSpec& spec, std::uint64_t seed);

/// Ground-truth text a repainted region shows: every character cycled one
/// step through the glyph alphabet, so the edit distance equals the length.
std::string derived_distinct_text(const std::string& text);

struct SyntheticCorpusSpec {
    enum class PlanKind { Preserve, FillBlack, Repaint, Shift, Mixed };

    int scene_count = 50;
    int region_count = 4;
    int width = 400;
    int height = 300;
    std::vector<std::string> categories = {"synthetic"};
    PlanKind plan = PlanKind::FillBlack; // applied to every non-target region
};

/// Writes images/ plus manifest.json under out_dir and returns the loaded
/// manifest. Scene i derives its seed from `seed` deterministically.
Manifest write_synthetic_corpus(const SyntheticCorpusSpec& spec, std::uint64_t seed,
                                const std::filesystem::path& out_dir);

} // namespace eff
