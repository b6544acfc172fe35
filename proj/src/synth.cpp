#include "eff/synth.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "eff/errors.hpp"
#include "eff/png_io.hpp"

namespace eff {

namespace {

constexpr std::array<std::uint8_t, 3> kBackground = {208, 208, 208};
constexpr std::array<std::uint8_t, 3> kBlockFill = {250, 250, 250};
constexpr std::array<std::uint8_t, 3> kGlyphInk = {16, 16, 16};
constexpr int kInnerPad = 4;

const char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
constexpr int kAlphabetSize = 36;

// 5x7 bitmap font, one byte per row, bit 4 = leftmost column.
struct Glyph {
    char ch;
    std::array<std::uint8_t, 7> rows;
};

constexpr Glyph kFont[] = {
    {'0', {0x0E, 0x11, 0x13, 0x15, 0x19, 0x11, 0x0E}},
    {'1', {0x04, 0x0C, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'2', {0x0E, 0x11, 0x01, 0x02, 0x04, 0x08, 0x1F}},
    {'3', {0x1F, 0x02, 0x04, 0x02, 0x01, 0x11, 0x0E}},
    {'4', {0x02, 0x06, 0x0A, 0x12, 0x1F, 0x02, 0x02}},
    {'5', {0x1F, 0x10, 0x1E, 0x01, 0x01, 0x11, 0x0E}},
    {'6', {0x06, 0x08, 0x10, 0x1E, 0x11, 0x11, 0x0E}},
    {'7', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x08, 0x08}},
    {'8', {0x0E, 0x11, 0x11, 0x0E, 0x11, 0x11, 0x0E}},
    {'9', {0x0E, 0x11, 0x11, 0x0F, 0x01, 0x02, 0x0C}},
    {'A', {0x0E, 0x11, 0x11, 0x11, 0x1F, 0x11, 0x11}},
    {'B', {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E}},
    {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}},
    {'D', {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C}},
    {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}},
    {'F', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10}},
    {'G', {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F}},
    {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'J', {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C}},
    {'K', {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11}},
    {'L', {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F}},
    {'M', {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11}},
    {'N', {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11}},
    {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
    {'P', {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10}},
    {'Q', {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D}},
    {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
    {'S', {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E}},
    {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
    {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
    {'W', {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A}},
    {'X', {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11}},
    {'Y', {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04}},
    {'Z', {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F}},
    {' ', {0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},
};

const std::array<std::uint8_t, 7>* find_glyph(char c) {
    for (const Glyph& g : kFont)
        if (g.ch == c) return &g.rows;
    return nullptr;
}

struct Box {
    int x = 0, y = 0, w = 0, h = 0;

    bool intersects(const Box& other, int gap) const {
        return x - gap < other.x + other.w && other.x < x + w + gap &&
               y - gap < other.y + other.h && other.y < y + h + gap;
    }
};

void fill_rect(RasterImage& img, const Box& box, std::array<std::uint8_t, 3> color) {
    const int x0 = std::max(0, box.x);
    const int y0 = std::max(0, box.y);
    const int x1 = std::min(img.width, box.x + box.w);
    const int y1 = std::min(img.height, box.y + box.h);
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) {
            std::uint8_t* p = img.pixel(x, y);
            p[0] = color[0];
            p[1] = color[1];
            p[2] = color[2];
        }
}

// Render text into a block box: fill, then center the glyph run, clipped to
// the box.
void draw_block(RasterImage& img, const Box& box, const std::string& text, int scale) {
    fill_rect(img, box, kBlockFill);
    const int advance = 6 * scale;
    const int text_w = text.empty() ? 0 : static_cast<int>(text.size()) * advance - scale;
    const int text_h = 7 * scale;
    int pen_x = box.x + (box.w - text_w) / 2;
    const int pen_y = box.y + (box.h - text_h) / 2;
    for (char c : text) {
        const auto* rows = find_glyph(c);
        if (rows) {
            for (int ry = 0; ry < 7; ++ry)
                for (int rx = 0; rx < 5; ++rx) {
                    if (!(((*rows)[ry] >> (4 - rx)) & 1)) continue;
                    for (int sy = 0; sy < scale; ++sy)
                        for (int sx = 0; sx < scale; ++sx) {
                            const int px = pen_x + rx * scale + sx;
                            const int py = pen_y + ry * scale + sy;
                            if (px < box.x || px >= box.x + box.w || py < box.y ||
                                py >= box.y + box.h)
                                continue;
                            if (px < 0 || px >= img.width || py < 0 || py >= img.height) continue;
                            std::uint8_t* p = img.pixel(px, py);
                            p[0] = kGlyphInk[0];
                            p[1] = kGlyphInk[1];
                            p[2] = kGlyphInk[2];
                        }
                }
        }
        pen_x += advance;
    }
}

Box block_box_for(const std::string& text, int scale) {
    const int advance = 6 * scale;
    const int text_w = text.empty() ? 0 : static_cast<int>(text.size()) * advance - scale;
    return {0, 0, text_w + 2 * kInnerPad, 7 * scale + 2 * kInnerPad};
}

// Bounded draw straight from the engine; std::uniform_int_distribution is
// not portable across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::string random_text(std::mt19937_64& rng) {
    const std::size_t len = 4 + bounded(rng, 3);
    std::string out;
    for (std::size_t i = 0; i < len; ++i) out += kAlphabet[bounded(rng, kAlphabetSize)];
    return out;
}

Quad box_quad(const Box& b) {
    return Quad{{Vec2{static_cast<double>(b.x), static_cast<double>(b.y)},
                 Vec2{static_cast<double>(b.x + b.w), static_cast<double>(b.y)},
                 Vec2{static_cast<double>(b.x + b.w), static_cast<double>(b.y + b.h)},
                 Vec2{static_cast<double>(b.x), static_cast<double>(b.y + b.h)}}};
}

} // namespace

std::string derived_distinct_text(const std::string& text) {
    std::string out = text;
    for (char& c : out) {
        const char* pos = std::char_traits<char>::find(kAlphabet, kAlphabetSize, c);
        if (pos) c = kAlphabet[(pos - kAlphabet + 1) % kAlphabetSize];
        else c = 'X';
    }
    return out;
}

SyntheticScene generate_synthetic(const SyntheticSceneSpec& spec, std::uint64_t seed) {
    if (spec.region_count < 2)
        throw ConfigError("synthetic scenes need at least 2 regions");
    if (spec.width < 64 || spec.height < 64)
        throw ConfigError("synthetic grid must be at least 64x64");

    std::mt19937_64 rng(seed);

    // texts first, then placement
    std::vector<std::string> texts;
    for (int i = 0; i < spec.region_count; ++i) texts.push_back(random_text(rng));

    std::vector<Box> boxes;
    const int gap = spec.min_separation;
    for (int i = 0; i < spec.region_count; ++i) {
        Box box = block_box_for(texts[i], spec.glyph_scale);
        const int max_x = spec.width - box.w - gap;
        const int max_y = spec.height - box.h - gap;
        if (max_x <= gap || max_y <= gap)
            throw ConfigError("synthetic grid too small for region '" + texts[i] + "'");
        bool placed = false;
        for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
            box.x = gap + static_cast<int>(bounded(rng, static_cast<std::uint64_t>(max_x - gap)));
            box.y = gap + static_cast<int>(bounded(rng, static_cast<std::uint64_t>(max_y - gap)));
            placed = std::none_of(boxes.begin(), boxes.end(),
                                  [&](const Box& b) { return box.intersects(b, gap); });
        }
        if (!placed)
            throw ConfigError("could not place " + std::to_string(spec.region_count) +
                              " non-overlapping regions in " + std::to_string(spec.width) + "x" +
                              std::to_string(spec.height));
        boxes.push_back(box);
    }

    RasterImage source(spec.width, spec.height);
    for (std::size_t p = 0; p < source.pixel_count(); ++p) {
        source.data[3 * p] = kBackground[0];
        source.data[3 * p + 1] = kBackground[1];
        source.data[3 * p + 2] = kBackground[2];
    }
    for (int i = 0; i < spec.region_count; ++i)
        draw_block(source, boxes[i], texts[i], spec.glyph_scale);

    SyntheticScene result;
    result.scene.scene_id = spec.scene_id;
    result.scene.category = spec.category;
    result.scene.target_region_id = "r1";
    result.scene.target_text = derived_distinct_text(texts[0]);
    for (int i = 0; i < spec.region_count; ++i) {
        TextRegion region;
        region.id = "r" + std::to_string(i + 1);
        region.text = texts[i];
        region.quad = box_quad(boxes[i]);
        region.role = i == 0 ? Role::Target : Role::NonTarget;
        result.scene.regions.push_back(std::move(region));
    }

    // edited image: apply the plan region by region
    result.edited = source;
    std::map<std::string, std::string> edited_ocr;
    for (int i = 0; i < spec.region_count; ++i) {
        const std::string id = "r" + std::to_string(i + 1);
        const auto it = spec.plan.find(id);
        const Corruption action = it == spec.plan.end() ? Corruption::preserve() : it->second;
        std::string out_text = texts[i];
        switch (action.kind) {
            case Corruption::Kind::Preserve:
                break;
            case Corruption::Kind::FillBlack:
                fill_rect(result.edited, boxes[i], {0, 0, 0});
                out_text = "";
                break;
            case Corruption::Kind::ShiftPixels: {
                const Box& b = boxes[i];
                std::vector<std::uint8_t> patch(static_cast<std::size_t>(b.w) * b.h * 3);
                for (int y = 0; y < b.h; ++y)
                    std::copy_n(source.pixel(b.x, b.y + y), static_cast<std::size_t>(b.w) * 3,
                                patch.data() + static_cast<std::size_t>(y) * b.w * 3);
                fill_rect(result.edited, b, kBackground);
                for (int y = 0; y < b.h; ++y)
                    for (int x = 0; x < b.w; ++x) {
                        const int px = b.x + x + action.dx;
                        const int py = b.y + y + action.dy;
                        if (px < 0 || px >= spec.width || py < 0 || py >= spec.height) continue;
                        const std::uint8_t* s = patch.data() + (static_cast<std::size_t>(y) * b.w + x) * 3;
                        std::uint8_t* d = result.edited.pixel(px, py);
                        d[0] = s[0];
                        d[1] = s[1];
                        d[2] = s[2];
                    }
                break;
            }
            case Corruption::Kind::RepaintText:
                draw_block(result.edited, boxes[i], action.new_text, spec.glyph_scale);
                out_text = action.new_text;
                break;
        }
        edited_ocr[id] = out_text;
    }
    result.scene.edited_ocr = std::move(edited_ocr);

    validate_scene(result.scene);
    result.source = std::move(source);
    return result;
}

Manifest write_synthetic_corpus(const SyntheticCorpusSpec& spec, std::uint64_t seed,
                                const std::filesystem::path& out_dir) {
    if (spec.scene_count < 1) throw ConfigError("corpus needs at least one scene");
    if (spec.categories.empty()) throw ConfigError("corpus needs at least one category");

    std::filesystem::create_directories(out_dir / "images");

    std::vector<SceneSpec> scenes;
    for (int i = 0; i < spec.scene_count; ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "scene_%03d", i + 1);

        SyntheticSceneSpec scene_spec;
        scene_spec.width = spec.width;
        scene_spec.height = spec.height;
        scene_spec.region_count = spec.region_count;
        scene_spec.scene_id = name;
        scene_spec.category = spec.categories[i % spec.categories.size()];

        // plan construction needs the texts, which depend on the seed; build
        // placeholders first and patch repaint texts afterwards
        const std::uint64_t scene_seed = seed ^ (0x9E3779B97F4A7C15ull * (i + 1));
        {
            // derive per-region actions
            SyntheticSceneSpec probe = scene_spec;
            SyntheticScene dry = generate_synthetic(probe, scene_seed);
            for (std::size_t r = 0; r < dry.scene.regions.size(); ++r) {
                const TextRegion& region = dry.scene.regions[r];
                if (region.role == Role::Target) {
                    scene_spec.plan[region.id] = Corruption::repaint(dry.scene.target_text);
                    continue;
                }
                switch (spec.plan) {
                    case SyntheticCorpusSpec::PlanKind::Preserve:
                        break;
                    case SyntheticCorpusSpec::PlanKind::FillBlack:
                        scene_spec.plan[region.id] = Corruption::fill_black();
                        break;
                    case SyntheticCorpusSpec::PlanKind::Repaint:
                        scene_spec.plan[region.id] =
                            Corruption::repaint(derived_distinct_text(region.text));
                        break;
                    case SyntheticCorpusSpec::PlanKind::Shift:
                        scene_spec.plan[region.id] = Corruption::shift(4, 4);
                        break;
                    case SyntheticCorpusSpec::PlanKind::Mixed:
                        switch (r % 3) {
                            case 0: scene_spec.plan[region.id] = Corruption::fill_black(); break;
                            case 1:
                                scene_spec.plan[region.id] =
                                    Corruption::repaint(derived_distinct_text(region.text));
                                break;
                            default: scene_spec.plan[region.id] = Corruption::shift(4, 4); break;
                        }
                        break;
                }
            }
        }

        SyntheticScene synth = generate_synthetic(scene_spec, scene_seed);
        const std::string src_rel = std::string("images/") + name + "_src.png";
        const std::string edit_rel = std::string("images/") + name + "_edit.png";
        write_png_rgb8(out_dir / src_rel, synth.source);
        write_png_rgb8(out_dir / edit_rel, synth.edited);
        synth.scene.source_ref = src_rel;
        synth.scene.edited_ref = edit_rel;
        scenes.push_back(std::move(synth.scene));
    }

    save_manifest(out_dir / "manifest.json", scenes);
    return load_manifest(out_dir / "manifest.json");
}

} // namespace eff
