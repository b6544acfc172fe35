#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace eff::oracle {

bool point_in_polygon_winding(const std::vector<Vec2>& poly, Vec2 p) {
    const std::size_t n = poly.size();
    // boundary counts as inside
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % n];
        const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (cross == 0.0 && p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) &&
            p.y >= std::min(a.y, b.y) && p.y <= std::max(a.y, b.y))
            return true;
    }
    int winding = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = poly[i];
        const Vec2 b = poly[(i + 1) % n];
        const double cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
        if (a.y <= p.y) {
            if (b.y > p.y && cross > 0.0) ++winding;
        } else {
            if (b.y <= p.y && cross < 0.0) --winding;
        }
    }
    return winding != 0;
}

BinaryMask rasterize_brute(const Quad& quad, int width, int height) {
    const std::vector<Vec2> poly(quad.v.begin(), quad.v.end());
    BinaryMask mask(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (point_in_polygon_winding(poly, {x + 0.5, y + 0.5})) mask.set(x, y);
    return mask;
}

BinaryMask pad_brute(const BinaryMask& mask, double pad) {
    BinaryMask out(mask.width, mask.height);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x) {
            bool hit = false;
            for (int sy = 0; sy < mask.height && !hit; ++sy)
                for (int sx = 0; sx < mask.width && !hit; ++sx) {
                    if (!mask.get(sx, sy)) continue;
                    const double dx = x - sx;
                    const double dy = y - sy;
                    if (std::sqrt(dx * dx + dy * dy) <= pad) hit = true;
                }
            if (hit) out.set(x, y);
        }
    return out;
}

std::vector<double> distance_brute(const BinaryMask& mask) {
    std::vector<double> out(static_cast<std::size_t>(mask.width) * mask.height, 1e20);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x) {
            double best_sq = 1e40;
            for (int sy = 0; sy < mask.height; ++sy)
                for (int sx = 0; sx < mask.width; ++sx) {
                    if (!mask.get(sx, sy)) continue;
                    const double dx = x - sx;
                    const double dy = y - sy;
                    best_sq = std::min(best_sq, dx * dx + dy * dy);
                }
            if (best_sq < 1e40)
                out[static_cast<std::size_t>(y) * mask.width + x] = std::sqrt(best_sq);
        }
    return out;
}

std::vector<double> gaussian_2d_brute(const std::vector<double>& input, int width, int height,
                                      double sigma) {
    if (sigma == 0.0) return input;
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    const int size = 2 * radius + 1;
    std::vector<double> kernel(static_cast<std::size_t>(size) * size);
    double sum = 0.0;
    for (int j = -radius; j <= radius; ++j)
        for (int i = -radius; i <= radius; ++i) {
            const double v = std::exp(-(static_cast<double>(i) * i + static_cast<double>(j) * j) /
                                      (2.0 * sigma * sigma));
            kernel[static_cast<std::size_t>(j + radius) * size + (i + radius)] = v;
            sum += v;
        }
    for (double& k : kernel) k /= sum;

    std::vector<double> out(input.size());
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            for (int j = -radius; j <= radius; ++j)
                for (int i = -radius; i <= radius; ++i) {
                    const int sx = std::clamp(x + i, 0, width - 1);
                    const int sy = std::clamp(y + j, 0, height - 1);
                    acc += kernel[static_cast<std::size_t>(j + radius) * size + (i + radius)] *
                           input[static_cast<std::size_t>(sy) * width + sx];
                }
            out[static_cast<std::size_t>(y) * width + x] = acc;
        }
    return out;
}

std::vector<double> field_brute(const SceneSpec& scene, const FieldConfig& config, int width,
                                int height) {
    const std::size_t total = static_cast<std::size_t>(width) * height;

    const BinaryMask core_raw = rasterize_brute(scene.target().quad, width, height);
    const BinaryMask core = pad_brute(core_raw, config.pad_core);
    const std::vector<double> dist = distance_brute(core);

    const double diagonal =
        std::sqrt(static_cast<double>(width) * width + static_cast<double>(height) * height);

    BinaryMask protect(width, height);
    for (const TextRegion* region : scene.non_targets()) {
        BinaryMask raw = rasterize_brute(region->quad, width, height);
        if (!raw.any()) continue; // degenerate regions are skipped
        const BinaryMask padded = pad_brute(raw, config.pad_protect);
        for (std::size_t i = 0; i < protect.bits.size(); ++i) protect.bits[i] |= padded.bits[i];
    }

    std::vector<double> field(total);
    for (std::size_t i = 0; i < total; ++i) {
        const double decay = std::exp(-dist[i] / (config.sigma * diagonal));
        const double combined = std::max(core.bits[i] ? 1.0 : 0.0, decay);
        field[i] = combined * (protect.bits[i] ? 0.0 : 1.0);
    }
    field = gaussian_2d_brute(field, width, height, config.smooth_sigma);
    for (std::size_t i = 0; i < total; ++i) {
        if (protect.bits[i]) field[i] = 0.0;
        else field[i] = std::clamp(field[i], 0.0, 1.0);
    }
    return field;
}

std::size_t levenshtein_matrix(const std::string& a, const std::string& b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
    for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= m; ++j)
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                                d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
    return d[n][m];
}

namespace {

std::string normalize_ascii(const std::string& s) {
    std::string lowered;
    for (char c : s) lowered += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::string collapsed;
    bool in_space = true; // leading whitespace dropped
    for (char c : lowered) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            in_space = true;
            continue;
        }
        if (in_space && !collapsed.empty()) collapsed += ' ';
        in_space = false;
        collapsed += c;
    }
    return collapsed;
}

} // namespace

SpilloverRef spillover_protocol_brute(const std::string& text_src,
                                      const std::optional<std::string>& text_out, double psnr,
                                      const FieldConfig& config) {
    SpilloverRef ref;
    if (text_out) {
        const std::string a = normalize_ascii(text_src);
        const std::string b = normalize_ascii(*text_out);
        double sim;
        if (a.empty() && b.empty()) sim = 1.0;
        else if (a.empty() || b.empty()) sim = 0.0;
        else
            sim = 1.0 - static_cast<double>(levenshtein_matrix(a, b)) /
                            static_cast<double>(std::max(a.size(), b.size()));
        ref.text_changed = sim < config.sim_threshold;
    }
    ref.psnr_flag = psnr < config.psnr_threshold;
    ref.spillover = (ref.text_changed && *ref.text_changed) || ref.psnr_flag;
    return ref;
}

} // namespace eff::oracle
