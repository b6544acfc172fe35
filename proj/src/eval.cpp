#include "eff/eval.hpp"

#include <algorithm>
#include <cmath>

#include "eff/errors.hpp"
#include "eff/geometry.hpp"

namespace eff {

std::string to_string(OcrMode mode) {
    switch (mode) {
        case OcrMode::GroundTruth: return "ground_truth";
        case OcrMode::External: return "external";
        case OcrMode::Disabled: return "disabled";
    }
    return "disabled";
}

double region_psnr(const RasterImage& src, const RasterImage& out, const BinaryMask& mask,
                   double psnr_cap) {
    if (!src.same_dims(out) || mask.width != src.width || mask.height != src.height)
        throw Error("region_psnr: image/mask dimensions differ");
    long long sq_sum = 0;
    std::size_t pixels = 0;
    for (std::size_t p = 0; p < mask.bits.size(); ++p) {
        if (!mask.bits[p]) continue;
        ++pixels;
        const std::size_t s = p * RasterImage::kChannels;
        for (int c = 0; c < RasterImage::kChannels; ++c) {
            const int d = static_cast<int>(src.data[s + c]) - static_cast<int>(out.data[s + c]);
            sq_sum += static_cast<long long>(d) * d;
        }
    }
    if (pixels == 0) throw Error("region_psnr: empty mask");
    if (sq_sum == 0) return psnr_cap;
    const double mse = static_cast<double>(sq_sum) /
                       (static_cast<double>(pixels) * RasterImage::kChannels);
    const double psnr = 10.0 * std::log10(255.0 * 255.0 / mse);
    return std::min(psnr, psnr_cap);
}

namespace {

bool is_ascii_space(std::uint32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == '\v';
}

// Lenient UTF-8 decode: malformed bytes pass through as single code points.
std::vector<std::uint32_t> decode_utf8(const std::string& s) {
    std::vector<std::uint32_t> cps;
    cps.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const unsigned char b = static_cast<unsigned char>(s[i]);
        int extra = 0;
        std::uint32_t cp = b;
        if (b >= 0xF0) { extra = 3; cp = b & 0x07u; }
        else if (b >= 0xE0) { extra = 2; cp = b & 0x0Fu; }
        else if (b >= 0xC0) { extra = 1; cp = b & 0x1Fu; }
        if (extra > 0 && i + extra < s.size() + 0u) {
            bool ok = true;
            std::uint32_t acc = cp;
            for (int k = 1; k <= extra; ++k) {
                const unsigned char cont = static_cast<unsigned char>(s[i + k]);
                if ((cont & 0xC0u) != 0x80u) { ok = false; break; }
                acc = (acc << 6) | (cont & 0x3Fu);
            }
            if (ok) {
                cps.push_back(acc);
                i += extra + 1;
                continue;
            }
        }
        cps.push_back(b);
        ++i;
    }
    return cps;
}

std::string encode_utf8(const std::vector<std::uint32_t>& cps) {
    std::string out;
    for (std::uint32_t cp : cps) {
        if (cp < 0x80u) out += static_cast<char>(cp);
        else if (cp < 0x800u) {
            out += static_cast<char>(0xC0u | (cp >> 6));
            out += static_cast<char>(0x80u | (cp & 0x3Fu));
        } else if (cp < 0x10000u) {
            out += static_cast<char>(0xE0u | (cp >> 12));
            out += static_cast<char>(0x80u | ((cp >> 6) & 0x3Fu));
            out += static_cast<char>(0x80u | (cp & 0x3Fu));
        } else {
            out += static_cast<char>(0xF0u | (cp >> 18));
            out += static_cast<char>(0x80u | ((cp >> 12) & 0x3Fu));
            out += static_cast<char>(0x80u | ((cp >> 6) & 0x3Fu));
            out += static_cast<char>(0x80u | (cp & 0x3Fu));
        }
    }
    return out;
}

std::vector<std::uint32_t> normalize_codepoints(const std::string& s) {
    std::vector<std::uint32_t> cps = decode_utf8(s);
    std::vector<std::uint32_t> out;
    out.reserve(cps.size());
    bool pending_space = false;
    for (std::uint32_t cp : cps) {
        if (is_ascii_space(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        if (cp >= 'A' && cp <= 'Z') cp += 'a' - 'A';
        out.push_back(cp);
    }
    return out;
}

std::size_t levenshtein(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    std::vector<std::size_t> prev(m + 1), cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) prev[j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = i;
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

} // namespace

std::string normalize_text(const std::string& s) {
    return encode_utf8(normalize_codepoints(s));
}

double text_similarity(const std::string& a, const std::string& b) {
    const std::vector<std::uint32_t> na = normalize_codepoints(a);
    const std::vector<std::uint32_t> nb = normalize_codepoints(b);
    if (na.empty() && nb.empty()) return 1.0;
    if (na.empty() || nb.empty()) return 0.0;
    const std::size_t dist = levenshtein(na, nb);
    return 1.0 - static_cast<double>(dist) / static_cast<double>(std::max(na.size(), nb.size()));
}

bool spillover_decision(const std::optional<double>& similarity, double psnr,
                        const FieldConfig& config) {
    const bool text_changed = similarity.has_value() && *similarity < config.sim_threshold;
    return text_changed || psnr < config.psnr_threshold;
}

RegionReport classify_region(const RasterImage& src, const RasterImage& out,
                             const TextRegion& region, const std::optional<std::string>& out_text,
                             OcrMode ocr_mode, const FieldConfig& config) {
    if (region.role != Role::NonTarget)
        throw Error("classify_region applies to non-target regions only");

    RegionReport report;
    report.region_id = region.id;
    report.text_src = region.text;
    report.ocr_mode = out_text.has_value() ? ocr_mode : OcrMode::Disabled;

    const BinaryMask mask =
        pad_mask(rasterize_quad(region.quad, src.width, src.height), config.pad_protect);
    report.region_psnr = region_psnr(src, out, mask, config.psnr_cap);

    if (out_text) {
        report.text_out = *out_text;
        report.text_similarity = text_similarity(region.text, *out_text);
        report.text_changed = *report.text_similarity < config.sim_threshold;
    }
    report.spillover = spillover_decision(report.text_similarity, report.region_psnr, config);
    return report;
}

SceneReport evaluate_scene(const SceneSpec& scene, const RasterImage& source,
                           const RasterImage& output, const FieldConfig& config,
                           const std::optional<OutputOcr>& ocr) {
    if (!source.same_dims(output))
        throw Error("evaluate_scene: output dimensions differ from the source");
    config.validate();

    SceneReport report;
    report.scene_id = scene.scene_id;
    report.category = scene.category;

    const OcrMode mode = ocr ? ocr->mode : OcrMode::Disabled;

    long flagged = 0;
    double psnr_sum = 0.0;
    double psnr_min = 0.0;
    BinaryMask text_union(source.width, source.height);
    bool have_regions = false;

    for (const TextRegion* region : scene.non_targets()) {
        std::optional<std::string> out_text;
        if (ocr) {
            const auto it = ocr->texts.find(region->id);
            if (it != ocr->texts.end()) out_text = it->second;
        }
        try {
            RegionReport rr = classify_region(source, output, *region, out_text, mode, config);
            if (rr.spillover) ++flagged;
            psnr_sum += rr.region_psnr;
            psnr_min = have_regions ? std::min(psnr_min, rr.region_psnr) : rr.region_psnr;
            have_regions = true;
            mask_or(text_union, pad_mask(rasterize_quad(region->quad, source.width, source.height),
                                         config.pad_protect));
            report.region_reports.push_back(std::move(rr));
        } catch (const DegenerateRegionError& e) {
            report.warnings.push_back("region '" + region->id + "' skipped: " + e.what());
        }
    }

    if (have_regions) {
        const long n = static_cast<long>(report.region_reports.size());
        report.spill_rate = static_cast<double>(flagged) / static_cast<double>(n);
        report.avg_region_psnr = psnr_sum / static_cast<double>(n);
        report.min_region_psnr = psnr_min;
    }

    // background = everything outside the padded target and padded non-targets
    try {
        const TextRegion& target = scene.target();
        mask_or(text_union, pad_mask(rasterize_quad(target.quad, source.width, source.height),
                                     config.pad_core));
    } catch (const DegenerateRegionError& e) {
        report.warnings.push_back(std::string("target region excluded from background: ") + e.what());
    }
    const BinaryMask background = mask_not(text_union);
    if (background.any())
        report.bg_psnr = region_psnr(source, output, background, config.psnr_cap);

    if (ocr && mode != OcrMode::Disabled) {
        const auto it = ocr->texts.find(scene.target_region_id);
        if (it != ocr->texts.end())
            report.target_found = text_similarity(it->second, scene.target_text) >= config.sim_threshold;
    }
    return report;
}

namespace {

MetricRow aggregate_rows(const std::vector<const SceneReport*>& reports, SpillWeighting weighting) {
    MetricRow row;
    row.scene_count = static_cast<int>(reports.size());

    int found_defined = 0, found_true = 0;
    int spill_defined = 0;
    double spill_sum = 0.0;
    int avg_defined = 0;
    double avg_sum = 0.0;
    int min_defined = 0;
    double min_sum = 0.0;
    int bg_defined = 0;
    double bg_sum = 0.0;

    for (const SceneReport* r : reports) {
        row.regions_total += static_cast<long>(r->region_reports.size());
        for (const RegionReport& rr : r->region_reports)
            if (rr.spillover) ++row.regions_flagged;
        if (r->target_found) {
            ++found_defined;
            if (*r->target_found) ++found_true;
        }
        if (r->spill_rate) {
            ++spill_defined;
            spill_sum += *r->spill_rate;
        }
        if (r->avg_region_psnr) {
            ++avg_defined;
            avg_sum += *r->avg_region_psnr;
        }
        if (r->min_region_psnr) {
            ++min_defined;
            min_sum += *r->min_region_psnr;
        }
        if (r->bg_psnr) {
            ++bg_defined;
            bg_sum += *r->bg_psnr;
        }
    }

    if (found_defined > 0)
        row.found_rate = static_cast<double>(found_true) / found_defined;
    if (weighting == SpillWeighting::Region) {
        if (row.regions_total > 0)
            row.spill_rate = static_cast<double>(row.regions_flagged) /
                             static_cast<double>(row.regions_total);
    } else if (spill_defined > 0) {
        row.spill_rate = spill_sum / spill_defined;
    }
    if (avg_defined > 0) row.avg_region_psnr = avg_sum / avg_defined;
    if (min_defined > 0) row.min_region_psnr = min_sum / min_defined;
    if (bg_defined > 0) row.bg_psnr = bg_sum / bg_defined;
    return row;
}

} // namespace

CorpusReport aggregate_corpus(const std::vector<SceneReport>& reports, SpillWeighting weighting) {
    if (reports.empty()) throw Error("aggregate_corpus: no scene reports");

    CorpusReport corpus;
    corpus.weighting = weighting;

    std::vector<const SceneReport*> all;
    std::map<std::string, std::vector<const SceneReport*>> by_category;
    for (const SceneReport& r : reports) {
        all.push_back(&r);
        by_category[r.category].push_back(&r);
    }
    corpus.overall = aggregate_rows(all, weighting);
    for (const auto& [category, subset] : by_category)
        corpus.categories.emplace_back(category, aggregate_rows(subset, weighting));
    return corpus;
}

} // namespace eff
