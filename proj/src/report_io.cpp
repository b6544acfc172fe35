#include "eff/report_io.hpp"

#include <fstream>

#include "eff/errors.hpp"
#include "eff/format.hpp"

namespace eff {

using json = nlohmann::ordered_json;

namespace {

template <typename T>
json opt_json(const std::optional<T>& v) {
    if (v) return json(*v);
    return json(nullptr);
}

std::string opt_cell(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

std::string opt_cell(const std::optional<bool>& v) {
    if (!v) return {};
    return *v ? "true" : "false";
}

} // namespace

json region_report_to_json(const RegionReport& r) {
    json j;
    j["region_id"] = r.region_id;
    j["text_src"] = r.text_src;
    j["text_out"] = opt_json(r.text_out);
    j["text_similarity"] = opt_json(r.text_similarity);
    j["region_psnr"] = r.region_psnr;
    j["text_changed"] = opt_json(r.text_changed);
    j["spillover"] = r.spillover;
    j["ocr_mode"] = to_string(r.ocr_mode);
    return j;
}

json scene_report_to_json(const SceneReport& r) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["scene_id"] = r.scene_id;
    j["category"] = r.category;
    j["target_found"] = opt_json(r.target_found);
    j["spill_rate"] = opt_json(r.spill_rate);
    j["avg_region_psnr"] = opt_json(r.avg_region_psnr);
    j["min_region_psnr"] = opt_json(r.min_region_psnr);
    j["bg_psnr"] = opt_json(r.bg_psnr);
    j["regions"] = json::array();
    for (const RegionReport& rr : r.region_reports) j["regions"].push_back(region_report_to_json(rr));
    j["warnings"] = r.warnings;
    return j;
}

namespace {

json metric_row_to_json(const MetricRow& row) {
    json j;
    j["scene_count"] = row.scene_count;
    j["regions_total"] = row.regions_total;
    j["regions_flagged"] = row.regions_flagged;
    j["found_rate"] = opt_json(row.found_rate);
    j["spill_rate"] = opt_json(row.spill_rate);
    j["avg_region_psnr"] = opt_json(row.avg_region_psnr);
    j["min_region_psnr"] = opt_json(row.min_region_psnr);
    j["bg_psnr"] = opt_json(row.bg_psnr);
    return j;
}

} // namespace

json corpus_report_to_json(const CorpusReport& corpus) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["spill_weighting"] = corpus.weighting == SpillWeighting::Region ? "region" : "scene";
    j["overall"] = metric_row_to_json(corpus.overall);
    j["categories"] = json::object();
    for (const auto& [name, row] : corpus.categories) j["categories"][name] = metric_row_to_json(row);
    return j;
}

void write_scene_csv(const std::filesystem::path& path, const std::vector<SceneReport>& reports) {
    std::ofstream out(path);
    if (!out) throw ImageIoError("cannot create CSV: " + path.string());
    out << "scene_id,category,target_found,spill_rate,avg_region_psnr,min_region_psnr,bg_psnr\n";
    for (const SceneReport& r : reports) {
        out << csv_escape(r.scene_id) << ',' << csv_escape(r.category) << ','
            << opt_cell(r.target_found) << ',' << opt_cell(r.spill_rate) << ','
            << opt_cell(r.avg_region_psnr) << ',' << opt_cell(r.min_region_psnr) << ','
            << opt_cell(r.bg_psnr) << '\n';
    }
}

void write_region_csv(const std::filesystem::path& path, const std::vector<SceneReport>& reports) {
    std::ofstream out(path);
    if (!out) throw ImageIoError("cannot create CSV: " + path.string());
    out << "scene_id,region_id,text_src,text_out,text_similarity,region_psnr,"
           "text_changed,spillover,ocr_mode\n";
    for (const SceneReport& r : reports) {
        for (const RegionReport& rr : r.region_reports) {
            out << csv_escape(r.scene_id) << ',' << csv_escape(rr.region_id) << ','
                << csv_escape(rr.text_src) << ','
                << (rr.text_out ? csv_escape(*rr.text_out) : std::string()) << ','
                << opt_cell(rr.text_similarity) << ',' << format_double(rr.region_psnr) << ','
                << opt_cell(rr.text_changed) << ',' << (rr.spillover ? "true" : "false") << ','
                << to_string(rr.ocr_mode) << '\n';
        }
    }
}

void write_corpus_csv(const std::filesystem::path& path, const CorpusReport& corpus) {
    std::ofstream out(path);
    if (!out) throw ImageIoError("cannot create CSV: " + path.string());
    out << "category,scene_count,regions_total,regions_flagged,found_rate,spill_rate,"
           "avg_region_psnr,min_region_psnr,bg_psnr\n";
    auto row_line = [&out](const std::string& name, const MetricRow& row) {
        out << csv_escape(name) << ',' << row.scene_count << ',' << row.regions_total << ','
            << row.regions_flagged << ',' << opt_cell(row.found_rate) << ','
            << opt_cell(row.spill_rate) << ',' << opt_cell(row.avg_region_psnr) << ','
            << opt_cell(row.min_region_psnr) << ',' << opt_cell(row.bg_psnr) << '\n';
    };
    for (const auto& [name, row] : corpus.categories) row_line(name, row);
    row_line("overall", corpus.overall);
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw ImageIoError("cannot create JSON file: " + path.string());
    out << doc.dump(2) << '\n';
}

} // namespace eff
