#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "eff/eval.hpp"

namespace eff {

inline constexpr const char* kReportSchemaVersion = "1";

nlohmann::ordered_json region_report_to_json(const RegionReport& report);
nlohmann::ordered_json scene_report_to_json(const SceneReport& report);
nlohmann::ordered_json corpus_report_to_json(const CorpusReport& report);

/// One row per scene: scene_id,category,target_found,spill_rate,
/// avg_region_psnr,min_region_psnr,bg_psnr. Absent values are empty cells.
void write_scene_csv(const std::filesystem::path& path, const std::vector<SceneReport>& reports);

/// One row per evaluated region.
void write_region_csv(const std::filesystem::path& path, const std::vector<SceneReport>& reports);

/// Per-category rows plus an "overall" row.
void write_corpus_csv(const std::filesystem::path& path, const CorpusReport& corpus);

void write_json_file(const std::filesystem::path& path, const nlohmann::ordered_json& doc);

} // namespace eff
