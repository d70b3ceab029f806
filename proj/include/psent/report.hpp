#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "psent/scoring.hpp"
#include "psent/tagger_eval.hpp"

namespace psent {

// Shortest decimal form that round-trips to the same double.
std::string format_number(double value);

std::string score_report_json(const ScoreReport& report);
// One row per channel in the order spearman, ccc, mae.
std::string score_report_csv(const ScoreReport& report);
ScoreReport parse_score_report(std::string_view text);

std::string filter_report_json(const FilterReport& report);
FilterReport parse_filter_report(std::string_view text);

std::string distribution_json(const DistributionPair& dist);
DistributionPair parse_distribution(std::string_view text);

std::string tagger_metrics_json(const TaggerMetrics& metrics);
// Single row: overall_accuracy, precision, recall, f1 (macro, percent).
std::string tagger_metrics_csv(const TaggerMetrics& metrics);
TaggerMetrics parse_tagger_metrics(std::string_view text);

// Writes to a sibling temporary file and renames it over `path`, so readers
// never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace psent
