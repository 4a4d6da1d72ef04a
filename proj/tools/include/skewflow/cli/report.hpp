#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "skewflow/cli/job.hpp"

namespace skewflow::cli {

using Json = nlohmann::ordered_json;

extern const char* const kToolVersion;

/// Runs every analysis in declared order. A failing analysis becomes an
/// error block and does not stop the others. The timestamp lives in its own
/// top-level field so the rest of the report is reproducible bit for bit.
Json run_job(const AnalysisJob& job);

/// Writes report.json and, when requested, one CSV per table. Returns the
/// paths written. Throws std::runtime_error naming an unwritable path.
std::vector<std::filesystem::path> write_report(const Json& report, const std::filesystem::path& dir, bool csv);

/// CSV files derived from a report (see docs/job-format.md for the headers).
std::vector<std::filesystem::path> emit_csv(const Json& report, const std::filesystem::path& dir);

Json read_report(const std::filesystem::path& path);

/// 17 significant digits; nan / inf / -inf spelled out.
std::string format_number(double x);

/// One line per analysis: index, kind, verdict or error.
std::string summarize(const Json& report);

}  // namespace skewflow::cli
