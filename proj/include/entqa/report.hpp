#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "entqa/harness.hpp"
#include "entqa/llm_client.hpp"

namespace entqa {

enum class ReportFormat { markdown, csv, json };

std::string_view extension_for(ReportFormat f) noexcept;
std::optional<ReportFormat> parse_report_format(std::string_view s) noexcept;

/// Calls needed to score m models over N questions: a judge pays m*N, an
/// expanded answer set pays N once.
struct CallsPoint {
  std::size_t models = 0;
  std::int64_t judge_calls = 0;
  std::int64_t expansion_calls = 0;
};

std::vector<CallsPoint> calls_series(std::size_t questions, std::size_t models);

struct Report {
  std::size_t questions = 0;
  std::vector<std::string> models;
  std::vector<ReliabilityReport> metrics;  ///< one grid row each
  std::optional<UsageLedger::Snapshot> ledger;
};

/// Byte-deterministic for a fixed report.
std::string render_report(const Report& report, ReportFormat format);

/// Writes report.<ext> for each format under `dir`; returns the paths.
std::vector<std::filesystem::path> write_report(const std::filesystem::path& dir, const Report& report,
                                                const std::vector<ReportFormat>& formats);

}  // namespace entqa
