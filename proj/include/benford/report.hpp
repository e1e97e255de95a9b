#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "benford/gof.hpp"

namespace benford {

inline constexpr const char* kToolVersion = "1.0.0";

/// Significant digits carried by every serialized real number.
inline constexpr int kSerializedDigits = 12;

/// `x` rounded to kSerializedDigits significant digits.
double round_serialized(double x);
std::string format_serialized(double x);

enum class Level { p05, p01 };

struct ReportMeta {
  std::string input;
  std::string policy;
  std::string timestamp;
  std::string tool_version = kToolVersion;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> prng;
};

struct HistogramRow {
  int digit = 0;
  double observed_freq = 0.0;
  double benford_freq = 0.0;
};

/// Census plus everything derived from it. Distances are present for
/// first-digit censuses; the chi-square test and verdicts only for
/// base-10 first-digit censuses.
struct ReportDocument {
  ReportMeta meta;
  DigitCensus census;
  std::vector<double> observed_freq;
  std::vector<double> expected_freq;
  std::optional<double> d1;
  std::optional<Deviation> d_max;
  std::optional<GofReport> gof;
  std::vector<HistogramRow> histogram;
};

/// Throws EmptyCensus when the census has no observations.
ReportDocument make_report(DigitCensus census, ReportMeta meta);

nlohmann::json to_json(const ReportDocument& doc);
std::string to_csv(const ReportDocument& doc);
std::string to_text(const ReportDocument& doc);

/// Rebuilds the census from a serialized report, recomputes every
/// statistic and compares at serialized precision.
bool verify_report(const nlohmann::json& report);

/// 0 when the Benford hypothesis is accepted at `level` (or no test
/// applies), 2 when rejected.
int exit_status(const ReportDocument& doc, Level level);

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

}  // namespace benford
