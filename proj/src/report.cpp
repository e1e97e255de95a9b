#include "benford/report.hpp"

#include <fmt/format.h>

#include <cmath>
#include <ctime>
#include <string>

#include "benford/errors.hpp"
#include "benford/model.hpp"

namespace benford {
namespace {

nlohmann::json serialized(const std::vector<double>& xs) {
  auto out = nlohmann::json::array();
  for (const double x : xs) out.push_back(round_serialized(x));
  return out;
}

nlohmann::json optional_number(const std::optional<double>& x) {
  return x ? nlohmann::json(round_serialized(*x)) : nlohmann::json(nullptr);
}

std::string csv_number(const std::optional<double>& x) {
  return x ? format_serialized(*x) : std::string();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

double round_serialized(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format_serialized(x));
}

std::string format_serialized(double x) { return fmt::format("{:.12g}", x); }

ReportDocument make_report(DigitCensus census, ReportMeta meta) {
  ReportDocument doc{std::move(meta), std::move(census), {}, {}, {}, {}, {}, {}};
  const DigitCensus& c = doc.census;
  if (c.sample_size() == 0) throw EmptyCensus();
  doc.observed_freq = c.observed_frequencies();
  doc.expected_freq = benford_distribution(c.position(), c.base()).probabilities;
  if (c.position() == 1) {
    doc.d1 = tvd_benford(doc.observed_freq, c.base());
    doc.d_max = max_deviation(doc.observed_freq, c.base());
    if (c.base() == 10) doc.gof = full_report(c);
  }
  for (std::size_t i = 0; i < doc.observed_freq.size(); ++i) {
    doc.histogram.push_back({c.first_digit() + static_cast<int>(i), doc.observed_freq[i],
                             doc.expected_freq[i]});
  }
  return doc;
}

nlohmann::json to_json(const ReportDocument& doc) {
  const DigitCensus& c = doc.census;
  nlohmann::json meta = {
      {"input", doc.meta.input},
      {"policy", doc.meta.policy},
      {"timestamp", doc.meta.timestamp},
      {"tool_version", doc.meta.tool_version},
      {"position", c.position()},
      {"base", c.base()},
      {"sample_size", c.sample_size()},
  };
  auto digits = nlohmann::json::array();
  for (std::size_t i = 0; i < c.support_size(); ++i) {
    digits.push_back(c.first_digit() + static_cast<int>(i));
  }
  meta["digits"] = digits;
  if (doc.meta.seed) meta["seed"] = *doc.meta.seed;
  if (doc.meta.prng) meta["prng"] = *doc.meta.prng;

  nlohmann::json out;
  out["meta"] = std::move(meta);
  out["counts"] = std::vector<std::uint64_t>(c.counts().begin(), c.counts().end());
  out["exclusions"] = c.exclusions();
  out["observed"] = serialized(doc.observed_freq);
  out["expected"] = serialized(doc.expected_freq);
  if (doc.gof) {
    out["chi_square"] = round_serialized(doc.gof->chi_square);
    out["df"] = kDegreesOfFreedom;
    out["critical"] = {{"p05", kCritical5Percent}, {"p01", kCritical1Percent}};
    out["verdict"] = {{"p05", to_string(doc.gof->verdict_5pct)},
                      {"p01", to_string(doc.gof->verdict_1pct)}};
  } else {
    out["chi_square"] = nullptr;
    out["df"] = nullptr;
    out["critical"] = nullptr;
    out["verdict"] = nullptr;
  }
  out["d1"] = optional_number(doc.d1);
  out["d_max"] = doc.d_max ? nlohmann::json(round_serialized(doc.d_max->value))
                           : nlohmann::json(nullptr);
  out["d_max_digit"] = doc.d_max ? nlohmann::json(doc.d_max->digit) : nlohmann::json(nullptr);
  return out;
}

std::string to_csv(const ReportDocument& doc) {
  const DigitCensus& c = doc.census;
  std::string header =
      "input,position,base,sample_size,exclusions,chi_square,df,critical_p05,critical_p01,"
      "d1,d_max,d_max_digit,verdict_p05,verdict_p01";
  std::string row = fmt::format("{},{},{},{},{}", csv_quote(doc.meta.input), c.position(),
                                c.base(), c.sample_size(), c.exclusions());
  if (doc.gof) {
    row += fmt::format(",{},{},{},{}", format_serialized(doc.gof->chi_square),
                       kDegreesOfFreedom, format_serialized(kCritical5Percent),
                       format_serialized(kCritical1Percent));
  } else {
    row += ",,,,";
  }
  row += "," + csv_number(doc.d1);
  row += "," + (doc.d_max ? format_serialized(doc.d_max->value) : std::string());
  row += "," + (doc.d_max ? std::to_string(doc.d_max->digit) : std::string());
  if (doc.gof) {
    row += fmt::format(",{},{}", to_string(doc.gof->verdict_5pct),
                       to_string(doc.gof->verdict_1pct));
  } else {
    row += ",,";
  }
  for (const auto& h : doc.histogram) {
    header += fmt::format(",count_{0},observed_{0},expected_{0}", h.digit);
    row += fmt::format(",{},{},{}", c.count(h.digit), format_serialized(h.observed_freq),
                       format_serialized(h.benford_freq));
  }
  return header + "\n" + row + "\n";
}

std::string to_text(const ReportDocument& doc) {
  const DigitCensus& c = doc.census;
  std::string out = fmt::format("Input: {}\nDigit position {} in base {}\n\n", doc.meta.input,
                                c.position(), c.base());
  out += fmt::format("{:>5}  {:>10}  {:>9}  {:>9}  {:>10}\n", "Digit", "Count", "Benford",
                     "Observed", "Difference");
  for (const auto& h : doc.histogram) {
    out += fmt::format("{:>5}  {:>10}  {:>9.4f}  {:>9.4f}  {:>10.4f}\n", h.digit,
                       c.count(h.digit), h.benford_freq, h.observed_freq,
                       h.observed_freq - h.benford_freq);
  }
  out += fmt::format("\nSample size: {}    Exclusions: {}\n", c.sample_size(), c.exclusions());
  if (doc.gof) {
    out += fmt::format("Chi-square ({} d.o.f.): {:.4f}\n", kDegreesOfFreedom,
                       doc.gof->chi_square);
  }
  if (doc.d1) out += fmt::format("Total variation distance d1: {:.4f}\n", *doc.d1);
  if (doc.d_max) {
    out += fmt::format("Maximum deviation d_max: {:.4f} (digit {})\n", doc.d_max->value,
                       doc.d_max->digit);
  }
  if (doc.gof) {
    out += fmt::format("Verdict at 5% (critical {}): {}\n", kCritical5Percent,
                       to_string(doc.gof->verdict_5pct));
    out += fmt::format("Verdict at 1% (critical {}): {}\n", kCritical1Percent,
                       to_string(doc.gof->verdict_1pct));
  }
  return out;
}

bool verify_report(const nlohmann::json& report) {
  const auto& meta = report.at("meta");
  const auto counts = report.at("counts").get<std::vector<std::uint64_t>>();
  DigitCensus census =
      DigitCensus::from_counts(counts, meta.at("position").get<int>(), meta.at("base").get<int>(),
                               report.at("exclusions").get<std::uint64_t>());
  const nlohmann::json fresh = to_json(make_report(std::move(census), ReportMeta{}));
  for (const char* key : {"counts", "exclusions", "observed", "expected", "chi_square", "df",
                          "critical", "d1", "d_max", "d_max_digit", "verdict"}) {
    if (fresh.at(key) != report.at(key)) return false;
  }
  return fresh.at("meta").at("sample_size") == meta.at("sample_size");
}

int exit_status(const ReportDocument& doc, Level level) {
  if (!doc.gof) return 0;
  const Verdict v = level == Level::p05 ? doc.gof->verdict_5pct : doc.gof->verdict_1pct;
  return v == Verdict::reject ? 2 : 0;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace benford
