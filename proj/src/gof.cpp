#include "benford/gof.hpp"

#include <cmath>
#include <string>

#include "benford/errors.hpp"
#include "benford/model.hpp"

namespace benford {
namespace {

void require_first_digit_census(const DigitCensus& census) {
  if (census.position() != 1) {
    throw DomainError("conformance tests apply to first-digit censuses only");
  }
  if (census.sample_size() == 0) throw EmptyCensus();
}

void require_support(std::span<const double> observed, int base) {
  if (base < 2) throw DomainError("base must be >= 2");
  if (observed.size() != static_cast<std::size_t>(base - 1)) {
    throw DomainError("expected " + std::to_string(base - 1) +
                      " first-digit frequencies, got " +
                      std::to_string(observed.size()));
  }
}

}  // namespace

DigitCensus::DigitCensus(int position, int base)
    : position_(position), base_(base) {
  if (base < 2) throw DomainError("base must be >= 2");
  if (position < 1 || position > kMaxDigits) {
    throw DomainError("digit position out of range");
  }
  counts_.assign(static_cast<std::size_t>(position == 1 ? base - 1 : base), 0);
}

DigitCensus DigitCensus::from_counts(std::span<const std::uint64_t> counts,
                                     int position, int base,
                                     std::uint64_t exclusions) {
  DigitCensus out(position, base);
  if (counts.size() != out.counts_.size()) {
    throw DomainError("census needs " + std::to_string(out.counts_.size()) +
                      " counts, got " + std::to_string(counts.size()));
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out.add_digit(out.first_digit() + static_cast<int>(i), counts[i]);
  }
  out.exclusions_ = exclusions;
  return out;
}

std::uint64_t DigitCensus::count(int digit) const {
  const int idx = digit - first_digit();
  if (idx < 0 || idx >= static_cast<int>(counts_.size())) {
    throw DomainError("digit " + std::to_string(digit) + " outside support");
  }
  return counts_[static_cast<std::size_t>(idx)];
}

void DigitCensus::add_digit(int digit, std::uint64_t times) {
  const int idx = digit - first_digit();
  if (idx < 0 || idx >= static_cast<int>(counts_.size())) {
    throw DomainError("digit " + std::to_string(digit) + " outside support");
  }
  counts_[static_cast<std::size_t>(idx)] += times;
  sample_size_ += times;
}

void DigitCensus::add(const ExactDecimal& value) {
  if (value.is_zero()) {
    add_exclusion();
    return;
  }
  add_digit(extract_digits(value, position_, base_).digits.back());
}

void DigitCensus::add(const mpz_class& value) {
  if (value == 0) {
    add_exclusion();
    return;
  }
  add_digit(extract_digits(value, position_, base_).digits.back());
}

DigitCensus& DigitCensus::merge(const DigitCensus& other) {
  if (other.position_ != position_ || other.base_ != base_) {
    throw DomainError("cannot merge censuses of different position or base");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  sample_size_ += other.sample_size_;
  exclusions_ += other.exclusions_;
  return *this;
}

std::vector<double> DigitCensus::observed_frequencies() const {
  if (sample_size_ == 0) throw EmptyCensus();
  std::vector<double> out;
  out.reserve(counts_.size());
  for (const auto c : counts_) {
    out.push_back(static_cast<double>(c) / static_cast<double>(sample_size_));
  }
  return out;
}

DigitCensus operator+(DigitCensus lhs, const DigitCensus& rhs) {
  lhs.merge(rhs);
  return lhs;
}

DigitCensus build_census(std::span<const ExactDecimal> values, int position,
                         int base) {
  DigitCensus out(position, base);
  for (const auto& v : values) out.add(v);
  return out;
}

DigitCensus build_census(std::span<const int> digits, int position, int base) {
  DigitCensus out(position, base);
  for (const int d : digits) out.add_digit(d);
  return out;
}

const char* to_string(Verdict v) noexcept {
  return v == Verdict::accept ? "accept" : "reject";
}

Verdict verdict_at(double chi_square, double critical) noexcept {
  return chi_square > critical ? Verdict::reject : Verdict::accept;
}

double chi_square(std::span<const double> observed_freq,
                  std::uint64_t sample_size) {
  require_support(observed_freq, 10);
  if (sample_size == 0) throw EmptyCensus();
  CompensatedSum acc;
  for (int n = 1; n <= 9; ++n) {
    const double expected = first_digit_prob(n, 10);
    const double diff = expected - observed_freq[static_cast<std::size_t>(n - 1)];
    acc.add(diff * diff / expected);
  }
  return acc.value() * static_cast<double>(sample_size);
}

double tvd_benford(std::span<const double> observed_freq, int base) {
  require_support(observed_freq, base);
  CompensatedSum acc;
  for (int n = 1; n < base; ++n) {
    acc.add(std::fabs(observed_freq[static_cast<std::size_t>(n - 1)] -
                      first_digit_prob(n, base)));
  }
  return 0.5 * acc.value();
}

Deviation max_deviation(std::span<const double> observed_freq, int base) {
  require_support(observed_freq, base);
  Deviation out{-1.0, 1};
  for (int n = 1; n < base; ++n) {
    const double dev = std::fabs(observed_freq[static_cast<std::size_t>(n - 1)] -
                                 first_digit_prob(n, base));
    if (dev > out.value) out = {dev, n};
  }
  return out;
}

double chi_square(const DigitCensus& census) {
  require_first_digit_census(census);
  if (census.base() != 10) {
    throw DomainError("the chi-square test is defined for base 10 (8 d.o.f.)");
  }
  return chi_square(census.observed_frequencies(), census.sample_size());
}

double tvd_benford(const DigitCensus& census) {
  require_first_digit_census(census);
  return tvd_benford(census.observed_frequencies(), census.base());
}

Deviation max_deviation(const DigitCensus& census) {
  require_first_digit_census(census);
  return max_deviation(census.observed_frequencies(), census.base());
}

GofReport full_report(const DigitCensus& census) {
  GofReport out;
  out.chi_square = chi_square(census);
  out.observed_freq = census.observed_frequencies();
  out.expected_freq = first_digit_distribution(10).probabilities;
  out.d1 = tvd_benford(out.observed_freq, 10);
  const Deviation dev = max_deviation(out.observed_freq, 10);
  out.d_max = dev.value;
  out.d_max_digit = dev.digit;
  out.sample_size = census.sample_size();
  out.verdict_5pct = verdict_at(out.chi_square, kCritical5Percent);
  out.verdict_1pct = verdict_at(out.chi_square, kCritical1Percent);
  return out;
}

}  // namespace benford
