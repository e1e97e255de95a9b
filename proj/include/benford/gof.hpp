#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

#include "benford/significand.hpp"

namespace benford {

/// Critical chi-square values at 8 degrees of freedom.
inline constexpr int kDegreesOfFreedom = 8;
inline constexpr double kCritical5Percent = 15.51;
inline constexpr double kCritical1Percent = 20.09;

/// Counts of one significant-digit position over a sample.
///
/// The support is 1..base-1 for position 1 and 0..base-1 otherwise.
/// Values with no significant digit (zeros) or that could not be read
/// are tallied in exclusions() rather than counted.
class DigitCensus {
 public:
  explicit DigitCensus(int position = 1, int base = 10);

  /// Builds a census from counts listed over the support.
  static DigitCensus from_counts(std::span<const std::uint64_t> counts,
                                 int position = 1, int base = 10,
                                 std::uint64_t exclusions = 0);

  int position() const noexcept { return position_; }
  int base() const noexcept { return base_; }
  int first_digit() const noexcept { return position_ == 1 ? 1 : 0; }
  std::size_t support_size() const noexcept { return counts_.size(); }

  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t count(int digit) const;
  std::uint64_t sample_size() const noexcept { return sample_size_; }
  std::uint64_t exclusions() const noexcept { return exclusions_; }

  void add_digit(int digit, std::uint64_t times = 1);
  void add_exclusion(std::uint64_t times = 1) noexcept { exclusions_ += times; }

  /// Counts the position() digit of `value`; zeros become exclusions.
  void add(const ExactDecimal& value);
  void add(const mpz_class& value);

  /// Elementwise sum. Throws DomainError on mismatched position/base.
  DigitCensus& merge(const DigitCensus& other);

  /// count / sample_size over the support. Throws EmptyCensus.
  std::vector<double> observed_frequencies() const;

  friend bool operator==(const DigitCensus&, const DigitCensus&) = default;

 private:
  int position_;
  int base_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t sample_size_ = 0;
  std::uint64_t exclusions_ = 0;
};

DigitCensus operator+(DigitCensus lhs, const DigitCensus& rhs);

DigitCensus build_census(std::span<const ExactDecimal> values, int position = 1,
                         int base = 10);

/// Census of already-extracted digits (each must lie in the support).
DigitCensus build_census(std::span<const int> digits, int position = 1,
                         int base = 10);

enum class Verdict { accept, reject };

const char* to_string(Verdict v) noexcept;

struct Deviation {
  double value = 0.0;
  int digit = 1;
};

struct GofReport {
  double chi_square = 0.0;
  double d1 = 0.0;
  double d_max = 0.0;
  int d_max_digit = 1;
  std::uint64_t sample_size = 0;
  std::vector<double> observed_freq;
  std::vector<double> expected_freq;
  Verdict verdict_5pct = Verdict::accept;
  Verdict verdict_1pct = Verdict::accept;
};

// Statistics over observed first-digit frequencies (digits 1..base-1).
// The reference law is log_base(1 + 1/n).

/// sum over n of (benford_n - observed_n)^2 / benford_n, times S. Base 10.
double chi_square(std::span<const double> observed_freq,
                  std::uint64_t sample_size);
double tvd_benford(std::span<const double> observed_freq, int base = 10);
/// Ties resolve to the smaller digit.
Deviation max_deviation(std::span<const double> observed_freq, int base = 10);

// The same statistics over a position-1 census. chi_square and
// full_report need base 10; the distances accept any base.
// All throw EmptyCensus on an empty census and DomainError otherwise.
double chi_square(const DigitCensus& census);
double tvd_benford(const DigitCensus& census);
Deviation max_deviation(const DigitCensus& census);
GofReport full_report(const DigitCensus& census);

Verdict verdict_at(double chi_square, double critical) noexcept;

}  // namespace benford
