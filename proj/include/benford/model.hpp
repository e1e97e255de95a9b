#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace benford {

/// Highest digit position for which marginal laws are tabulated.
inline constexpr int kMaxPosition = 8;
/// Highest position j accepted by digit_correlation.
inline constexpr int kMaxCorrelationPosition = 5;

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Law of one significant-digit position.
struct DigitDistribution {
  int position = 1;
  int base = 10;
  /// probabilities[i] belongs to digit first_digit() + i.
  std::vector<double> probabilities;

  int first_digit() const noexcept { return position == 1 ? 1 : 0; }
  double operator()(int digit) const {
    return probabilities.at(static_cast<std::size_t>(digit - first_digit()));
  }
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// log_base(1 + 1/d); DomainError unless 1 <= d <= base - 1.
double first_digit_prob(int d, int base = 10);

/// Base-10 probability that the leading significant digits are exactly
/// `digits` (d1 != 0): log10(1 + 1/m) with m the integer they spell.
double joint_prob(std::span<const int> digits);
double joint_prob(std::initializer_list<int> digits);

/// Generalized first-digit law in `base`.
DigitDistribution first_digit_distribution(int base);

/// Base-10 law of the k-th significant digit, 1 <= k <= kMaxPosition.
/// Memoized; safe for concurrent callers.
const DigitDistribution& marginal_distribution(int k);

/// Reference law for a census at (position, base): the generalized
/// first-digit law when position is 1, otherwise the base-10 marginal.
DigitDistribution benford_distribution(int position, int base);

Moments moments(int k);

/// Same moments summed directly over the joint law of all k-digit
/// prefixes. Independent of marginal_distribution; k <= 7.
Moments moments_from_joint(int k);

/// Total variation distance of D_k from the uniform law on its support.
double tvd_from_uniform(int k);

/// Correlation coefficient of D_i and D_j from the exact joint law,
/// 1 <= i < j <= kMaxCorrelationPosition.
double digit_correlation(int i, int j);

/// Marginal probabilities of position k scaled by sample_size.
std::vector<double> expected_counts(int k, std::uint64_t sample_size,
                                    int base = 10);

}  // namespace benford
