#include "benford/model.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "benford/errors.hpp"

namespace benford {
namespace {

constexpr int kMaxJointDigits = 18;

std::uint64_t pow10(int e) {
  std::uint64_t out = 1;
  for (int i = 0; i < e; ++i) out *= 10;
  return out;
}

// log10(1 + 1/m) without cancellation for large m.
double log10_1p_inv(double m) { return std::log1p(1.0 / m) / std::numbers::ln10; }

void check_position(int k, int max = kMaxPosition) {
  if (k < 1 || k > max) {
    throw DomainError("digit position must lie in [1, " + std::to_string(max) +
                      "], got " + std::to_string(k));
  }
}

DigitDistribution compute_marginal(int k) {
  if (k == 1) return first_digit_distribution(10);
  // P(D_k = d) = sum over (k-1)-digit prefixes m of log10(1 + 1/(10m + d)).
  std::array<CompensatedSum, 10> acc{};
  const std::uint64_t lo = pow10(k - 2);
  const std::uint64_t hi = lo * 10;
  for (std::uint64_t m = lo; m < hi; ++m) {
    const std::uint64_t base = m * 10;
    for (int d = 0; d < 10; ++d) {
      acc[static_cast<std::size_t>(d)].add(
          std::log1p(1.0 / static_cast<double>(base + static_cast<std::uint64_t>(d))));
    }
  }
  DigitDistribution out;
  out.position = k;
  out.base = 10;
  out.probabilities.reserve(10);
  for (const auto& a : acc) {
    out.probabilities.push_back(a.value() / std::numbers::ln10);
  }
  return out;
}

Moments moments_of(const DigitDistribution& dist) {
  CompensatedSum mean;
  for (std::size_t i = 0; i < dist.probabilities.size(); ++i) {
    mean.add(static_cast<double>(dist.first_digit() + static_cast<int>(i)) *
             dist.probabilities[i]);
  }
  const double mu = mean.value();
  CompensatedSum var;
  for (std::size_t i = 0; i < dist.probabilities.size(); ++i) {
    const double dev =
        static_cast<double>(dist.first_digit() + static_cast<int>(i)) - mu;
    var.add(dev * dev * dist.probabilities[i]);
  }
  return {mu, var.value()};
}

}  // namespace

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    carry_ += (sum_ - t) + x;
  } else {
    carry_ += (x - t) + sum_;
  }
  sum_ = t;
}

double first_digit_prob(int d, int base) {
  if (base < 2) throw DomainError("base must be >= 2");
  if (d < 1 || d > base - 1) {
    throw DomainError("first digit " + std::to_string(d) +
                      " outside [1, " + std::to_string(base - 1) + "]");
  }
  return std::log1p(1.0 / d) / std::log(static_cast<double>(base));
}

double joint_prob(std::span<const int> digits) {
  if (digits.empty() || static_cast<int>(digits.size()) > kMaxJointDigits) {
    throw DomainError("joint law needs between 1 and 18 digits");
  }
  if (digits[0] < 1 || digits[0] > 9) {
    throw DomainError("leading digit must lie in [1, 9]");
  }
  std::uint64_t m = 0;
  for (const int d : digits) {
    if (d < 0 || d > 9) throw DomainError("digit outside [0, 9]");
    m = m * 10 + static_cast<std::uint64_t>(d);
  }
  return log10_1p_inv(static_cast<double>(m));
}

double joint_prob(std::initializer_list<int> digits) {
  return joint_prob(std::span<const int>(digits.begin(), digits.size()));
}

DigitDistribution first_digit_distribution(int base) {
  if (base < 2) throw DomainError("base must be >= 2");
  DigitDistribution out;
  out.position = 1;
  out.base = base;
  out.probabilities.reserve(static_cast<std::size_t>(base - 1));
  for (int d = 1; d < base; ++d) out.probabilities.push_back(first_digit_prob(d, base));
  return out;
}

const DigitDistribution& marginal_distribution(int k) {
  check_position(k);
  static std::array<std::once_flag, kMaxPosition + 1> once;
  static std::array<DigitDistribution, kMaxPosition + 1> cache;
  const auto idx = static_cast<std::size_t>(k);
  std::call_once(once[idx], [&] { cache[idx] = compute_marginal(k); });
  return cache[idx];
}

DigitDistribution benford_distribution(int position, int base) {
  if (position == 1) return first_digit_distribution(base);
  if (base != 10) {
    throw DomainError("the joint digit law is defined for base 10 only");
  }
  return marginal_distribution(position);
}

Moments moments(int k) { return moments_of(marginal_distribution(k)); }

Moments moments_from_joint(int k) {
  check_position(k, 7);
  const std::uint64_t lo = pow10(k - 1);
  const std::uint64_t hi = lo * 10;
  CompensatedSum first, second;
  for (std::uint64_t m = lo; m < hi; ++m) {
    const double p = log10_1p_inv(static_cast<double>(m));
    const auto d = static_cast<double>(m % 10);
    first.add(d * p);
    second.add(d * d * p);
  }
  const double mean = first.value();
  return {mean, second.value() - mean * mean};
}

double tvd_from_uniform(int k) {
  const DigitDistribution& dist = marginal_distribution(k);
  const double uniform = 1.0 / static_cast<double>(dist.probabilities.size());
  CompensatedSum acc;
  for (const double p : dist.probabilities) acc.add(std::fabs(p - uniform));
  return 0.5 * acc.value();
}

double digit_correlation(int i, int j) {
  if (i < 1 || j <= i || j > kMaxCorrelationPosition) {
    throw DomainError("correlation needs 1 <= i < j <= " +
                      std::to_string(kMaxCorrelationPosition));
  }
  const std::uint64_t lo = pow10(j - 1);
  const std::uint64_t hi = lo * 10;
  const std::uint64_t shift = pow10(j - i);

  CompensatedSum ei, ej;
  for (std::uint64_t m = lo; m < hi; ++m) {
    const double p = log10_1p_inv(static_cast<double>(m));
    ei.add(p * static_cast<double>((m / shift) % 10));
    ej.add(p * static_cast<double>(m % 10));
  }
  const double mu_i = ei.value();
  const double mu_j = ej.value();

  CompensatedSum cov, var_i, var_j;
  for (std::uint64_t m = lo; m < hi; ++m) {
    const double p = log10_1p_inv(static_cast<double>(m));
    const double a = static_cast<double>((m / shift) % 10) - mu_i;
    const double b = static_cast<double>(m % 10) - mu_j;
    cov.add(p * a * b);
    var_i.add(p * a * a);
    var_j.add(p * b * b);
  }
  return cov.value() / std::sqrt(var_i.value() * var_j.value());
}

std::vector<double> expected_counts(int k, std::uint64_t sample_size, int base) {
  if (sample_size < 1) throw DomainError("sample size must be >= 1");
  if (k != 1) check_position(k);
  const DigitDistribution dist = benford_distribution(k, base);
  std::vector<double> out;
  out.reserve(dist.probabilities.size());
  for (const double p : dist.probabilities) {
    out.push_back(p * static_cast<double>(sample_size));
  }
  return out;
}

}  // namespace benford
