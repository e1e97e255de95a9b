#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "benford/gof.hpp"
#include "benford/significand.hpp"

namespace benford::seq {

/// Upper bound accepted by the prime sieve.
inline constexpr std::uint64_t kMaxPrimeBound = 100'000'000;

enum class Kind { fibonacci, primes, power_alpha, factorial, power_n, pascal };

const char* to_string(Kind kind) noexcept;
Kind parse_kind(std::string_view name);

/// Parameters selecting one series generator.
struct SequenceSpec {
  Kind kind = Kind::fibonacci;
  /// Fibonacci seed pairs; more than one pair pools the series.
  std::vector<std::pair<mpz_class, mpz_class>> seeds;
  std::uint64_t terms = 0;    // fibonacci: terms per series
  std::uint64_t bound = 0;    // primes: exclusive upper bound
  mpz_class alpha_num = 0;    // power_alpha: alpha = num / den
  mpz_class alpha_den = 1;
  std::uint64_t n_max = 0;    // power_alpha, factorial, power_n
  unsigned long exponent = 0; // power_n
  std::uint64_t rows = 0;     // pascal
  int base = 10;
};

/// Seven seed pairs pooled when no explicit Fibonacci seeds are given.
std::vector<std::pair<mpz_class, mpz_class>> default_fibonacci_seeds();
inline constexpr std::uint64_t kDefaultFibonacciTerms = 1474;

/// Throws DomainError naming the first violated constraint.
void validate(const SequenceSpec& spec);

/// Reads a config file: the kind on the first meaningful line, then
/// `key=value` lines (a1, a2, terms, below, alpha, n, k, rows, base).
/// `#` starts a comment.
SequenceSpec parse_sequence_config(std::string_view text);

/// Exact rational from "p/q" or a decimal token such as "1.007".
std::pair<mpz_class, mpz_class> parse_ratio(std::string_view text);

/// A lazily evaluated series. advance() moves to the next term; the
/// accessors describe the current term.
class Generator {
 public:
  virtual ~Generator() = default;

  virtual bool advance() = 0;
  /// First k significant digits of the current term in base().
  virtual SignificantDigits digits(int k) const = 0;
  /// Exact value of the current term (integer, or p/q for rationals).
  virtual std::string value_string() const = 0;

  int base() const noexcept { return base_; }

 protected:
  explicit Generator(int base);

 private:
  int base_;
};

/// Generator over exact integer terms.
class IntegerGenerator : public Generator {
 public:
  SignificantDigits digits(int k) const override;
  std::string value_string() const override;
  const mpz_class& value() const noexcept { return value_; }

 protected:
  using Generator::Generator;
  mpz_class value_;
};

/// a_{n+2} = a_{n+1} + a_n from seeds (a1, a2).
class FibonacciGenerator final : public IntegerGenerator {
 public:
  FibonacciGenerator(mpz_class a1, mpz_class a2, std::uint64_t terms,
                     int base = 10);
  bool advance() override;

 private:
  mpz_class next_;
  std::uint64_t remaining_;
  bool started_ = false;
};

/// Primes below `bound`, from a sieve of Eratosthenes over odd numbers.
class PrimeGenerator final : public IntegerGenerator {
 public:
  explicit PrimeGenerator(std::uint64_t bound, int base = 10);
  bool advance() override;
  std::uint64_t prime() const noexcept { return current_; }

 private:
  std::vector<bool> composite_;  // index i stands for 2i + 1
  std::uint64_t bound_;
  std::uint64_t current_ = 0;
};

class FactorialGenerator final : public IntegerGenerator {
 public:
  explicit FactorialGenerator(std::uint64_t n_max, int base = 10);
  bool advance() override;

 private:
  std::uint64_t n_ = 0;
  std::uint64_t n_max_;
};

/// n^k for n = 1..n_max.
class PowerGenerator final : public IntegerGenerator {
 public:
  PowerGenerator(unsigned long exponent, std::uint64_t n_max, int base = 10);
  bool advance() override;

 private:
  unsigned long exponent_;
  std::uint64_t n_ = 0;
  std::uint64_t n_max_;
};

/// Binomial coefficients C(n, r), 0 <= r <= n < rows, row by row.
class PascalGenerator final : public IntegerGenerator {
 public:
  explicit PascalGenerator(std::uint64_t rows, int base = 10);
  bool advance() override;

 private:
  std::vector<mpz_class> row_;
  std::uint64_t rows_;
  std::uint64_t n_ = 0;
  std::size_t r_ = 0;
  bool started_ = false;
};

/// alpha^n for n = 1..n_max with alpha = num/den > 1.
///
/// Tracks alpha^n / base^E as a fixed-point interval [lo, hi] scaled by
/// 2^precision_bits; each step multiplies by num and divides by den with
/// outward rounding. Digits are emitted only when both ends of the
/// interval agree on them; otherwise the term is recomputed exactly from
/// num^n / den^n and the interval is reseeded.
class AlphaPowerGenerator final : public Generator {
 public:
  AlphaPowerGenerator(mpz_class num, mpz_class den, std::uint64_t n_max,
                      int base = 10, unsigned precision_bits = 200);
  bool advance() override;
  SignificantDigits digits(int k) const override;
  std::string value_string() const override;

  std::uint64_t exponent() const noexcept { return n_; }
  /// Number of digit requests answered by exact recomputation.
  std::uint64_t exact_fallbacks() const noexcept { return fallbacks_; }

 private:
  void normalize();
  void reseed() const;

  mpz_class num_, den_;
  std::uint64_t n_max_;
  unsigned bits_;
  std::uint64_t n_ = 0;
  // Interval scaled by 2^bits_; value = alpha^n / base^scale_exp_.
  mutable mpz_class lo_, hi_;
  mutable std::int64_t scale_exp_ = 0;
  mutable std::uint64_t fallbacks_ = 0;
};

/// Runs several generators back to back.
class ChainGenerator final : public Generator {
 public:
  explicit ChainGenerator(std::vector<std::unique_ptr<Generator>> parts);
  bool advance() override;
  SignificantDigits digits(int k) const override;
  std::string value_string() const override;

 private:
  std::vector<std::unique_ptr<Generator>> parts_;
  std::size_t index_ = 0;
};

std::unique_ptr<Generator> make_generator(const SequenceSpec& spec);

/// Drains `gen` into a census of significant-digit `position`.
DigitCensus census_of(Generator& gen, int position = 1);

/// Collects the first significant digit of every remaining term.
std::vector<int> first_digits(Generator& gen);

// Convenience wrappers returning first-digit streams.
std::vector<int> fibonacci_digits(const mpz_class& a1, const mpz_class& a2,
                                  std::uint64_t n_terms, int base = 10);
std::vector<int> prime_digits(std::uint64_t bound, int base = 10);
std::vector<int> alpha_power_digits(const mpz_class& num, const mpz_class& den,
                                    std::uint64_t n_max, int base = 10);
std::vector<int> factorial_digits(std::uint64_t n_max, int base = 10);
std::vector<int> n_power_digits(unsigned long exponent, std::uint64_t n_max,
                                int base = 10);
std::vector<int> pascal_digits(std::uint64_t rows, int base = 10);

}  // namespace benford::seq
