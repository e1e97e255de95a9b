#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace benford {

/// Largest number of significant digits a single extraction may request.
inline constexpr int kMaxDigits = 18;

enum class Sign { positive, negative };

/// A numeric token held exactly as written, in base 10.
///
/// The represented value is `sign * 0.digits * 10^exponent`: the first
/// character of `digits` sits immediately right of the radix point.
/// Leading zeros of the integer part are dropped when parsing; every
/// other digit (including trailing zeros and zeros after the radix
/// point) is preserved.
struct ExactDecimal {
  Sign sign = Sign::positive;
  std::string digits = "0";
  std::int64_t exponent = 0;

  bool is_zero() const noexcept;

  friend bool operator==(const ExactDecimal&, const ExactDecimal&) = default;
};

/// The first k significant digits of a value in some base.
struct SignificantDigits {
  int base = 10;
  std::vector<int> digits;
  /// Power of `base` carried by the leading digit.
  std::int64_t exponent = 0;

  int first() const { return digits.front(); }

  friend bool operator==(const SignificantDigits&,
                         const SignificantDigits&) = default;
};

/// Parses a numeric token.
///
/// Grammar: optional `+`/`-`, then either a digit run (optionally grouped
/// by `,` every three digits when `thousands_separators` is set) with an
/// optional `.digits` fraction, or `.digits` alone; then an optional
/// exponent `e|E[+-]digits`. Throws MalformedToken on anything else.
ExactDecimal parse_token(std::string_view text,
                         bool thousands_separators = false);

/// Canonical token for `value` that parse_token reads back unchanged,
/// e.g. `.6626e-33`.
std::string format_token(const ExactDecimal& value);

/// Conventional scientific rendering, e.g. `6.626e-34`. Not canonical:
/// leading zeros of `digits` are not reproduced.
std::string to_scientific(const ExactDecimal& value);

/// First k significant digits of |value| in `base`.
///
/// Base 10 reads the digit string directly; any other base converts an
/// exact rational scaling of the decimal, never a floating-point log.
/// Throws ZeroValue if value is zero, DomainError if k is outside
/// [1, kMaxDigits] or base < 2.
SignificantDigits extract_digits(const ExactDecimal& value, int k,
                                 int base = 10);

/// Same contract for an arbitrary-precision integer (sign ignored).
SignificantDigits extract_digits(const mpz_class& value, int k, int base = 10);

/// Same contract for the positive rational num/den (signs ignored).
SignificantDigits extract_digits(const mpz_class& num, const mpz_class& den,
                                 int k, int base = 10);

/// Exact |value| as a reduced rational.
mpq_class to_rational(const ExactDecimal& value);

/// Largest e with base^e <= value, for value >= 1.
std::int64_t floor_log(const mpz_class& value, unsigned long base);

}  // namespace benford
