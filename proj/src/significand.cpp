#include "benford/significand.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "benford/errors.hpp"

namespace benford {
namespace {

// Exponents beyond this are rejected by the parser; decimal shifts beyond
// kMaxExactShift are rejected by the exact (non base-10) conversion.
constexpr std::int64_t kMaxExponent = 1'000'000'000'000'000;
constexpr std::int64_t kMaxExactShift = 1'000'000;

bool is_digit(char c) { return c >= '0' && c <= '9'; }

[[noreturn]] void malformed(std::string_view text, const char* why) {
  throw MalformedToken("malformed numeric token '" + std::string(text) +
                       "': " + why);
}

void check_request(int k, int base) {
  if (k < 1 || k > kMaxDigits) {
    throw DomainError("digit count k must lie in [1, " +
                      std::to_string(kMaxDigits) + "], got " +
                      std::to_string(k));
  }
  if (base < 2) {
    throw DomainError("base must be >= 2, got " + std::to_string(base));
  }
}

mpz_class power(unsigned long base, std::uint64_t exp) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

// num >= den * base^e, for either sign of e.
bool at_least_power(const mpz_class& num, const mpz_class& den,
                    unsigned long base, std::int64_t e) {
  if (e >= 0) return num >= den * power(base, static_cast<std::uint64_t>(e));
  return num * power(base, static_cast<std::uint64_t>(-e)) >= den;
}

// Largest e with den * base^e <= num (num, den > 0).
std::int64_t floor_log_ratio(const mpz_class& num, const mpz_class& den,
                             unsigned long base) {
  const double bits = static_cast<double>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                      static_cast<double>(mpz_sizeinbase(den.get_mpz_t(), 2));
  auto e = static_cast<std::int64_t>(
      std::floor(bits / std::log2(static_cast<double>(base))));
  while (!at_least_power(num, den, base, e)) --e;
  while (at_least_power(num, den, base, e + 1)) ++e;
  return e;
}

}  // namespace

bool ExactDecimal::is_zero() const noexcept {
  return std::all_of(digits.begin(), digits.end(),
                     [](char c) { return c == '0'; });
}

ExactDecimal parse_token(std::string_view text, bool thousands_separators) {
  ExactDecimal out;
  std::size_t pos = 0;
  const std::size_t n = text.size();

  if (pos < n && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') out.sign = Sign::negative;
    ++pos;
  }

  std::string integer;
  const std::size_t run_start = pos;
  while (pos < n && is_digit(text[pos])) integer.push_back(text[pos++]);
  if (thousands_separators && pos < n && text[pos] == ',') {
    if (integer.empty() || integer.size() > 3) {
      malformed(text, "bad digit grouping");
    }
    while (pos < n && text[pos] == ',') {
      ++pos;
      std::size_t group = 0;
      while (pos < n && is_digit(text[pos])) {
        integer.push_back(text[pos++]);
        ++group;
      }
      if (group != 3) malformed(text, "bad digit grouping");
    }
  }
  const bool has_integer = pos > run_start;

  std::string fraction;
  if (pos < n && text[pos] == '.') {
    ++pos;
    while (pos < n && is_digit(text[pos])) fraction.push_back(text[pos++]);
    if (fraction.empty()) malformed(text, "no digits after '.'");
  }
  if (!has_integer && fraction.empty()) malformed(text, "no digits");

  std::int64_t exp10 = 0;
  if (pos < n && (text[pos] == 'e' || text[pos] == 'E')) {
    ++pos;
    bool negative = false;
    if (pos < n && (text[pos] == '+' || text[pos] == '-')) {
      negative = text[pos] == '-';
      ++pos;
    }
    if (pos >= n || !is_digit(text[pos])) {
      malformed(text, "exponent has no digits");
    }
    while (pos < n && is_digit(text[pos])) {
      exp10 = exp10 * 10 + (text[pos++] - '0');
      if (exp10 > kMaxExponent) malformed(text, "exponent out of range");
    }
    if (negative) exp10 = -exp10;
  }
  if (pos != n) malformed(text, "unexpected character");

  const auto first_nonzero = integer.find_first_not_of('0');
  if (first_nonzero == std::string::npos) {
    integer.clear();
  } else {
    integer.erase(0, first_nonzero);
  }
  out.digits = integer + fraction;
  out.exponent = static_cast<std::int64_t>(integer.size()) + exp10;
  if (out.digits.empty()) {
    out.digits = "0";
    out.exponent = 0;
  }
  return out;
}

std::string format_token(const ExactDecimal& value) {
  std::string out;
  if (value.sign == Sign::negative) out.push_back('-');
  out.push_back('.');
  out += value.digits;
  out.push_back('e');
  out += std::to_string(value.exponent);
  return out;
}

std::string to_scientific(const ExactDecimal& value) {
  const auto lead = value.digits.find_first_not_of('0');
  if (lead == std::string::npos) return "0";
  std::string out;
  if (value.sign == Sign::negative) out.push_back('-');
  out.push_back(value.digits[lead]);
  const std::string rest = value.digits.substr(lead + 1);
  if (!rest.empty()) {
    out.push_back('.');
    out += rest;
  }
  const std::int64_t e =
      value.exponent - 1 - static_cast<std::int64_t>(lead);
  if (e != 0) out += "e" + std::to_string(e);
  return out;
}

mpq_class to_rational(const ExactDecimal& value) {
  mpz_class digits(value.digits, 10);
  const std::int64_t shift =
      value.exponent - static_cast<std::int64_t>(value.digits.size());
  if (shift > kMaxExactShift || shift < -kMaxExactShift) {
    throw DomainError("decimal exponent too large for exact conversion");
  }
  mpq_class out;
  if (shift >= 0) {
    out = mpq_class(digits * power(10, static_cast<std::uint64_t>(shift)));
  } else {
    out = mpq_class(digits, power(10, static_cast<std::uint64_t>(-shift)));
    out.canonicalize();
  }
  return out;
}

SignificantDigits extract_digits(const ExactDecimal& value, int k, int base) {
  check_request(k, base);
  if (base != 10) {
    const mpq_class q = to_rational(value);
    return extract_digits(q.get_num(), q.get_den(), k, base);
  }
  const auto lead = value.digits.find_first_not_of('0');
  if (lead == std::string::npos) throw ZeroValue();

  SignificantDigits out;
  out.base = 10;
  out.exponent = value.exponent - 1 - static_cast<std::int64_t>(lead);
  out.digits.reserve(static_cast<std::size_t>(k));
  for (std::size_t i = lead; i < value.digits.size() && out.digits.size() <
                                 static_cast<std::size_t>(k);
       ++i) {
    out.digits.push_back(value.digits[i] - '0');
  }
  out.digits.resize(static_cast<std::size_t>(k), 0);
  return out;
}

SignificantDigits extract_digits(const mpz_class& value, int k, int base) {
  return extract_digits(value, mpz_class(1), k, base);
}

SignificantDigits extract_digits(const mpz_class& num, const mpz_class& den,
                                 int k, int base) {
  check_request(k, base);
  const mpz_class a = abs(num);
  const mpz_class b = abs(den);
  if (b == 0) throw DomainError("zero denominator");
  if (a == 0) throw ZeroValue();

  const auto ubase = static_cast<unsigned long>(base);
  const std::int64_t e = floor_log_ratio(a, b, ubase);

  // Scale so the quotient holds exactly k base-`base` digits.
  const std::int64_t shift = k - 1 - e;
  mpz_class scaled;
  if (shift >= 0) {
    scaled = a * power(ubase, static_cast<std::uint64_t>(shift)) / b;
  } else {
    scaled = a / (b * power(ubase, static_cast<std::uint64_t>(-shift)));
  }

  SignificantDigits out;
  out.base = base;
  out.exponent = e;
  out.digits.assign(static_cast<std::size_t>(k), 0);
  for (int i = k - 1; i >= 0; --i) {
    out.digits[static_cast<std::size_t>(i)] = static_cast<int>(
        mpz_fdiv_q_ui(scaled.get_mpz_t(), scaled.get_mpz_t(), ubase));
  }
  return out;
}

std::int64_t floor_log(const mpz_class& value, unsigned long base) {
  if (value < 1) throw DomainError("floor_log requires value >= 1");
  if (base < 2) throw DomainError("base must be >= 2");
  return floor_log_ratio(value, mpz_class(1), base);
}

}  // namespace benford
