#pragma once

// Reference implementations used only by the tests. They take deliberately
// different routes from the library code.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

inline int char_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  return c - 'a' + 10;
}

// Leading k digits of a positive integer, read off GMP's string conversion.
inline std::vector<int> integer_digits(const mpz_class& v, int k, int base) {
  std::string s = v.get_str(base);
  if (base > 36) {
    // above base 36 gmp switches to 0-9A-Za-z
    std::vector<int> out;
    for (int i = 0; i < k; ++i) {
      if (i >= static_cast<int>(s.size())) {
        out.push_back(0);
        continue;
      }
      const char c = s[static_cast<std::size_t>(i)];
      if (c >= '0' && c <= '9') out.push_back(c - '0');
      else if (c >= 'A' && c <= 'Z') out.push_back(c - 'A' + 10);
      else out.push_back(c - 'a' + 36);
    }
    return out;
  }
  std::vector<int> out;
  for (int i = 0; i < k; ++i) {
    out.push_back(i < static_cast<int>(s.size()) ? char_digit(s[static_cast<std::size_t>(i)]) : 0);
  }
  return out;
}

// Leading k digits of num/den by schoolbook long division.
inline std::vector<int> rational_digits(mpz_class num, const mpz_class& den, int k, int base) {
  mpz_class ip = num / den;
  mpz_class rem = num % den;
  std::vector<int> out;
  if (ip > 0) {
    out = integer_digits(ip, static_cast<int>(ip.get_str(base).size()), base);
  }
  while (static_cast<int>(out.size()) < k) {
    rem *= base;
    const mpz_class q = rem / den;
    rem %= den;
    const int d = static_cast<int>(q.get_si());
    if (out.empty() && d == 0) continue;
    out.push_back(d);
  }
  out.resize(static_cast<std::size_t>(k));
  return out;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

// Benford first-digit probabilities as log10 differences.
inline std::vector<double> benford(int base = 10) {
  std::vector<double> p;
  for (int d = 1; d < base; ++d) {
    p.push_back((std::log(d + 1.0) - std::log(static_cast<double>(d))) / std::log(base));
  }
  return p;
}

// Pearson statistic in count form.
inline double pearson(const std::vector<std::uint64_t>& counts) {
  double n = 0;
  for (auto c : counts) n += static_cast<double>(c);
  const auto p = benford();
  double chi = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double e = n * p[i];
    chi += (static_cast<double>(counts[i]) - e) * (static_cast<double>(counts[i]) - e) / e;
  }
  return chi;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240611);
  return g;
}

}  // namespace oracle
