#include "benford/sequences.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <tuple>

#include "benford/errors.hpp"

namespace benford::seq {
namespace {

mpz_class power(const mpz_class& base, std::uint64_t exp) {
  mpz_class out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

mpz_class power(unsigned long base, std::uint64_t exp) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), base, exp);
  return out;
}

mpz_class ceil_div(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
  std::uint64_t out = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw DomainError("'" + std::string(key) + "' expects a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return out;
}

mpz_class parse_big(std::string_view key, std::string_view text) {
  mpz_class out;
  if (text.empty() || out.set_str(std::string(text), 10) != 0) {
    throw DomainError("'" + std::string(key) + "' expects an integer, got '" +
                      std::string(text) + "'");
  }
  return out;
}

}  // namespace

const char* to_string(Kind kind) noexcept {
  switch (kind) {
    case Kind::fibonacci: return "fibonacci";
    case Kind::primes: return "primes";
    case Kind::power_alpha: return "power-alpha";
    case Kind::factorial: return "factorial";
    case Kind::power_n: return "power-n";
    case Kind::pascal: return "pascal";
  }
  return "?";
}

Kind parse_kind(std::string_view name) {
  std::string key(name);
  std::replace(key.begin(), key.end(), '_', '-');
  for (const Kind k : {Kind::fibonacci, Kind::primes, Kind::power_alpha,
                       Kind::factorial, Kind::power_n, Kind::pascal}) {
    if (key == to_string(k)) return k;
  }
  throw DomainError("unknown sequence kind '" + std::string(name) + "'");
}

std::vector<std::pair<mpz_class, mpz_class>> default_fibonacci_seeds() {
  return {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {2, 5}, {3, 7}, {4, 9}};
}

void validate(const SequenceSpec& spec) {
  if (spec.base < 2) throw DomainError("base must be >= 2");
  switch (spec.kind) {
    case Kind::fibonacci:
      if (spec.seeds.empty()) throw DomainError("fibonacci needs seeds");
      for (const auto& [a1, a2] : spec.seeds) {
        if (a1 < 1 || a2 < 1) throw DomainError("fibonacci seeds must be positive");
      }
      if (spec.terms < 1) throw DomainError("fibonacci needs terms >= 1");
      break;
    case Kind::primes:
      if (spec.bound < 2) throw DomainError("prime bound must be >= 2");
      if (spec.bound > kMaxPrimeBound) {
        throw DomainError("prime bound exceeds " + std::to_string(kMaxPrimeBound));
      }
      break;
    case Kind::power_alpha:
      if (spec.alpha_den < 1 || spec.alpha_num <= spec.alpha_den) {
        throw DomainError("alpha must be a ratio p/q of positive integers with p > q");
      }
      if (spec.n_max < 1) throw DomainError("power-alpha needs n >= 1");
      break;
    case Kind::factorial:
      if (spec.n_max < 1) throw DomainError("factorial needs n >= 1");
      break;
    case Kind::power_n:
      if (spec.exponent < 1) throw DomainError("power-n needs k >= 1");
      if (spec.n_max < 1) throw DomainError("power-n needs n >= 1");
      break;
    case Kind::pascal:
      if (spec.rows < 1) throw DomainError("pascal needs rows >= 1");
      break;
  }
}

std::pair<mpz_class, mpz_class> parse_ratio(std::string_view text) {
  text = trim(text);
  mpq_class q;
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const mpz_class p = parse_big("alpha", trim(text.substr(0, slash)));
    const mpz_class d = parse_big("alpha", trim(text.substr(slash + 1)));
    if (d == 0) throw DomainError("alpha has a zero denominator");
    q = mpq_class(p, d);
    q.canonicalize();
  } else {
    try {
      const ExactDecimal dec = parse_token(text);
      q = to_rational(dec);
      if (dec.sign == Sign::negative) q = -q;
    } catch (const MalformedToken&) {
      throw DomainError("alpha must be p/q or a decimal, got '" + std::string(text) + "'");
    }
  }
  if (q <= 0) throw DomainError("alpha must be positive");
  return {q.get_num(), q.get_den()};
}

SequenceSpec parse_sequence_config(std::string_view text) {
  SequenceSpec spec;
  bool have_kind = false;
  std::optional<mpz_class> a1, a2;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    const std::string_view key = eq == std::string_view::npos ? line : trim(line.substr(0, eq));
    const std::string_view value = eq == std::string_view::npos ? "" : trim(line.substr(eq + 1));
    if (!have_kind) {
      if (eq != std::string_view::npos && key != "kind") {
        throw DomainError("line " + std::to_string(line_no) +
                          ": expected the sequence kind first");
      }
      spec.kind = parse_kind(eq == std::string_view::npos ? line : value);
      have_kind = true;
      continue;
    }
    if (eq == std::string_view::npos) {
      throw DomainError("line " + std::to_string(line_no) + ": expected key=value");
    }
    if (key == "a1") {
      a1 = parse_big(key, value);
    } else if (key == "a2") {
      a2 = parse_big(key, value);
    } else if (key == "terms") {
      spec.terms = parse_count(key, value);
    } else if (key == "below") {
      spec.bound = parse_count(key, value);
    } else if (key == "alpha") {
      std::tie(spec.alpha_num, spec.alpha_den) = parse_ratio(value);
    } else if (key == "n") {
      spec.n_max = parse_count(key, value);
    } else if (key == "k") {
      spec.exponent = static_cast<unsigned long>(parse_count(key, value));
    } else if (key == "rows") {
      spec.rows = parse_count(key, value);
    } else if (key == "base") {
      spec.base = static_cast<int>(parse_count(key, value));
    } else {
      throw DomainError("line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    }
  }
  if (!have_kind) throw DomainError("config names no sequence kind");
  if (spec.kind == Kind::fibonacci) {
    if (a1.has_value() != a2.has_value()) {
      throw DomainError("fibonacci seeds need both a1 and a2");
    }
    spec.seeds = a1 ? std::vector<std::pair<mpz_class, mpz_class>>{{*a1, *a2}}
                    : default_fibonacci_seeds();
    if (spec.terms == 0) spec.terms = kDefaultFibonacciTerms;
  }
  validate(spec);
  return spec;
}

Generator::Generator(int base) : base_(base) {
  if (base < 2) throw DomainError("base must be >= 2");
}

SignificantDigits IntegerGenerator::digits(int k) const {
  return extract_digits(value_, k, base());
}

std::string IntegerGenerator::value_string() const { return value_.get_str(); }

FibonacciGenerator::FibonacciGenerator(mpz_class a1, mpz_class a2,
                                       std::uint64_t terms, int base)
    : IntegerGenerator(base), next_(std::move(a2)), remaining_(terms) {
  value_ = std::move(a1);
  if (value_ < 1 || next_ < 1) throw DomainError("fibonacci seeds must be positive");
}

bool FibonacciGenerator::advance() {
  if (remaining_ == 0) return false;
  --remaining_;
  if (!started_) {
    started_ = true;
    return true;
  }
  mpz_class sum = value_ + next_;
  value_.swap(next_);
  next_.swap(sum);
  return true;
}

PrimeGenerator::PrimeGenerator(std::uint64_t bound, int base)
    : IntegerGenerator(base), bound_(bound) {
  if (bound > kMaxPrimeBound) {
    throw DomainError("prime bound exceeds " + std::to_string(kMaxPrimeBound));
  }
  const std::uint64_t odd_count = bound / 2;  // odd numbers below bound
  composite_.assign(odd_count, false);
  if (odd_count > 0) composite_[0] = true;  // 1
  for (std::uint64_t p = 3; p * p < bound; p += 2) {
    if (composite_[p / 2]) continue;
    for (std::uint64_t m = p * p; m < bound; m += 2 * p) composite_[m / 2] = true;
  }
}

bool PrimeGenerator::advance() {
  if (current_ == 0) {
    if (bound_ <= 2) return false;
    current_ = 2;
  } else {
    std::uint64_t c = current_ == 2 ? 3 : current_ + 2;
    while (c < bound_ && composite_[c / 2]) c += 2;
    if (c >= bound_) return false;
    current_ = c;
  }
  value_ = static_cast<unsigned long>(current_);
  return true;
}

FactorialGenerator::FactorialGenerator(std::uint64_t n_max, int base)
    : IntegerGenerator(base), n_max_(n_max) {
  value_ = 1;
}

bool FactorialGenerator::advance() {
  if (n_ >= n_max_) return false;
  ++n_;
  value_ *= static_cast<unsigned long>(n_);
  return true;
}

PowerGenerator::PowerGenerator(unsigned long exponent, std::uint64_t n_max,
                               int base)
    : IntegerGenerator(base), exponent_(exponent), n_max_(n_max) {
  if (exponent < 1) throw DomainError("power-n needs k >= 1");
}

bool PowerGenerator::advance() {
  if (n_ >= n_max_) return false;
  ++n_;
  mpz_ui_pow_ui(value_.get_mpz_t(), static_cast<unsigned long>(n_), exponent_);
  return true;
}

PascalGenerator::PascalGenerator(std::uint64_t rows, int base)
    : IntegerGenerator(base), rows_(rows) {}

bool PascalGenerator::advance() {
  if (!started_) {
    if (rows_ == 0) return false;
    started_ = true;
    row_.assign(1, mpz_class(1));
  } else if (++r_ > n_) {
    if (n_ + 1 >= rows_) return false;
    ++n_;
    std::vector<mpz_class> next(row_.size() + 1, mpz_class(1));
    for (std::size_t i = 1; i < row_.size(); ++i) next[i] = row_[i - 1] + row_[i];
    row_.swap(next);
    r_ = 0;
  }
  value_ = row_[r_];
  return true;
}

AlphaPowerGenerator::AlphaPowerGenerator(mpz_class num, mpz_class den,
                                         std::uint64_t n_max, int base,
                                         unsigned precision_bits)
    : Generator(base),
      num_(std::move(num)),
      den_(std::move(den)),
      n_max_(n_max),
      bits_(precision_bits) {
  if (den_ < 1 || num_ <= den_) {
    throw DomainError("alpha must be a ratio p/q of positive integers with p > q");
  }
  if (bits_ < 4) throw DomainError("precision must be at least 4 bits");
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  num_ /= g;
  den_ /= g;
  lo_ = mpz_class(1) << bits_;
  hi_ = lo_;
}

void AlphaPowerGenerator::normalize() {
  const mpz_class limit = (mpz_class(1) << bits_) * static_cast<unsigned long>(base());
  const mpz_class b = static_cast<unsigned long>(base());
  while (lo_ >= limit) {
    lo_ /= b;  // floor for non-negative operands
    hi_ = ceil_div(hi_, b);
    ++scale_exp_;
  }
}

void AlphaPowerGenerator::reseed() const {
  const mpz_class p = power(num_, n_);
  const mpz_class q = power(den_, n_);
  const SignificantDigits lead = extract_digits(p, q, 1, base());
  scale_exp_ = lead.exponent;
  const auto b = static_cast<unsigned long>(base());
  mpz_class scaled_num = p << bits_;
  mpz_class scaled_den = q * power(b, static_cast<std::uint64_t>(scale_exp_));
  mpz_fdiv_q(lo_.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
  hi_ = ceil_div(scaled_num, scaled_den);
}

bool AlphaPowerGenerator::advance() {
  if (n_ >= n_max_) return false;
  ++n_;
  lo_ *= num_;
  mpz_fdiv_q(lo_.get_mpz_t(), lo_.get_mpz_t(), den_.get_mpz_t());
  hi_ = ceil_div(hi_ * num_, den_);
  normalize();
  // Keep the interval much narrower than one unit of the precision.
  if (hi_ - lo_ > (mpz_class(1) << (bits_ / 2))) {
    ++fallbacks_;
    reseed();
  }
  return true;
}

SignificantDigits AlphaPowerGenerator::digits(int k) const {
  if (n_ == 0) throw DomainError("advance() has not been called");
  if (k < 1 || k > kMaxDigits) throw DomainError("digit count out of range");
  const auto b = static_cast<unsigned long>(base());
  const mpz_class scale = power(b, static_cast<std::uint64_t>(k - 1));
  const mpz_class lo_digits = (lo_ * scale) >> bits_;
  const mpz_class hi_digits = (hi_ * scale) >> bits_;
  if (lo_digits != hi_digits) {
    ++fallbacks_;
    reseed();
    return extract_digits(power(num_, n_), power(den_, n_), k, base());
  }
  SignificantDigits out;
  out.base = base();
  out.exponent = scale_exp_;
  out.digits.assign(static_cast<std::size_t>(k), 0);
  mpz_class rest = lo_digits;
  for (int i = k - 1; i >= 0; --i) {
    out.digits[static_cast<std::size_t>(i)] =
        static_cast<int>(mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), b));
  }
  return out;
}

std::string AlphaPowerGenerator::value_string() const {
  const mpz_class p = power(num_, n_);
  const mpz_class q = power(den_, n_);
  if (q == 1) return p.get_str();
  return p.get_str() + "/" + q.get_str();
}

ChainGenerator::ChainGenerator(std::vector<std::unique_ptr<Generator>> parts)
    : Generator(parts.empty() ? 10 : parts.front()->base()),
      parts_(std::move(parts)) {}

bool ChainGenerator::advance() {
  while (index_ < parts_.size()) {
    if (parts_[index_]->advance()) return true;
    ++index_;
  }
  return false;
}

SignificantDigits ChainGenerator::digits(int k) const {
  return parts_.at(index_)->digits(k);
}

std::string ChainGenerator::value_string() const {
  return parts_.at(index_)->value_string();
}

std::unique_ptr<Generator> make_generator(const SequenceSpec& spec) {
  validate(spec);
  switch (spec.kind) {
    case Kind::fibonacci: {
      if (spec.seeds.size() == 1) {
        return std::make_unique<FibonacciGenerator>(
            spec.seeds[0].first, spec.seeds[0].second, spec.terms, spec.base);
      }
      std::vector<std::unique_ptr<Generator>> parts;
      for (const auto& [a1, a2] : spec.seeds) {
        parts.push_back(std::make_unique<FibonacciGenerator>(a1, a2, spec.terms, spec.base));
      }
      return std::make_unique<ChainGenerator>(std::move(parts));
    }
    case Kind::primes:
      return std::make_unique<PrimeGenerator>(spec.bound, spec.base);
    case Kind::power_alpha:
      return std::make_unique<AlphaPowerGenerator>(spec.alpha_num, spec.alpha_den,
                                                   spec.n_max, spec.base);
    case Kind::factorial:
      return std::make_unique<FactorialGenerator>(spec.n_max, spec.base);
    case Kind::power_n:
      return std::make_unique<PowerGenerator>(spec.exponent, spec.n_max, spec.base);
    case Kind::pascal:
      return std::make_unique<PascalGenerator>(spec.rows, spec.base);
  }
  throw DomainError("unknown sequence kind");
}

DigitCensus census_of(Generator& gen, int position) {
  DigitCensus out(position, gen.base());
  while (gen.advance()) out.add_digit(gen.digits(position).digits.back());
  return out;
}

std::vector<int> first_digits(Generator& gen) {
  std::vector<int> out;
  while (gen.advance()) out.push_back(gen.digits(1).first());
  return out;
}

std::vector<int> fibonacci_digits(const mpz_class& a1, const mpz_class& a2,
                                  std::uint64_t n_terms, int base) {
  FibonacciGenerator gen(a1, a2, n_terms, base);
  return first_digits(gen);
}

std::vector<int> prime_digits(std::uint64_t bound, int base) {
  PrimeGenerator gen(bound, base);
  return first_digits(gen);
}

std::vector<int> alpha_power_digits(const mpz_class& num, const mpz_class& den,
                                    std::uint64_t n_max, int base) {
  AlphaPowerGenerator gen(num, den, n_max, base);
  return first_digits(gen);
}

std::vector<int> factorial_digits(std::uint64_t n_max, int base) {
  FactorialGenerator gen(n_max, base);
  return first_digits(gen);
}

std::vector<int> n_power_digits(unsigned long exponent, std::uint64_t n_max,
                                int base) {
  PowerGenerator gen(exponent, n_max, base);
  return first_digits(gen);
}

std::vector<int> pascal_digits(std::uint64_t rows, int base) {
  PascalGenerator gen(rows, base);
  return first_digits(gen);
}

}  // namespace benford::seq
