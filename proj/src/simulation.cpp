#include "benford/simulation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>
#include <thread>

#include "benford/errors.hpp"
#include "benford/model.hpp"
#include "benford/philox.hpp"
#include "benford/significand.hpp"

namespace benford::sim {
namespace {

// Fractional log-digits closer than this to a digit boundary are
// recomputed before classification.
constexpr double kBoundaryGuard = 1e-12;

struct Draw {
  double value;
  double log_value;
};

Draw draw(const ProcessSpec& spec, std::uint64_t walker, std::uint64_t step) {
  const Noise& noise = spec.noise;
  if (noise.family == Noise::Family::constant) {
    return {noise.a, std::log(noise.a)};
  }
  const auto out = Philox4x32::generate(
      {static_cast<std::uint32_t>(walker), static_cast<std::uint32_t>(walker >> 32),
       static_cast<std::uint32_t>(step), static_cast<std::uint32_t>(step >> 32)},
      {static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32)});
  const double u1 = Philox4x32::to_unit(out[0], out[1]);
  const double u2 = Philox4x32::to_unit(out[2], out[3]);
  switch (noise.family) {
    case Noise::Family::uniform: {
      const double x = noise.a + (noise.b - noise.a) * u1;
      return {x, std::log(x)};
    }
    case Noise::Family::lognormal:
    case Noise::Family::normal: {
      // Box-Muller, cosine branch.
      const double z = std::sqrt(-2.0 * std::log(u1)) *
                       std::cos(2.0 * std::numbers::pi * u2);
      const double x = noise.a + noise.b * z;
      if (noise.family == Noise::Family::normal) return {x, std::log(x)};
      return {std::exp(x), x};
    }
    case Noise::Family::constant:
      break;
  }
  return {noise.a, std::log(noise.a)};
}

double parse_number(std::string_view text, std::string_view whole) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw InvalidNoise("bad noise parameter in '" + std::string(whole) + "'");
  }
  return v;
}

class DigitClassifier {
 public:
  explicit DigitClassifier(int base)
      : base_(base), log_base_(std::log(static_cast<double>(base))) {
    bounds_.reserve(static_cast<std::size_t>(base) + 1);
    for (int d = 0; d <= base; ++d) {
      bounds_.push_back(d == 0 ? 0.0 : std::log(static_cast<double>(d)) / log_base_);
    }
  }

  // Digit of exp(ln_value), or 0 when it sits within the guard band.
  int from_log(double ln_value) const {
    const double y = ln_value / log_base_;
    const double frac = y - std::floor(y);
    int d = static_cast<int>(std::floor(std::exp(frac * log_base_)));
    d = std::clamp(d, 1, base_ - 1);
    // Correct an off-by-one from exp() rounding.
    while (d > 1 && frac < bounds_[static_cast<std::size_t>(d)]) --d;
    while (d < base_ - 1 && frac >= bounds_[static_cast<std::size_t>(d) + 1]) ++d;
    const double gap = std::min(frac - bounds_[static_cast<std::size_t>(d)],
                                bounds_[static_cast<std::size_t>(d) + 1] - frac);
    return gap < kBoundaryGuard ? 0 : d;
  }

  int from_log_extended(long double ln_value) const {
    const long double y = ln_value / std::log(static_cast<long double>(base_));
    const long double frac = y - std::floor(y);
    int d = static_cast<int>(std::floor(std::exp(frac * std::log(static_cast<long double>(base_)))));
    return std::clamp(d, 1, base_ - 1);
  }

  int base() const noexcept { return base_; }

 private:
  int base_;
  double log_base_;
  std::vector<double> bounds_;
};

struct ChunkResult {
  std::vector<DigitCensus> frames;
  std::vector<double> final_state;
};

// Accumulated ln N of one walker, summed in extended precision.
long double extended_log_state(const ProcessSpec& spec, std::uint64_t walker,
                               std::uint64_t step) {
  long double sum = std::log(static_cast<long double>(spec.initial_value));
  long double carry = 0.0L;
  for (std::uint64_t t = 1; t <= step; ++t) {
    const long double x = draw(spec, walker, t).log_value - carry;
    const long double next = sum + x;
    carry = (next - sum) - x;
    sum = next;
  }
  return sum;
}

int classify(const ProcessSpec& spec, const DigitClassifier& cls,
             double state, std::uint64_t walker, std::uint64_t step) {
  if (spec.kind == ProcessKind::multiplicative) {
    const int d = cls.from_log(state);
    if (d != 0) return d;
    return cls.from_log_extended(extended_log_state(spec, walker, step));
  }
  const double magnitude = std::fabs(state);
  const int d = cls.from_log(std::log(magnitude));
  if (d != 0) return d;
  const mpq_class exact(magnitude);
  return extract_digits(exact.get_num(), exact.get_den(), 1, cls.base()).first();
}

ChunkResult run_chunk(const ProcessSpec& spec, std::uint64_t first,
                      std::uint64_t last,
                      const std::vector<std::uint64_t>& recorded) {
  ChunkResult out;
  out.frames.assign(recorded.size(), DigitCensus(1, spec.base));
  const DigitClassifier cls(spec.base);
  const bool mult = spec.kind == ProcessKind::multiplicative;
  std::vector<double> state(last - first,
                            mult ? std::log(spec.initial_value) : spec.initial_value);

  // Constant noise moves every walker identically, so each recorded
  // step is classified once from the exact rational value.
  const bool constant = spec.noise.family == Noise::Family::constant;
  const mpq_class c0(spec.initial_value);
  const mpq_class xi(spec.noise.a);
  mpq_class exact = c0;

  std::size_t next_frame = 0;
  for (std::uint64_t t = 0; t <= spec.steps; ++t) {
    if (constant && t > 0) exact = mult ? mpq_class(exact * xi) : mpq_class(exact + xi);
    if (constant && next_frame < recorded.size() && recorded[next_frame] == t) {
      DigitCensus& census = out.frames[next_frame++];
      if (exact == 0) {
        census.add_exclusion(last - first);
      } else {
        census.add_digit(
            extract_digits(exact.get_num(), exact.get_den(), 1, spec.base).first(),
            last - first);
      }
    }
    if (t > 0) {
      for (std::uint64_t w = first; w < last; ++w) {
        const Draw x = draw(spec, w, t);
        state[w - first] += mult ? x.log_value : x.value;
      }
    }
    if (!constant && next_frame < recorded.size() && recorded[next_frame] == t) {
      DigitCensus& census = out.frames[next_frame++];
      for (std::uint64_t w = first; w < last; ++w) {
        const double s = state[w - first];
        if (!mult && s == 0.0) {
          census.add_exclusion();
        } else {
          census.add_digit(classify(spec, cls, s, w, t));
        }
      }
    }
  }
  out.final_state = std::move(state);
  return out;
}

std::vector<ChunkResult> run_all(const ProcessSpec& spec) {
  validate(spec);
  const auto recorded = recorded_steps(spec.steps);
  unsigned threads = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                       : spec.threads;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, spec.walkers));

  std::vector<ChunkResult> results(threads);
  std::vector<std::thread> pool;
  const std::uint64_t per = spec.walkers / threads;
  const std::uint64_t extra = spec.walkers % threads;
  std::uint64_t begin = 0;
  for (unsigned i = 0; i < threads; ++i) {
    const std::uint64_t end = begin + per + (i < extra ? 1 : 0);
    if (i + 1 == threads) {
      results[i] = run_chunk(spec, begin, end, recorded);
    } else {
      pool.emplace_back([&, i, begin, end] { results[i] = run_chunk(spec, begin, end, recorded); });
    }
    begin = end;
  }
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace

const char* to_string(ProcessKind kind) noexcept {
  return kind == ProcessKind::multiplicative ? "mult" : "add";
}

ProcessKind parse_process_kind(std::string_view text) {
  if (text == "mult" || text == "multiplicative") return ProcessKind::multiplicative;
  if (text == "add" || text == "additive") return ProcessKind::additive;
  throw DomainError("process kind must be 'mult' or 'add', got '" + std::string(text) + "'");
}

Noise Noise::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view family = text.substr(0, colon);
  Noise out;
  if (family == "lognormal") {
    out.family = Family::lognormal;
  } else if (family == "normal") {
    out.family = Family::normal;
  } else if (family == "uniform") {
    out.family = Family::uniform;
  } else if (family == "constant") {
    out.family = Family::constant;
  } else {
    throw InvalidNoise("unknown noise family '" + std::string(family) + "'");
  }
  if (colon == std::string_view::npos) {
    if (out.family == Family::constant) {
      throw InvalidNoise("constant noise needs a value, e.g. constant:10");
    }
    out.a = out.family == Family::uniform ? 0.5 : 0.0;
    out.b = out.family == Family::uniform ? 1.5 : 1.0;
    return out;
  }
  const std::string_view params = text.substr(colon + 1);
  const auto comma = params.find(',');
  out.a = parse_number(params.substr(0, comma), text);
  if (out.family == Family::constant) {
    if (comma != std::string_view::npos) {
      throw InvalidNoise("constant noise takes one parameter");
    }
    out.b = 0.0;
    return out;
  }
  if (comma == std::string_view::npos) {
    throw InvalidNoise("noise '" + std::string(text) + "' needs two parameters");
  }
  out.b = parse_number(params.substr(comma + 1), text);
  if (out.family == Family::uniform && !(out.a < out.b)) {
    throw InvalidNoise("uniform noise needs lo < hi");
  }
  if ((out.family == Family::lognormal || out.family == Family::normal) && out.b < 0) {
    throw InvalidNoise("sigma must be >= 0");
  }
  return out;
}

std::string Noise::to_string() const {
  switch (family) {
    case Family::constant: return fmt::format("constant:{}", a);
    case Family::uniform: return fmt::format("uniform:{},{}", a, b);
    case Family::lognormal: return fmt::format("lognormal:{},{}", a, b);
    case Family::normal: return fmt::format("normal:{},{}", a, b);
  }
  return "?";
}

bool Noise::strictly_positive() const noexcept {
  switch (family) {
    case Family::constant:
    case Family::uniform:
      return a > 0;
    case Family::lognormal:
      return true;
    case Family::normal:
      return false;
  }
  return false;
}

void validate(const ProcessSpec& spec) {
  if (spec.kind == ProcessKind::multiplicative && !spec.noise.strictly_positive()) {
    throw InvalidNoise("multiplicative noise must be strictly positive: " +
                       spec.noise.to_string());
  }
  if (spec.steps < 1) throw DomainError("steps must be >= 1");
  if (spec.walkers < 1) throw DomainError("walkers must be >= 1");
  if (!std::isfinite(spec.initial_value)) {
    throw DomainError("initial value must be finite");
  }
  if (spec.kind == ProcessKind::multiplicative && !(spec.initial_value > 0)) {
    throw DomainError("multiplicative processes need a positive initial value");
  }
  if (spec.base < 2) throw DomainError("base must be >= 2");
}

std::vector<std::uint64_t> recorded_steps(std::uint64_t steps) {
  std::vector<std::uint64_t> out;
  if (steps <= 100) {
    for (std::uint64_t t = 0; t <= steps; ++t) out.push_back(t);
    return out;
  }
  out.push_back(0);
  for (std::uint64_t i = 1; i <= 100; ++i) out.push_back((i * steps + 50) / 100);
  return out;
}

std::vector<CensusFrame> run_ensemble(const ProcessSpec& spec) {
  const auto results = run_all(spec);
  const auto recorded = recorded_steps(spec.steps);
  std::vector<CensusFrame> out;
  out.reserve(recorded.size());
  for (std::size_t i = 0; i < recorded.size(); ++i) {
    DigitCensus census(1, spec.base);
    for (const auto& r : results) census.merge(r.frames[i]);
    out.push_back({recorded[i], std::move(census)});
  }
  return out;
}

std::vector<CurvePoint> convergence_curve(const ProcessSpec& spec) {
  std::vector<CurvePoint> out;
  for (const auto& frame : run_ensemble(spec)) {
    out.push_back({frame.step, tvd_benford(frame.census)});
  }
  return out;
}

std::vector<double> final_state(const ProcessSpec& spec) {
  std::vector<double> out;
  out.reserve(spec.walkers);
  for (auto& r : run_all(spec)) {
    out.insert(out.end(), r.final_state.begin(), r.final_state.end());
  }
  return out;
}

ProcessSpec log_space_twin(const ProcessSpec& spec) {
  if (spec.kind != ProcessKind::multiplicative) {
    throw DomainError("log-space twin needs a multiplicative spec");
  }
  ProcessSpec twin = spec;
  twin.kind = ProcessKind::additive;
  switch (spec.noise.family) {
    case Noise::Family::lognormal:
      twin.noise.family = Noise::Family::normal;
      break;
    case Noise::Family::constant:
      twin.noise.a = std::log(spec.noise.a);
      break;
    default:
      throw DomainError("log-space twin needs lognormal or constant noise");
  }
  twin.initial_value = std::log(spec.initial_value);
  return twin;
}

double log_noise(const ProcessSpec& spec, std::uint64_t walker,
                 std::uint64_t step) {
  return draw(spec, walker, step).log_value;
}

}  // namespace benford::sim
