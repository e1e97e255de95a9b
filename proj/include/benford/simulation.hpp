#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "benford/gof.hpp"

namespace benford::sim {

enum class ProcessKind { multiplicative, additive };

const char* to_string(ProcessKind kind) noexcept;
ProcessKind parse_process_kind(std::string_view text);

/// Distribution of the per-step noise xi.
struct Noise {
  enum class Family { constant, uniform, lognormal, normal };

  Family family = Family::lognormal;
  /// constant: (value, -); uniform: (lo, hi); lognormal and normal:
  /// (mu, sigma) of the underlying normal.
  double a = 0.0;
  double b = 1.0;

  /// Parses FAMILY:P1[,P2], e.g. "lognormal:0,1", "uniform:0.5,2",
  /// "constant:10".
  static Noise parse(std::string_view text);
  std::string to_string() const;

  /// True when every draw is > 0.
  bool strictly_positive() const noexcept;
};

struct ProcessSpec {
  ProcessKind kind = ProcessKind::multiplicative;
  Noise noise;
  std::uint64_t steps = 50;
  std::uint64_t walkers = 10'000;
  double initial_value = 1.0;
  int base = 10;
  std::uint64_t seed = 1;
  /// Worker threads; 0 picks the hardware concurrency. Results do not
  /// depend on this value.
  unsigned threads = 1;
};

/// Throws InvalidNoise or DomainError.
void validate(const ProcessSpec& spec);

/// Steps at which censuses are recorded: 0..T when T <= 100, else step 0
/// plus 100 evenly spaced checkpoints ending at T.
std::vector<std::uint64_t> recorded_steps(std::uint64_t steps);

struct CensusFrame {
  std::uint64_t step = 0;
  DigitCensus census;
};

/// First-digit census across all walkers at every recorded step.
/// Deterministic in spec (including the seed).
std::vector<CensusFrame> run_ensemble(const ProcessSpec& spec);

struct CurvePoint {
  std::uint64_t step = 0;
  double d1 = 0.0;
};

/// d1 between each recorded census and log_base(1 + 1/n).
std::vector<CurvePoint> convergence_curve(const ProcessSpec& spec);

/// Walker states after the final step: ln N for multiplicative
/// processes, N for additive ones.
std::vector<double> final_state(const ProcessSpec& spec);

/// Additive twin of a multiplicative spec: same seed and stream, noise
/// ln(xi), initial value ln(N0). Requires lognormal or constant noise.
ProcessSpec log_space_twin(const ProcessSpec& spec);

/// The ln of step `step`'s draw for `walker`, as used by the simulator.
double log_noise(const ProcessSpec& spec, std::uint64_t walker,
                 std::uint64_t step);

}  // namespace benford::sim
