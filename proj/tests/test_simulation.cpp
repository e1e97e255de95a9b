#include <doctest.h>

#include <cmath>
#include <vector>

#include "benford/errors.hpp"
#include "benford/gof.hpp"
#include "benford/philox.hpp"
#include "benford/simulation.hpp"

using namespace benford;
using namespace benford::sim;

namespace {

ProcessSpec lognormal_spec(std::uint64_t walkers = 2000, std::uint64_t steps = 20) {
  ProcessSpec s;
  s.noise = Noise::parse("lognormal:0,1");
  s.walkers = walkers;
  s.steps = steps;
  return s;
}

}  // namespace

TEST_CASE("philox known-answer vectors") {
  using P = Philox4x32;
  CHECK(P::generate({0, 0, 0, 0}, {0, 0}) ==
        P::Counter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(P::generate({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        P::Counter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(P::generate({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        P::Counter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  CHECK(P::to_unit(0, 0) > 0);
  CHECK(P::to_unit(0xffffffff, 0xffffffff) < 1);
}

TEST_CASE("noise descriptors") {
  const Noise n = Noise::parse("lognormal:0,1");
  CHECK(n.family == Noise::Family::lognormal);
  CHECK(n.a == 0.0);
  CHECK(n.b == 1.0);
  CHECK(Noise::parse(n.to_string()).family == n.family);
  CHECK(Noise::parse("uniform:0.5,2").strictly_positive());
  CHECK_FALSE(Noise::parse("uniform:0,1").strictly_positive());
  CHECK_FALSE(Noise::parse("normal:5,1").strictly_positive());
  CHECK(Noise::parse("constant:10").a == 10.0);
  for (const char* bad : {"", "gamma:1,2", "constant", "lognormal:x,1", "uniform:2,1",
                          "lognormal:0,-1", "constant:inf"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Noise::parse(bad), InvalidNoise);
  }
  CHECK(parse_process_kind("mult") == ProcessKind::multiplicative);
  CHECK(parse_process_kind(to_string(ProcessKind::additive)) == ProcessKind::additive);
}

TEST_CASE("spec validation") {
  ProcessSpec s = lognormal_spec();
  for (const char* noise : {"uniform:0,1", "uniform:-1,2", "normal:0,1", "constant:-1", "constant:0"}) {
    s.noise = Noise::parse(noise);
    CHECK_THROWS_AS(run_ensemble(s), InvalidNoise);
  }
  s = lognormal_spec();
  s.steps = 0;
  CHECK_THROWS_AS(validate(s), DomainError);
  s = lognormal_spec();
  s.walkers = 0;
  CHECK_THROWS_AS(validate(s), DomainError);
  s = lognormal_spec();
  s.initial_value = -1;
  CHECK_THROWS_AS(validate(s), DomainError);
  s.kind = ProcessKind::additive;
  s.noise = Noise::parse("normal:0,1");
  CHECK_NOTHROW(validate(s));
}

TEST_CASE("recorded steps") {
  const auto a = recorded_steps(50);
  CHECK(a.size() == 51);
  CHECK(a.front() == 0);
  CHECK(a.back() == 50);
  const auto b = recorded_steps(1000);
  CHECK(b.size() == 101);
  CHECK(b.back() == 1000);
  for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i] > b[i - 1]);
  const auto c = recorded_steps(101);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] > c[i - 1]);
}

TEST_CASE("constant factor of ten keeps every walker on digit 1") {
  ProcessSpec s;
  s.noise = Noise::parse("constant:10");
  s.walkers = 100;
  s.steps = 60;
  const auto frames = run_ensemble(s);
  CHECK(frames.size() == 61);
  for (const auto& f : frames) {
    CHECK(f.census.count(1) == 100);
    CHECK(f.census.sample_size() == 100);
  }
  for (const auto& p : convergence_curve(s)) {
    CHECK(std::fabs(p.d1 - (1 - std::log10(2.0))) < 1e-12);
  }
}

TEST_CASE("constant noise follows exact powers") {
  ProcessSpec s;
  s.noise = Noise::parse("constant:2");
  s.walkers = 3;
  s.steps = 80;
  const auto frames = run_ensemble(s);
  for (const auto& f : frames) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, f.step);
    CHECK(f.census.count(extract_digits(p, 1).first()) == 3);
  }
}

TEST_CASE("base 2 has a single first digit") {
  ProcessSpec s = lognormal_spec(500, 10);
  s.base = 2;
  for (const auto& p : convergence_curve(s)) CHECK(p.d1 == 0.0);
  for (const auto& f : run_ensemble(s)) CHECK(f.census.count(1) == 500);
}

TEST_CASE("runs are deterministic and independent of thread count") {
  ProcessSpec s = lognormal_spec(3001, 15);
  s.seed = 42;
  const auto a = run_ensemble(s);
  const auto b = run_ensemble(s);
  s.threads = 4;
  const auto c = run_ensemble(s);
  REQUIRE(a.size() == b.size());
  REQUIRE(a.size() == c.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].census == b[i].census);
    CHECK(a[i].census == c[i].census);
  }
  ProcessSpec single = s;
  single.threads = 1;
  CHECK(final_state(single) == final_state(s));
  ProcessSpec other = s;
  other.seed = 43;
  CHECK(final_state(other) != final_state(s));
}

TEST_CASE("multiplicative run is brownian motion in log space") {
  ProcessSpec s = lognormal_spec(1000, 30);
  s.initial_value = 3.5;
  s.seed = 7;
  const ProcessSpec twin = log_space_twin(s);
  CHECK(twin.kind == ProcessKind::additive);
  CHECK(twin.noise.family == Noise::Family::normal);
  const auto logs = final_state(s);
  const auto walk = final_state(twin);
  REQUIRE(logs.size() == walk.size());
  for (std::size_t i = 0; i < logs.size(); ++i) CHECK(logs[i] == walk[i]);
  // the twin's additive increments are the original's ln xi
  ProcessSpec one = twin;
  one.walkers = 10;
  one.steps = 1;
  one.initial_value = 0;
  const auto first = final_state(one);
  for (std::uint64_t w = 0; w < 10; ++w) CHECK(first[w] == log_noise(s, w, 1));
}

TEST_CASE("additive walkers with a zero state are excluded") {
  ProcessSpec s;
  s.kind = ProcessKind::additive;
  s.noise = Noise::parse("constant:-1");
  s.initial_value = 2;
  s.walkers = 5;
  s.steps = 3;
  const auto frames = run_ensemble(s);
  CHECK(frames[2].census.exclusions() == 5);
  CHECK(frames[2].census.sample_size() == 0);
  CHECK(frames[3].census.count(1) == 5);  // |-1|
}

TEST_CASE("lognormal convergence curve does not drift upward after t = 10") {
  const auto curve = convergence_curve(lognormal_spec(10000, 50));
  REQUIRE(curve.size() == 51);
  CHECK(curve.front().d1 > 0.5);  // every walker starts at 1
  // least-squares slope of d1 against t over t >= 10, compared with its
  // standard error
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : curve) {
    if (p.step < 10) continue;
    const double x = static_cast<double>(p.step);
    n += 1;
    sx += x;
    sy += p.d1;
    sxx += x * x;
    sxy += x * p.d1;
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icept = (sy - slope * sx) / n;
  double rss = 0;
  for (const auto& p : curve) {
    if (p.step < 10) continue;
    const double r = p.d1 - icept - slope * static_cast<double>(p.step);
    rss += r * r;
  }
  const double se = std::sqrt(rss / (n - 2) / (sxx - sx * sx / n));
  CHECK(slope <= 2 * se);
  for (const auto& p : curve) {
    if (p.step >= 10) CHECK(p.d1 < 0.03);
  }
}

TEST_CASE("additive contrast run stays far from Benford") {
  ProcessSpec s;
  s.kind = ProcessKind::additive;
  s.noise = Noise::parse("uniform:0,1");
  s.walkers = 10000;
  s.steps = 50;
  CHECK(convergence_curve(s).back().d1 > 0.05);
}
