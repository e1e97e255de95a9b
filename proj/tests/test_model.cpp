#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "benford/errors.hpp"
#include "benford/model.hpp"
#include "oracles.hpp"

using namespace benford;

namespace {

// Brute-force marginal of the k-th digit: sum the joint law over every
// k-digit integer m, via log10 differences.
std::vector<double> brute_marginal(int k) {
  std::vector<double> p(10, 0.0);
  long lo = 1;
  for (int i = 1; i < k; ++i) lo *= 10;
  for (long m = lo; m < lo * 10; ++m) {
    p[static_cast<std::size_t>(m % 10)] += std::log10(m + 1.0) - std::log10(static_cast<double>(m));
  }
  return p;
}

}  // namespace

TEST_CASE("first digit probabilities") {
  CHECK(std::fabs(first_digit_prob(1) - 0.3010) < 5e-5);
  CHECK(std::fabs(first_digit_prob(9) - 0.0458) < 5e-5);
  CHECK(first_digit_prob(1, 2) == 1.0);
  CHECK(std::fabs(first_digit_prob(1, 16) - std::log(2.0) / std::log(16.0)) < 1e-15);
  CHECK_THROWS_AS(first_digit_prob(0), DomainError);
  CHECK_THROWS_AS(first_digit_prob(10), DomainError);
  CHECK_THROWS_AS(first_digit_prob(1, 1), DomainError);
}

TEST_CASE("first-digit law is normalized in every base from 2 to 64") {
  for (int b = 2; b <= 64; ++b) {
    const auto dist = first_digit_distribution(b);
    CHECK(dist.probabilities.size() == static_cast<std::size_t>(b - 1));
    double s = 0;
    for (double p : dist.probabilities) {
      CHECK(p > 0);
      s += p;
    }
    CHECK(std::fabs(s - 1.0) < 1e-12);
    const auto ref = oracle::benford(b);
    for (int d = 1; d < b; ++d) CHECK(std::fabs(dist(d) - ref[static_cast<std::size_t>(d - 1)]) < 1e-14);
  }
}

TEST_CASE("joint law") {
  CHECK(std::fabs(joint_prob({1, 2, 9}) - 0.00335) < 5e-6);
  CHECK(std::fabs(joint_prob({1}) - std::log10(2.0)) < 1e-15);
  CHECK(std::fabs(joint_prob({9, 9}) - std::log10(100.0 / 99.0)) < 1e-15);
  CHECK_THROWS_AS(joint_prob({0, 1}), DomainError);
  CHECK_THROWS_AS(joint_prob({1, 10}), DomainError);
  CHECK_THROWS_AS(joint_prob(std::vector<int>{}), DomainError);
}

TEST_CASE("marginal consistency of the joint law") {
  // summing out the last digit recovers the shorter prefix
  for (int m = 1; m < 10000; ++m) {
    std::vector<int> digits;
    for (int v = m; v > 0; v /= 10) digits.insert(digits.begin(), v % 10);
    double s = 0;
    for (int d = 0; d <= 9; ++d) {
      auto longer = digits;
      longer.push_back(d);
      s += joint_prob(longer);
    }
    CHECK(std::fabs(s - joint_prob(digits)) < 1e-12);
  }
}

TEST_CASE("marginal distributions") {
  const auto& m1 = marginal_distribution(1);
  for (int d = 1; d <= 9; ++d) CHECK(std::fabs(m1(d) - first_digit_prob(d)) < 1e-15);
  for (int k = 2; k <= 5; ++k) {
    const auto brute = brute_marginal(k);
    const auto& mk = marginal_distribution(k);
    for (int d = 0; d <= 9; ++d) CHECK(std::fabs(mk(d) - brute[static_cast<std::size_t>(d)]) < 1e-12);
  }
  CHECK(std::fabs(marginal_distribution(2)(0) - 0.11968) < 5e-6);
  for (int k = 1; k <= kMaxPosition; ++k) {
    const auto& p = marginal_distribution(k).probabilities;
    CHECK(std::fabs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(marginal_distribution(0), DomainError);
  CHECK_THROWS_AS(marginal_distribution(kMaxPosition + 1), DomainError);
  CHECK_THROWS_AS(benford_distribution(2, 16), DomainError);
  CHECK(benford_distribution(1, 16).probabilities.size() == 15);
}

TEST_CASE("published moments") {
  const double mean[] = {3.44023696712, 4.18738970693, 4.46776565097, 4.49677537552,
                         4.49967753636, 4.49996775363, 4.49999677536};
  const double var[] = {6.0565126313757, 8.2537786232732, 8.2500943647286, 8.2500009523513,
                        8.2500000095245, 8.2500000000953, 8.2500000000016};
  for (int k = 1; k <= 7; ++k) {
    const Moments m = moments(k);
    CAPTURE(k);
    CHECK(std::fabs(m.mean - mean[k - 1]) < 1e-9);
    CHECK(std::fabs(m.variance - var[k - 1]) < 1e-9);
  }
}

TEST_CASE("moments by two routes agree") {
  for (int k = 1; k <= 6; ++k) {
    const Moments a = moments(k);
    const Moments b = moments_from_joint(k);
    CHECK(std::fabs(a.mean - b.mean) < 1e-12);
    CHECK(std::fabs(a.variance - b.variance) < 1e-11);
  }
  // uniform limits
  CHECK(std::fabs(moments(8).mean - 4.5) < 1e-6);
  CHECK(std::fabs(moments(8).variance - 8.25) < 1e-6);
}

TEST_CASE("distance from uniform") {
  const double published[] = {0.26872666, 0.04702863, 0.00488356, 0.00048858,
                              0.00004886, 0.00000489, 0.00000049};
  for (int k = 1; k <= 7; ++k) {
    CHECK(std::fabs(tvd_from_uniform(k) - published[k - 1]) < 1e-7);
    if (k > 1) CHECK(tvd_from_uniform(k) < tvd_from_uniform(k - 1));
  }
  // for k = 1 the reference is uniform on the support 1..9
  const auto brute = brute_marginal(1);
  double d = 0;
  for (int i = 1; i <= 9; ++i) d += std::fabs(brute[static_cast<std::size_t>(i)] - 1.0 / 9);
  CHECK(std::fabs(tvd_from_uniform(1) - d / 2) < 1e-12);
}

TEST_CASE("digit correlations") {
  struct Entry {
    int i, j;
    double rho;
  };
  const Entry table[] = {{1, 2, 0.0560563}, {1, 3, 0.0059126}, {1, 4, 0.0005916},
                         {1, 5, 0.0000591}, {2, 3, 0.0020566}, {2, 4, 0.0002059},
                         {2, 5, 0.0000205}, {3, 4, 0.0000228}, {3, 5, 0.0000022},
                         {4, 5, 0.0000002}};
  for (const auto& e : table) {
    CAPTURE(e.i);
    CAPTURE(e.j);
    const double r = digit_correlation(e.i, e.j);
    CHECK(std::fabs(r - e.rho) < 1e-6);
    CHECK(r > 0);
    CHECK(r < 1);
  }
  for (int j = 3; j <= 5; ++j) CHECK(digit_correlation(1, j) < digit_correlation(1, j - 1));
  for (int j = 4; j <= 5; ++j) CHECK(digit_correlation(2, j) < digit_correlation(2, j - 1));
  CHECK_THROWS_AS(digit_correlation(2, 2), DomainError);
  CHECK_THROWS_AS(digit_correlation(3, 2), DomainError);
  CHECK_THROWS_AS(digit_correlation(1, 6), DomainError);
}

TEST_CASE("correlation of first two digits by brute force") {
  double ex = 0, ey = 0, exy = 0, exx = 0, eyy = 0;
  for (int m = 10; m < 100; ++m) {
    const double p = std::log10(1.0 + 1.0 / m);
    const double x = m / 10, y = m % 10;
    ex += p * x;
    ey += p * y;
    exy += p * x * y;
    exx += p * x * x;
    eyy += p * y * y;
  }
  const double rho = (exy - ex * ey) / std::sqrt((exx - ex * ex) * (eyy - ey * ey));
  CHECK(std::fabs(digit_correlation(1, 2) - rho) < 1e-12);
}

TEST_CASE("expected counts") {
  const auto c = expected_counts(1, 183);
  CHECK(std::fabs(c[0] - 183 * std::log10(2.0)) < 1e-9);
  const auto one = expected_counts(2, 1);
  for (int d = 0; d <= 9; ++d) CHECK(std::fabs(one[static_cast<std::size_t>(d)] - marginal_distribution(2)(d)) < 1e-15);
  for (int k = 1; k <= 4; ++k) {
    const auto e = expected_counts(k, 1000);
    CHECK(std::fabs(std::accumulate(e.begin(), e.end(), 0.0) - 1000) < 1e-9);
  }
  CHECK(expected_counts(1, 10, 16).size() == 15);
  CHECK_THROWS_AS(expected_counts(1, 0), DomainError);
}
