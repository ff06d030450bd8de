#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "twc/spectra.hpp"
#include "twc/twisted.hpp"
#include "twc/verify.hpp"

using namespace twc;

namespace {

double closed_form_lambda(std::int64_t n, std::int64_t k, std::int64_t product1, std::int64_t d) {
  const double w = 2.0 * std::numbers::pi / static_cast<double>(n);
  const std::int64_t e = oracle::mod(-(k * (k - 1) / 2 % n) * product1 + k * d, n);
  return 0.5 * (std::cos(w * static_cast<double>(d)) + std::cos(w * static_cast<double>(e)));
}

}  // namespace

TEST_CASE("weighted sums") {
  const Modulus n(5);
  CHECK(max_abs_diff(weighted_sum(SumSpec(n, {{1.0, 0, 0}})), ComplexMatrix::identity(5)) < 1e-15);
  for (std::int64_t r = 0; r < 5; ++r) {
    auto ref = oracle::zeros(5, 5);
    const auto s = oracle::shift(5);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) ref[i][j] = 0.25 * (s[i][j] + s[j][i]);
      ref[i][i] += 0.5 * std::cos(2 * std::numbers::pi * r * i / 5.0);
    }
    CHECK(oracle::max_diff(weighted_sum(SumSpec(n, {{0.5, r, 0}, {0.5, 0, 1}})), ref) < 1e-14);
  }
  const auto m = weighted_sum(SumSpec(n, {{0.5, 1, 1}, {0.5, 1, 2}}));
  auto direct = build_M(n, 1, 1);
  direct += build_M(n, 1, 2);
  direct *= 0.5;
  CHECK(max_abs_diff(m, direct) < 1e-15);
  CHECK(hermitian_asymmetry(m) < 1e-15);
  // M(r, s) with s != 0 has a zero diagonal, so only the s = 0 terms contribute
  CHECK(std::abs(trace(m)) < 1e-13);

  CHECK_THROWS_AS(SumSpec(n, {}), std::invalid_argument);
  CHECK_THROWS_AS(SumSpec(n, {{0.6, 1, 1}, {0.6, 1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(SumSpec(n, {{-0.5, 1, 1}, {1.5, 1, 2}}), std::invalid_argument);
}

TEST_CASE("pair norms") {
  const auto rec = pair_norm(Modulus(3), 1, 0, 0, 1);
  CHECK(rec.norm == doctest::Approx((1 + std::sqrt(3.0)) / 4).epsilon(1e-12));
  CHECK(rec.gap == doctest::Approx(1 - (1 + std::sqrt(3.0)) / 4).epsilon(1e-12));
  CHECK(rec.scaled_gap == doctest::Approx(3 * rec.gap));
  CHECK(rec.regime == SlopeRegime::generic);
  CHECK(pair_norm(Modulus(5), 0, 0, 0, 0).norm == doctest::Approx(1.0));

  const Modulus five(5);
  const auto eq = pair_norm(five, 1, 1, 2, 2);
  CHECK(eq.regime == SlopeRegime::equal_slopes);
  double expect = 0.0;
  for (std::int64_t d = 0; d < 5; ++d) expect = std::max(expect, std::abs(closed_form_lambda(5, 2, 1, d)));
  CHECK(eq.norm == doctest::Approx(expect).epsilon(1e-9));
  CHECK(closed_form_lambda(5, 2, 1, 0) == doctest::Approx(0.5 * (1 + std::cos(2 * std::numbers::pi / 5))));
}

TEST_CASE("pair norm symmetries") {
  const Modulus n(7);
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::int64_t> z(0, 6);
  for (int i = 0; i < 30; ++i) {
    const std::int64_t r1 = z(rng), s1 = z(rng), r2 = z(rng), s2 = z(rng);
    const double base = pair_norm(n, r1, s1, r2, s2).norm;
    CHECK(pair_norm(n, r2, s2, r1, s1).norm == doctest::Approx(base).epsilon(1e-11));
    CHECK(pair_norm(n, -r1, -s1, -r2, -s2).norm == doctest::Approx(base).epsilon(1e-11));
  }
}

TEST_CASE("exhaustive scan at n = 5") {
  const Modulus n(5);
  ScanOptions opts;
  opts.mode = ScanMode::exhaustive;
  const auto summary = gap_scan(n, opts);
  CHECK(summary.records.size() == generic_quadruples(n).size());
  std::size_t expected = 0;
  for (int a = 0; a < 625; ++a) {
    const int r1 = a / 125, s1 = a / 25 % 5, r2 = a / 5 % 5, s2 = a % 5;
    expected += (r1 * s2 - r2 * s1) % 5 != 0;
  }
  CHECK(summary.records.size() == expected);
  for (const auto& r : summary.records) CHECK(r.gap > 0.0);
  const auto& worst = summary.records[summary.argmin];
  CHECK(worst.gap == doctest::Approx(summary.min_gap));
  CHECK(summary.min_scaled_gap == doctest::Approx(5 * summary.min_gap));

  opts.threads = 3;
  const auto threaded = gap_scan(n, opts);
  REQUIRE(threaded.records.size() == summary.records.size());
  for (std::size_t i = 0; i < threaded.records.size(); ++i) CHECK(threaded.records[i].norm == summary.records[i].norm);

  CHECK_THROWS_AS(gap_scan(Modulus(17), opts), std::invalid_argument);
}

TEST_CASE("sampled scan is reproducible and independent of thread count") {
  const Modulus n(17);
  ScanOptions opts;
  opts.count = 12;
  opts.seed = 99;
  const auto a = gap_scan(n, opts);
  opts.threads = 4;
  const auto b = gap_scan(n, opts);
  REQUIRE(a.records.size() == 12);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(a.records[i].r1 == b.records[i].r1);
    CHECK(a.records[i].s2 == b.records[i].s2);
    CHECK(a.records[i].norm == b.records[i].norm);
    CHECK(!equal_slopes(n, a.records[i].r1, a.records[i].s1, a.records[i].r2, a.records[i].s2));
  }
  opts.seed = 100;
  const auto c = gap_scan(n, opts);
  bool differs = false;
  for (std::size_t i = 0; i < 12; ++i) differs = differs || c.records[i].r1 != a.records[i].r1 || c.records[i].s1 != a.records[i].s1;
  CHECK(differs);
}

TEST_CASE("diagonal case") {
  const Modulus n(7);
  const auto clock = build_clock(n);
  std::vector<Complex> r_diag(7);
  for (std::size_t j = 0; j < 7; ++j) r_diag[j] = clock(j, j);
  const auto rec = diagonal_case_norm(n, 1, DiagonalSpec(n, r_diag), 1);
  CHECK(rec.norm == doctest::Approx(pair_norm(n, 1, 0, 1, 1).norm).epsilon(1e-11));

  const Modulus three(3);
  const auto id = diagonal_case_norm(three, 1, DiagonalSpec(three, std::vector<Complex>(3, 1.0)), 1);
  auto ref = oracle::zeros(3, 3);
  const auto s = oracle::shift(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ref[i][j] = 0.25 * (s[i][j] + s[j][i]);
  ref[0][0] += 0.5;
  ref[1][1] -= 0.25;
  ref[2][2] -= 0.25;
  const auto roots = oracle::hermitian_roots(ref);
  double top = 0.0;
  for (double x : roots) top = std::max(top, std::abs(x));
  CHECK(id.norm == doctest::Approx(top).epsilon(1e-10));
  CHECK(top == doctest::Approx((1 + std::sqrt(3.0)) / 4).epsilon(1e-10));

  std::mt19937_64 rng(8);
  for (std::int64_t nv : {7, 11}) {
    const Modulus m(nv);
    for (int i = 0; i < 100; ++i) {
      const std::int64_t r1 = 1 + i % (nv - 1), sv = 1 + (i * 3) % (nv - 1);
      CHECK(diagonal_case_norm(m, r1, DiagonalSpec(m, random_unit_diagonal(rng, m.size())), sv).gap > 0.0);
    }
  }
  CHECK_THROWS_AS(diagonal_case_norm(n, 1, DiagonalSpec(n, r_diag), 0), ModulusError);
}

TEST_CASE("averaging bound") {
  const Modulus three(3);
  const auto small = averaging_bound_check(three, {{1, 0}, {0, 1}}, {{0, 1}});
  REQUIRE(small.pair_norms.size() == 1);
  CHECK(small.pair_norms[0] == doctest::Approx((1 + std::sqrt(3.0)) / 2).epsilon(1e-12));
  CHECK_FALSE(small.all_pairs_literal_ok);
  CHECK(small.aggregate_within_measured);

  const Modulus eleven(11);
  const auto four = averaging_bound_check(eleven, {{1, 0}, {0, 1}, {1, 1}, {2, 5}}, {{0, 1}, {2, 3}});
  CHECK(four.d == 4);
  CHECK(four.aggregate_within_measured);
  CHECK(four.literal_bound == doctest::Approx(1 - 4.0 / 44));
  double gaps = 0;
  for (double pn : four.pair_norms) gaps += 2 - pn;
  CHECK(four.measured_bound == doctest::Approx(1 - gaps / 4));

  const auto same = averaging_bound_check(eleven, {{2, 3}, {2, 3}, {2, 3}}, {});
  CHECK(same.aggregate_norm == doctest::Approx(operator_norm_hermitian(build_M(eleven, 2, 3))).epsilon(1e-12));

  CHECK_THROWS_AS(averaging_bound_check(eleven, {{1, 1}, {2, 2}}, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(averaging_bound_check(eleven, {{1, 0}, {0, 1}, {1, 1}}, {{0, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(averaging_bound_check(eleven, {{1, 0}, {0, 1}}, {{0, 2}}), std::invalid_argument);
}

TEST_CASE("equal slope spectrum") {
  const Modulus five(5);
  const auto sp = equal_slope_spectrum(five, 1, 1, 2, 2);
  CHECK(sp.k == 2);
  CHECK(sp.product == 1);
  CHECK(sp.lambdas[0] == doctest::Approx(0.5 * (1 + std::cos(2 * std::numbers::pi / 5))).epsilon(1e-14));
  for (std::int64_t d = 0; d < 5; ++d) CHECK(sp.lambdas[d] == doctest::Approx(closed_form_lambda(5, 2, 1, d)));

  const Modulus seven(7);
  const auto same = equal_slope_spectrum(seven, 3, 4, 3, 4);
  for (std::int64_t d = 0; d < 7; ++d) CHECK(same.lambdas[d] == doctest::Approx(std::cos(2 * std::numbers::pi * d / 7)));

  auto closed = equal_slope_spectrum(seven, 1, 2, 3, 6).lambdas;
  auto numeric = hermitian_eigenvalues(weighted_sum(SumSpec(seven, {{0.5, 1, 2}, {0.5, 3, 6}})));
  std::sort(closed.begin(), closed.end());
  std::sort(numeric.begin(), numeric.end());
  for (std::size_t i = 0; i < 7; ++i) CHECK(std::abs(closed[i] - numeric[i]) < 1e-9);

  CHECK_THROWS_AS(equal_slope_spectrum(seven, 1, 2, 3, 5), std::invalid_argument);
  CHECK_THROWS_AS(equal_slope_spectrum(seven, 0, 2, 0, 4), std::invalid_argument);
}

TEST_CASE("equal slope grid") {
  const Modulus five(5);
  const auto cells = equal_slope_grid(five, 0.5);
  REQUIRE(cells.size() == 16);
  for (const auto& c : cells) {
    CHECK(c.degenerate == (c.k == 1));
    CHECK(c.k_times_product == five.mul(c.k, c.product));
    CHECK(c.marked == (c.norm > 0.5));
    // (r1, s1) = (1, product / k^2) and (r2, s2) = (k, product / k)
    const std::int64_t kinv = five.inverse(c.k);
    const std::int64_t s1 = five.mul(c.product, five.mul(kinv, kinv));
    const auto rec = pair_norm(five, 1, s1, c.k, five.mul(c.k, s1));
    CHECK(five.mul(c.k, five.mul(c.k, s1)) == c.product);
    CHECK(c.norm == doctest::Approx(rec.norm).epsilon(1e-9));
  }
  for (const auto& c : equal_slope_grid(five, 0.0)) CHECK(c.marked);

  const auto s = summarize_grid(five, cells);
  CHECK(s.cells == 16);
  CHECK(s.non_degenerate == 12);

  CHECK(threshold_value(Modulus(401), ThresholdPreset::caption) == doctest::Approx(1 - 1.0 / 401));
  CHECK(threshold_value(Modulus(401), ThresholdPreset::text) == doctest::Approx(std::cos(2 * std::numbers::pi / 401)));

  const Modulus big(31);
  const auto one = equal_slope_grid(big, 0.9, 1);
  const auto many = equal_slope_grid(big, 0.9, 4);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < one.size(); ++i) CHECK(one[i].norm == many[i].norm);
}

TEST_CASE("scan regime strings") {
  CHECK(std::string(to_string(SlopeRegime::generic)) == "generic");
  CHECK(std::string(to_string(SlopeRegime::equal_slopes)) == "equal_slopes");
}
