#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "twc/heisenberg.hpp"
#include "twc/spectra.hpp"
#include "twc/twisted.hpp"

using namespace twc;

namespace {

HeisenbergElement random_element(std::mt19937_64& rng, const Modulus& n) {
  std::uniform_int_distribution<std::int64_t> z(0, n.value() - 1);
  return {n, z(rng), z(rng), z(rng)};
}

HDElement random_hd(std::mt19937_64& rng, const HeisenbergGroup& g) {
  std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
  return index_element(g, pick(rng));
}

}  // namespace

TEST_CASE("group law in H(n)") {
  const Modulus n(5);
  const HeisenbergElement x(n, 1, 0, 0), y(n, 0, 1, 0);
  CHECK(h_mul(x, y) == HeisenbergElement(n, 1, 1, 1));
  CHECK(h_mul(h_mul(x, y), h_mul(h_inv(x), h_inv(y))) == HeisenbergElement(n, 0, 0, 1));
  CHECK(h_inv(HeisenbergElement::identity(n)) == HeisenbergElement::identity(n));
  CHECK(h_inv(x) == HeisenbergElement(n, 4, 0, 0));

  const oracle::H ref{7};
  const Modulus seven(7);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_element(rng, seven), b = random_element(rng, seven), c = random_element(rng, seven);
    CHECK(h_mul(h_mul(a, b), c) == h_mul(a, h_mul(b, c)));
    CHECK(h_mul(a, h_inv(a)) == HeisenbergElement::identity(seven));
    const auto m = ref.mul_matrix({a.x, a.y, a.z}, {b.x, b.y, b.z});
    const auto p = h_mul(a, b);
    CHECK(std::array<std::int64_t, 3>{p.x, p.y, p.z} == m);
  }
  CHECK_THROWS_AS(h_mul(x, HeisenbergElement(Modulus(3), 1, 0, 0)), ModulusError);
}

TEST_CASE("order and centre of H(n)") {
  for (std::int64_t nv : {3, 5}) {
    const Modulus n(nv);
    std::size_t centre = 0;
    const std::size_t order = static_cast<std::size_t>(nv * nv * nv);
    for (std::size_t i = 0; i < order; ++i) {
      const auto g = index_element(n, i);
      CHECK(element_index(g) == i);
      bool central = true;
      for (std::size_t j = 0; j < order && central; ++j) {
        const auto h = index_element(n, j);
        central = h_mul(g, h) == h_mul(h, g);
      }
      if (central) {
        CHECK(g.x == 0);
        CHECK(g.y == 0);
        ++centre;
      }
    }
    CHECK(centre == static_cast<std::size_t>(nv));
  }
  const Modulus three(3);
  CHECK(element_index(HeisenbergElement(three, 0, 0, 1)) == 1);
  CHECK(element_index(HeisenbergElement(three, 0, 1, 0)) == 3);
  CHECK_THROWS_AS(index_element(three, 27), std::out_of_range);
}

TEST_CASE("H(p, d) group law") {
  const HeisenbergGroup g(Modulus(3), 2);
  CHECK(g.order() == 243);
  CHECK(g.rep_dim() == 9);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_hd(rng, g), b = random_hd(rng, g), c = random_hd(rng, g);
    CHECK(hd_mul(hd_mul(a, b), c) == hd_mul(a, hd_mul(b, c)));
  }
  for (std::size_t i = 0; i < g.order(); ++i) {
    const auto a = index_element(g, i);
    CHECK(element_index(a) == i);
    CHECK(hd_mul(a, hd_inv(a)) == HDElement::identity(g));
    CHECK(hd_mul(HDElement::identity(g), a) == a);
  }
  // e_i f_i reaches the centre; e_i f_j for i != j does not
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(hd_mul(unit_x(g, i), unit_y(g, j)).z == (i == j ? 1 : 0));

  const Modulus three(3);
  for (std::size_t i = 0; i < 27; ++i)
    for (std::size_t j = 0; j < 27; ++j) {
      const auto a = index_element(three, i), b = index_element(three, j);
      CHECK(hd_mul(HDElement::from(a), HDElement::from(b)) == HDElement::from(h_mul(a, b)));
    }
  CHECK(element_index(HDElement::from(HeisenbergElement(three, 0, 1, 0))) == 3);
  CHECK_THROWS_AS(HDElement(three, {1}, {1, 2}, 0), std::invalid_argument);
  CHECK_THROWS_AS(hd_mul(unit_x(g, 0), HDElement(three, {1}, {0}, 0)), std::invalid_argument);
}

TEST_CASE("generating check matches breadth-first closure") {
  const Modulus three(3);
  const oracle::H ref{3};
  for (int q = 0; q < 81; ++q) {
    const std::int64_t r1 = q / 27, s1 = q / 9 % 3, r2 = q / 3 % 3, s2 = q % 3;
    const std::vector<oracle::H::E> gens{{s1, r1, 0}, {s2, r2, 0}};
    std::vector<oracle::H::E> sym = gens;
    for (const auto& g : gens) sym.push_back({oracle::mod(-g[0], 3), oracle::mod(-g[1], 3), oracle::mod(g[0] * g[1], 3)});
    CHECK(generating_check(three, r1, s1, r2, s2) == (ref.closure_size(sym) == 27));
  }
  CHECK(generating_check(Modulus(7), 1, 0, 0, 1));
  CHECK_FALSE(generating_check(Modulus(7), 1, 1, 2, 2));
}

TEST_CASE("generator sets") {
  const Modulus five(5);
  const auto gens = two_generator_set(five, 1, 2, 3, 1);
  REQUIRE(gens.steps().size() == 4);
  CHECK(gens.steps()[1] == hd_inv(gens.steps()[0]));
  const HeisenbergGroup g(five, 1);
  CHECK_THROWS_AS(GeneratorSet(g, {unit_x(g, 0)}), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorSet(g, {unit_x(g, 0), hd_inv(unit_x(g, 0))}, {0.7, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorSet(g, {unit_x(g, 0), hd_inv(unit_x(g, 0))}, {0.7, 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorSet(g, {unit_x(g, 0), hd_inv(unit_x(g, 0))}, {1.5, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(GeneratorSet(g, {}), std::invalid_argument);
  const auto std2 = standard_generators(HeisenbergGroup(Modulus(3), 2));
  CHECK(std2.steps().size() == 8);
}

TEST_CASE("walk distributions") {
  const Modulus three(3);
  const auto gens = two_generator_set(three, 1, 0, 0, 1);
  const auto d0 = walk_distribution(gens, 0);
  CHECK(d0.probabilities[0] == 1.0);
  CHECK(tv_uniform(d0) == doctest::Approx(1 - 1.0 / 27));
  const auto d1 = walk_distribution(gens, 1);
  for (const auto& s : gens.steps()) CHECK(d1.probabilities[element_index(s)] == doctest::Approx(0.25));

  // two-step path enumeration
  const oracle::H ref{3};
  std::vector<oracle::H::E> steps;
  for (const auto& s : gens.steps()) steps.push_back({s.x[0], s.y[0], s.z});
  std::map<oracle::H::E, double> paths;
  for (const auto& a : steps)
    for (const auto& b : steps) paths[ref.mul(a, b)] += 1.0 / 16;
  const auto d2 = walk_distribution(gens, 2);
  double tv = 0.0;
  for (std::size_t i = 0; i < 27; ++i) {
    const auto g = index_element(three, i);
    const auto it = paths.find({g.x, g.y, g.z});
    const double p = it == paths.end() ? 0.0 : it->second;
    CHECK(d2.probabilities[i] == doctest::Approx(p));
    CHECK(std::abs(std::round(d2.probabilities[i] * 16) - d2.probabilities[i] * 16) < 1e-12);
    tv += 0.5 * std::abs(p - 1.0 / 27);
  }
  CHECK(tv_uniform(d2) == doctest::Approx(tv));
  CHECK(tv_uniform(uniform_distribution(HeisenbergGroup(three, 1))) == 0.0);
}

TEST_CASE("long walks stay normalised") {
  RandomWalk walk(two_generator_set(Modulus(5), 1, 1, 1, 2));
  for (int i = 0; i < 10000; ++i) walk.step();
  double total = 0.0;
  for (double p : walk.distribution().probabilities) {
    CHECK(p >= 0.0);
    total += p;
  }
  CHECK(std::abs(total - 1.0) < 1e-10);
  CHECK(walk.steps_taken() == 10000);
  CHECK_THROWS_AS(RandomWalk(standard_generators(HeisenbergGroup(Modulus(17), 1))), std::length_error);
}

TEST_CASE("mixing times") {
  const auto gens = two_generator_set(Modulus(5), 1, 0, 0, 1);
  const auto res = mixing_time(gens, 0.25, 1000);
  CHECK(res.reached);
  CHECK(res.tv.size() == res.steps + 1);
  CHECK(res.tv.back() <= 0.25);
  for (std::size_t k = 0; k < res.steps; ++k) CHECK(res.tv[k] > 0.25);
  const auto capped = mixing_time(gens, 0.25, 2);
  CHECK_FALSE(capped.reached);
  CHECK(capped.steps == 2);
  CHECK_THROWS_AS(mixing_time(gens, 1.0, 10), std::invalid_argument);
}

TEST_CASE("one-dimensional characters") {
  const Modulus seven(7);
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const auto g = random_element(rng, seven), h = random_element(rng, seven);
    CHECK(char_1d(seven, 0, 0, g) == Complex(1.0, 0.0));
    const std::int64_t a = i % 7, b = (i / 7) % 7;
    CHECK(std::abs(char_1d(seven, a, b, h_mul(g, h)) - char_1d(seven, a, b, g) * char_1d(seven, a, b, h)) < 1e-13);
    CHECK(std::abs(char_1d(seven, a, b, HeisenbergElement(seven, 0, 0, g.z)) - 1.0) < 1e-15);
  }

  // largest nontrivial character average of the standard walk, compared with
  // an independent maximisation of (cos a + cos b) / 2
  const Modulus eleven(11);
  const HeisenbergGroup g(eleven, 1);
  const auto gens = standard_generators(g);
  double best = 0.0, ref = 0.0;
  for (std::int64_t a = 0; a < 11; ++a)
    for (std::int64_t b = 0; b < 11; ++b) {
      if (a == 0 && b == 0) continue;
      Complex sum = 0.0;
      for (const auto& s : gens.steps()) sum += 0.25 * char_1d(eleven, a, b, HeisenbergElement(eleven, s.x[0], s.y[0], s.z));
      best = std::max(best, std::abs(sum));
      ref = std::max(ref, 0.5 * std::abs(std::cos(2 * std::numbers::pi * a / 11) + std::cos(2 * std::numbers::pi * b / 11)));
    }
  CHECK(best == doctest::Approx(ref).epsilon(1e-13));
  CHECK(ref == doctest::Approx(std::cos(std::numbers::pi / 11)).epsilon(1e-13));
  CHECK(1.0 - best < 0.05);
}

TEST_CASE("principal representation for d = 1") {
  const Modulus five(5);
  for (std::int64_t c = 1; c < 5; ++c) {
    const auto centre = rho_principal(five, c, HeisenbergElement(five, 0, 0, 1));
    auto expect = ComplexMatrix::identity(5);
    expect *= five.omega(c);
    CHECK(max_abs_diff(centre, expect) < 1e-14);
    for (std::int64_t s = 0; s < 5; ++s)
      for (std::int64_t r = 0; r < 5; ++r) {
        const auto m = rho_principal(five, c, HeisenbergElement(five, s, r, 0));
        CHECK(max_abs_diff(m, tc_to_matrix(PhasedTwistedCirculant::plain(five, c * r, s))) < 1e-13);
        CHECK(oracle::max_diff(m, oracle::rho(5, 1, c, {s}, {r}, 0)) < 1e-13);
      }
  }
  std::mt19937_64 rng(10);
  for (int i = 0; i < 500; ++i) {
    const auto g = random_element(rng, five), h = random_element(rng, five);
    CHECK(max_abs_diff(mat_mul(rho_principal(five, 2, g), rho_principal(five, 2, h)), rho_principal(five, 2, h_mul(g, h))) <
          1e-12);
  }
  CHECK_THROWS_AS(rho_principal(five, 5, HeisenbergElement::identity(five)), ModulusError);
}

TEST_CASE("principal representations of H(p, d)") {
  for (std::int64_t p : {3, 5})
    for (std::size_t d : {1u, 2u}) {
      const HeisenbergGroup g(Modulus(p), d);
      std::mt19937_64 rng(static_cast<std::uint64_t>(p * 10 + d));
      for (std::int64_t c = 1; c < p; ++c) {
        for (int i = 0; i < 40; ++i) {
          const auto a = random_hd(rng, g);
          const auto pair = rho_hd(g, c, a);
          CHECK(pair.discrepancy < 1e-12);
          CHECK(oracle::max_diff(pair.direct, oracle::rho(p, d, c, a.x, a.y, a.z)) < 1e-12);
          if (d == 1) {
            CHECK(max_abs_diff(pair.tensor, rho_principal(Modulus(p), c, HeisenbergElement(Modulus(p), a.x[0], a.y[0], a.z))) <
                  1e-13);
          }
          const auto b = random_hd(rng, g);
          CHECK(max_abs_diff(mat_mul(rho_hd_tensor(g, c, a), rho_hd_tensor(g, c, b)), rho_hd_tensor(g, c, hd_mul(a, b))) <
                1e-11);
        }
      }
    }
  // slot structure of e_i and f_i
  const Modulus three(3);
  const HeisenbergGroup g(three, 2);
  const auto id = ComplexMatrix::identity(3);
  CHECK(max_abs_diff(rho_hd_tensor(g, 1, unit_x(g, 0)), kron(build_shift(three), id)) < 1e-15);
  CHECK(max_abs_diff(rho_hd_tensor(g, 1, unit_x(g, 1)), kron(id, build_shift(three))) < 1e-15);
  CHECK(max_abs_diff(rho_hd_tensor(g, 2, unit_y(g, 1)), kron(id, mat_pow(build_clock(three), 2))) < 1e-15);
  CHECK_THROWS_AS(rho_hd(g, 3, unit_x(g, 0)), ModulusError);
  CHECK_THROWS_AS(rho_hd(HeisenbergGroup(Modulus(7), 5), 1, HDElement::identity(HeisenbergGroup(Modulus(7), 5))),
                  std::length_error);
}

TEST_CASE("irreducible representations") {
  for (std::int64_t nv : {3, 5, 7, 11}) {
    const HeisenbergGroup g(Modulus(nv), 1);
    const auto reps = all_irreps(g);
    std::size_t total = 0, ones = 0;
    for (const auto& r : reps) {
      total += r.dimension() * r.dimension();
      ones += r.dimension() == 1;
    }
    CHECK(total == g.order());
    CHECK(ones == static_cast<std::size_t>(nv * nv));
    CHECK(reps.front().is_trivial());
    CHECK(reps.size() == static_cast<std::size_t>(nv * nv + nv - 1));
  }
  const HeisenbergGroup g2(Modulus(3), 2);
  std::size_t total = 0;
  for (const auto& r : all_irreps(g2)) total += r.dimension() * r.dimension();
  CHECK(total == g2.order());
}

TEST_CASE("Fourier coefficients of the walk") {
  for (std::int64_t nv : {5, 7}) {
    const Modulus n(nv);
    const HeisenbergGroup g(n, 1);
    const std::int64_t s1 = 1, r1 = 2, s2 = 3, r2 = 1;
    const auto gens = two_generator_set(n, s1, r1, s2, r2);
    for (std::int64_t c = 1; c < nv; ++c) {
      const auto f = fourier_at_rep(gens, {g, PrincipalRep{c}});
      const auto expect = weighted_sum(SumSpec(n, {{0.5, n.mul(c, r1), s1}, {0.5, n.mul(c, r2), s2}}));
      CHECK(max_abs_diff(f, expect) < 1e-13);
      CHECK(hermitian_asymmetry(f) < 1e-15);
    }
    // standard set gives 1/4 (S + S^-1 + D(c))
    const auto std_gens = standard_generators(g);
    for (std::int64_t c = 1; c < nv; ++c) {
      const auto f = fourier_at_rep(std_gens, {g, PrincipalRep{c}});
      auto ref = oracle::zeros(nv, nv);
      const auto s = oracle::shift(nv);
      for (int i = 0; i < nv; ++i) {
        for (int j = 0; j < nv; ++j) ref[i][j] = 0.25 * (s[i][j] + s[j][i]);
        ref[i][i] += 0.5 * std::cos(2 * std::numbers::pi * c * i / nv);
      }
      CHECK(oracle::max_diff(f, ref) < 1e-14);
    }
  }
  // H(3, 2): coefficient is the average over coordinates of slice matrices
  const Modulus three(3);
  const HeisenbergGroup g(three, 2);
  const auto gens = standard_generators(g);
  for (std::int64_t c = 1; c < 3; ++c) {
    const auto f = fourier_at_rep(gens, {g, PrincipalRep{c}});
    auto slice = build_M(three, 0, 1);
    slice += build_M(three, c, 0);
    slice *= 0.5;
    const auto id = ComplexMatrix::identity(3);
    auto expect = kron(slice, id);
    expect += kron(id, slice);
    expect *= 0.5;
    CHECK(max_abs_diff(f, expect) < 1e-14);
  }
}

TEST_CASE("Fourier bound dominates the exact distance") {
  for (std::int64_t nv : {3, 5}) {
    const auto gens = two_generator_set(Modulus(nv), 1, 0, 0, 1);
    const FourierTvBound bound(gens);
    CHECK(bound.at(0) >= 1 - 1.0 / (nv * nv * nv));
    RandomWalk walk(gens);
    for (std::size_t k = 0; k <= 60; ++k) {
      CHECK(bound.at(k) + 1e-12 >= tv_uniform(walk.distribution()));
      walk.step();
    }
    CHECK(fourier_tv_bound(gens, 7) == doctest::Approx(bound.at(7)));
  }
  const auto hd = standard_generators(HeisenbergGroup(Modulus(3), 2));
  const FourierTvBound b2(hd);
  RandomWalk walk(hd);
  for (std::size_t k = 0; k <= 30; ++k) {
    CHECK(b2.at(k) + 1e-12 >= tv_uniform(walk.distribution()));
    walk.step();
  }
  CHECK_THROWS_AS(FourierTvBound(two_generator_set(Modulus(17), 1, 0, 0, 1)), std::length_error);
}
