#include "twc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "twc/heisenberg.hpp"
#include "twc/parallel.hpp"
#include "twc/spectra.hpp"
#include "twc/twisted.hpp"

namespace twc {

namespace {

std::string params(std::initializer_list<std::pair<const char*, std::int64_t>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ' ';
    os << k << '=' << v;
    first = false;
  }
  return os.str();
}

class Recorder {
 public:
  explicit Recorder(VerifySuiteReport& rep) : rep_(rep) {}

  void check(const std::string& what, const std::string& where, double residual, double tol) {
    ++rep_.cases;
    if (!(residual <= tol)) rep_.failures.push_back({what, where, residual, tol});
  }
  void observe(std::string name, double value) { rep_.observations.emplace_back(std::move(name), value); }

 private:
  VerifySuiteReport& rep_;
};

double entry_norm_deviation(const ComplexMatrix& m, double target) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) worst = std::max(worst, std::abs(std::abs(m(i, j)) - target));
  return worst;
}

double off_diagonal_max(const ComplexMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

// Multiset distance between two spectra after sorting.
double spectrum_distance(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// 0 when m is a permutation matrix with unit-modulus nonzeros.
double permutation_defect(const ComplexMatrix& m) {
  constexpr double zero_tol = 1e-9;
  double defect = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t nonzero = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double a = std::abs(m(i, j));
      if (a > zero_tol) {
        ++nonzero;
        defect = std::max(defect, std::abs(a - 1.0));
      } else {
        defect = std::max(defect, a);
      }
    }
    if (nonzero != 1) defect = std::max(defect, 1.0);
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (std::abs(m(i, j)) > zero_tol) ++nonzero;
    if (nonzero != 1) defect = std::max(defect, 1.0);
  }
  return defect;
}

void suite_corollary4(Recorder& rec, const std::vector<std::int64_t>& ns, std::uint64_t) {
  for (auto nv : ns) {
    const Modulus n(nv);
    const double target = 1.0 / std::sqrt(static_cast<double>(nv));
    ComplexMatrix expected(n.size(), n.size());
    for (std::size_t j = 0; j < n.size(); ++j) expected(j, j) = n.omega(static_cast<std::int64_t>(j));
    for (std::int64_t r = 0; r < nv; ++r)
      for (std::int64_t s = 1; s < nv; ++s) {
        const auto x = build_X(n, r, s);
        const auto where = params({{"n", nv}, {"r", r}, {"s", s}});
        rec.check("unitarity", where, unitarity_residual(x), 1e-12);
        rec.check("entry_norm", where, entry_norm_deviation(x, target), 1e-12);
        const auto d = mat_mul(adjoint(x), mat_mul(tc_to_matrix(PhasedTwistedCirculant::plain(n, r, s)), x));
        rec.check("diagonalizes", where, max_abs_diff(d, expected), 1e-11);
      }
  }
}

void suite_lemma3(Recorder& rec, const std::vector<std::int64_t>& ns, std::uint64_t seed) {
  for (auto nv : ns) {
    const Modulus n(nv);
    for (std::int64_t trial = 0; trial < 100; ++trial) {
      std::mt19937_64 rng(task_seed(seed, static_cast<std::uint64_t>(nv), static_cast<std::uint64_t>(trial)));
      const DiagonalSpec d(n, random_unit_diagonal(rng, n.size()));
      for (std::int64_t s = 1; s < nv; ++s) {
        const auto dc = mat_mul(d.matrix(), tc_to_matrix(PhasedTwistedCirculant::plain(n, 0, s)));
        const auto diag = diagonalizer_dc(d, s);
        const auto t = mat_mul(adjoint(diag.u), mat_mul(dc, diag.u));
        const auto where = params({{"n", nv}, {"trial", trial}, {"s", s}});
        rec.check("off_diagonal", where, off_diagonal_max(t), 1e-10);
        double dev = 0.0;
        for (std::size_t j = 0; j < n.size(); ++j)
          dev = std::max(dev, std::abs(t(j, j) - n.omega(static_cast<std::int64_t>(j)) * diag.lambda0));
        rec.check("eigenvalue_order", where, dev, 1e-10);
      }
    }
  }
}

void suite_lemma5(Recorder& rec, const std::vector<std::int64_t>& ns, std::uint64_t) {
  for (auto nv : ns) {
    const Modulus n(nv);
    const double root = std::sqrt(static_cast<double>(nv));
    for (std::int64_t a = 1; a < nv; ++a)
      for (std::int64_t b = 0; b < nv; ++b)
        rec.check("gauss_modulus", params({{"n", nv}, {"a", a}, {"b", b}}),
                  std::abs(std::abs(gauss_sum(n, a, b)) - root), 1e-9);
    if (nv > 13) continue;  // dense change-of-basis sweep is O(n^7)
    std::vector<ComplexMatrix> xs;
    for (std::int64_t r = 0; r < nv; ++r)
      for (std::int64_t s = 0; s < nv; ++s) xs.push_back(build_X(n, r, s));
    const auto x_at = [&](std::int64_t r, std::int64_t s) -> const ComplexMatrix& {
      return xs[static_cast<std::size_t>(r * nv + s)];
    };
    for (std::int64_t r1 = 1; r1 < nv; ++r1)
      for (std::int64_t s1 = 1; s1 < nv; ++s1) {
        const auto x1a = adjoint(x_at(r1, s1));
        for (std::int64_t r2 = 1; r2 < nv; ++r2)
          for (std::int64_t s2 = 1; s2 < nv; ++s2) {
            if (equal_slopes(n, r1, s1, r2, s2)) continue;
            rec.check("entry_norm", params({{"n", nv}, {"r1", r1}, {"s1", s1}, {"r2", r2}, {"s2", s2}}),
                      entry_norm_deviation(mat_mul(x1a, x_at(r2, s2)), 1.0 / root), 1e-11);
          }
      }
  }
}

void suite_uncertainty(Recorder& rec, const std::vector<std::int64_t>& ns, std::uint64_t seed) {
  double min_corollary = 1e300;
  for (auto nv : ns) {
    const Modulus n(nv);
    const std::vector<std::pair<std::string, ComplexMatrix>> families = {
        {"fourier", build_fourier(n)},
        {"X(1,2)", build_X(n, 1, 2)},
        {"change_of_basis", change_of_basis(n, {1, 1}, {1, 2})},
    };
    for (std::size_t f = 0; f < families.size(); ++f) {
      const auto& u = families[f].second;
      std::mt19937_64 rng(task_seed(seed, static_cast<std::uint64_t>(nv), f));
      for (std::int64_t i = 0; i < 1000; ++i) {
        const auto where = families[f].first + " " + params({{"n", nv}, {"sample", i}});
        const auto v = random_test_vector(rng, u);
        std::uniform_int_distribution<std::size_t> size(1, n.size());
        const auto s = random_index_set(rng, n.size(), size(rng));
        const auto t = random_index_set(rng, n.size(), size(rng));
        const auto rep = up_evaluate(u, 1.0, s, t, v);
        if (rep.slack_defined) rec.check("lemma_slack", where, std::max(0.0, -rep.slack), 1e-10);

        // Corollary: |S||T| <= n/2.
        std::uniform_int_distribution<std::size_t> s_size(1, n.size() / 2);
        const std::size_t ss = s_size(rng);
        std::uniform_int_distribution<std::size_t> t_size(1, std::max<std::size_t>(1, n.size() / (2 * ss)));
        const auto cs = random_index_set(rng, n.size(), ss);
        const auto ct = random_index_set(rng, n.size(), t_size(rng));
        // Concentrate v on S half of the time: the corollary's hard case.
        ComplexVector cv = v;
        if (i % 2 == 0) {
          cv = project(v, cs);
          const double nn = cv.norm();
          if (nn > 0.0)
            for (auto& x : cv.values()) x /= nn;
          else
            cv = ComplexVector::basis(n.size(), cs.members().front());
        }
        const auto cor = up_corollary_check(u, 1.0, cs, ct, cv);
        min_corollary = std::min(min_corollary, cor.value);
        rec.check("corollary_floor", where, std::max(0.0, kCorollaryFloor - cor.value), 1e-12);
      }
    }
    // Fourier pair boundary: v uniform, S full, T = {0}.
    ComplexVector flat(n.size(), 1.0 / std::sqrt(static_cast<double>(nv)));
    const auto rep = up_evaluate(build_fourier(n), 1.0, IndexSet::full(n.size()), IndexSet(n.size(), {0}), flat);
    rec.check("boundary_slack", params({{"n", nv}}), std::abs(rep.slack), 1e-12);
  }
  if (min_corollary < 1e300) rec.observe("min_corollary_value", min_corollary);
}

void suite_equal_slopes(Recorder& rec, const std::vector<std::int64_t>& ns, std::uint64_t) {
  for (auto nv : ns) {
    const Modulus n(nv);
    for (std::int64_t r1 = 1; r1 < nv; ++r1)
      for (std::int64_t s1 = 1; s1 < nv; ++s1)
        for (std::int64_t k = 1; k < nv; ++k) {
          const std::int64_t r2 = n.mul(k, r1), s2 = n.mul(k, s1);
          const auto where = params({{"n", nv}, {"r1", r1}, {"s1", s1}, {"r2", r2}, {"s2", s2}});
          const auto closed = equal_slope_spectrum(n, r1, s1, r2, s2);
          const SumSpec spec(n, {{0.5, r1, s1}, {0.5, r2, s2}});
          rec.check("closed_form", where,
                    spectrum_distance(closed.lambdas, hermitian_eigenvalues(weighted_sum(spec))), 1e-9);
          rec.check("permutation", where, permutation_defect(change_of_basis(n, {r1, s1}, {r2, s2})), 1e-9);
        }
  }
}

void suite_representations(Recorder& rec, const std::vector<std::int64_t>& ns, std::uint64_t seed) {
  for (auto nv : ns) {
    const Modulus n(nv);
    const HeisenbergGroup h(n, 1);
    std::size_t dim_sum = 0;
    for (const auto& rep : all_irreps(h)) dim_sum += rep.dimension() * rep.dimension();
    rec.check("completeness", params({{"n", nv}}),
              std::abs(static_cast<double>(dim_sum) - static_cast<double>(h.order())), 0.0);

    std::mt19937_64 rng(task_seed(seed, static_cast<std::uint64_t>(nv)));
    std::uniform_int_distribution<std::int64_t> pick(0, nv - 1);
    std::uniform_int_distribution<std::int64_t> pick_c(1, nv - 1);
    for (int i = 0; i < 500; ++i) {
      const HeisenbergElement g(n, pick(rng), pick(rng), pick(rng));
      const HeisenbergElement hh(n, pick(rng), pick(rng), pick(rng));
      const std::int64_t c = pick_c(rng);
      const auto where = params({{"n", nv}, {"c", c}, {"sample", i}});
      rec.check("principal_homomorphism", where,
                max_abs_diff(mat_mul(rho_principal(n, c, g), rho_principal(n, c, hh)),
                             rho_principal(n, c, h_mul(g, hh))),
                1e-11);
      const std::int64_t a = pick(rng), b = pick(rng);
      rec.check("character_homomorphism", where,
                std::abs(char_1d(n, a, b, g) * char_1d(n, a, b, hh) - char_1d(n, a, b, h_mul(g, hh))), 1e-11);
    }
    for (std::size_t d = 1; d <= 2; ++d) {
      const HeisenbergGroup hd(n, d);
      if (hd.rep_dim() > 169) continue;
      for (std::int64_t c = 1; c < nv; ++c)
        for (std::size_t idx = 0; idx < std::min<std::size_t>(hd.order(), 200); ++idx) {
          const auto g = index_element(hd, (idx * 7919) % hd.order());
          rec.check("tensor_vs_direct", params({{"p", nv}, {"d", static_cast<std::int64_t>(d)}, {"c", c}}),
                    max_abs_diff(rho_hd_direct(hd, c, g), rho_hd_tensor(hd, c, g)), 1e-12);
        }
    }
  }
}

void suite_bridge(Recorder& rec, const std::vector<std::int64_t>& ns, std::uint64_t) {
  for (auto nv : ns) {
    const Modulus n(nv);
    const HeisenbergGroup h(n, 1);
    std::vector<std::array<std::int64_t, 4>> sets = {{1, 0, 0, 1}, {1, 1, 1, 2}};
    for (std::int64_t s1 = 0; s1 < nv; ++s1)
      for (std::int64_t r2 = 0; r2 < nv; r2 += 2) sets.push_back({s1, 1, 1, r2});
    for (const auto& [s1, r1, s2, r2] : sets) {
      if (!generating_check(n, r1, s1, r2, s2)) continue;
      const auto gens = two_generator_set(n, s1, r1, s2, r2);
      for (std::int64_t c = 1; c < nv; ++c) {
        const auto hat = fourier_at_rep(gens, {h, PrincipalRep{c}});
        const SumSpec spec(n, {{0.5, n.mul(c, r1), s1}, {0.5, n.mul(c, r2), s2}});
        rec.check("fourier_bridge", params({{"n", nv}, {"s1", s1}, {"r1", r1}, {"s2", s2}, {"r2", r2}, {"c", c}}),
                  max_abs_diff(hat, weighted_sum(spec)), 1e-13);
      }
    }
  }
}

using SuiteFn = std::function<void(Recorder&, const std::vector<std::int64_t>&, std::uint64_t)>;

const std::map<std::string, SuiteFn>& suite_table() {
  static const std::map<std::string, SuiteFn> table = {
      {"lemma3", suite_lemma3},
      {"corollary4", suite_corollary4},
      {"lemma5", suite_lemma5},
      {"uncertainty", suite_uncertainty},
      {"equal-slopes", suite_equal_slopes},
      {"representations", suite_representations},
      {"bridge", suite_bridge},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"lemma3",       "corollary4",      "lemma5", "uncertainty",
                                                 "equal-slopes", "representations", "bridge"};
  return names;
}

bool is_suite_name(const std::string& name) { return suite_table().count(name) > 0; }

VerifySuiteReport run_suite(const std::string& name, const std::vector<std::int64_t>& n_list,
                            std::uint64_t seed) {
  const auto it = suite_table().find(name);
  if (it == suite_table().end()) throw std::invalid_argument("unknown suite '" + name + "'");
  VerifySuiteReport rep;
  rep.suite = name;
  Recorder rec(rep);
  const auto start = std::chrono::steady_clock::now();
  it->second(rec, n_list, seed);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

ComplexVector random_test_vector(std::mt19937_64& rng, const ComplexMatrix& u) {
  const std::size_t n = u.rows();
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> shape(0, 2);
  ComplexVector v(n);
  switch (shape(rng)) {
    case 0:
      for (auto& x : v.values()) x = {gauss(rng), gauss(rng)};
      break;
    case 1: {
      std::uniform_int_distribution<std::size_t> sz(1, std::max<std::size_t>(1, n / 3));
      const auto support = random_index_set(rng, n, sz(rng));
      for (auto i : support.members()) v[i] = {gauss(rng), gauss(rng)};
      break;
    }
    default: {
      // u^* e_j plus a small perturbation, so that u v is nearly a basis vector.
      std::uniform_int_distribution<std::size_t> col(0, n - 1);
      const std::size_t j = col(rng);
      for (std::size_t i = 0; i < n; ++i) v[i] = std::conj(u(j, i)) + 0.05 * Complex{gauss(rng), gauss(rng)};
      break;
    }
  }
  double nn = v.norm();
  if (nn == 0.0) {
    v[0] = 1.0;
    nn = 1.0;
  }
  for (auto& x : v.values()) x /= nn;
  return v;
}

IndexSet random_index_set(std::mt19937_64& rng, std::size_t n, std::size_t size) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(size, n));
  return IndexSet(n, std::move(all));
}

std::vector<Complex> random_unit_diagonal(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<Complex> out(n);
  for (auto& x : out) x = std::polar(1.0, angle(rng));
  return out;
}

}  // namespace twc
