#pragma once

// Heisenberg groups H(n) and H(p, d) over Z_p, their irreducible
// representations, exact random-walk distributions and the Fourier upper
// bound on total variation distance to uniform.
//
// Elements are triples (x, y, z) with x, y in Z_p^d and z in Z_p under
//   (x, y, z)(x', y', z') = (x + x', y + y', z + z' + x . y')
// which is multiplication of the upper unitriangular matrix forms. H(n) is
// the case d = 1.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "twc/linalg.hpp"
#include "twc/modular.hpp"

namespace twc {

struct HeisenbergElement {
  Modulus n;
  std::int64_t x = 0, y = 0, z = 0;

  HeisenbergElement(Modulus m, std::int64_t x_, std::int64_t y_, std::int64_t z_)
      : n(m), x(m.reduce(x_)), y(m.reduce(y_)), z(m.reduce(z_)) {}

  static HeisenbergElement identity(Modulus m) { return {m, 0, 0, 0}; }

  friend bool operator==(const HeisenbergElement&, const HeisenbergElement&) = default;
};

HeisenbergElement h_mul(const HeisenbergElement& a, const HeisenbergElement& b);
HeisenbergElement h_inv(const HeisenbergElement& a);

/// Lexicographic index (x n + y) n + z.
std::size_t element_index(const HeisenbergElement& g);
HeisenbergElement index_element(const Modulus& n, std::size_t index);

/// Shape of H(p, d).
class HeisenbergGroup {
 public:
  HeisenbergGroup(Modulus p, std::size_t d);

  const Modulus& modulus() const noexcept { return p_; }
  std::size_t dim() const noexcept { return d_; }
  /// p^{2d+1}
  std::size_t order() const noexcept { return order_; }
  /// p^d, the dimension of each principal-series representation.
  std::size_t rep_dim() const noexcept { return rep_dim_; }

  friend bool operator==(const HeisenbergGroup&, const HeisenbergGroup&) = default;

 private:
  Modulus p_;
  std::size_t d_;
  std::size_t order_;
  std::size_t rep_dim_;
};

struct HDElement {
  Modulus p;
  std::vector<std::int64_t> x, y;
  std::int64_t z = 0;

  /// Components are reduced mod p; x and y must have equal length >= 1.
  HDElement(Modulus m, std::vector<std::int64_t> x_, std::vector<std::int64_t> y_, std::int64_t z_);

  static HDElement identity(const HeisenbergGroup& g);
  static HDElement from(const HeisenbergElement& g);

  std::size_t dim() const noexcept { return x.size(); }
  HeisenbergGroup group() const { return {p, dim()}; }

  friend bool operator==(const HDElement&, const HDElement&) = default;
};

HDElement hd_mul(const HDElement& a, const HDElement& b);
HDElement hd_inv(const HDElement& a);

/// Lexicographic in (x_1..x_d, y_1..y_d, z), first coordinate most significant.
std::size_t element_index(const HDElement& g);
HDElement index_element(const HeisenbergGroup& group, std::size_t index);

/// e_i = (w_i, 0, 0) and f_i = (0, w_i, 0) for i in [0, d).
HDElement unit_x(const HeisenbergGroup& group, std::size_t i);
HDElement unit_y(const HeisenbergGroup& group, std::size_t i);

/// Symmetric step distribution: every step's inverse appears with the same
/// probability and the probabilities sum to 1.
class GeneratorSet {
 public:
  /// Throws std::invalid_argument when the set is not closed under inversion,
  /// probabilities are negative or do not sum to 1 within 1e-12, or elements
  /// belong to different groups.
  GeneratorSet(HeisenbergGroup group, std::vector<HDElement> steps, std::vector<double> probabilities);
  /// Uniform probabilities.
  GeneratorSet(HeisenbergGroup group, std::vector<HDElement> steps);

  const HeisenbergGroup& group() const noexcept { return group_; }
  const std::vector<HDElement>& steps() const noexcept { return steps_; }
  const std::vector<double>& probabilities() const noexcept { return probs_; }

 private:
  HeisenbergGroup group_;
  std::vector<HDElement> steps_;
  std::vector<double> probs_;
};

/// {g1, g1^-1, g2, g2^-1} with g_i = (s_i, r_i, 0) in H(n), uniform.
GeneratorSet two_generator_set(const Modulus& n, std::int64_t s1, std::int64_t r1, std::int64_t s2,
                               std::int64_t r2);

/// {e_i^{+-1}, f_i^{+-1} : i < d}, uniform over the 4d steps. For d = 1 this is
/// {X^{+-1}, Y^{+-1}}.
GeneratorSet standard_generators(const HeisenbergGroup& group);

/// r1 s2 != r2 s1 (mod n): {(s1, r1, 0), (s2, r2, 0)} generates H(n).
bool generating_check(const Modulus& n, std::int64_t r1, std::int64_t s1, std::int64_t r2,
                      std::int64_t s2);

inline constexpr std::size_t kMaxWalkOrder = 3125;

struct GroupDistribution {
  HeisenbergGroup group;
  std::vector<double> probabilities;  // by element_index
};

GroupDistribution point_mass(const HeisenbergGroup& group);
GroupDistribution uniform_distribution(const HeisenbergGroup& group);

/// Exact walk from the identity: each step moves g to g * s with
/// probability p(s). Step tables are precomputed once.
class RandomWalk {
 public:
  /// Throws std::length_error when the group order exceeds kMaxWalkOrder.
  explicit RandomWalk(const GeneratorSet& gens);

  const GroupDistribution& distribution() const noexcept { return dist_; }
  std::size_t steps_taken() const noexcept { return steps_; }
  void step();

 private:
  GroupDistribution dist_;
  std::vector<std::vector<std::uint32_t>> targets_;  // targets_[s][idx(g)] = idx(g s)
  std::vector<double> probs_;
  std::vector<double> scratch_;
  std::size_t steps_ = 0;
};

GroupDistribution walk_distribution(const GeneratorSet& gens, std::size_t k);

/// (1/2) sum_g |p(g) - 1/|G||
double tv_uniform(const GroupDistribution& dist);

struct MixingResult {
  std::size_t steps = 0;  // first k with TV <= eps, or max_steps when saturated
  bool reached = false;
  std::vector<double> tv;  // TV at k = 0..steps
};

/// Checks TV at every k without assuming monotonicity.
MixingResult mixing_time(const GeneratorSet& gens, double eps, std::size_t max_steps);

// Representations ---------------------------------------------------------

struct OneDimensionalRep {
  std::vector<std::int64_t> a, b;  // g -> omega^{a.x + b.y}
};

struct PrincipalRep {
  std::int64_t c = 1;  // nonzero
};

struct Representation {
  HeisenbergGroup group;
  std::variant<OneDimensionalRep, PrincipalRep> kind;

  std::size_t dimension() const;
  bool is_trivial() const;
};

/// omega^{a x + b y}
Complex char_1d(const Modulus& n, std::int64_t a, std::int64_t b, const HeisenbergElement& g);
Complex char_hd(const OneDimensionalRep& rep, const HDElement& g);

/// q^{cz} R^{cy} S^x: entry (w, w + x) = q^{c(y w + z)}. Throws ModulusError
/// for c = 0 mod n.
ComplexMatrix rho_principal(const Modulus& n, std::int64_t c, const HeisenbergElement& g);

inline constexpr std::size_t kMaxRepDim = 3125;

/// [rho_c(g) f](w) = q^{c(y.w + z)} f(w + x) on functions of (Z_p)^d.
ComplexMatrix rho_hd_direct(const HeisenbergGroup& group, std::int64_t c, const HDElement& g);
/// q^{cz} (R^{c y_1} S^{x_1}) (x) ... (x) (R^{c y_d} S^{x_d}).
ComplexMatrix rho_hd_tensor(const HeisenbergGroup& group, std::int64_t c, const HDElement& g);

struct RhoPair {
  ComplexMatrix direct;
  ComplexMatrix tensor;
  double discrepancy = 0.0;
};

/// Both constructions; throws std::runtime_error if they differ by more than
/// 1e-12 entrywise and std::length_error above kMaxRepDim.
RhoPair rho_hd(const HeisenbergGroup& group, std::int64_t c, const HDElement& g);

ComplexMatrix evaluate(const Representation& rep, const HDElement& g);

/// Trivial character first, then all other characters (a, b) in lexicographic
/// order, then principal series c = 1..p-1.
std::vector<Representation> all_irreps(const HeisenbergGroup& group);

/// sum_s p(s) rho(s)
ComplexMatrix fourier_at_rep(const GeneratorSet& gens, const Representation& rep);

/// Upper bound (1/2) sqrt( sum_{rho != 1} d_rho Tr(A^k (A^k)^*) ),
/// A = fourier_at_rep(gens, rho), on the TV distance after k steps. Spectra of
/// all Fourier coefficients are computed once on construction.
class FourierTvBound {
 public:
  /// Throws std::length_error outside the resource guards (H(n) with n <= 13,
  /// H(p, d) with order <= kMaxWalkOrder).
  explicit FourierTvBound(const GeneratorSet& gens);

  double at(std::size_t k) const;
  /// Largest |eigenvalue| over non-trivial one-dimensional / principal reps.
  double max_one_dimensional() const noexcept { return max_1d_; }
  double max_principal() const noexcept { return max_principal_; }

 private:
  std::vector<double> one_dim_abs_;                 // |chi_hat|
  std::vector<std::vector<double>> principal_eig_;  // spectra
  std::size_t principal_dim_ = 0;
  double max_1d_ = 0.0;
  double max_principal_ = 0.0;
};

double fourier_tv_bound(const GeneratorSet& gens, std::size_t k);

}  // namespace twc
