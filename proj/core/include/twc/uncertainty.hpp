#pragma once

// Discrete uncertainty principle for unitaries with uniformly small entries.
//
// For a unitary U with |U_ij| <= c / sqrt(n), any unit vector v and index
// sets S, T:
//
//   |S||T| / n  >=  ( (sqrt(1 - |(Uv)_{T^c}|^2) - |v_{S^c}|) / (c |v_S|) )^2
//
// whenever the numerator is nonnegative, and if |S||T| <= n / (2 c^2) then
// max(|v_{S^c}|, |(Uv)_{T^c}|) >= 1/5.

#include <cstddef>
#include <limits>
#include <vector>

#include "twc/linalg.hpp"

namespace twc {

class IndexSet {
 public:
  /// Members are sorted and deduplicated; throws DimensionError when any
  /// index is outside [0, n).
  IndexSet(std::size_t n, std::vector<std::size_t> members);

  static IndexSet full(std::size_t n);
  static IndexSet empty(std::size_t n) { return IndexSet(n, {}); }
  /// {first, first+1, ..., first+count-1}
  static IndexSet range(std::size_t n, std::size_t first, std::size_t count);

  std::size_t ambient() const noexcept { return n_; }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<std::size_t>& members() const noexcept { return members_; }
  bool contains(std::size_t i) const;
  IndexSet complement() const;

 private:
  std::size_t n_;
  std::vector<std::size_t> members_;
};

ComplexVector project(const ComplexVector& v, const IndexSet& s);

struct UncertaintyReport {
  double lhs = 0.0;        // |S||T| / n
  double numerator = 0.0;  // sqrt(1 - |(Uv)_{T^c}|^2) - |v_{S^c}|, signed
  double rhs = 0.0;        // (max(numerator, 0) / (c |v_S|))^2, or +inf
  double slack = 0.0;      // lhs - rhs; meaningful only when slack_defined
  bool slack_defined = true;
  double corollary_max = 0.0;  // max(|v_{S^c}|, |(Uv)_{T^c}|)
  double tail_s = 0.0;         // |v_{S^c}|
  double tail_t = 0.0;         // |(Uv)_{T^c}|
};

struct UncertaintyTolerances {
  double unitarity = 1e-10;
  double entry_bound = 1e-10;
  double unit_norm = 1e-10;
};

/// Evaluates both sides of the inequality. Throws std::invalid_argument on
/// a violated hypothesis (non-unitary u, an entry above c/sqrt(n) naming its
/// position, non-unit v, or mismatched dimensions). When v_S = 0 the rhs is
/// +inf and slack_defined is false.
UncertaintyReport up_evaluate(const ComplexMatrix& u, double c, const IndexSet& s,
                              const IndexSet& t, const ComplexVector& v,
                              UncertaintyTolerances tol = {});

struct CorollaryResult {
  bool ok = false;
  double value = 0.0;
};

inline constexpr double kCorollaryFloor = 0.2;

/// Requires |S||T| <= n / (2 c^2) in addition to up_evaluate's hypotheses.
/// ok is value >= 1/5 - 1e-12.
CorollaryResult up_corollary_check(const ComplexMatrix& u, double c, const IndexSet& s,
                                   const IndexSet& t, const ComplexVector& v,
                                   UncertaintyTolerances tol = {});

/// Largest |u_ij| * sqrt(n): the smallest admissible c.
double entry_bound_constant(const ComplexMatrix& u);

}  // namespace twc
