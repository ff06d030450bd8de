#pragma once

// Shift, clock, Fourier and permutation matrices over Z_n, twisted circulants
// omega^t R^r S^s, and their explicit diagonalizing unitaries.
//
// Conventions (rows and columns indexed from 0):
//   S(i, j) = 1  iff  i + 1 = j (mod n), so (S x)_i = x_{i+1}
//   R       = diag(1, omega, ..., omega^{n-1})
//   F(k, l) = omega^{kl} / sqrt(n)
//   Pi_s(s i, i) = 1
// with the commutation rule S R = omega R S.

#include <cstdint>
#include <utility>
#include <vector>

#include "twc/linalg.hpp"
#include "twc/modular.hpp"

namespace twc {

ComplexMatrix build_shift(const Modulus& n);
ComplexMatrix build_clock(const Modulus& n);
ComplexMatrix build_fourier(const Modulus& n);

/// Permutation matrix Pi_s with ones at (s*i mod n, i). Throws ModulusError
/// when s = 0 mod n.
ComplexMatrix build_perm(const Modulus& n, std::int64_t s);

/// Exact symbolic value omega^t R^r S^s; all exponents kept in [0, n).
class PhasedTwistedCirculant {
 public:
  PhasedTwistedCirculant(Modulus n, std::int64_t t, std::int64_t r, std::int64_t s)
      : n_(n), t_(n.reduce(t)), r_(n.reduce(r)), s_(n.reduce(s)) {}

  /// A(r, s) = R^r S^s.
  static PhasedTwistedCirculant plain(Modulus n, std::int64_t r, std::int64_t s) {
    return {n, 0, r, s};
  }

  const Modulus& modulus() const noexcept { return n_; }
  std::int64_t t() const noexcept { return t_; }
  std::int64_t r() const noexcept { return r_; }
  std::int64_t s() const noexcept { return s_; }

  friend bool operator==(const PhasedTwistedCirculant&, const PhasedTwistedCirculant&) = default;

 private:
  Modulus n_;
  std::int64_t t_, r_, s_;
};

ComplexMatrix tc_to_matrix(const PhasedTwistedCirculant& a);

/// Product via S^s R^r = omega^{rs} R^r S^s. Throws ModulusError on mismatch.
PhasedTwistedCirculant tc_mul(const PhasedTwistedCirculant& a, const PhasedTwistedCirculant& b);
PhasedTwistedCirculant tc_pow(const PhasedTwistedCirculant& a, std::uint64_t k);
/// The adjoint, which is again a phased twisted circulant.
PhasedTwistedCirculant tc_adjoint(const PhasedTwistedCirculant& a);

/// M(r, s) = (A(r, s) + A(r, s)^*) / 2.
ComplexMatrix build_M(const Modulus& n, std::int64_t r, std::int64_t s);

/// Diagonal D = diag(a_0, ..., a_{n-1}) with unit-modulus entries.
class DiagonalSpec {
 public:
  /// Throws std::invalid_argument when the length differs from n or an
  /// entry is off the unit circle by more than 1e-12.
  DiagonalSpec(Modulus n, std::vector<Complex> entries);

  const Modulus& modulus() const noexcept { return n_; }
  const std::vector<Complex>& entries() const noexcept { return entries_; }
  ComplexMatrix matrix() const;

 private:
  Modulus n_;
  std::vector<Complex> entries_;
};

struct DcDiagonalization {
  ComplexMatrix u;          // Pi_s B F
  ComplexVector eigenvalues;  // omega^j lambda_0, j = 0..n-1, in column order
  Complex lambda0;
};

/// Unitary U = Pi_s B F with U^* (D S^s) U = diag(omega^j lambda_0), where
/// B(k, k) = lambda_0^k / prod_{l<k} a_{s l} and lambda_0 = exp(i theta / n)
/// for theta = arg(a_0 ... a_{n-1}) taken in [0, 2 pi).
DcDiagonalization diagonalizer_dc(const DiagonalSpec& d, std::int64_t s);

/// The n-th root of alpha selected by diagonalizer_dc.
Complex principal_nth_root(Complex alpha, std::int64_t n);

/// X(r, s) = Pi_s B F with B(k, k) = omega^{-rs k(k-1)/2}; X(r, 0) = I.
/// X^* A(r, s) X = diag(1, omega, ..., omega^{n-1}).
ComplexMatrix build_X(const Modulus& n, std::int64_t r, std::int64_t s);

/// X(r1, s1)^* X(r2, s2). All four parameters must be nonzero mod n.
ComplexMatrix change_of_basis(const Modulus& n, std::pair<std::int64_t, std::int64_t> p1,
                              std::pair<std::int64_t, std::int64_t> p2);

/// sum_{j=0}^{n-1} Omega^{a j^2 + b j} with Omega = omega^{(n+1)/2}.
Complex gauss_sum(const Modulus& n, std::int64_t a, std::int64_t b);

/// r1 s2 == r2 s1 (mod n): the two twisted circulants commute.
bool equal_slopes(const Modulus& n, std::int64_t r1, std::int64_t s1, std::int64_t r2,
                  std::int64_t s2);

}  // namespace twc
