#include "twc/twisted.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace twc {

ComplexMatrix build_shift(const Modulus& n) {
  const std::size_t size = n.size();
  ComplexMatrix s(size, size);
  for (std::size_t i = 0; i < size; ++i) s(i, (i + 1) % size) = 1.0;
  return s;
}

ComplexMatrix build_clock(const Modulus& n) {
  const std::size_t size = n.size();
  ComplexMatrix r(size, size);
  for (std::size_t j = 0; j < size; ++j) r(j, j) = n.omega(static_cast<std::int64_t>(j));
  return r;
}

ComplexMatrix build_fourier(const Modulus& n) {
  const std::size_t size = n.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  ComplexMatrix f(size, size);
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t l = 0; l < size; ++l)
      f(k, l) = scale * n.omega(static_cast<std::int64_t>(k * l));
  return f;
}

ComplexMatrix build_perm(const Modulus& n, std::int64_t s) {
  if (n.reduce(s) == 0) throw ModulusError("build_perm: s must be nonzero mod n");
  const std::size_t size = n.size();
  ComplexMatrix p(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    const auto row = static_cast<std::size_t>(n.mul(s, static_cast<std::int64_t>(i)));
    p(row, i) = 1.0;
  }
  return p;
}

ComplexMatrix tc_to_matrix(const PhasedTwistedCirculant& a) {
  const Modulus& n = a.modulus();
  const std::size_t size = n.size();
  ComplexMatrix m(size, size);
  // (R^r S^s)(i, i + s) = omega^{r i}
  for (std::size_t i = 0; i < size; ++i) {
    const auto col = static_cast<std::size_t>(n.reduce(static_cast<std::int64_t>(i) + a.s()));
    m(i, col) = n.omega(a.t() + a.r() * static_cast<std::int64_t>(i));
  }
  return m;
}

PhasedTwistedCirculant tc_mul(const PhasedTwistedCirculant& a, const PhasedTwistedCirculant& b) {
  if (!(a.modulus() == b.modulus())) throw ModulusError("tc_mul: modulus mismatch");
  const Modulus& n = a.modulus();
  return {n, a.t() + b.t() + n.mul(a.s(), b.r()), a.r() + b.r(), a.s() + b.s()};
}

PhasedTwistedCirculant tc_pow(const PhasedTwistedCirculant& a, std::uint64_t k) {
  const Modulus& n = a.modulus();
  const auto kk = n.reduce(static_cast<std::int64_t>(k % static_cast<std::uint64_t>(n.value())));
  // (omega^t A(r,s))^k = omega^{kt + rs k(k-1)/2} A(kr, ks)
  const std::int64_t phase = n.mul(kk, a.t()) + n.mul(n.triangular(kk), n.mul(a.r(), a.s()));
  return {n, phase, n.mul(kk, a.r()), n.mul(kk, a.s())};
}

PhasedTwistedCirculant tc_adjoint(const PhasedTwistedCirculant& a) {
  const Modulus& n = a.modulus();
  // (omega^t R^r S^s)^* = omega^{-t} S^{-s} R^{-r} = omega^{rs - t} R^{-r} S^{-s}
  return {n, n.mul(a.r(), a.s()) - a.t(), -a.r(), -a.s()};
}

ComplexMatrix build_M(const Modulus& n, std::int64_t r, std::int64_t s) {
  const auto a = PhasedTwistedCirculant::plain(n, r, s);
  ComplexMatrix m = tc_to_matrix(a);
  m += tc_to_matrix(tc_adjoint(a));
  m *= 0.5;
  return m;
}

DiagonalSpec::DiagonalSpec(Modulus n, std::vector<Complex> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_.size()) {
    throw DimensionError("DiagonalSpec: expected " + std::to_string(n_.size()) +
                         " entries, got " + std::to_string(entries_.size()));
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (std::abs(std::abs(entries_[i]) - 1.0) > 1e-12) {
      throw std::invalid_argument("DiagonalSpec: entry " + std::to_string(i) +
                                  " is not of unit modulus");
    }
  }
}

ComplexMatrix DiagonalSpec::matrix() const { return ComplexMatrix::diagonal(entries_); }

Complex principal_nth_root(Complex alpha, std::int64_t n) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double theta = std::arg(alpha);
  if (theta < 0.0) theta += two_pi;
  // arg of a product that is exactly 1 can round to just below 2 pi.
  if (two_pi - theta < 1e-12) theta = 0.0;
  return std::polar(1.0, theta / static_cast<double>(n));
}

DcDiagonalization diagonalizer_dc(const DiagonalSpec& d, std::int64_t s) {
  const Modulus& n = d.modulus();
  if (n.reduce(s) == 0) throw ModulusError("diagonalizer_dc: s must be nonzero mod n");
  const auto& a = d.entries();
  const std::size_t size = n.size();

  Complex alpha = 1.0;
  for (const auto& x : a) alpha *= x;
  const Complex lambda0 = principal_nth_root(alpha, n.value());

  // B(k,k) = lambda0^k / prod_{l<k} a_{s l}, accumulated as a running ratio.
  std::vector<Complex> b(size);
  b[0] = 1.0;
  for (std::size_t k = 1; k < size; ++k) {
    const auto idx = static_cast<std::size_t>(n.mul(s, static_cast<std::int64_t>(k - 1)));
    b[k] = b[k - 1] * lambda0 / a[idx];
  }

  // U = Pi_s B F: row s*k of U is row k of B F.
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  DcDiagonalization out{ComplexMatrix(size, size), ComplexVector(size), lambda0};
  for (std::size_t k = 0; k < size; ++k) {
    const auto row = static_cast<std::size_t>(n.mul(s, static_cast<std::int64_t>(k)));
    for (std::size_t j = 0; j < size; ++j)
      out.u(row, j) = scale * b[k] * n.omega(static_cast<std::int64_t>(j * k));
  }
  for (std::size_t j = 0; j < size; ++j)
    out.eigenvalues[j] = n.omega(static_cast<std::int64_t>(j)) * lambda0;
  return out;
}

ComplexMatrix build_X(const Modulus& n, std::int64_t r, std::int64_t s) {
  const std::size_t size = n.size();
  if (n.reduce(s) == 0) return ComplexMatrix::identity(size);
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  const std::int64_t rs = n.mul(r, s);
  ComplexMatrix x(size, size);
  for (std::size_t k = 0; k < size; ++k) {
    const auto kk = static_cast<std::int64_t>(k);
    const auto row = static_cast<std::size_t>(n.mul(s, kk));
    const std::int64_t b_exp = -n.mul(rs, n.triangular(kk));
    for (std::size_t c = 0; c < size; ++c)
      x(row, c) = scale * n.omega(b_exp + n.mul(kk, static_cast<std::int64_t>(c)));
  }
  return x;
}

ComplexMatrix change_of_basis(const Modulus& n, std::pair<std::int64_t, std::int64_t> p1,
                              std::pair<std::int64_t, std::int64_t> p2) {
  for (std::int64_t v : {p1.first, p1.second, p2.first, p2.second}) {
    if (n.reduce(v) == 0) {
      throw ModulusError("change_of_basis: r1, s1, r2, s2 must all be nonzero mod n");
    }
  }
  return mat_mul(adjoint(build_X(n, p1.first, p1.second)), build_X(n, p2.first, p2.second));
}

Complex gauss_sum(const Modulus& n, std::int64_t a, std::int64_t b) {
  Complex acc{};
  for (std::int64_t j = 0; j < n.value(); ++j) {
    const std::int64_t m = n.mul(a, n.mul(j, j)) + n.mul(b, j);
    acc += n.omega(n.half_exponent(m));
  }
  return acc;
}

bool equal_slopes(const Modulus& n, std::int64_t r1, std::int64_t s1, std::int64_t r2,
                  std::int64_t s2) {
  return n.mul(r1, s2) == n.mul(r2, s1);
}

}  // namespace twc
