#pragma once

#include <cstdint>
#include <stdexcept>

#include "twc/linalg.hpp"

namespace twc {

class ModulusError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(std::int64_t n);

/// An odd prime n >= 3 together with arithmetic in Z_n.
///
/// Exponents of the primitive root omega = e^{2 pi i / n} are reduced in
/// exact integer arithmetic before any floating-point evaluation, so
/// omega(k) and omega(k + n) are bit-identical.
class Modulus {
 public:
  explicit Modulus(std::int64_t n);

  std::int64_t value() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_); }

  std::int64_t reduce(std::int64_t a) const noexcept {
    const std::int64_t r = a % n_;
    return r < 0 ? r + n_ : r;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const noexcept {
    return reduce(reduce(a) * reduce(b));
  }
  /// Multiplicative inverse; throws ModulusError for a == 0 mod n.
  std::int64_t inverse(std::int64_t a) const;

  /// omega^k.
  Complex omega(std::int64_t k) const;

  /// Exponent e with Omega^m = omega^e, where Omega = omega^{(n+1)/2} is the
  /// square root of omega among the n-th roots of unity.
  std::int64_t half_exponent(std::int64_t m) const noexcept {
    return mul(m, (n_ + 1) / 2);
  }

  /// k(k-1)/2 mod n, computed exactly.
  std::int64_t triangular(std::int64_t k) const noexcept;

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  std::int64_t n_;
};

}  // namespace twc
