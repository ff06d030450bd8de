#include "twc/modular.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace twc {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

Modulus::Modulus(std::int64_t n) : n_(n) {
  if (n < 3 || !is_prime(n)) {
    throw ModulusError("modulus must be an odd prime (got " + std::to_string(n) + ")");
  }
}

std::int64_t Modulus::inverse(std::int64_t a) const {
  std::int64_t r0 = n_, r1 = reduce(a);
  if (r1 == 0) throw ModulusError("0 has no inverse mod " + std::to_string(n_));
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  return reduce(t0);
}

Complex Modulus::omega(std::int64_t k) const {
  const std::int64_t e = reduce(k);
  if (e == 0) return {1.0, 0.0};
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n_);
  return std::polar(1.0, angle);
}

std::int64_t Modulus::triangular(std::int64_t k) const noexcept {
  // k(k-1) is even, so halve before reducing.
  const std::int64_t kk = reduce(k);
  const std::int64_t a = kk % 2 == 0 ? kk / 2 : kk;
  const std::int64_t b = kk % 2 == 0 ? kk - 1 : (kk - 1) / 2;
  return mul(a, b);
}

}  // namespace twc
