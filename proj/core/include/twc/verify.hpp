#pragma once

// Named self-check suites over the library's structural identities. Each
// suite records one case per checked object and a failure entry for every
// residual above its tolerance.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "twc/linalg.hpp"
#include "twc/modular.hpp"
#include "twc/uncertainty.hpp"

namespace twc {

struct VerifyFailure {
  std::string check;
  std::string parameters;
  double residual = 0.0;
  double tolerance = 0.0;
};

struct VerifySuiteReport {
  std::string suite;
  std::size_t cases = 0;
  std::vector<VerifyFailure> failures;
  double wall_seconds = 0.0;
  /// Suite-specific scalar observations (e.g. the empirical minimum of the
  /// uncertainty corollary value).
  std::vector<std::pair<std::string, double>> observations;

  bool passed() const noexcept { return failures.empty(); }
};

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

/// Throws std::invalid_argument for an unknown suite name.
VerifySuiteReport run_suite(const std::string& name, const std::vector<std::int64_t>& n_list,
                            std::uint64_t seed);

/// Unit vector with a randomly chosen shape: generic Gaussian, supported on a
/// small random set, or close to a column of `u`^* (concentrated after u).
ComplexVector random_test_vector(std::mt19937_64& rng, const ComplexMatrix& u);

IndexSet random_index_set(std::mt19937_64& rng, std::size_t n, std::size_t size);

/// Random unit-modulus diagonal entries.
std::vector<Complex> random_unit_diagonal(std::mt19937_64& rng, std::size_t n);

}  // namespace twc
