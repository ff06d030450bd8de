#pragma once

// Operator norms of weighted sums of Hermitian twisted circulants M(r, s).
//
// For r1 s2 != r2 s1 (mod n) the norm of (M(r1,s1) + M(r2,s2)) / 2 stays a
// distance of order 1/n below 1; gap_scan measures that distance. When the
// slopes agree the two summands commute and the spectrum has the closed form
//
//   lambda_d = ( cos(2 pi d / n) + cos(2 pi (-k(k-1)/2 r1 s1 + k d) / n) ) / 2
//
// with k = r2 / r1 = s2 / s1, evaluated by equal_slope_spectrum and
// tabulated over (r2 s2, k) by equal_slope_grid.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "twc/linalg.hpp"
#include "twc/modular.hpp"
#include "twc/twisted.hpp"

namespace twc {

struct SumTerm {
  double weight;
  std::int64_t r;
  std::int64_t s;
};

/// sum_i w_i M(r_i, s_i); weights positive and summing to 1 within 1e-12.
class SumSpec {
 public:
  SumSpec(Modulus n, std::vector<SumTerm> terms);

  const Modulus& modulus() const noexcept { return n_; }
  const std::vector<SumTerm>& terms() const noexcept { return terms_; }

 private:
  Modulus n_;
  std::vector<SumTerm> terms_;
};

ComplexMatrix weighted_sum(const SumSpec& spec);

enum class SlopeRegime { generic, equal_slopes };

const char* to_string(SlopeRegime regime);

struct SpectralScanRecord {
  std::int64_t n = 0;
  std::int64_t r1 = 0, s1 = 0, r2 = 0, s2 = 0;
  SlopeRegime regime = SlopeRegime::generic;
  double norm = 0.0;
  double gap = 0.0;         // 1 - norm
  double scaled_gap = 0.0;  // n * gap
};

SpectralScanRecord make_record(const Modulus& n, std::int64_t r1, std::int64_t s1,
                               std::int64_t r2, std::int64_t s2, double norm);

/// Norm of (M(r1,s1) + M(r2,s2)) / 2 from the Jacobi eigensolver.
SpectralScanRecord pair_norm(const Modulus& n, std::int64_t r1, std::int64_t s1,
                             std::int64_t r2, std::int64_t s2);

enum class ScanMode { exhaustive, sampled };

struct ScanOptions {
  ScanMode mode = ScanMode::sampled;
  std::size_t count = 500;  // sampled mode only
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ScanSummary {
  std::vector<SpectralScanRecord> records;  // generic regime only
  double min_gap = 1.0;
  double min_scaled_gap = 0.0;
  std::size_t argmin = 0;  // index into records
};

/// Scans quadruples with r1 s2 != r2 s1. Exhaustive mode enumerates Z_n^4 in
/// lexicographic (r1, s1, r2, s2) order and is limited to n <= 13; sampled
/// mode draws `count` valid quadruples from a stream seeded by `seed`.
ScanSummary gap_scan(const Modulus& n, const ScanOptions& options);

/// All quadruples in Z_n^4 with r1 s2 != r2 s1, lexicographic.
std::vector<std::array<std::int64_t, 4>> generic_quadruples(const Modulus& n);

/// Norm of (M(r1, 0) + (D S^s + (D S^s)^*) / 2) / 2 for unit-modulus D.
SpectralScanRecord diagonal_case_norm(const Modulus& n, std::int64_t r1, const DiagonalSpec& d,
                                      std::int64_t s);

struct AveragingReport {
  std::size_t d = 0;
  double aggregate_norm = 0.0;           // |(1/d) sum_i M_i|
  std::vector<double> pair_norms;        // |M_i + M_j| per pair
  std::vector<bool> pair_literal_ok;     // |M_i + M_j| <= 2 - 2/n
  bool all_pairs_literal_ok = true;
  double literal_bound = 1.0;            // 1 - 2k/(dn) for k pairs
  bool aggregate_within_literal = true;
  double measured_bound = 1.0;           // 1 - (1/d) sum_pairs (2 - |M_i + M_j|)
  bool aggregate_within_measured = true;
};

/// Checks the averaging bound for (1/d) sum M(r_i, s_i) given an explicit set
/// of disjoint index pairs with r_i s_j != r_j s_i. Throws
/// std::invalid_argument for overlapping, out-of-range, or equal-slope pairs.
AveragingReport averaging_bound_check(const Modulus& n,
                                      const std::vector<std::pair<std::int64_t, std::int64_t>>& params,
                                      const std::vector<std::pair<std::size_t, std::size_t>>& pairing);

struct EqualSlopeSpectrum {
  std::int64_t n = 0;
  std::int64_t k = 0;        // r2 / r1 = s2 / s1
  std::int64_t product = 0;  // r1 s1
  std::vector<double> lambdas;  // indexed by d = 0..n-1
};

/// Closed-form spectrum of (M(r1,s1) + M(r2,s2)) / 2 for equal slopes. All
/// parameters must be nonzero and r1 s2 = r2 s1; otherwise throws
/// std::invalid_argument.
EqualSlopeSpectrum equal_slope_spectrum(const Modulus& n, std::int64_t r1, std::int64_t s1,
                                        std::int64_t r2, std::int64_t s2);

/// max_d |lambda_d| for the cell with slope ratio k and r1 s1 = product1.
double equal_slope_norm(const Modulus& n, std::int64_t k, std::int64_t product1);

struct GridCell {
  std::int64_t product = 0;  // r2 s2
  std::int64_t k = 0;
  std::int64_t k_times_product = 0;
  double norm = 0.0;
  bool marked = false;      // norm > threshold
  bool degenerate = false;  // k == 1
};

enum class ThresholdPreset { caption, text };

/// caption: 1 - 1/n.  text: cos(2 pi / n), i.e. 1 - (1 - cos(2 pi / n)).
double threshold_value(const Modulus& n, ThresholdPreset preset);

/// One cell per (product, k) in {1..n-1}^2, ordered by product then k.
/// Uses only the closed form.
std::vector<GridCell> equal_slope_grid(const Modulus& n, double threshold, int threads = 1);

struct GridSummary {
  std::size_t cells = 0;
  std::size_t non_degenerate = 0;
  std::size_t marked = 0;            // non-degenerate cells above threshold
  std::size_t below_caption = 0;     // non-degenerate cells with norm < 1 - 1/n
  double fraction_below_caption = 0.0;
};

GridSummary summarize_grid(const Modulus& n, const std::vector<GridCell>& cells);

}  // namespace twc
