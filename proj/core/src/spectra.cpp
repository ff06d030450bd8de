#include "twc/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include "twc/parallel.hpp"

namespace twc {

SumSpec::SumSpec(Modulus n, std::vector<SumTerm> terms) : n_(n), terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("SumSpec: no terms");
  double total = 0.0;
  for (const auto& t : terms_) {
    if (!(t.weight > 0.0)) throw std::invalid_argument("SumSpec: weights must be positive");
    total += t.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("SumSpec: weights sum to " + std::to_string(total) + ", not 1");
  }
}

ComplexMatrix weighted_sum(const SumSpec& spec) {
  const Modulus& n = spec.modulus();
  ComplexMatrix out(n.size(), n.size());
  for (const auto& t : spec.terms()) out += t.weight * build_M(n, t.r, t.s);
  return out;
}

const char* to_string(SlopeRegime regime) {
  return regime == SlopeRegime::generic ? "generic" : "equal_slopes";
}

SpectralScanRecord make_record(const Modulus& n, std::int64_t r1, std::int64_t s1,
                               std::int64_t r2, std::int64_t s2, double norm) {
  SpectralScanRecord rec;
  rec.n = n.value();
  rec.r1 = n.reduce(r1);
  rec.s1 = n.reduce(s1);
  rec.r2 = n.reduce(r2);
  rec.s2 = n.reduce(s2);
  rec.regime = equal_slopes(n, r1, s1, r2, s2) ? SlopeRegime::equal_slopes : SlopeRegime::generic;
  rec.norm = norm;
  rec.gap = 1.0 - norm;
  rec.scaled_gap = static_cast<double>(n.value()) * rec.gap;
  return rec;
}

SpectralScanRecord pair_norm(const Modulus& n, std::int64_t r1, std::int64_t s1,
                             std::int64_t r2, std::int64_t s2) {
  const SumSpec spec(n, {{0.5, r1, s1}, {0.5, r2, s2}});
  return make_record(n, r1, s1, r2, s2, operator_norm_hermitian(weighted_sum(spec)));
}

std::vector<std::array<std::int64_t, 4>> generic_quadruples(const Modulus& n) {
  std::vector<std::array<std::int64_t, 4>> out;
  const std::int64_t m = n.value();
  for (std::int64_t r1 = 0; r1 < m; ++r1)
    for (std::int64_t s1 = 0; s1 < m; ++s1)
      for (std::int64_t r2 = 0; r2 < m; ++r2)
        for (std::int64_t s2 = 0; s2 < m; ++s2)
          if (!equal_slopes(n, r1, s1, r2, s2)) out.push_back({r1, s1, r2, s2});
  return out;
}

ScanSummary gap_scan(const Modulus& n, const ScanOptions& options) {
  std::vector<std::array<std::int64_t, 4>> quads;
  if (options.mode == ScanMode::exhaustive) {
    if (n.value() > 13) {
      throw std::invalid_argument("gap_scan: exhaustive mode is limited to n <= 13");
    }
    quads = generic_quadruples(n);
  } else {
    std::mt19937_64 rng(task_seed(options.seed, static_cast<std::uint64_t>(n.value())));
    std::uniform_int_distribution<std::int64_t> pick(0, n.value() - 1);
    quads.reserve(options.count);
    while (quads.size() < options.count) {
      std::array<std::int64_t, 4> q{pick(rng), pick(rng), pick(rng), pick(rng)};
      if (!equal_slopes(n, q[0], q[1], q[2], q[3])) quads.push_back(q);
    }
  }

  ScanSummary summary;
  summary.records.resize(quads.size());
  parallel_for(quads.size(), options.threads, [&](std::size_t i) {
    const auto& q = quads[i];
    summary.records[i] = pair_norm(n, q[0], q[1], q[2], q[3]);
  });
  for (std::size_t i = 0; i < summary.records.size(); ++i) {
    if (summary.records[i].gap < summary.min_gap) {
      summary.min_gap = summary.records[i].gap;
      summary.argmin = i;
    }
  }
  summary.min_scaled_gap = static_cast<double>(n.value()) * summary.min_gap;
  return summary;
}

SpectralScanRecord diagonal_case_norm(const Modulus& n, std::int64_t r1, const DiagonalSpec& d,
                                      std::int64_t s) {
  if (!(d.modulus() == n)) throw ModulusError("diagonal_case_norm: modulus mismatch");
  if (n.reduce(s) == 0) throw ModulusError("diagonal_case_norm: s must be nonzero mod n");
  const ComplexMatrix dc = mat_mul(d.matrix(), tc_to_matrix(PhasedTwistedCirculant::plain(n, 0, s)));
  // Second summand normalised like M(r, s) = (A + A^*) / 2, so that D = R^r
  // gives (M(r1, 0) + M(r, s)) / 2.
  ComplexMatrix second = dc + adjoint(dc);
  second *= 0.5;
  ComplexMatrix m = build_M(n, r1, 0);
  m += second;
  m *= 0.5;
  // Recorded as (r1, 0, ., s); the second pair's r is not meaningful for general D.
  return make_record(n, r1, 0, 0, s, operator_norm_hermitian(m));
}

AveragingReport averaging_bound_check(
    const Modulus& n, const std::vector<std::pair<std::int64_t, std::int64_t>>& params,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairing) {
  if (params.empty()) throw std::invalid_argument("averaging_bound_check: no matrices");
  const std::size_t d = params.size();
  std::set<std::size_t> used;
  for (const auto& [i, j] : pairing) {
    if (i >= d || j >= d || i == j) {
      throw std::invalid_argument("averaging_bound_check: invalid pair (" + std::to_string(i) +
                                  ", " + std::to_string(j) + ")");
    }
    if (!used.insert(i).second || !used.insert(j).second) {
      throw std::invalid_argument("averaging_bound_check: pairs are not disjoint");
    }
    const auto [ri, si] = params[i];
    const auto [rj, sj] = params[j];
    if (equal_slopes(n, ri, si, rj, sj)) {
      throw std::invalid_argument("averaging_bound_check: pair (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ") has r_i s_j = r_j s_i");
    }
  }

  std::vector<ComplexMatrix> ms;
  ms.reserve(d);
  for (const auto& [r, s] : params) ms.push_back(build_M(n, r, s));

  AveragingReport rep;
  rep.d = d;
  ComplexMatrix avg(n.size(), n.size());
  for (const auto& m : ms) avg += m;
  avg *= 1.0 / static_cast<double>(d);
  rep.aggregate_norm = operator_norm_hermitian(avg);

  const double dd = static_cast<double>(d);
  const double nn = static_cast<double>(n.value());
  double gap_total = 0.0;
  for (const auto& [i, j] : pairing) {
    const double pn = operator_norm_hermitian(ms[i] + ms[j]);
    const bool ok = pn <= 2.0 - 2.0 / nn;
    rep.pair_norms.push_back(pn);
    rep.pair_literal_ok.push_back(ok);
    rep.all_pairs_literal_ok = rep.all_pairs_literal_ok && ok;
    gap_total += 2.0 - pn;
  }
  const double k = static_cast<double>(pairing.size());
  constexpr double slack = 1e-12;
  rep.literal_bound = 1.0 - 2.0 * k / (dd * nn);
  rep.aggregate_within_literal = rep.aggregate_norm <= rep.literal_bound + slack;
  rep.measured_bound = 1.0 - gap_total / dd;
  rep.aggregate_within_measured = rep.aggregate_norm <= rep.measured_bound + slack;
  return rep;
}

namespace {

// cos(2 pi m / n) for m in [0, n).
std::vector<double> cosine_table(const Modulus& n) {
  std::vector<double> table(n.size());
  for (std::size_t m = 0; m < n.size(); ++m) table[m] = n.omega(static_cast<std::int64_t>(m)).real();
  return table;
}

template <typename Visit>
void closed_form_values(const Modulus& n, const std::vector<double>& cosines, std::int64_t k,
                        std::int64_t product1, Visit&& visit) {
  const std::int64_t offset = -n.mul(n.triangular(k), product1);
  for (std::int64_t d = 0; d < n.value(); ++d) {
    const auto e = static_cast<std::size_t>(n.reduce(offset + n.mul(k, d)));
    visit(0.5 * (cosines[static_cast<std::size_t>(d)] + cosines[e]));
  }
}

}  // namespace

EqualSlopeSpectrum equal_slope_spectrum(const Modulus& n, std::int64_t r1, std::int64_t s1,
                                        std::int64_t r2, std::int64_t s2) {
  for (std::int64_t v : {r1, s1, r2, s2})
    if (n.reduce(v) == 0) {
      throw std::invalid_argument("equal_slope_spectrum: parameters must be nonzero mod n");
    }
  const std::int64_t k = n.mul(r2, n.inverse(r1));
  if (k != n.mul(s2, n.inverse(s1))) {
    throw std::invalid_argument("equal_slope_spectrum: r2/r1 != s2/s1, slopes differ");
  }
  EqualSlopeSpectrum out;
  out.n = n.value();
  out.k = k;
  out.product = n.mul(r1, s1);
  out.lambdas.reserve(n.size());
  const auto cosines = cosine_table(n);
  closed_form_values(n, cosines, k, out.product, [&](double v) { out.lambdas.push_back(v); });
  return out;
}

double equal_slope_norm(const Modulus& n, std::int64_t k, std::int64_t product1) {
  const auto cosines = cosine_table(n);
  double best = 0.0;
  closed_form_values(n, cosines, k, product1, [&](double v) { best = std::max(best, std::abs(v)); });
  return best;
}

double threshold_value(const Modulus& n, ThresholdPreset preset) {
  const double nn = static_cast<double>(n.value());
  return preset == ThresholdPreset::caption ? 1.0 - 1.0 / nn
                                            : std::cos(2.0 * std::numbers::pi / nn);
}

std::vector<GridCell> equal_slope_grid(const Modulus& n, double threshold, int threads) {
  const std::int64_t m = n.value();
  const auto cosines = cosine_table(n);
  const auto side = static_cast<std::size_t>(m - 1);
  std::vector<GridCell> cells(side * side);
  parallel_for(side, threads, [&](std::size_t row) {
    const auto product = static_cast<std::int64_t>(row) + 1;  // r2 s2
    for (std::int64_t k = 1; k < m; ++k) {
      const std::int64_t kinv = n.inverse(k);
      const std::int64_t product1 = n.mul(product, n.mul(kinv, kinv));  // r1 s1
      double best = 0.0;
      closed_form_values(n, cosines, k, product1,
                         [&](double v) { best = std::max(best, std::abs(v)); });
      GridCell& cell = cells[row * side + static_cast<std::size_t>(k - 1)];
      cell.product = product;
      cell.k = k;
      cell.k_times_product = n.mul(k, product);
      cell.norm = best;
      cell.marked = best > threshold;
      cell.degenerate = k == 1;
    }
  });
  return cells;
}

GridSummary summarize_grid(const Modulus& n, const std::vector<GridCell>& cells) {
  GridSummary s;
  const double caption = threshold_value(n, ThresholdPreset::caption);
  s.cells = cells.size();
  for (const auto& c : cells) {
    if (c.degenerate) continue;
    ++s.non_degenerate;
    if (c.marked) ++s.marked;
    if (c.norm < caption) ++s.below_caption;
  }
  s.fraction_below_caption =
      s.non_degenerate ? static_cast<double>(s.below_caption) / static_cast<double>(s.non_degenerate)
                       : 0.0;
  return s;
}

}  // namespace twc
