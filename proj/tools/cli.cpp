#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <variant>

#include "twc/heisenberg.hpp"
#include "twc/parallel.hpp"
#include "twc/spectra.hpp"
#include "twc/twisted.hpp"
#include "twc/verify.hpp"

namespace twc::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::int64_t, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct CommonOptions {
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  int threads = 1;
};

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, double>)
              os << format_double(v);
            else if constexpr (std::is_same_v<V, bool>)
              os << (v ? "true" : "false");
            else
              os << v;
          },
          row[i]);
    }
    os << '\n';
  }
}

nlohmann::json to_json(const Table& t) {
  auto arr = nlohmann::json::array();
  for (const auto& row : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i)
      std::visit([&](const auto& v) { obj[t.columns[i]] = v; }, row[i]);
    arr.push_back(std::move(obj));
  }
  return arr;
}

class Sink {
 public:
  Sink(const CommonOptions& opts, std::ostream& fallback) {
    if (!opts.out_path.empty()) {
      file_.open(opts.out_path);
      if (!file_) throw UsageError("cannot open output file " + opts.out_path);
    }
    stream_ = opts.out_path.empty() ? &fallback : &file_;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void emit(const CommonOptions& opts, std::ostream& out, const Table& t) {
  Sink sink(opts, out);
  if (opts.format == "json")
    sink.stream() << to_json(t).dump(2) << '\n';
  else
    write_csv(sink.stream(), t);
}

std::vector<std::int64_t> parse_ints(const std::string& text, char sep) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("malformed integer '" + item + "'");
    }
    if (item.find_first_not_of(" \t", pos) != std::string::npos) {
      throw UsageError("malformed integer '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::vector<std::int64_t>> parse_groups(const std::string& text, std::size_t width,
                                                    const char* what) {
  std::vector<std::vector<std::int64_t>> out;
  std::stringstream ss(text);
  std::string group;
  while (std::getline(ss, group, ';')) {
    if (group.find_first_not_of(" \t") == std::string::npos) continue;
    auto vals = parse_ints(group, ',');
    if (vals.size() != width) {
      throw UsageError(std::string("malformed ") + what + " '" + group + "': expected " +
                       std::to_string(width) + " comma-separated integers");
    }
    out.push_back(std::move(vals));
  }
  if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
  return out;
}

Modulus make_modulus(std::int64_t n) {
  try {
    return Modulus(n);
  } catch (const ModulusError&) {
    throw UsageError("modulus must be an odd prime (got " + std::to_string(n) + ")");
  }
}

// spectrum --------------------------------------------------------------

struct SpectrumArgs {
  std::int64_t n = 0;
  std::string pairs;
  bool exhaustive = false;
  std::size_t samples = 500;
};

Table spectrum_table(const std::vector<SpectralScanRecord>& recs) {
  Table t{{"n", "r1", "s1", "r2", "s2", "regime", "norm", "gap", "scaled_gap"}, {}};
  for (const auto& r : recs)
    t.rows.push_back({r.n, r.r1, r.s1, r.r2, r.s2, std::string(to_string(r.regime)), r.norm, r.gap, r.scaled_gap});
  return t;
}

int cmd_spectrum(const SpectrumArgs& a, const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const Modulus n = make_modulus(a.n);
  std::vector<SpectralScanRecord> recs;
  if (!a.pairs.empty()) {
    for (const auto& q : parse_groups(a.pairs, 4, "pair")) recs.push_back(pair_norm(n, q[0], q[1], q[2], q[3]));
  } else {
    if (a.exhaustive && a.n > 13) throw UsageError("--exhaustive is limited to n <= 13");
    ScanOptions so;
    so.mode = a.exhaustive ? ScanMode::exhaustive : ScanMode::sampled;
    so.count = a.samples;
    so.seed = opts.seed;
    so.threads = opts.threads;
    auto summary = gap_scan(n, so);
    recs = std::move(summary.records);
  }
  emit(opts, out, spectrum_table(recs));

  std::size_t violations = 0;
  double min_gap = 1.0;
  for (const auto& r : recs) {
    if (r.regime != SlopeRegime::generic) continue;
    min_gap = std::min(min_gap, r.gap);
    if (!(r.gap > 0.0)) ++violations;
  }
  err << "records=" << recs.size() << " min_gap=" << format_double(min_gap)
      << " min_scaled_gap=" << format_double(static_cast<double>(a.n) * min_gap) << " violations=" << violations
      << '\n';
  return violations ? kExitViolation : kExitOk;
}

// grid ------------------------------------------------------------------

int cmd_grid(std::int64_t nv, const std::string& threshold_arg, const CommonOptions& opts, std::ostream& out,
             std::ostream& err) {
  const Modulus n = make_modulus(nv);
  double threshold = 0.0;
  if (threshold_arg == "caption") {
    threshold = threshold_value(n, ThresholdPreset::caption);
  } else if (threshold_arg == "text") {
    threshold = threshold_value(n, ThresholdPreset::text);
  } else {
    std::size_t pos = 0;
    try {
      threshold = std::stod(threshold_arg, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad threshold '" + threshold_arg + "' (caption, text, or a number in [0, 1))");
    }
    if (pos != threshold_arg.size() || !(threshold >= 0.0 && threshold < 1.0)) {
      throw UsageError("bad threshold '" + threshold_arg + "' (caption, text, or a number in [0, 1))");
    }
  }
  const auto cells = equal_slope_grid(n, threshold, opts.threads);
  Table t{{"product", "k", "k_times_product", "norm", "marked", "degenerate"}, {}};
  t.rows.reserve(cells.size());
  for (const auto& c : cells) t.rows.push_back({c.product, c.k, c.k_times_product, c.norm, c.marked, c.degenerate});
  emit(opts, out, t);

  const auto s = summarize_grid(n, cells);
  err << "threshold=" << format_double(threshold) << " cells=" << s.cells << " non_degenerate=" << s.non_degenerate
      << " marked=" << s.marked << " fraction_below_1_minus_1_over_n=" << format_double(s.fraction_below_caption)
      << '\n';
  return kExitOk;
}

// mix -------------------------------------------------------------------

struct MixArgs {
  std::optional<std::int64_t> n, p, d;
  std::string gens;
  double eps = 0.25;
  std::size_t max_steps = 10000;
  bool bound = false;
};

int cmd_mix(const MixArgs& a, const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  if (a.n.has_value() == (a.p.has_value() || a.d.has_value())) {
    throw UsageError("give either --n, or --p together with --d");
  }
  if (!(a.eps > 0.0 && a.eps < 1.0)) throw UsageError("--eps must lie in (0, 1)");

  std::optional<GeneratorSet> gens;
  if (a.n) {
    const Modulus n = make_modulus(*a.n);
    std::int64_t s1 = 1, r1 = 0, s2 = 0, r2 = 1;
    if (!a.gens.empty()) {
      const auto g = parse_groups(a.gens, 2, "generator");
      if (g.size() != 2) throw UsageError("--gens takes exactly two pairs \"s1,r1;s2,r2\"");
      s1 = g[0][0], r1 = g[0][1], s2 = g[1][0], r2 = g[1][1];
    }
    if (!generating_check(n, r1, s1, r2, s2)) {
      err << "r1s2 ≡ r2s1 (mod " << *a.n << "): set does not generate (r1*s2 = " << n.mul(r1, s2)
          << ", r2*s1 = " << n.mul(r2, s1) << ")\n";
      return kExitUsage;
    }
    gens = two_generator_set(n, s1, r1, s2, r2);
  } else {
    if (!a.p || !a.d) throw UsageError("--p and --d must be given together");
    if (!a.gens.empty()) throw UsageError("--gens applies to H(n) only");
    if (*a.d < 1) throw UsageError("--d must be positive");
    gens = standard_generators(HeisenbergGroup(make_modulus(*a.p), static_cast<std::size_t>(*a.d)));
  }
  if (gens->group().order() > kMaxWalkOrder) {
    throw UsageError("group order " + std::to_string(gens->group().order()) + " exceeds the walk limit " +
                     std::to_string(kMaxWalkOrder));
  }

  const auto result = mixing_time(*gens, a.eps, a.max_steps);
  std::optional<FourierTvBound> bound;
  if (a.bound) {
    try {
      bound.emplace(*gens);
    } catch (const std::length_error& e) {
      throw UsageError(e.what());
    }
  }
  Table t{{"k", "tv"}, {}};
  if (bound) t.columns.push_back("bound");
  std::size_t violations = 0;
  for (std::size_t k = 0; k < result.tv.size(); ++k) {
    std::vector<Cell> row{static_cast<std::int64_t>(k), result.tv[k]};
    if (bound) {
      const double b = bound->at(k);
      if (b < result.tv[k]) ++violations;
      row.emplace_back(b);
    }
    t.rows.push_back(std::move(row));
  }
  emit(opts, out, t);
  err << "order=" << gens->group().order() << " eps=" << format_double(a.eps);
  if (result.reached)
    err << " k_star=" << result.steps;
  else
    err << " k_star=not_reached max_steps=" << a.max_steps;
  if (bound) err << " bound_violations=" << violations;
  err << '\n';
  return violations ? kExitViolation : kExitOk;
}

// verify ----------------------------------------------------------------

int cmd_verify(const std::string& suite, const std::string& n_list, bool timing, const CommonOptions& opts,
               std::ostream& out, std::ostream& err) {
  std::vector<std::string> suites;
  if (suite == "all")
    suites = suite_names();
  else if (is_suite_name(suite))
    suites = {suite};
  else
    throw UsageError("unknown suite '" + suite + "'");
  const auto ns = parse_ints(n_list, ',');
  if (ns.empty()) throw UsageError("empty --n-list");
  for (auto v : ns) make_modulus(v);

  nlohmann::json report = nlohmann::json::array();
  Table rows{{"suite", "check", "parameters", "residual", "tolerance"}, {}};
  bool ok = true;
  for (const auto& name : suites) {
    const auto rep = run_suite(name, ns, opts.seed);
    ok = ok && rep.passed();
    nlohmann::json j;
    j["suite"] = rep.suite;
    j["cases"] = rep.cases;
    j["passed"] = rep.passed();
    auto failures = nlohmann::json::array();
    for (const auto& f : rep.failures) {
      failures.push_back({{"check", f.check}, {"parameters", f.parameters}, {"residual", f.residual},
                          {"tolerance", f.tolerance}});
      rows.rows.push_back({rep.suite, f.check, f.parameters, f.residual, f.tolerance});
    }
    j["failures"] = failures;
    for (const auto& [k, v] : rep.observations) j["observations"][k] = v;
    if (timing) j["wall_seconds"] = rep.wall_seconds;
    report.push_back(j);
    err << name << ": cases=" << rep.cases << " failures=" << rep.failures.size() << '\n';
  }
  if (opts.format == "csv") {
    emit(opts, out, rows);
  } else {
    Sink sink(opts, out);
    sink.stream() << report.dump(2) << '\n';
  }
  return ok ? kExitOk : kExitViolation;
}

// rep -------------------------------------------------------------------

int cmd_rep(std::int64_t pv, std::int64_t dv, std::int64_t c, const CommonOptions& opts, std::ostream& out,
            std::ostream& err) {
  const Modulus p = make_modulus(pv);
  if (dv < 1) throw UsageError("--d must be positive");
  if (p.reduce(c) == 0) throw UsageError("--c must be nonzero mod p");
  const HeisenbergGroup group(p, static_cast<std::size_t>(dv));
  if (group.rep_dim() > kMaxRepDim || group.order() > 100000) {
    throw UsageError("representation too large for --p " + std::to_string(pv) + " --d " + std::to_string(dv));
  }

  double discrepancy = 0.0;
  double principal_diff = 0.0;
  for (std::size_t idx = 0; idx < group.order(); ++idx) {
    const auto g = index_element(group, idx);
    const auto direct = rho_hd_direct(group, c, g);
    const auto tensor = rho_hd_tensor(group, c, g);
    discrepancy = std::max(discrepancy, max_abs_diff(direct, tensor));
    if (dv == 1) {
      principal_diff = std::max(
          principal_diff, max_abs_diff(tensor, rho_principal(p, c, HeisenbergElement(p, g.x[0], g.y[0], g.z))));
    }
  }

  std::mt19937_64 rng(task_seed(opts.seed, static_cast<std::uint64_t>(pv), static_cast<std::uint64_t>(dv)));
  std::uniform_int_distribution<std::size_t> pick(0, group.order() - 1);
  double hom = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto g = index_element(group, pick(rng));
    const auto h = index_element(group, pick(rng));
    hom = std::max(hom, max_abs_diff(mat_mul(rho_hd_tensor(group, c, g), rho_hd_tensor(group, c, h)),
                                     rho_hd_tensor(group, c, hd_mul(g, h))));
  }

  const auto gens = standard_generators(group);
  const double avg_norm = operator_norm_hermitian(fourier_at_rep(gens, {group, PrincipalRep{c}}));
  double one_dim_max = 0.0;
  for (const auto& rep : all_irreps(group)) {
    if (rep.dimension() != 1 || rep.is_trivial()) continue;
    one_dim_max = std::max(one_dim_max, std::abs(fourier_at_rep(gens, rep)(0, 0)));
  }
  const double cos_ref = std::cos(2.0 * std::numbers::pi / static_cast<double>(pv));

  Table t{{"p", "d", "c", "discrepancy", "principal_d1_discrepancy", "homomorphism_residual", "average_norm",
           "one_dim_max", "cos_2pi_over_p"},
          {}};
  t.rows.push_back({pv, dv, p.reduce(c), discrepancy, principal_diff, hom, avg_norm, one_dim_max, cos_ref});
  emit(opts, out, t);
  err << "discrepancy=" << format_double(discrepancy) << " average_norm=" << format_double(avg_norm)
      << " one_dim_max=" << format_double(one_dim_max) << '\n';
  return discrepancy > 1e-12 || principal_diff > 1e-12 || hom > 1e-11 ? kExitViolation : kExitOk;
}

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("--out", opts.out_path, "Output file (default stdout)");
  sub->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", opts.seed, "Seed for sampled sweeps");
  sub->add_option("--threads", opts.threads, "Worker threads (speed only)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Twisted circulant spectra and Heisenberg random walks", "twc"};
  app.require_subcommand(1);

  CommonOptions opts;

  SpectrumArgs spec_args;
  auto* spectrum = app.add_subcommand("spectrum", "Norms of (M(r1,s1) + M(r2,s2)) / 2");
  spectrum->add_option("--n", spec_args.n, "Odd prime modulus")->required();
  spectrum->add_option("--pairs", spec_args.pairs, "Quadruples r1,s1,r2,s2[;...]");
  spectrum->add_flag("--exhaustive", spec_args.exhaustive, "All quadruples (n <= 13)");
  spectrum->add_option("--samples", spec_args.samples, "Sampled quadruples");
  add_common(spectrum, opts);

  std::int64_t grid_n = 0;
  std::string threshold = "caption";
  auto* grid = app.add_subcommand("grid", "Equal-slope norm grid over (r2 s2, k)");
  grid->add_option("--n", grid_n, "Odd prime modulus")->required();
  grid->add_option("--threshold", threshold, "caption (1-1/n), text (cos(2pi/n)), or a number");
  add_common(grid, opts);

  MixArgs mix_args;
  auto* mix = app.add_subcommand("mix", "Exact random walk on H(n) or H(p,d)");
  mix->add_option("--n", mix_args.n, "Modulus for H(n)");
  mix->add_option("--p", mix_args.p, "Modulus for H(p,d)");
  mix->add_option("--d", mix_args.d, "Dimension for H(p,d)");
  mix->add_option("--gens", mix_args.gens, "Generators \"s1,r1;s2,r2\" for H(n)");
  mix->add_option("--eps", mix_args.eps, "TV threshold");
  mix->add_option("--max-steps", mix_args.max_steps, "Step limit");
  mix->add_flag("--bound", mix_args.bound, "Also emit the Fourier upper bound");
  add_common(mix, opts);

  std::string suite = "all";
  std::string n_list = "3,5,7,11,13";
  bool timing = false;
  auto* verify = app.add_subcommand("verify", "Run self-check suites");
  verify->add_option("--suite", suite, "Suite name or 'all'");
  verify->add_option("--n-list", n_list, "Comma-separated odd primes");
  verify->add_flag("--timing", timing, "Include wall time in the report");
  add_common(verify, opts);
  opts.format = "csv";

  std::int64_t rep_p = 0, rep_d = 1, rep_c = 1;
  auto* rep = app.add_subcommand("rep", "Principal-series representation of H(p,d)");
  rep->add_option("--p", rep_p, "Odd prime")->required();
  rep->add_option("--d", rep_d, "Dimension");
  rep->add_option("--c", rep_c, "Central character, nonzero mod p");
  add_common(rep, opts);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*spectrum) return cmd_spectrum(spec_args, opts, out, err);
    if (*grid) return cmd_grid(grid_n, threshold, opts, out, err);
    if (*mix) return cmd_mix(mix_args, opts, out, err);
    if (*verify) {
      // verify reports JSON unless --format was given explicitly.
      if (verify->count("--format") == 0) opts.format = "json";
      return cmd_verify(suite, n_list, timing, opts, out, err);
    }
    if (*rep) return cmd_rep(rep_p, rep_d, rep_c, opts, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitViolation;
  }
  return kExitUsage;
}

}  // namespace twc::cli
