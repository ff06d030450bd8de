#include "twc/heisenberg.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "twc/twisted.hpp"

namespace twc {

namespace {

void require_same(const Modulus& a, const Modulus& b, const char* op) {
  if (!(a == b)) throw ModulusError(std::string(op) + ": modulus mismatch");
}

std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

HeisenbergElement h_mul(const HeisenbergElement& a, const HeisenbergElement& b) {
  require_same(a.n, b.n, "h_mul");
  return {a.n, a.x + b.x, a.y + b.y, a.z + b.z + a.n.mul(a.x, b.y)};
}

HeisenbergElement h_inv(const HeisenbergElement& a) {
  return {a.n, -a.x, -a.y, a.n.mul(a.x, a.y) - a.z};
}

std::size_t element_index(const HeisenbergElement& g) {
  const auto n = static_cast<std::size_t>(g.n.value());
  return (static_cast<std::size_t>(g.x) * n + static_cast<std::size_t>(g.y)) * n +
         static_cast<std::size_t>(g.z);
}

HeisenbergElement index_element(const Modulus& n, std::size_t index) {
  const auto m = n.size();
  if (index >= m * m * m) throw std::out_of_range("index_element: index out of range");
  return {n, static_cast<std::int64_t>(index / (m * m)),
          static_cast<std::int64_t>((index / m) % m), static_cast<std::int64_t>(index % m)};
}

HeisenbergGroup::HeisenbergGroup(Modulus p, std::size_t d) : p_(p), d_(d) {
  if (d == 0) throw std::invalid_argument("HeisenbergGroup: d must be positive");
  rep_dim_ = ipow(p.size(), d);
  order_ = rep_dim_ * rep_dim_ * p.size();
}

HDElement::HDElement(Modulus m, std::vector<std::int64_t> x_, std::vector<std::int64_t> y_,
                     std::int64_t z_)
    : p(m), x(std::move(x_)), y(std::move(y_)), z(m.reduce(z_)) {
  if (x.empty() || x.size() != y.size()) {
    throw std::invalid_argument("HDElement: x and y must have equal positive length");
  }
  for (auto& v : x) v = p.reduce(v);
  for (auto& v : y) v = p.reduce(v);
}

HDElement HDElement::identity(const HeisenbergGroup& g) {
  return {g.modulus(), std::vector<std::int64_t>(g.dim(), 0), std::vector<std::int64_t>(g.dim(), 0), 0};
}

HDElement HDElement::from(const HeisenbergElement& g) { return {g.n, {g.x}, {g.y}, g.z}; }

HDElement hd_mul(const HDElement& a, const HDElement& b) {
  require_same(a.p, b.p, "hd_mul");
  if (a.dim() != b.dim()) throw std::invalid_argument("hd_mul: dimension mismatch");
  HDElement out = a;
  std::int64_t dot = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out.x[i] = a.p.reduce(a.x[i] + b.x[i]);
    out.y[i] = a.p.reduce(a.y[i] + b.y[i]);
    dot = a.p.reduce(dot + a.p.mul(a.x[i], b.y[i]));
  }
  out.z = a.p.reduce(a.z + b.z + dot);
  return out;
}

HDElement hd_inv(const HDElement& a) {
  HDElement out = a;
  std::int64_t dot = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out.x[i] = a.p.reduce(-a.x[i]);
    out.y[i] = a.p.reduce(-a.y[i]);
    dot = a.p.reduce(dot + a.p.mul(a.x[i], a.y[i]));
  }
  out.z = a.p.reduce(dot - a.z);
  return out;
}

std::size_t element_index(const HDElement& g) {
  const auto p = g.p.size();
  std::size_t idx = 0;
  for (auto v : g.x) idx = idx * p + static_cast<std::size_t>(v);
  for (auto v : g.y) idx = idx * p + static_cast<std::size_t>(v);
  return idx * p + static_cast<std::size_t>(g.z);
}

HDElement index_element(const HeisenbergGroup& group, std::size_t index) {
  if (index >= group.order()) throw std::out_of_range("index_element: index out of range");
  const auto p = group.modulus().size();
  const std::size_t d = group.dim();
  std::vector<std::int64_t> digits(2 * d + 1);
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = static_cast<std::int64_t>(index % p);
    index /= p;
  }
  return {group.modulus(), {digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(d)},
          {digits.begin() + static_cast<std::ptrdiff_t>(d), digits.begin() + static_cast<std::ptrdiff_t>(2 * d)},
          digits.back()};
}

HDElement unit_x(const HeisenbergGroup& group, std::size_t i) {
  auto e = HDElement::identity(group);
  e.x.at(i) = 1;
  return e;
}

HDElement unit_y(const HeisenbergGroup& group, std::size_t i) {
  auto e = HDElement::identity(group);
  e.y.at(i) = 1;
  return e;
}

GeneratorSet::GeneratorSet(HeisenbergGroup group, std::vector<HDElement> steps,
                           std::vector<double> probabilities)
    : group_(group), steps_(std::move(steps)), probs_(std::move(probabilities)) {
  if (steps_.empty()) throw std::invalid_argument("GeneratorSet: no steps");
  if (steps_.size() != probs_.size()) {
    throw std::invalid_argument("GeneratorSet: one probability per step required");
  }
  double total = 0.0;
  std::map<std::size_t, double> mass;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    if (!(steps_[i].group() == group_)) {
      throw std::invalid_argument("GeneratorSet: step outside the group");
    }
    if (probs_[i] < 0.0) throw std::invalid_argument("GeneratorSet: negative probability");
    total += probs_[i];
    mass[element_index(steps_[i])] += probs_[i];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("GeneratorSet: probabilities sum to " + std::to_string(total));
  }
  for (const auto& [idx, m] : mass) {
    const auto inv = element_index(hd_inv(index_element(group_, idx)));
    const auto it = mass.find(inv);
    if (it == mass.end() || std::abs(it->second - m) > 1e-12) {
      throw std::invalid_argument("GeneratorSet: step set is not closed under inversion");
    }
  }
}

GeneratorSet::GeneratorSet(HeisenbergGroup group, std::vector<HDElement> steps)
    : GeneratorSet(group, steps, std::vector<double>(steps.size(), 1.0 / static_cast<double>(steps.size()))) {}

GeneratorSet two_generator_set(const Modulus& n, std::int64_t s1, std::int64_t r1, std::int64_t s2,
                               std::int64_t r2) {
  const HeisenbergGroup group(n, 1);
  const HDElement g1(n, {s1}, {r1}, 0);
  const HDElement g2(n, {s2}, {r2}, 0);
  return {group, {g1, hd_inv(g1), g2, hd_inv(g2)}};
}

GeneratorSet standard_generators(const HeisenbergGroup& group) {
  std::vector<HDElement> steps;
  for (std::size_t i = 0; i < group.dim(); ++i) {
    const auto e = unit_x(group, i);
    const auto f = unit_y(group, i);
    steps.push_back(e);
    steps.push_back(hd_inv(e));
    steps.push_back(f);
    steps.push_back(hd_inv(f));
  }
  return {group, std::move(steps)};
}

bool generating_check(const Modulus& n, std::int64_t r1, std::int64_t s1, std::int64_t r2,
                      std::int64_t s2) {
  return !equal_slopes(n, r1, s1, r2, s2);
}

GroupDistribution point_mass(const HeisenbergGroup& group) {
  GroupDistribution d{group, std::vector<double>(group.order(), 0.0)};
  d.probabilities[0] = 1.0;
  return d;
}

GroupDistribution uniform_distribution(const HeisenbergGroup& group) {
  return {group, std::vector<double>(group.order(), 1.0 / static_cast<double>(group.order()))};
}

RandomWalk::RandomWalk(const GeneratorSet& gens)
    : dist_(point_mass(gens.group())), probs_(gens.probabilities()) {
  const auto& group = gens.group();
  if (group.order() > kMaxWalkOrder) {
    throw std::length_error("RandomWalk: group order " + std::to_string(group.order()) +
                            " exceeds " + std::to_string(kMaxWalkOrder));
  }
  targets_.resize(gens.steps().size(), std::vector<std::uint32_t>(group.order()));
  for (std::size_t idx = 0; idx < group.order(); ++idx) {
    const auto g = index_element(group, idx);
    for (std::size_t s = 0; s < gens.steps().size(); ++s)
      targets_[s][idx] = static_cast<std::uint32_t>(element_index(hd_mul(g, gens.steps()[s])));
  }
  scratch_.resize(group.order());
}

void RandomWalk::step() {
  std::fill(scratch_.begin(), scratch_.end(), 0.0);
  const auto& cur = dist_.probabilities;
  for (std::size_t s = 0; s < targets_.size(); ++s) {
    const double ps = probs_[s];
    const auto& tgt = targets_[s];
    for (std::size_t idx = 0; idx < cur.size(); ++idx)
      if (cur[idx] != 0.0) scratch_[tgt[idx]] += cur[idx] * ps;
  }
  dist_.probabilities.swap(scratch_);
  ++steps_;
}

GroupDistribution walk_distribution(const GeneratorSet& gens, std::size_t k) {
  RandomWalk walk(gens);
  for (std::size_t i = 0; i < k; ++i) walk.step();
  return walk.distribution();
}

double tv_uniform(const GroupDistribution& dist) {
  const double u = 1.0 / static_cast<double>(dist.probabilities.size());
  double acc = 0.0;
  for (double p : dist.probabilities) acc += std::abs(p - u);
  return 0.5 * acc;
}

MixingResult mixing_time(const GeneratorSet& gens, double eps, std::size_t max_steps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("mixing_time: eps must lie in (0, 1)");
  RandomWalk walk(gens);
  MixingResult out;
  for (;;) {
    const double tv = tv_uniform(walk.distribution());
    out.tv.push_back(tv);
    if (tv <= eps) {
      out.steps = walk.steps_taken();
      out.reached = true;
      return out;
    }
    if (walk.steps_taken() >= max_steps) {
      out.steps = walk.steps_taken();
      return out;
    }
    walk.step();
  }
}

// Representations ---------------------------------------------------------

std::size_t Representation::dimension() const {
  return std::holds_alternative<OneDimensionalRep>(kind) ? 1 : group.rep_dim();
}

bool Representation::is_trivial() const {
  if (const auto* one = std::get_if<OneDimensionalRep>(&kind)) {
    const auto zero = [](std::int64_t v) { return v == 0; };
    return std::all_of(one->a.begin(), one->a.end(), zero) &&
           std::all_of(one->b.begin(), one->b.end(), zero);
  }
  return false;
}

Complex char_1d(const Modulus& n, std::int64_t a, std::int64_t b, const HeisenbergElement& g) {
  return n.omega(n.mul(a, g.x) + n.mul(b, g.y));
}

Complex char_hd(const OneDimensionalRep& rep, const HDElement& g) {
  std::int64_t e = 0;
  for (std::size_t i = 0; i < g.dim(); ++i) e = g.p.reduce(e + g.p.mul(rep.a.at(i), g.x[i]) + g.p.mul(rep.b.at(i), g.y[i]));
  return g.p.omega(e);
}

ComplexMatrix rho_principal(const Modulus& n, std::int64_t c, const HeisenbergElement& g) {
  if (n.reduce(c) == 0) throw ModulusError("rho_principal: c must be nonzero mod n");
  const std::size_t size = n.size();
  ComplexMatrix m(size, size);
  for (std::size_t w = 0; w < size; ++w) {
    const auto ww = static_cast<std::int64_t>(w);
    m(w, static_cast<std::size_t>(n.reduce(ww + g.x))) = n.omega(n.mul(c, n.mul(g.y, ww) + g.z));
  }
  return m;
}

namespace {

void check_rep_args(const HeisenbergGroup& group, std::int64_t c, const HDElement& g) {
  if (group.modulus().reduce(c) == 0) throw ModulusError("rho_hd: c must be nonzero mod p");
  if (!(g.group() == group)) throw std::invalid_argument("rho_hd: element outside the group");
  if (group.rep_dim() > kMaxRepDim) {
    throw std::length_error("rho_hd: representation dimension " + std::to_string(group.rep_dim()) +
                            " exceeds " + std::to_string(kMaxRepDim));
  }
}

}  // namespace

ComplexMatrix rho_hd_direct(const HeisenbergGroup& group, std::int64_t c, const HDElement& g) {
  check_rep_args(group, c, g);
  const Modulus& p = group.modulus();
  const std::size_t dim = group.rep_dim();
  const std::size_t d = group.dim();
  ComplexMatrix m(dim, dim);
  std::vector<std::int64_t> w(d, 0);
  for (std::size_t row = 0; row < dim; ++row) {
    // w is the base-p expansion of row, w_1 most significant.
    std::size_t rest = row;
    for (std::size_t i = d; i-- > 0;) {
      w[i] = static_cast<std::int64_t>(rest % p.size());
      rest /= p.size();
    }
    std::int64_t phase = g.z;
    std::size_t col = 0;
    for (std::size_t i = 0; i < d; ++i) {
      phase = p.reduce(phase + p.mul(g.y[i], w[i]));
      col = col * p.size() + static_cast<std::size_t>(p.reduce(w[i] + g.x[i]));
    }
    m(row, col) = p.omega(p.mul(c, phase));
  }
  return m;
}

ComplexMatrix rho_hd_tensor(const HeisenbergGroup& group, std::int64_t c, const HDElement& g) {
  check_rep_args(group, c, g);
  const Modulus& p = group.modulus();
  ComplexMatrix m = tc_to_matrix({p, p.mul(c, g.z), p.mul(c, g.y[0]), g.x[0]});
  for (std::size_t i = 1; i < group.dim(); ++i)
    m = kron(m, tc_to_matrix(PhasedTwistedCirculant::plain(p, p.mul(c, g.y[i]), g.x[i])));
  return m;
}

RhoPair rho_hd(const HeisenbergGroup& group, std::int64_t c, const HDElement& g) {
  RhoPair out{rho_hd_direct(group, c, g), rho_hd_tensor(group, c, g), 0.0};
  out.discrepancy = max_abs_diff(out.direct, out.tensor);
  if (out.discrepancy > 1e-12) {
    throw std::runtime_error("rho_hd: direct and tensor constructions differ by " +
                             std::to_string(out.discrepancy));
  }
  return out;
}

ComplexMatrix evaluate(const Representation& rep, const HDElement& g) {
  if (const auto* one = std::get_if<OneDimensionalRep>(&rep.kind)) {
    return ComplexMatrix{{char_hd(*one, g)}};
  }
  return rho_hd_tensor(rep.group, std::get<PrincipalRep>(rep.kind).c, g);
}

std::vector<Representation> all_irreps(const HeisenbergGroup& group) {
  const auto p = group.modulus().size();
  const std::size_t d = group.dim();
  const std::size_t count = group.rep_dim() * group.rep_dim();  // p^{2d}
  std::vector<Representation> out;
  out.reserve(count + p - 1);
  for (std::size_t idx = 0; idx < count; ++idx) {
    OneDimensionalRep one{std::vector<std::int64_t>(d), std::vector<std::int64_t>(d)};
    std::size_t rest = idx;
    for (std::size_t i = d; i-- > 0;) {
      one.b[i] = static_cast<std::int64_t>(rest % p);
      rest /= p;
    }
    for (std::size_t i = d; i-- > 0;) {
      one.a[i] = static_cast<std::int64_t>(rest % p);
      rest /= p;
    }
    out.push_back({group, one});
  }
  for (std::int64_t c = 1; c < group.modulus().value(); ++c) out.push_back({group, PrincipalRep{c}});
  return out;
}

ComplexMatrix fourier_at_rep(const GeneratorSet& gens, const Representation& rep) {
  if (!(gens.group() == rep.group)) throw std::invalid_argument("fourier_at_rep: group mismatch");
  const std::size_t dim = rep.dimension();
  ComplexMatrix acc(dim, dim);
  for (std::size_t i = 0; i < gens.steps().size(); ++i)
    acc += gens.probabilities()[i] * evaluate(rep, gens.steps()[i]);
  return acc;
}

FourierTvBound::FourierTvBound(const GeneratorSet& gens) {
  const auto& group = gens.group();
  const bool fits = group.dim() == 1 ? group.modulus().value() <= 13 : group.order() <= kMaxWalkOrder;
  if (!fits) {
    throw std::length_error("FourierTvBound: group too large for full-spectrum bound");
  }
  principal_dim_ = group.rep_dim();
  for (const auto& rep : all_irreps(group)) {
    if (rep.is_trivial()) continue;
    const ComplexMatrix hat = fourier_at_rep(gens, rep);
    if (rep.dimension() == 1) {
      one_dim_abs_.push_back(std::abs(hat(0, 0)));
      max_1d_ = std::max(max_1d_, one_dim_abs_.back());
    } else {
      principal_eig_.push_back(hermitian_eigenvalues(hat));
      for (double v : principal_eig_.back()) max_principal_ = std::max(max_principal_, std::abs(v));
    }
  }
}

double FourierTvBound::at(std::size_t k) const {
  const double twice = 2.0 * static_cast<double>(k);
  double acc = 0.0;
  for (double a : one_dim_abs_) acc += std::pow(a, twice);
  for (const auto& spectrum : principal_eig_)
    for (double v : spectrum) acc += static_cast<double>(principal_dim_) * std::pow(std::abs(v), twice);
  return 0.5 * std::sqrt(acc);
}

double fourier_tv_bound(const GeneratorSet& gens, std::size_t k) {
  return FourierTvBound(gens).at(k);
}

}  // namespace twc
