#include "twc/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace twc {

IndexSet::IndexSet(std::size_t n, std::vector<std::size_t> members)
    : n_(n), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= n_) {
    throw DimensionError("IndexSet: index " + std::to_string(members_.back()) +
                         " out of range for n = " + std::to_string(n_));
  }
}

IndexSet IndexSet::full(std::size_t n) { return range(n, 0, n); }

IndexSet IndexSet::range(std::size_t n, std::size_t first, std::size_t count) {
  std::vector<std::size_t> m(count);
  for (std::size_t i = 0; i < count; ++i) m[i] = first + i;
  return IndexSet(n, std::move(m));
}

bool IndexSet::contains(std::size_t i) const {
  return std::binary_search(members_.begin(), members_.end(), i);
}

IndexSet IndexSet::complement() const {
  std::vector<std::size_t> out;
  out.reserve(n_ - members_.size());
  for (std::size_t i = 0; i < n_; ++i)
    if (!contains(i)) out.push_back(i);
  return IndexSet(n_, std::move(out));
}

ComplexVector project(const ComplexVector& v, const IndexSet& s) {
  if (v.size() != s.ambient()) {
    throw DimensionError("project: vector length " + std::to_string(v.size()) +
                         " vs index set dimension " + std::to_string(s.ambient()));
  }
  ComplexVector out(v.size());
  for (auto i : s.members()) out[i] = v[i];
  return out;
}

double entry_bound_constant(const ComplexMatrix& u) {
  double worst = 0.0;
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) worst = std::max(worst, std::abs(u(i, j)));
  return worst * std::sqrt(static_cast<double>(u.rows()));
}

namespace {

void check_hypotheses(const ComplexMatrix& u, double c, const IndexSet& s, const IndexSet& t,
                      const ComplexVector& v, const UncertaintyTolerances& tol) {
  if (!u.is_square()) throw DimensionError("up_evaluate: u is " + u.shape_string());
  const std::size_t n = u.rows();
  if (v.size() != n || s.ambient() != n || t.ambient() != n) {
    throw DimensionError("up_evaluate: dimension mismatch between u, v, S and T");
  }
  if (!(c > 0.0)) throw std::invalid_argument("up_evaluate: c must be positive");
  const double bound = c / std::sqrt(static_cast<double>(n)) + tol.entry_bound;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(u(i, j)) > bound) {
        std::ostringstream os;
        os << "up_evaluate: |u(" << i << "," << j << ")| = " << std::abs(u(i, j))
           << " exceeds c/sqrt(n) = " << c / std::sqrt(static_cast<double>(n));
        throw std::invalid_argument(os.str());
      }
  const double ures = unitarity_residual(u);
  if (ures > tol.unitarity) {
    std::ostringstream os;
    os << "up_evaluate: u is not unitary (residual " << ures << ")";
    throw std::invalid_argument(os.str());
  }
  if (!(std::abs(v.norm() - 1.0) <= tol.unit_norm)) {
    throw std::invalid_argument("up_evaluate: v must have unit norm");
  }
}

}  // namespace

UncertaintyReport up_evaluate(const ComplexMatrix& u, double c, const IndexSet& s,
                              const IndexSet& t, const ComplexVector& v,
                              UncertaintyTolerances tol) {
  check_hypotheses(u, c, s, t, v, tol);
  const double n = static_cast<double>(u.rows());

  UncertaintyReport rep;
  rep.lhs = static_cast<double>(s.size()) * static_cast<double>(t.size()) / n;
  const double v_s = project(v, s).norm();
  rep.tail_s = project(v, s.complement()).norm();
  rep.tail_t = project(mat_vec(u, v), t.complement()).norm();
  rep.corollary_max = std::max(rep.tail_s, rep.tail_t);
  rep.numerator = std::sqrt(std::max(0.0, 1.0 - rep.tail_t * rep.tail_t)) - rep.tail_s;

  if (v_s == 0.0) {
    rep.rhs = std::numeric_limits<double>::infinity();
    rep.slack = std::numeric_limits<double>::quiet_NaN();
    rep.slack_defined = false;
    return rep;
  }
  const double q = std::max(rep.numerator, 0.0) / (c * v_s);
  rep.rhs = q * q;
  rep.slack = rep.lhs - rep.rhs;
  return rep;
}

CorollaryResult up_corollary_check(const ComplexMatrix& u, double c, const IndexSet& s,
                                   const IndexSet& t, const ComplexVector& v,
                                   UncertaintyTolerances tol) {
  const double n = static_cast<double>(u.rows());
  const double size_product = static_cast<double>(s.size() * t.size());
  const double bound = n / (2.0 * c * c);
  if (size_product > bound) {
    std::ostringstream os;
    os << "up_corollary_check: |S||T| = " << size_product << " exceeds n/(2c^2) = " << bound;
    throw std::invalid_argument(os.str());
  }
  const auto rep = up_evaluate(u, c, s, t, v, tol);
  return {rep.corollary_max >= kCorollaryFloor - 1e-12, rep.corollary_max};
}

}  // namespace twc
