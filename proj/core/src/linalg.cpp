#include "twc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace twc {

ComplexVector::ComplexVector(std::size_t n, Complex fill) : data_(n, fill) {}

ComplexVector::ComplexVector(std::initializer_list<Complex> values) : data_(values) {}

ComplexVector::ComplexVector(std::vector<Complex> values) : data_(std::move(values)) {}

ComplexVector ComplexVector::basis(std::size_t n, std::size_t i) {
  if (i >= n) throw DimensionError("basis index out of range");
  ComplexVector v(n);
  v[i] = 1.0;
  return v;
}

double ComplexVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& x : data_) acc += std::norm(x);
  return acc;
}

double ComplexVector::norm() const { return std::sqrt(norm_squared()); }

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, Complex fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> entries) {
  ComplexMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

ComplexVector ComplexMatrix::column(std::size_t j) const {
  ComplexVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::string ComplexMatrix::shape_string() const {
  std::ostringstream os;
  os << rows_ << "x" << cols_;
  return os.str();
}

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + a.shape_string() +
                         " vs " + b.shape_string());
  }
}

}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& x : data_) x *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scale, ComplexMatrix a) { return a *= scale; }

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("mat_mul: inner dimensions differ, " + a.shape_string() +
                         " * " + b.shape_string());
  }
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexVector mat_vec(const ComplexMatrix& a, const ComplexVector& v) {
  if (a.cols() != v.size()) {
    throw DimensionError("mat_vec: " + a.shape_string() + " * vector of length " +
                         std::to_string(v.size()));
  }
  ComplexVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
  ComplexMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
  return t;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const Complex s = a(i1, j1);
      if (s == Complex{}) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          out(i1 * b.rows() + i2, j1 * b.cols() + j2) = s * b(i2, j2);
    }
  return out;
}

ComplexMatrix mat_pow(const ComplexMatrix& a, unsigned k) {
  if (!a.is_square()) throw DimensionError("mat_pow: matrix is " + a.shape_string());
  ComplexMatrix result = ComplexMatrix::identity(a.rows());
  ComplexMatrix base = a;
  while (k > 0) {
    if (k & 1u) result = mat_mul(result, base);
    k >>= 1u;
    if (k > 0) base = mat_mul(base, base);
  }
  return result;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw DimensionError("max_abs_diff: vector lengths differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double hermitian_asymmetry(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("hermitian_asymmetry: matrix is " + m.shape_string());
  double worst = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j)
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  return worst;
}

double unitarity_residual(const ComplexMatrix& u) {
  if (!u.is_square()) throw DimensionError("unitarity_residual: matrix is " + u.shape_string());
  const std::size_t n = u.rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc{};
      for (std::size_t k = 0; k < n; ++k) acc += std::conj(u(k, i)) * u(k, j);
      if (i == j) acc -= 1.0;
      worst = std::max(worst, std::abs(acc));
    }
  return worst;
}

double frobenius_norm(const ComplexMatrix& m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) acc += std::norm(m(i, j));
  return std::sqrt(acc);
}

Complex trace(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("trace: matrix is " + m.shape_string());
  Complex acc{};
  for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
  return acc;
}

namespace {

double off_diagonal_mass(const ComplexMatrix& a) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

struct JacobiResult {
  ComplexMatrix work;  // converged, numerically diagonal
  ComplexMatrix vectors;
  int sweeps = 0;
};

// Annihilates a(p,q) with the unitary V acting on coordinates p and q:
//   V = diag(1, e^{-i phi}) * [[c, s], [-s, c]],  a(p,q) = |a(p,q)| e^{i phi}.
// The phase factor makes the 2x2 block real symmetric; the real rotation then
// follows the classical Jacobi choice of the smaller angle.
void rotate(ComplexMatrix& a, ComplexMatrix* v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex vpp = c;
  const Complex vpq = s;
  const Complex vqp = -s * std::conj(phase);
  const Complex vqq = c * std::conj(phase);

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {  // a <- a V
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * vpp + akq * vqp;
    a(k, q) = akp * vpq + akq * vqq;
  }
  for (std::size_t k = 0; k < n; ++k) {  // a <- V^* a
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
    a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  if (v != nullptr) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex vkp = (*v)(k, p);
      const Complex vkq = (*v)(k, q);
      (*v)(k, p) = vkp * vpp + vkq * vqp;
      (*v)(k, q) = vkp * vpq + vkq * vqq;
    }
  }
}

JacobiResult run_jacobi(const ComplexMatrix& m, const JacobiOptions& options, bool want_vectors) {
  if (!m.is_square()) {
    throw DimensionError("hermitian_eigen: matrix is " + m.shape_string());
  }
  const double asym = hermitian_asymmetry(m);
  if (asym > options.hermitian_tol) {
    std::ostringstream os;
    os << "hermitian_eigen: input is not Hermitian (max asymmetry " << asym << ")";
    throw EigenError(os.str(), asym);
  }
  const std::size_t n = m.rows();
  const double tol = options.tol > 0.0 ? options.tol : 1e-12 * static_cast<double>(n);
  const double target = tol * std::max(1.0, frobenius_norm(m));

  JacobiResult r{m, want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix{}, 0};
  // Symmetrize so rounding in the input cannot leak into the iteration.
  for (std::size_t i = 0; i < n; ++i) {
    r.work(i, i) = r.work(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (r.work(i, j) + std::conj(r.work(j, i)));
      r.work(i, j) = avg;
      r.work(j, i) = std::conj(avg);
    }
  }

  ComplexMatrix* vecs = want_vectors ? &r.vectors : nullptr;
  double off = off_diagonal_mass(r.work);
  while (off >= target) {
    if (r.sweeps >= options.max_sweeps) {
      std::ostringstream os;
      os << "hermitian_eigen: no convergence after " << r.sweeps
         << " sweeps (off-diagonal mass " << off << ")";
      throw EigenError(os.str(), off);
    }
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(r.work, vecs, p, q);
    ++r.sweeps;
    off = off_diagonal_mass(r.work);
  }
  return r;
}

std::vector<std::size_t> descending_order(const ComplexMatrix& diag) {
  std::vector<std::size_t> order(diag.rows());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return diag(a, a).real() > diag(b, b).real();
  });
  return order;
}

}  // namespace

EigenDecomposition hermitian_eigen(const ComplexMatrix& m, JacobiOptions options) {
  JacobiResult r = run_jacobi(m, options, true);
  const std::size_t n = m.rows();
  const auto order = descending_order(r.work);

  EigenDecomposition out;
  out.sweeps = r.sweeps;
  out.eigenvalues.reserve(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues.push_back(r.work(order[j], order[j]).real());
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = r.vectors(i, order[j]);
  }

  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      Complex mv{};
      for (std::size_t k = 0; k < n; ++k) mv += m(i, k) * out.eigenvectors(k, j);
      acc += std::norm(mv - out.eigenvalues[j] * out.eigenvectors(i, j));
    }
    residual = std::max(residual, std::sqrt(acc));
  }
  out.residual = residual;
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, JacobiOptions options) {
  JacobiResult r = run_jacobi(m, options, false);
  const auto order = descending_order(r.work);
  std::vector<double> values;
  values.reserve(order.size());
  for (auto i : order) values.push_back(r.work(i, i).real());
  return values;
}

double operator_norm_hermitian(const ComplexMatrix& m, JacobiOptions options) {
  const auto values = hermitian_eigenvalues(m, options);
  double worst = 0.0;
  for (double v : values) worst = std::max(worst, std::abs(v));
  return worst;
}

}  // namespace twc
