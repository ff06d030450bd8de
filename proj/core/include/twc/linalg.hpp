#pragma once

// Dense complex linear algebra used throughout the library.
//
// Matrices are small (at most a few hundred rows), stored row-major, and
// indexed from 0. The Hermitian eigensolver is a cyclic complex Jacobi
// iteration with no external dependency.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace twc {

using Complex = std::complex<double>;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by the eigensolver on non-Hermitian input or when Jacobi sweeps
/// fail to converge.
class EigenError : public std::runtime_error {
 public:
  EigenError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class ComplexVector {
 public:
  ComplexVector() = default;
  explicit ComplexVector(std::size_t n, Complex fill = {});
  ComplexVector(std::initializer_list<Complex> values);
  explicit ComplexVector(std::vector<Complex> values);

  static ComplexVector basis(std::size_t n, std::size_t i);

  std::size_t size() const noexcept { return data_.size(); }
  Complex& operator[](std::size_t i) { return data_[i]; }
  const Complex& operator[](std::size_t i) const { return data_[i]; }

  std::span<Complex> values() noexcept { return data_; }
  std::span<const Complex> values() const noexcept { return data_; }

  double norm() const;
  double norm_squared() const;

  friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

 private:
  std::vector<Complex> data_;
};

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols, Complex fill = {});
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const Complex> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  ComplexVector column(std::size_t j) const;
  std::span<const Complex> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  std::string shape_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector mat_vec(const ComplexMatrix& a, const ComplexVector& v);
ComplexMatrix adjoint(const ComplexMatrix& a);

/// Kronecker product. Entry (i1*m + i2, j1*m' + j2) of the result is
/// a(i1, j1) * b(i2, j2) where b is m x m'. For functions on (Z_p)^d this
/// matches lexicographic ordering with the first coordinate most significant.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix mat_pow(const ComplexMatrix& a, unsigned k);

/// max |a_ij - b_ij|; throws DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexVector& a, const ComplexVector& b);

/// max |m_ij - conj(m_ji)|.
double hermitian_asymmetry(const ComplexMatrix& m);

/// max-entry modulus of U*U - I.
double unitarity_residual(const ComplexMatrix& u);

double frobenius_norm(const ComplexMatrix& m);
Complex trace(const ComplexMatrix& m);

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // descending
  ComplexMatrix eigenvectors;       // column j pairs with eigenvalues[j]
  double residual = 0.0;            // max_j |M v_j - lambda_j v_j|_2
  int sweeps = 0;
};

struct JacobiOptions {
  /// Off-diagonal Frobenius mass target; <= 0 selects 1e-12 * n.
  double tol = 0.0;
  int max_sweeps = 100;
  double hermitian_tol = 1e-12;
};

/// Full spectrum of a Hermitian matrix by cyclic Jacobi rotations.
/// Eigenvalues are sorted descending with ties kept in original diagonal
/// order.
EigenDecomposition hermitian_eigen(const ComplexMatrix& m, JacobiOptions options = {});

/// Same iteration without accumulating eigenvectors.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m,
                                          JacobiOptions options = {});

/// max |lambda| over the spectrum.
double operator_norm_hermitian(const ComplexMatrix& m, JacobiOptions options = {});

}  // namespace twc
