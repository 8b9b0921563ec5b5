#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace secrecy {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix with finite entries.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero-filled rows x cols matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of row-major entries. Throws ShapeError on a size
  /// mismatch and InvariantError on non-finite entries.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * cols_ + j];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexVector column(std::size_t j) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v);

/// Sum of the diagonal. Throws ShapeError for non-square input.
Complex trace(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);

/// u† v
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm(std::span<const Complex> v);

/// Conjugate-symmetric matrix with a real diagonal.
class HermitianMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  HermitianMatrix() = default;
  /// Validates conjugate symmetry within kSymmetryTolerance (absolute) and
  /// throws InvariantError otherwise. The stored matrix is exactly Hermitian.
  explicit HermitianMatrix(const ComplexMatrix& m);

  /// (m + m†)/2 without validation; for products known to be Hermitian up to rounding.
  static HermitianMatrix symmetrized(const ComplexMatrix& m);
  /// h† h
  static HermitianMatrix gram(const ComplexMatrix& h);
  /// v v†
  static HermitianMatrix outer(std::span<const Complex> v);
  static HermitianMatrix identity(std::size_t n);

  std::size_t dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return m_(i, j); }

  double trace() const;
  /// u† A u, real for Hermitian A.
  double quadratic_form(std::span<const Complex> u) const;

  HermitianMatrix& operator+=(const HermitianMatrix& rhs);
  HermitianMatrix& operator-=(const HermitianMatrix& rhs);
  HermitianMatrix& operator*=(double scale);

 private:
  struct Unchecked {};
  HermitianMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

HermitianMatrix operator+(HermitianMatrix lhs, const HermitianMatrix& rhs);
HermitianMatrix operator-(HermitianMatrix lhs, const HermitianMatrix& rhs);
HermitianMatrix operator*(double scale, HermitianMatrix m);

/// Spectrum of a Hermitian matrix. values are non-increasing; vectors[i] is
/// the unit eigenvector paired with values[i]. Every vector has its
/// largest-magnitude component (lowest index on ties) real and positive.
struct EigenDecomposition {
  std::vector<double> values;
  std::vector<ComplexVector> vectors;

  std::size_t size() const noexcept { return values.size(); }
  double max_value() const { return values.front(); }
  double min_value() const { return values.back(); }
};

struct JacobiOptions {
  /// Stop once the off-diagonal Frobenius norm falls below tolerance * max(1, ||A||_F).
  double tolerance = 1e-12;
  int max_sweeps = 100;
};

/// Cyclic complex Jacobi eigensolver. Throws ConvergenceError when the
/// sweep budget is exhausted.
EigenDecomposition hermitian_eig(const HermitianMatrix& a, const JacobiOptions& options = {});

/// Rotates v's global phase so its largest-magnitude component is real positive.
void normalize_phase(ComplexVector& v);

/// Eigenvalues at or above -kPsdTolerance * (1 + |lambda_max|) are treated as zero.
inline constexpr double kPsdTolerance = 1e-9;

/// log det(I + c A) = sum_i log(1 + c lambda_i(A)) for PSD A and c >= 0.
/// Throws NotPsdError on a clearly negative eigenvalue, DomainError on c < 0.
double log_det_I_plus(const HermitianMatrix& a, double c);

/// True when every eigenvalue clears the PSD tolerance.
bool is_psd(const HermitianMatrix& a);

}  // namespace secrecy
