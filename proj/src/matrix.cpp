#include "secrecy/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "secrecy/errors.hpp"

namespace secrecy {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                     std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()));
  }
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw ShapeError("ComplexMatrix: " + std::to_string(entries_.size()) +
                     " entries for a " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                     " matrix");
  }
  if (!std::all_of(entries_.begin(), entries_.end(), is_finite)) {
    throw InvariantError("ComplexMatrix: non-finite entry");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw ShapeError("ComplexMatrix::from_rows: ragged rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(entries));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexVector ComplexMatrix::column(std::size_t j) const {
  ComplexVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator+");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator-");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& e : entries_) e *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(Complex scale, ComplexMatrix m) { return m *= scale; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw ShapeError("operator*: inner dimensions " + std::to_string(lhs.cols()) + " and " +
                     std::to_string(rhs.rows()));
  }
  ComplexMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i)
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const Complex a = lhs(i, k);
      for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

ComplexVector operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw ShapeError("matrix-vector product: dimension mismatch");
  ComplexVector out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

Complex trace(const ComplexMatrix& m) {
  if (!m.is_square()) throw ShapeError("trace: matrix is not square");
  Complex t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& e : m.entries()) s += std::norm(e);
  return std::sqrt(s);
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw ShapeError("inner: length mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& e : v) s += std::norm(e);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m) {
  if (!m.is_square()) throw ShapeError("HermitianMatrix: matrix is not square");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(m(i, i).imag()) > kSymmetryTolerance) {
      throw InvariantError("HermitianMatrix: diagonal entry " + std::to_string(i) +
                           " is not real");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > kSymmetryTolerance) {
        throw InvariantError("HermitianMatrix: entry (" + std::to_string(i) + "," +
                             std::to_string(j) + ") breaks conjugate symmetry");
      }
    }
  }
  *this = symmetrized(m);
}

HermitianMatrix HermitianMatrix::symmetrized(const ComplexMatrix& m) {
  if (!m.is_square()) throw ShapeError("HermitianMatrix: matrix is not square");
  const std::size_t n = m.rows();
  ComplexMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    s(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
      s(i, j) = avg;
      s(j, i) = std::conj(avg);
    }
  }
  return HermitianMatrix(std::move(s), Unchecked{});
}

HermitianMatrix HermitianMatrix::gram(const ComplexMatrix& h) {
  return symmetrized(h.adjoint() * h);
}

HermitianMatrix HermitianMatrix::outer(std::span<const Complex> v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  return symmetrized(m);
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return HermitianMatrix(ComplexMatrix::identity(n), Unchecked{});
}

double HermitianMatrix::trace() const { return secrecy::trace(m_).real(); }

double HermitianMatrix::quadratic_form(std::span<const Complex> u) const {
  return inner(u, m_ * u).real();
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& rhs) {
  m_ += rhs.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& rhs) {
  m_ -= rhs.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double scale) {
  m_ *= scale;
  return *this;
}

HermitianMatrix operator+(HermitianMatrix lhs, const HermitianMatrix& rhs) { return lhs += rhs; }
HermitianMatrix operator-(HermitianMatrix lhs, const HermitianMatrix& rhs) { return lhs -= rhs; }
HermitianMatrix operator*(double scale, HermitianMatrix m) { return m *= scale; }

// ---------------------------------------------------------------------------

void normalize_phase(ComplexVector& v) {
  if (v.empty()) return;
  double max_mag = 0.0;
  for (const auto& e : v) max_mag = std::max(max_mag, std::abs(e));
  if (max_mag == 0.0) return;
  // First component within rounding of the maximum wins ties.
  std::size_t pivot = 0;
  while (std::abs(v[pivot]) < max_mag * (1.0 - 1e-12)) ++pivot;
  const Complex phase = std::conj(v[pivot]) / std::abs(v[pivot]);
  for (auto& e : v) e *= phase;
  v[pivot] = std::abs(v[pivot]);
}

EigenDecomposition hermitian_eig(const HermitianMatrix& a, const JacobiOptions& options) {
  const std::size_t n = a.dim();
  if (n == 0) throw DomainError("hermitian_eig: empty matrix");

  ComplexMatrix work = a.matrix();
  ComplexMatrix vecs = ComplexMatrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(work(i, j));
    return std::sqrt(s);
  };

  const double threshold = options.tolerance * std::max(1.0, frobenius_norm(work));
  int sweep = 0;
  while (off_norm() > threshold) {
    if (sweep++ >= options.max_sweeps) {
      throw ConvergenceError("hermitian_eig: no convergence after " +
                             std::to_string(options.max_sweeps) + " sweeps");
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = work(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;

        // Phase-align a_pq to a real value, then apply a real Givens rotation.
        const Complex phase = apq / mag;  // e^{i phi}
        const double app = work(p, p).real();
        const double aqq = work(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        const Complex ephase = std::conj(phase);  // e^{-i phi}

        // work <- work * J, J = diag-phase * rotation on columns (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex wkp = work(k, p);
          const Complex wkq = work(k, q);
          work(k, p) = c * wkp - s * ephase * wkq;
          work(k, q) = s * wkp + c * ephase * wkq;
          const Complex vkp = vecs(k, p);
          const Complex vkq = vecs(k, q);
          vecs(k, p) = c * vkp - s * ephase * vkq;
          vecs(k, q) = s * vkp + c * ephase * vkq;
        }
        // work <- J† * work on rows (p, q).
        for (std::size_t k = 0; k < n; ++k) {
          const Complex wpk = work(p, k);
          const Complex wqk = work(q, k);
          work(p, k) = c * wpk - s * phase * wqk;
          work(q, k) = s * wpk + c * phase * wqk;
        }
        work(p, q) = 0.0;
        work(q, p) = 0.0;
        work(p, p) = app - t * mag;
        work(q, q) = aqq + t * mag;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return work(i, i).real() > work(j, j).real();
  });

  EigenDecomposition eig;
  eig.values.reserve(n);
  eig.vectors.reserve(n);
  for (std::size_t idx : order) {
    eig.values.push_back(work(idx, idx).real());
    ComplexVector v = vecs.column(idx);
    const double len = norm(v);
    for (auto& e : v) e /= len;
    normalize_phase(v);
    eig.vectors.push_back(std::move(v));
  }
  return eig;
}

namespace {

double psd_floor(const EigenDecomposition& eig) {
  return -kPsdTolerance * (1.0 + std::abs(eig.max_value()));
}

}  // namespace

bool is_psd(const HermitianMatrix& a) {
  const auto eig = hermitian_eig(a);
  return eig.min_value() >= psd_floor(eig);
}

double log_det_I_plus(const HermitianMatrix& a, double c) {
  if (!(c >= 0.0)) throw DomainError("log_det_I_plus: scale must be nonnegative");
  if (c == 0.0 || a.dim() == 0) return 0.0;
  const auto eig = hermitian_eig(a);
  const double floor = psd_floor(eig);
  double sum = 0.0;
  for (double lambda : eig.values) {
    if (lambda < floor) {
      throw NotPsdError("log_det_I_plus: eigenvalue " + std::to_string(lambda) +
                        " is below the PSD tolerance");
    }
    sum += std::log1p(c * std::max(lambda, 0.0));
  }
  return sum;
}

}  // namespace secrecy
