#pragma once

// Dense exact matrices over Rational / Cyc8 (and any commutative ring for the
// division-free routines), with determinant, rank, characteristic polynomial
// and positive-semidefiniteness certificates.

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qgev/error.hpp"
#include "qgev/poly.hpp"
#include "qgev/scalar.hpp"

namespace qgev {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw ShapeError("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Matrix diagonal(const std::vector<T>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  /// Column vector.
  static Matrix column(const std::vector<T>& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }
  /// |u><v|
  static Matrix outer(const std::vector<T>& u, const std::vector<T>& v) {
    Matrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * conj(v[j]);
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }
  [[nodiscard]] const std::vector<std::size_t>& dims() const { return dims_; }

  /// Attaches subsystem dimensions; their product must equal the (square) size.
  Matrix& set_dims(std::vector<std::size_t> dims) {
    if (!dims.empty()) {
      std::size_t prod = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
      if (!is_square() || prod != rows_)
        throw ShapeError("subsystem dimensions do not multiply to the matrix size");
    }
    dims_ = std::move(dims);
    return *this;
  }
  [[nodiscard]] Matrix with_dims(std::vector<std::size_t> dims) const {
    Matrix m = *this;
    m.set_dims(std::move(dims));
    return m;
  }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  T& at(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw ShapeError("matrix index out of range");
    return (*this)(i, j);
  }
  const T& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw ShapeError("matrix index out of range");
    return (*this)(i, j);
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    m.dims_ = dims_;
    return m;
  }
  [[nodiscard]] Matrix conj_transpose() const {
    Matrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = conj((*this)(i, j));
    m.dims_ = dims_;
    return m;
  }
  [[nodiscard]] Matrix entrywise_conj() const {
    Matrix m = *this;
    for (auto& v : m.data_) v = conj(v);
    return m;
  }
  [[nodiscard]] bool is_hermitian() const { return is_square() && *this == conj_transpose(); }

  [[nodiscard]] T trace() const {
    if (!is_square()) throw ShapeError("trace of a non-square matrix");
    T t(0);
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Upper-left k x k block.
  [[nodiscard]] Matrix leading_block(std::size_t k) const {
    if (k > rows_ || k > cols_) throw ShapeError("leading block larger than matrix");
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  [[nodiscard]] std::vector<T> column_values(std::size_t j) const {
    std::vector<T> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const T& s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
  friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    if (a.dims_ == b.dims_) m.dims_ = a.dims_;
    return m;
  }
  /// Entry equality; subsystem metadata is not compared.
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
  std::vector<std::size_t> dims_;
};

using ExactMatrix = Matrix<Cyc8>;
using RationalMatrix = Matrix<Rational>;

/// Mapped copy with a different scalar type.
template <class U, class T, class F>
Matrix<U> map_entries(const Matrix<T>& m, F f) {
  Matrix<U> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
  if (!m.dims().empty()) out.set_dims(m.dims());
  return out;
}

inline ExactMatrix to_cyc8(const RationalMatrix& m) {
  return map_entries<Cyc8>(m, [](const Rational& r) { return Cyc8(r); });
}

/// Throws NotRationalError naming the first non-rational entry.
inline RationalMatrix to_rational(const ExactMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_rational())
        throw NotRationalError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                               ") = " + m(i, j).str() + " is not rational");
  return map_entries<Rational>(m, [](const Cyc8& c) { return c.as_rational(); });
}

/// Determinant by fraction-free Bareiss elimination; T must be a field.
template <class T>
T determinant(const Matrix<T>& m) {
  if (!m.is_square()) throw ShapeError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  Matrix<T> a = m;
  T prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t p = k + 1;
      while (p < n && a(p, k).is_zero()) ++p;
      if (p == n) return T(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = T(0);
    }
    prev = a(k, k);
  }
  T d = a(n - 1, n - 1);
  return negate ? -d : d;
}

/// Determinant by Laplace expansion along the first row. Division-free, so it
/// works over polynomial rings; exponential cost, intended for n <= 5.
template <class T>
T determinant_expansion(const Matrix<T>& m) {
  if (!m.is_square()) throw ShapeError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  if (n == 1) return m(0, 0);
  T total(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (m(0, c).is_zero()) continue;
    Matrix<T> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 0, jj = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, jj++) = m(i, j);
      }
    T term = m(0, c) * determinant_expansion(minor);
    if (c % 2 == 0)
      total += term;
    else
      total -= term;
  }
  return total;
}

/// Rank over the field by Gaussian elimination with first-nonzero pivoting.
template <class T>
std::size_t exact_rank(const Matrix<T>& m) {
  Matrix<T> a = m;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t p = rank;
    while (p < a.rows() && a(p, col).is_zero()) ++p;
    if (p == a.rows()) continue;
    if (p != rank)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(rank, j), a(p, j));
    T inv = T(1) / a(rank, col);
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      if (a(i, col).is_zero()) continue;
      T f = a(i, col) * inv;
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

/// Coefficients (ascending) of det(xI - M) by Faddeev-LeVerrier.
template <class T>
std::vector<T> charpoly_coeffs(const Matrix<T>& m) {
  if (!m.is_square()) throw ShapeError("characteristic polynomial of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<T> c(n + 1, T(0));
  c[n] = T(1);
  Matrix<T> mk(n, n);  // M_0 = 0
  const Matrix<T> id = Matrix<T>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + id * c[n - k + 1];
    T tr = (m * mk).trace();
    c[n - k] = -(tr * T(Rational(1) / Rational(static_cast<long>(k))));
  }
  return c;
}

/// Monic characteristic polynomial with rational coefficients. Throws
/// NotRationalError if some coefficient is irrational.
inline UniPoly charpoly(const ExactMatrix& m) {
  std::vector<Rational> out;
  auto c = charpoly_coeffs(m);
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (!c[k].is_rational())
      throw NotRationalError("charpoly coefficient of x^" + std::to_string(k) + " is " + c[k].str());
    out.push_back(c[k].as_rational());
  }
  return UniPoly(std::move(out));
}

template <class T>
std::vector<T> leading_principal_minors(const Matrix<T>& m) {
  if (!m.is_square()) throw ShapeError("principal minors of a non-square matrix");
  std::vector<T> out;
  for (std::size_t k = 1; k <= m.rows(); ++k) out.push_back(determinant(m.leading_block(k)));
  return out;
}

/// Outcome of a positive-semidefiniteness test for a Hermitian matrix.
struct PsdCertificate {
  bool psd = false;
  /// Signs of e_1..e_n, the elementary symmetric functions of the eigenvalues.
  std::vector<int> signs;
  /// First k with e_k < 0 when not PSD.
  std::optional<std::size_t> violated;
  /// Sturm-certified interval holding a negative eigenvalue (rational charpoly only).
  std::optional<IsolatingInterval> negative_root;
  std::string evidence;
};

/// A Hermitian H is PSD iff every e_k >= 0, where det(xI - H) = sum_k (-1)^k e_k x^(n-k).
/// Valid for singular H, unlike leading-minor tests.
inline PsdCertificate psd_certificate(const ExactMatrix& h) {
  if (!h.is_hermitian()) throw PreconditionError("psd_certificate requires a Hermitian matrix");
  const std::size_t n = h.rows();
  auto c = charpoly_coeffs(h);
  PsdCertificate cert;
  cert.psd = true;
  std::string sign_list;
  for (std::size_t k = 1; k <= n; ++k) {
    Cyc8 ek = c[n - k];
    if (k % 2 == 1) ek = -ek;
    int s = ek.real_sign();
    cert.signs.push_back(s);
    sign_list += s > 0 ? '+' : (s < 0 ? '-' : '0');
    if (s < 0 && cert.psd) {
      cert.psd = false;
      cert.violated = k;
    }
  }
  cert.evidence = "elementary symmetric signs e1..e" + std::to_string(n) + ": " + sign_list;
  if (cert.psd) return cert;
  cert.evidence += "; e" + std::to_string(*cert.violated) + " < 0";
  bool rational = true;
  for (const auto& v : c) rational = rational && v.is_rational();
  if (rational) {
    UniPoly p = charpoly(h);
    p = detail::deflate_at(p, Rational(0));
    Rational lower = -root_bound(p) - Rational(1);
    auto iv = isolate_smallest_root(p, lower, Rational(1, 1000));
    while (iv.hi.sign() >= 0) refine(iv, iv.width() / Rational(2));
    cert.negative_root = iv;
    cert.evidence += "; negative eigenvalue in " + iv.str();
  }
  return cert;
}

}  // namespace qgev
