#pragma once

// Multipartite index bookkeeping: multi-indices and their merge across a
// bipartition, Kronecker products, partial transposes, Choi-block maps and
// the witness pairing <rho, W> = Tr(W rho^t).

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qgev/error.hpp"
#include "qgev/linalg.hpp"

namespace qgev {

/// Subsystem dimensions d_1..d_n together with a nonempty proper subset S
/// (0-based, sorted). T is the complement.
class PartitionSpec {
 public:
  PartitionSpec(std::vector<std::size_t> dims, std::vector<std::size_t> subset)
      : PartitionSpec(std::move(dims), std::move(subset), false) {}

  /// Same as the constructor but allows S = [n] (used for the full transpose).
  static PartitionSpec allow_full(std::vector<std::size_t> dims, std::vector<std::size_t> subset) {
    return PartitionSpec(std::move(dims), std::move(subset), true);
  }

 private:
  PartitionSpec(std::vector<std::size_t> dims, std::vector<std::size_t> subset, bool full_ok)
      : dims_(std::move(dims)), subset_(std::move(subset)) {
    std::sort(subset_.begin(), subset_.end());
    subset_.erase(std::unique(subset_.begin(), subset_.end()), subset_.end());
    if (dims_.empty()) throw ShapeError("partition needs at least one subsystem");
    for (auto d : dims_)
      if (d == 0) throw ShapeError("subsystem dimension must be positive");
    if (subset_.empty()) throw ShapeError("subset must be nonempty");
    if (subset_.back() >= dims_.size()) throw ShapeError("subset refers to a missing subsystem");
    for (std::size_t m = 0; m < dims_.size(); ++m)
      if (!contains(m)) complement_.push_back(m);
    if (complement_.empty() && !full_ok) throw ShapeError("subset must be a proper subset");
  }

 public:
  /// Parses "A", "BC", ... (letters map to subsystems 1, 2, ...) or 1-based
  /// indices "1,3".
  static std::vector<std::size_t> parse_subset(const std::string& text) {
    std::vector<std::size_t> out;
    if (text.empty()) throw ParseError("empty subset");
    if (std::isalpha(static_cast<unsigned char>(text[0]))) {
      for (char ch : text) {
        if (ch < 'A' || ch > 'Z') throw ParseError("subset letters must be A-Z: '" + text + "'");
        out.push_back(static_cast<std::size_t>(ch - 'A'));
      }
      return out;
    }
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto comma = text.find(',', pos);
      std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("malformed subset '" + text + "'");
      auto v = std::stoul(tok);
      if (v == 0) throw ParseError("subset indices are 1-based");
      out.push_back(v - 1);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return out;
  }

  [[nodiscard]] const std::vector<std::size_t>& dims() const { return dims_; }
  [[nodiscard]] const std::vector<std::size_t>& subset() const { return subset_; }
  [[nodiscard]] const std::vector<std::size_t>& complement() const { return complement_; }
  [[nodiscard]] bool contains(std::size_t m) const {
    return std::binary_search(subset_.begin(), subset_.end(), m);
  }
  [[nodiscard]] bool is_proper() const { return !complement_.empty(); }
  [[nodiscard]] std::size_t total_dim() const { return product(all()); }
  [[nodiscard]] std::size_t subset_dim() const { return product(subset_); }
  [[nodiscard]] std::size_t complement_dim() const { return product(complement_); }

  [[nodiscard]] std::vector<std::size_t> all() const {
    std::vector<std::size_t> v(dims_.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
  }

  /// Digits of a linear index over the given subsystems (first = most significant).
  [[nodiscard]] std::vector<std::size_t> decode(std::size_t index, const std::vector<std::size_t>& over) const {
    std::vector<std::size_t> digits(over.size());
    for (std::size_t p = over.size(); p-- > 0;) {
      digits[p] = index % dims_[over[p]];
      index /= dims_[over[p]];
    }
    return digits;
  }
  [[nodiscard]] std::size_t encode(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& over) const {
    std::size_t index = 0;
    for (std::size_t p = 0; p < over.size(); ++p) index = index * dims_[over[p]] + digits[p];
    return index;
  }

  /// Linear index on [n] of i (a linear index on S) merged with k (on T).
  [[nodiscard]] std::size_t merge(std::size_t i, std::size_t k) const {
    auto di = decode(i, subset_);
    auto dk = decode(k, complement_);
    std::vector<std::size_t> full(dims_.size());
    for (std::size_t p = 0; p < subset_.size(); ++p) full[subset_[p]] = di[p];
    for (std::size_t p = 0; p < complement_.size(); ++p) full[complement_[p]] = dk[p];
    return encode(full, all());
  }

  /// merge() tabulated as [i][k].
  [[nodiscard]] std::vector<std::vector<std::size_t>> merge_table() const {
    std::vector<std::vector<std::size_t>> t(subset_dim(), std::vector<std::size_t>(complement_dim()));
    for (std::size_t i = 0; i < subset_dim(); ++i)
      for (std::size_t k = 0; k < complement_dim(); ++k) t[i][k] = merge(i, k);
    return t;
  }

 private:
  [[nodiscard]] std::size_t product(const std::vector<std::size_t>& over) const {
    std::size_t p = 1;
    for (auto m : over) p *= dims_[m];
    return p;
  }

  std::vector<std::size_t> dims_;
  std::vector<std::size_t> subset_;
  std::vector<std::size_t> complement_;
};

/// A multi-index: digit values assigned to a set of subsystems.
struct MultiIndex {
  std::vector<std::size_t> support;  // sorted subsystem numbers (0-based)
  std::vector<std::size_t> digits;   // digits[p] belongs to support[p]

  /// Lexicographic linear index, lowest subsystem most significant.
  [[nodiscard]] std::size_t linear(const std::vector<std::size_t>& dims) const {
    std::size_t index = 0;
    for (std::size_t p = 0; p < support.size(); ++p) {
      if (digits[p] >= dims.at(support[p])) throw ShapeError("multi-index digit out of range");
      index = index * dims[support[p]] + digits[p];
    }
    return index;
  }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// (i <> k)(m) = i(m) on supp(i), k(m) on supp(k). Supports must be disjoint
/// and together cover 0..n-1.
inline MultiIndex diamond(const MultiIndex& i, const MultiIndex& k) {
  if (i.support.size() != i.digits.size() || k.support.size() != k.digits.size())
    throw ShapeError("multi-index support/digit length mismatch");
  std::size_t n = i.support.size() + k.support.size();
  std::vector<std::optional<std::size_t>> full(n);
  for (const auto* mi : {&i, &k}) {
    for (std::size_t p = 0; p < mi->support.size(); ++p) {
      std::size_t m = mi->support[p];
      if (m >= n) throw ShapeError("multi-index supports do not cover a contiguous [n]");
      if (full[m]) throw ShapeError("multi-index supports overlap at subsystem " + std::to_string(m + 1));
      full[m] = mi->digits[p];
    }
  }
  MultiIndex out;
  for (std::size_t m = 0; m < n; ++m) {
    out.support.push_back(m);
    out.digits.push_back(*full[m]);
  }
  return out;
}

template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

template <class T>
Matrix<T> kron(const std::vector<Matrix<T>>& factors) {
  if (factors.empty()) return Matrix<T>::identity(1);
  Matrix<T> m = factors.front();
  for (std::size_t f = 1; f < factors.size(); ++f) m = kron(m, factors[f]);
  return m;
}

template <class T>
std::vector<T> kron(const std::vector<T>& u, const std::vector<T>& v) {
  std::vector<T> out;
  out.reserve(u.size() * v.size());
  for (const auto& x : u)
    for (const auto& y : v) out.push_back(x * y);
  return out;
}

template <class T>
std::vector<T> conj(const std::vector<T>& v) {
  std::vector<T> out(v);
  for (auto& x : out) x = conj(x);
  return out;
}

/// Transpose of the S tensor factor: result(i<>k, j<>l) = M(j<>k, i<>l).
template <class T>
Matrix<T> partial_transpose(const Matrix<T>& m, const PartitionSpec& spec) {
  const std::size_t n = spec.total_dim();
  if (!m.is_square() || m.rows() != n) throw ShapeError("partial transpose: matrix size does not match dims");
  if (!m.dims().empty() && m.dims() != spec.dims())
    throw ShapeError("partial transpose: matrix subsystem dims differ from partition dims");
  if (!spec.is_proper()) return m.transpose().with_dims(spec.dims());
  auto table = spec.merge_table();
  const std::size_t ds = spec.subset_dim(), dt = spec.complement_dim();
  Matrix<T> out(n, n);
  for (std::size_t i = 0; i < ds; ++i)
    for (std::size_t j = 0; j < ds; ++j)
      for (std::size_t k = 0; k < dt; ++k)
        for (std::size_t l = 0; l < dt; ++l) out(table[i][k], table[j][l]) = m(table[j][k], table[i][l]);
  out.set_dims(spec.dims());
  return out;
}

/// The block W[i,j] on T: W[i,j](k,l) = W(i<>k, j<>l).
template <class T>
Matrix<T> choi_block(const Matrix<T>& w, const PartitionSpec& spec, std::size_t i, std::size_t j) {
  const std::size_t dt = spec.complement_dim();
  Matrix<T> out(dt, dt);
  for (std::size_t k = 0; k < dt; ++k)
    for (std::size_t l = 0; l < dt; ++l) out(k, l) = w(spec.merge(i, k), spec.merge(j, l));
  return out;
}

/// phi_W^{S,T}(X) = sum_{i,j} X(i,j) W[i,j].
template <class T>
Matrix<T> choi_apply(const Matrix<T>& w, const PartitionSpec& spec, const Matrix<T>& x) {
  if (!w.is_square() || w.rows() != spec.total_dim()) throw ShapeError("choi_apply: W does not match dims");
  if (!spec.is_proper()) throw ShapeError("choi_apply: subset must be proper");
  const std::size_t ds = spec.subset_dim(), dt = spec.complement_dim();
  if (x.rows() != ds || x.cols() != ds)
    throw ShapeError("choi_apply: X must be " + std::to_string(ds) + "x" + std::to_string(ds));
  auto table = spec.merge_table();
  Matrix<T> out(dt, dt);
  for (std::size_t i = 0; i < ds; ++i)
    for (std::size_t j = 0; j < ds; ++j) {
      if (x(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < dt; ++k)
        for (std::size_t l = 0; l < dt; ++l) out(k, l) += x(i, j) * w(table[i][k], table[j][l]);
    }
  return out;
}

/// <rho, W> = Tr(W rho^t) = sum_{ij} W_ij rho_ij.
template <class T>
T pairing(const Matrix<T>& rho, const Matrix<T>& w) {
  if (!rho.is_square() || rho.rows() != w.rows() || rho.cols() != w.cols())
    throw ShapeError("pairing requires square matrices of equal size");
  T acc(0);
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j)
      if (!w(i, j).is_zero() && !rho(i, j).is_zero()) acc += w(i, j) * rho(i, j);
  return acc;
}

/// <v|M|v>
template <class T>
T expectation(const Matrix<T>& m, const std::vector<T>& v) {
  if (!m.is_square() || m.rows() != v.size()) throw ShapeError("expectation: vector length mismatch");
  T acc(0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    T row(0);
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!m(i, j).is_zero() && !v[j].is_zero()) row += m(i, j) * v[j];
    acc += conj(v[i]) * row;
  }
  return acc;
}

struct BlockPositivityResult {
  std::size_t samples = 0;
  std::optional<Cyc8> min_value;  // absent when samples == 0
  bool all_nonnegative = true;
};

namespace detail {

/// Random nonzero vector with entries p + q*i, p,q in [-3,3], the imaginary
/// part present with probability 1/2. Uses raw engine output only, so the
/// stream is identical across standard libraries.
inline std::vector<Cyc8> random_gauss_vector(std::mt19937_64& rng, std::size_t n) {
  while (true) {
    std::vector<Cyc8> v;
    bool nonzero = false;
    for (std::size_t k = 0; k < n; ++k) {
      long re = static_cast<long>(rng() % 7) - 3;
      long im = 0;
      if (rng() & 1U) im = static_cast<long>(rng() % 7) - 3;
      v.push_back(Cyc8::from_gauss(Rational(re), Rational(im)));
      nonzero = nonzero || re != 0 || im != 0;
    }
    if (nonzero) return v;
  }
}

}  // namespace detail

/// Evaluates <u (x)_S v| W |u (x)_S v> exactly for pseudorandom u on S and v on T.
inline BlockPositivityResult block_positivity_sample(const ExactMatrix& w, const PartitionSpec& spec,
                                                     std::size_t n_samples, std::uint64_t seed) {
  if (!w.is_square() || w.rows() != spec.total_dim()) throw ShapeError("block positivity: W does not match dims");
  std::mt19937_64 rng(seed);
  auto table = spec.merge_table();
  const std::size_t ds = spec.subset_dim(), dt = spec.complement_dim();
  BlockPositivityResult res;
  for (std::size_t s = 0; s < n_samples; ++s) {
    auto u = detail::random_gauss_vector(rng, ds);
    auto v = detail::random_gauss_vector(rng, dt);
    std::vector<Cyc8> full(spec.total_dim());
    for (std::size_t i = 0; i < ds; ++i)
      for (std::size_t k = 0; k < dt; ++k) full[table[i][k]] = u[i] * v[k];
    Cyc8 val = expectation(w, full);
    if (!res.min_value || (val - *res.min_value).real_sign() < 0) res.min_value = val;
    if (val.real_sign() < 0) res.all_nonnegative = false;
    ++res.samples;
  }
  return res;
}

}  // namespace qgev
