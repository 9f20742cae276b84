#pragma once

// Shared generators and floating-point oracles for the test suites.

#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "qgev/linalg.hpp"
#include "qgev/poly.hpp"
#include "qgev/scalar.hpp"

namespace qgev::testing {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline Rational random_rational(Rng& rng, long span = 9, long max_den = 6) {
  return Rational(uniform(rng, -span, span), uniform(rng, 1, max_den));
}

inline Cyc8 random_cyc8(Rng& rng, long span = 5) {
  return Cyc8(random_rational(rng, span), random_rational(rng, span), random_rational(rng, span),
              random_rational(rng, span));
}

inline Cyc8 random_nonzero_cyc8(Rng& rng) {
  Cyc8 u;
  do u = random_cyc8(rng);
  while (u.is_zero());
  return u;
}

inline ExactMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, bool gauss_only = false) {
  ExactMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = gauss_only ? Cyc8::from_gauss(random_rational(rng, 4, 3), random_rational(rng, 4, 3))
                           : random_cyc8(rng, 3);
  return m;
}

inline ExactMatrix random_hermitian(Rng& rng, std::size_t n) {
  ExactMatrix a = random_matrix(rng, n, n);
  return a + a.conj_transpose();
}

/// Random matrix of rank <= k built as a product of n x k and k x n factors.
inline ExactMatrix random_low_rank(Rng& rng, std::size_t n, std::size_t k) {
  return random_matrix(rng, n, k, true) * random_matrix(rng, k, n, true);
}

inline std::complex<double> to_complex(const Cyc8& u) {
  const std::complex<double> z = std::polar(1.0, M_PI / 4);
  std::complex<double> acc(0.0), p(1.0);
  for (int k = 0; k < 4; ++k) {
    acc += u[k].to_double() * p;
    p *= z;
  }
  return acc;
}

inline Eigen::MatrixXcd to_eigen(const ExactMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_complex(m(i, j));
  return out;
}

inline Eigen::VectorXd hermitian_eigenvalues(const ExactMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

/// Real roots of p from the eigenvalues of its companion matrix.
inline std::vector<double> real_roots_double(const UniPoly& p, double imag_tol = 1e-4) {
  const int n = p.degree();
  std::vector<double> out;
  if (n < 1) return out;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  const double lead = p.lead().to_double();
  for (int k = 0; k < n; ++k) comp(0, k) = -p.coeff(n - 1 - k).to_double() / lead;
  for (int k = 1; k < n; ++k) comp(k, k - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  for (int k = 0; k < n; ++k)
    if (std::abs(es.eigenvalues()[k].imag()) < imag_tol) out.push_back(es.eigenvalues()[k].real());
  return out;
}

/// Leibniz-formula determinant over all permutations; independent of the library.
inline Cyc8 leibniz_determinant(const ExactMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Cyc8 total;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    Cyc8 term(1);
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline ExactMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  ExactMatrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (long v : r) m(i, j++) = Cyc8(v);
    ++i;
  }
  return m;
}

inline UniPoly int_poly(std::initializer_list<long> ascending) {
  std::vector<Rational> c;
  for (long v : ascending) c.emplace_back(v);
  return UniPoly(std::move(c));
}

}  // namespace qgev::testing
