#pragma once

// The three-qubit witness W (Choi matrix of a positive map M_2 -> M_4),
// its three single-qubit Choi maps in closed form, the product vectors and
// states built from them, and the symbolic leading minors used to show the
// B and C maps are positive.

#include <array>
#include <string>
#include <vector>

#include "qgev/certify.hpp"
#include "qgev/linalg.hpp"
#include "qgev/poly.hpp"
#include "qgev/scalar.hpp"
#include "qgev/tensor.hpp"

namespace qgev {

inline const std::vector<std::size_t> kQubits3{2, 2, 2};

/// Which single subsystem is the domain of the Choi map phi_W^{S,T}.
enum class MapKind { A_BC, B_CA, C_AB };

inline constexpr std::array<MapKind, 3> kAllMaps{MapKind::A_BC, MapKind::B_CA, MapKind::C_AB};

inline std::string to_string(MapKind k) {
  switch (k) {
    case MapKind::A_BC: return "A_BC";
    case MapKind::B_CA: return "B_CA";
    case MapKind::C_AB: return "C_AB";
  }
  return "?";
}

inline PartitionSpec partition_of(MapKind k) { return PartitionSpec(kQubits3, {static_cast<std::size_t>(k)}); }

/// Closed-form image of X = (x y; z w). Generic over the scalar ring so the
/// same formulas serve numeric and symbolic evaluation.
template <class T>
Matrix<T> map_image(MapKind which, const Matrix<T>& xm) {
  if (xm.rows() != 2 || xm.cols() != 2) throw ShapeError("map_image expects a 2x2 matrix");
  const T& x = xm(0, 0);
  const T& y = xm(0, 1);
  const T& z = xm(1, 0);
  const T& w = xm(1, 1);
  auto c = [](int v) { return T(v); };
  const T o = c(0);
  switch (which) {
    case MapKind::A_BC:
      return Matrix<T>{{c(4) * x - c(2) * (y + z) + c(3) * w, c(-2) * x + c(2) * z, o, o},
                       {c(-2) * x + c(2) * y, c(2) * x, z, o},
                       {o, y, c(2) * w, c(-2) * z - w},
                       {o, o, c(-2) * y - w, c(4) * x + c(2) * w}};
    case MapKind::B_CA:
      return Matrix<T>{{c(4) * x, c(-2) * x, c(-2) * x, z},
                       {c(-2) * x, c(2) * x + c(4) * w, c(2) * x - c(2) * w, o},
                       {c(-2) * x, c(2) * x - c(2) * w, c(3) * x + c(2) * w, -w},
                       {y, o, -w, c(2) * w}};
    case MapKind::C_AB:
      return Matrix<T>{{c(4) * x - c(2) * (y + z) + c(2) * w, o, c(-2) * x + c(2) * z, o},
                       {o, c(4) * w, y, c(-2) * z},
                       {c(-2) * x + c(2) * y, z, c(3) * x, o},
                       {o, c(-2) * y, o, c(2) * x - y - z + c(2) * w}};
  }
  throw PreconditionError("unknown map");
}

/// 2x2 matrix unit |i><j|.
inline ExactMatrix matrix_unit(std::size_t i, std::size_t j, std::size_t n = 2) {
  ExactMatrix e(n, n);
  e(i, j) = Cyc8(1);
  return e;
}

/// W assembled as the Choi matrix sum_{ij} |i><j| (x) phi^{A,BC}(|i><j|).
inline ExactMatrix build_witness() {
  ExactMatrix w(8, 8);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) w += kron(matrix_unit(i, j), map_image(MapKind::A_BC, matrix_unit(i, j)));
  w.set_dims(kQubits3);
  return w;
}

struct WitnessBundle {
  ExactMatrix w;
  [[nodiscard]] ExactMatrix image(MapKind which, const ExactMatrix& x) const { return map_image(which, x); }
  [[nodiscard]] ExactMatrix choi(MapKind which, const ExactMatrix& x) const {
    return choi_apply(w, partition_of(which), x);
  }
};

// ---------------------------------------------------------------------------
// Product vectors and states

/// alpha_1..alpha_8 = 1, i, -1, -i, 2z, 2z^7, 2z^3, 2z^5 (z = e^{i pi/4}).
inline std::vector<Cyc8> alphas() {
  return {Cyc8(1), Cyc8::zeta(2), Cyc8(-1), Cyc8::zeta(6),
          Cyc8(2) * Cyc8::zeta(1), Cyc8(2) * Cyc8::zeta(7), Cyc8(2) * Cyc8::zeta(3), Cyc8(2) * Cyc8::zeta(5)};
}

/// The same eight numbers written with radicals: sqrt2*(+-1 +- i).
inline std::vector<Cyc8> alphas_from_radicals() {
  const Cyc8 i = Cyc8::imag_unit(), r2 = Cyc8::sqrt2();
  return {Cyc8(1), i, Cyc8(-1), -i, r2 * (Cyc8(1) + i), r2 * (Cyc8(1) - i), -r2 * (Cyc8(1) - i), -r2 * (Cyc8(1) + i)};
}

inline std::vector<Cyc8> x_vector(const Cyc8& a) { return {Cyc8(1), a.conj()}; }

inline std::vector<Cyc8> y_vector(const Cyc8& a) {
  const Cyc8 ab = a.conj();
  const Cyc8 m = a * ab;  // |a|^2
  const Cyc8 a2 = a * a;
  return {Cyc8(2) * a - Cyc8(2) * a2,
          Cyc8(4) * a - Cyc8(2) * a2 - Cyc8(2) * m + Cyc8(3) * a * m,
          Cyc8(-4) - Cyc8(2) * m,
          Cyc8(-2) * ab - m};
}

inline Cyc8 squared_norm(const std::vector<Cyc8>& v) {
  Cyc8 acc;
  for (const auto& e : v) acc += e * e.conj();
  return acc;
}

struct ProductVectors {
  std::vector<Cyc8> alphas;
  std::vector<std::vector<Cyc8>> x, y, z;  // z_k = x_k (x) y_k
  std::vector<std::vector<Cyc8>> z_conj;    // conj(x_k) (x) y_k
};

inline ProductVectors build_product_vectors() {
  ProductVectors pv;
  pv.alphas = alphas();
  for (const auto& a : pv.alphas) {
    pv.x.push_back(x_vector(a));
    pv.y.push_back(y_vector(a));
    pv.z.push_back(kron(pv.x.back(), pv.y.back()));
    pv.z_conj.push_back(kron(conj(pv.x.back()), pv.y.back()));
  }
  return pv;
}

/// Matrix whose columns are the given vectors.
inline ExactMatrix columns_matrix(const std::vector<std::vector<Cyc8>>& cols) {
  ExactMatrix m(cols.front().size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
  return m;
}

struct ConstructionBundle {
  ProductVectors vectors;
  ExactMatrix sigma1, sigma2, rho1;
  Cyc8 norm_sum_1, norm_sum_2;  // sum of |z_k|^2 over k = 1..4 and 5..8
};

/// sigma1 = (1/848) sum_{k<=4} |z_k><z_k|, sigma2 = (1/28160) sum_{k>4} |z_k><z_k|,
/// rho1 = sigma1/12 + 11 sigma2/12.
inline ConstructionBundle build_states() {
  ConstructionBundle b;
  b.vectors = build_product_vectors();
  ExactMatrix s1(8, 8), s2(8, 8);
  for (std::size_t k = 0; k < 8; ++k) {
    auto proj = ExactMatrix::outer(b.vectors.z[k], b.vectors.z[k]);
    (k < 4 ? s1 : s2) += proj;
    (k < 4 ? b.norm_sum_1 : b.norm_sum_2) += squared_norm(b.vectors.z[k]);
  }
  b.sigma1 = s1 * Cyc8(Rational(1, 848));
  b.sigma2 = s2 * Cyc8(Rational(1, 28160));
  b.rho1 = b.sigma1 * Cyc8(Rational(1, 12)) + b.sigma2 * Cyc8(Rational(11, 12));
  for (auto* m : {&b.sigma1, &b.sigma2, &b.rho1}) m->set_dims(kQubits3);
  return b;
}

/// (1 - mu) Id/8 + mu rho1, the segment from the maximally mixed state through rho1.
inline ExactMatrix segment_state(const ExactMatrix& rho1, const Rational& mu) {
  ExactMatrix id = ExactMatrix::identity(rho1.rows()) * Cyc8((Rational(1) - mu) / Rational(static_cast<long>(rho1.rows())));
  ExactMatrix out = id + rho1 * Cyc8(mu);
  if (!rho1.dims().empty()) out.set_dims(rho1.dims());
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic minors of phi(P_alpha)

using SymPoly = BiPoly<Cyc8>;
using SrPoly = BiPoly<Rational>;  // in (s, r) = (|alpha|^2, alpha + conj(alpha))

/// P_alpha = (1, conj(alpha); alpha, |alpha|^2) over Q(zeta_8)[a, b].
inline Matrix<SymPoly> p_alpha_symbolic() {
  SymPoly al = alpha_symbol();
  SymPoly s = SymPoly::monomial(2, 0) + SymPoly::monomial(0, 2);
  return Matrix<SymPoly>{{SymPoly(1), al.conj()}, {al, s}};
}

/// P_alpha for a concrete alpha.
inline ExactMatrix p_alpha(const Cyc8& a) { return ExactMatrix{{Cyc8(1), a.conj()}, {a, a * a.conj()}}; }

namespace detail {
inline SrPoly sym_s() { return SrPoly::monomial(1, 0); }
inline SrPoly sym_r() { return SrPoly::monomial(0, 1); }
inline SrPoly rat(long p, long q = 1) { return SrPoly(Rational(p, q)); }
/// |alpha - 1|^2 = s - r + 1
inline SrPoly dist_to_one_sq() { return sym_s() - sym_r() + rat(1); }
}  // namespace detail

/// Closed forms of the leading minors Delta_k (k = 1..4) of phi(P_alpha) in (s, r).
inline std::vector<SrPoly> displayed_minors(MapKind which) {
  using namespace detail;
  const SrPoly s = sym_s(), r = sym_r();
  if (which == MapKind::B_CA)
    return {rat(4), rat(4) * (rat(1) + rat(4) * s), rat(4) * (rat(1) + rat(14) * s + rat(4) * s * s),
            rat(6) * s * (rat(1) + rat(14) * s + rat(2) * s * s + rat(2) * s * r)};
  if (which == MapKind::C_AB) {
    // alpha^2 + conj(alpha)^2 = r^2 - 2s
    SrPoly sum_sq = r * r - rat(2) * s;
    return {rat(2) * dist_to_one_sq() + rat(2), rat(8) * s * (dist_to_one_sq() + rat(1)),
            rat(2) * s * (rat(3) * dist_to_one_sq() + rat(11)),
            rat(2) * s * (rat(12) - rat(16) * r + rat(3) * sum_sq - rat(9) * s * r + rat(36) * s + rat(6) * s * s)};
  }
  throw PreconditionError("minor closed forms exist for the B_CA and C_AB maps only");
}

struct MinorIdentity {
  std::size_t k = 0;
  SrPoly computed;   // in (a, b)
  SrPoly displayed;  // in (s, r)
  SrPoly residual;   // computed - substitute(displayed), in (a, b)
  [[nodiscard]] bool holds() const { return residual.is_zero(); }
};

/// Leading principal minors of phi(P_alpha), expanded symbolically, checked
/// real, and compared with the closed forms.
inline std::vector<MinorIdentity> minor_polynomials(MapKind which) {
  auto image = map_image(which, p_alpha_symbolic());
  auto shown = displayed_minors(which);
  std::vector<MinorIdentity> out;
  for (std::size_t k = 1; k <= 4; ++k) {
    MinorIdentity id;
    id.k = k;
    id.computed = realness_check(determinant_expansion(image.leading_block(k)));
    id.displayed = shown[k - 1];
    id.residual = id.computed - substitute_sr(id.displayed);
    out.push_back(std::move(id));
  }
  return out;
}

/// Positivity arguments for Delta^B_k and Delta^C_k, alpha != 0.
inline std::vector<PositivityScript> builtin_positivity_scripts() {
  using namespace detail;
  using step::AffineLowerBoundInR;
  using step::FactorOutS;
  using step::SplitSquares;
  using step::UnivariatePositive;
  const SrPoly s = sym_s(), r = sym_r();
  const auto minors_b = minor_polynomials(MapKind::B_CA);
  const auto minors_c = minor_polynomials(MapKind::C_AB);
  auto target = [&](MapKind m, std::size_t k) { return (m == MapKind::B_CA ? minors_b : minors_c)[k - 1].computed; };
  auto uni = [](std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return UniPoly(std::move(v));
  };
  // alpha - 1
  SquareTerm alpha_minus_one{Rational(1), Cyc8(1), Cyc8(0), Rational(0), Cyc8(-1)};
  SquareTerm three_alpha_minus_one = alpha_minus_one;
  three_alpha_minus_one.weight = Rational(3);
  // 3 alpha + conj(alpha) - (9/4) |alpha|^2
  SquareTerm c4_square{Rational(1), Cyc8(3), Cyc8(1), Rational(-9, 4), Cyc8(0)};

  std::vector<PositivityScript> out;
  const MapKind B = MapKind::B_CA, C = MapKind::C_AB;
  out.push_back({"Delta^B_1", target(B, 1),
                 {FactorOutS{Rational(4), 0}, SplitSquares{{}, rat(1)}, AffineLowerBoundInR{}, UnivariatePositive{uni({1})}}});
  out.push_back({"Delta^B_2", target(B, 2),
                 {FactorOutS{Rational(4), 0}, SplitSquares{{}, rat(1) + rat(4) * s}, AffineLowerBoundInR{},
                  UnivariatePositive{uni({1, 0, 4})}}});
  out.push_back({"Delta^B_3", target(B, 3),
                 {FactorOutS{Rational(4), 0}, SplitSquares{{}, rat(1) + rat(14) * s + rat(4) * s * s}, AffineLowerBoundInR{},
                  UnivariatePositive{uni({1, 0, 14, 0, 4})}}});
  out.push_back({"Delta^B_4", target(B, 4),
                 {FactorOutS{Rational(6), 1},
                  SplitSquares{{}, rat(1) + rat(14) * s + rat(2) * s * s + rat(2) * s * r},
                  AffineLowerBoundInR{},
                  UnivariatePositive{uni({1, 0, 14, -4, 2})}}});
  out.push_back({"Delta^C_1", target(C, 1),
                 {FactorOutS{Rational(2), 0}, SplitSquares{{alpha_minus_one}, rat(1)}, AffineLowerBoundInR{},
                  UnivariatePositive{uni({1})}}});
  out.push_back({"Delta^C_2", target(C, 2),
                 {FactorOutS{Rational(8), 1}, SplitSquares{{alpha_minus_one}, rat(1)}, AffineLowerBoundInR{},
                  UnivariatePositive{uni({1})}}});
  out.push_back({"Delta^C_3", target(C, 3),
                 {FactorOutS{Rational(2), 1}, SplitSquares{{three_alpha_minus_one}, rat(11)}, AffineLowerBoundInR{},
                  UnivariatePositive{uni({11})}}});
  out.push_back({"Delta^C_4", target(C, 4),
                 {FactorOutS{Rational(2), 1},
                  SplitSquares{{c4_square}, rat(15, 16) * s * s + rat(26) * s - rat(16) * r + rat(12)},
                  AffineLowerBoundInR{},
                  UnivariatePositive{uni({6, -16, 13}), Rational(2), true}}});
  return out;
}

struct BoundaryImage {
  std::string name;
  ExactMatrix image;
  bool beyond_closed_forms;  // the E_11 direction, not covered by the P_alpha family
};

/// phi^{B,CA}, phi^{C,AB} applied to P_0 = E_00 and to E_11.
inline std::vector<BoundaryImage> boundary_images() {
  std::vector<BoundaryImage> out;
  for (MapKind m : {MapKind::B_CA, MapKind::C_AB}) {
    out.push_back({"phi_" + to_string(m) + "(P_0)", map_image(m, p_alpha(Cyc8(0))), false});
  }
  for (MapKind m : {MapKind::B_CA, MapKind::C_AB}) {
    out.push_back({"phi_" + to_string(m) + "(E_11)", map_image(m, matrix_unit(1, 1)), true});
  }
  return out;
}

}  // namespace qgev
