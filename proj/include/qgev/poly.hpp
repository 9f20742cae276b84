#pragma once

// Univariate rational polynomials with Sturm-sequence root counting and
// isolation, and sparse bivariate polynomials used for symbolic minors.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qgev/error.hpp"
#include "qgev/scalar.hpp"

namespace qgev {

/// Polynomial with rational coefficients, ascending degree, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<Rational> coeffs) : c_(coeffs) { trim(); }

  static UniPoly constant(const Rational& v) { return UniPoly(std::vector<Rational>{v}); }
  static UniPoly x() { return UniPoly({Rational(0), Rational(1)}); }
  /// x - root
  static UniPoly linear_root(const Rational& root) { return UniPoly({-root, Rational(1)}); }

  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  /// Degree, or -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] const std::vector<Rational>& coeffs() const { return c_; }
  [[nodiscard]] Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  [[nodiscard]] const Rational& lead() const {
    if (is_zero()) throw PreconditionError("leading coefficient of zero polynomial");
    return c_.back();
  }

  [[nodiscard]] Rational operator()(const Rational& x) const {
    Rational acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  [[nodiscard]] double eval_double(double x) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_double();
    return acc;
  }

  [[nodiscard]] UniPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * Rational(static_cast<long>(k)));
    return UniPoly(std::move(d));
  }

  [[nodiscard]] UniPoly monic() const {
    if (is_zero()) return *this;
    return *this * lead().inverse();
  }

  /// p(c * x)
  [[nodiscard]] UniPoly compose_scale(const Rational& c) const {
    std::vector<Rational> out(c_);
    Rational pw(1);
    for (auto& v : out) {
      v *= pw;
      pw *= c;
    }
    return UniPoly(std::move(out));
  }

  UniPoly operator-() const { return *this * Rational(-1); }
  friend UniPoly operator+(const UniPoly& p, const UniPoly& q) {
    std::vector<Rational> out(std::max(p.c_.size(), q.c_.size()));
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = p.coeff(k) + q.coeff(k);
    return UniPoly(std::move(out));
  }
  friend UniPoly operator-(const UniPoly& p, const UniPoly& q) { return p + (-q); }
  friend UniPoly operator*(const UniPoly& p, const UniPoly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<Rational> out(p.c_.size() + q.c_.size() - 1);
    for (std::size_t i = 0; i < p.c_.size(); ++i) {
      if (p.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < q.c_.size(); ++j) out[i + j] += p.c_[i] * q.c_[j];
    }
    return UniPoly(std::move(out));
  }
  friend UniPoly operator*(const UniPoly& p, const Rational& s) {
    std::vector<Rational> out(p.c_);
    for (auto& v : out) v *= s;
    return UniPoly(std::move(out));
  }
  friend UniPoly operator*(const Rational& s, const UniPoly& p) { return p * s; }
  friend bool operator==(const UniPoly& p, const UniPoly& q) { return p.c_ == q.c_; }

  /// Human-readable form in descending powers, e.g. "2*t^4 - 4*t^3 + 1".
  [[nodiscard]] std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const Rational& c = c_[k];
      if (c.is_zero()) continue;
      Rational mag = c.abs();
      std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
      std::string term;
      if (mono.empty())
        term = mag.str();
      else if (mag == Rational(1))
        term = mono;
      else
        term = mag.str() + "*" + mono;
      if (out.empty())
        out = (c.sign() < 0 ? "-" : "") + term;
      else
        out += (c.sign() < 0 ? " - " : " + ") + term;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// Quotient and remainder with p = q*quot + rem, deg rem < deg q.
inline std::pair<UniPoly, UniPoly> div_rem(const UniPoly& p, const UniPoly& q) {
  if (q.is_zero()) throw DivisionByZero("polynomial division by zero polynomial");
  std::vector<Rational> rem = p.coeffs();
  int dq = q.degree();
  int dp = p.degree();
  if (dp < dq) return {UniPoly(), p};
  std::vector<Rational> quot(static_cast<std::size_t>(dp - dq + 1));
  Rational inv_lead = q.lead().inverse();
  for (int k = dp; k >= dq; --k) {
    Rational f = rem[k] * inv_lead;
    if (f.is_zero()) continue;
    quot[k - dq] = f;
    for (int j = 0; j <= dq; ++j) rem[k - dq + j] -= f * q.coeffs()[j];
  }
  rem.resize(static_cast<std::size_t>(dq));
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

/// Monic greatest common divisor.
inline UniPoly gcd(UniPoly p, UniPoly q) {
  if (p.is_zero() && q.is_zero()) throw PreconditionError("gcd of two zero polynomials");
  while (!q.is_zero()) {
    auto r = div_rem(p, q).second;
    p = std::move(q);
    q = std::move(r);
  }
  return p.monic();
}

namespace detail {

inline std::pair<mpz_class, mpz_class> content_parts(const UniPoly& p) {
  mpz_class l = 1, g = 0;
  for (const auto& c : p.coeffs()) {
    mpz_class d = c.den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    mpz_class n = c.num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  return {l, g};
}

/// Rescale by a positive rational so all coefficients are coprime integers.
inline UniPoly positive_primitive(const UniPoly& p) {
  if (p.is_zero()) return p;
  auto [l, g] = content_parts(p);
  return p * Rational(l, g);
}

}  // namespace detail

/// Integer-coefficient multiple of p with coprime coefficients and positive
/// leading coefficient.
inline UniPoly primitive_integer_form(const UniPoly& p) {
  if (p.is_zero()) throw PreconditionError("primitive form of zero polynomial");
  UniPoly r = detail::positive_primitive(p);
  return r.lead().sign() < 0 ? -r : r;
}

/// Upper bound on the absolute value of every complex root (Cauchy).
inline Rational root_bound(const UniPoly& p) {
  if (p.degree() < 1) return Rational(1);
  Rational m;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, (p.coeffs()[k] / p.lead()).abs());
  return m + Rational(1);
}

/// Sturm chain of the squarefree part of a polynomial, cached for repeated
/// counting. Counts are of distinct real roots in half-open intervals (lo, hi].
/// Working with the squarefree part keeps the chain nonvanishing at multiple
/// roots, so bisection may land on them.
class SturmSequence {
 public:
  explicit SturmSequence(const UniPoly& p) {
    if (p.is_zero()) throw PreconditionError("Sturm sequence of the zero polynomial");
    UniPoly sf = p;
    if (p.degree() >= 1) sf = div_rem(p, gcd(p, p.derivative())).first;
    chain_.push_back(detail::positive_primitive(sf));
    if (sf.degree() < 1) return;
    chain_.push_back(detail::positive_primitive(sf.derivative()));
    while (true) {
      auto r = div_rem(chain_[chain_.size() - 2], chain_.back()).second;
      if (r.is_zero()) break;
      chain_.push_back(detail::positive_primitive(-r));
    }
  }

  [[nodiscard]] const std::vector<UniPoly>& chain() const { return chain_; }
  [[nodiscard]] const UniPoly& poly() const { return chain_.front(); }

  /// Distinct roots in (lo, hi]; nullopt endpoints mean -inf / +inf.
  /// Throws RootAtEndpoint if a finite endpoint is a root.
  [[nodiscard]] int count(const std::optional<Rational>& lo, const std::optional<Rational>& hi) const {
    for (const auto* e : {&lo, &hi}) {
      if (*e && poly()(**e).is_zero())
        throw RootAtEndpoint("endpoint " + (*e)->str() +
                             " is a root; perturb the rational endpoint and retry");
    }
    return count_unchecked(lo, hi);
  }

  /// As count(), but hi may be a root (it is then included). lo must not be a root.
  [[nodiscard]] int count_unchecked(const std::optional<Rational>& lo,
                                    const std::optional<Rational>& hi) const {
    if (lo && hi && *hi < *lo) throw PreconditionError("Sturm count with hi < lo");
    return variations_at(lo, -1) - variations_at(hi, +1);
  }

 private:
  // side: -1 for -inf when the endpoint is absent, +1 for +inf.
  [[nodiscard]] int variations_at(const std::optional<Rational>& x, int side) const {
    int prev = 0, v = 0;
    for (const auto& q : chain_) {
      int s;
      if (x) {
        s = q(*x).sign();
      } else {
        s = q.lead().sign();
        if (side < 0 && q.degree() % 2 == 1) s = -s;
      }
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  }

  std::vector<UniPoly> chain_;
};

inline int sturm_count(const UniPoly& p, const std::optional<Rational>& lo,
                       const std::optional<Rational>& hi) {
  return SturmSequence(p).count(lo, hi);
}

/// Rational interval (lo, hi] holding exactly one root of poly, with poly(lo) != 0.
struct IsolatingInterval {
  Rational lo;
  Rational hi;
  UniPoly poly;

  [[nodiscard]] Rational width() const { return hi - lo; }
  /// The root itself when it is the rational endpoint hi.
  [[nodiscard]] std::optional<Rational> exact_root() const {
    if (poly(hi).is_zero()) return hi;
    return std::nullopt;
  }
  /// Re-derives the invariant from scratch.
  [[nodiscard]] bool verify() const {
    if (!(lo < hi) || poly(lo).is_zero()) return false;
    return SturmSequence(poly).count_unchecked(lo, hi) == 1;
  }
  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    os.precision(12);
    os << "(" << lo.str() << ", " << hi.str() << "] ~ (" << lo.to_double() << ", " << hi.to_double()
       << "]";
    return os.str();
  }
};

namespace detail {

/// Halves the interval keeping the unique root; width shrinks by at least 1/2.
inline void bisect_once(const SturmSequence& sturm, Rational& lo, Rational& hi) {
  Rational mid = (lo + hi) / Rational(2);
  if (sturm.count_unchecked(lo, mid) == 1)
    hi = mid;
  else
    lo = mid;
}

/// Removes every root equal to x (so that poly(x) != 0 afterwards).
inline UniPoly deflate_at(UniPoly p, const Rational& x) {
  while (!p.is_zero() && p.degree() >= 1 && p(x).is_zero()) p = div_rem(p, UniPoly::linear_root(x)).first;
  return p;
}

}  // namespace detail

/// Rational with the smallest denominator in the closed interval [lo, hi].
inline Rational simplest_rational(const Rational& lo, const Rational& hi) {
  if (hi < lo) throw PreconditionError("simplest_rational: empty interval");
  if (lo.sign() <= 0 && hi.sign() >= 0) return Rational(0);
  if (hi.sign() < 0) return -simplest_rational(-hi, -lo);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.num().get_mpz_t(), lo.den().get_mpz_t());
  Rational floor_lo(fl);
  if (floor_lo == lo) return lo;
  if (floor_lo + Rational(1) <= hi) return floor_lo + Rational(1);
  return floor_lo + simplest_rational((hi - floor_lo).inverse(), (lo - floor_lo).inverse()).inverse();
}

/// Isolates the least real root of p strictly greater than lower_bound, to an
/// interval of width <= width. Rational roots met during bisection end up as
/// the right endpoint, exactly.
inline IsolatingInterval isolate_smallest_root(const UniPoly& p, const Rational& lower_bound,
                                               const Rational& width) {
  if (p.is_zero()) throw PreconditionError("cannot isolate roots of the zero polynomial");
  if (width.sign() <= 0) throw PreconditionError("isolation width must be positive");
  UniPoly q = detail::deflate_at(p, lower_bound);
  if (q.degree() < 1) throw PreconditionError("no root above " + lower_bound.str());
  SturmSequence sturm(q);
  Rational lo = lower_bound;
  Rational hi = std::max(root_bound(q), lower_bound + Rational(1));
  if (sturm.count_unchecked(lo, hi) == 0)
    throw PreconditionError("no real root above " + lower_bound.str());
  while (true) {
    int n = sturm.count_unchecked(lo, hi);
    if (n == 1 && hi - lo <= width) break;
    Rational mid = (lo + hi) / Rational(2);
    if (sturm.count_unchecked(lo, mid) >= 1) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  // Rational roots come out exact: the simplest rational in a narrow enough
  // interval around a rational root is that root.
  Rational simple = simplest_rational(lo, hi);
  if (lo < simple && q(simple).is_zero()) hi = simple;
  return IsolatingInterval{lo, hi, q};
}

/// Refines an isolating interval in place until its width is <= width.
inline void refine(IsolatingInterval& iv, const Rational& width) {
  SturmSequence sturm(iv.poly);
  while (iv.width() > width) detail::bisect_once(sturm, iv.lo, iv.hi);
}

// ---------------------------------------------------------------------------
// Bivariate polynomials

/// Sparse polynomial in two formal variables with coefficients in K
/// (Rational or Cyc8). Used both in (a, b) = (Re alpha, Im alpha) and in the
/// auxiliary symbols (s, r) = (|alpha|^2, alpha + conj(alpha)).
template <class K>
class BiPoly {
 public:
  using Exponent = std::pair<unsigned, unsigned>;
  using Terms = std::map<Exponent, K>;

  BiPoly() = default;
  BiPoly(const K& c) { add_term({0, 0}, c); }  // NOLINT(google-explicit-constructor)
  BiPoly(int c) : BiPoly(K(c)) {}              // NOLINT(google-explicit-constructor)

  static BiPoly monomial(unsigned d1, unsigned d2, const K& c = K(1)) {
    BiPoly p;
    p.add_term({d1, d2}, c);
    return p;
  }
  static BiPoly var1() { return monomial(1, 0); }
  static BiPoly var2() { return monomial(0, 1); }

  [[nodiscard]] const Terms& terms() const { return t_; }
  [[nodiscard]] bool is_zero() const { return t_.empty(); }
  [[nodiscard]] K coeff(unsigned d1, unsigned d2) const {
    auto it = t_.find({d1, d2});
    return it == t_.end() ? K(0) : it->second;
  }
  [[nodiscard]] unsigned degree1() const {
    unsigned d = 0;
    for (const auto& [e, c] : t_) d = std::max(d, e.first);
    return d;
  }
  [[nodiscard]] unsigned degree2() const {
    unsigned d = 0;
    for (const auto& [e, c] : t_) d = std::max(d, e.second);
    return d;
  }

  void add_term(const Exponent& e, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  /// Coefficient-wise conjugation (the formal variables are real).
  [[nodiscard]] BiPoly conj() const {
    BiPoly r;
    for (const auto& [e, c] : t_) r.t_.emplace(e, qgev::conj(c));
    return r;
  }

  [[nodiscard]] K eval(const K& v1, const K& v2) const {
    K acc(0);
    for (const auto& [e, c] : t_) {
      K m = c;
      for (unsigned k = 0; k < e.first; ++k) m *= v1;
      for (unsigned k = 0; k < e.second; ++k) m *= v2;
      acc += m;
    }
    return acc;
  }

  [[nodiscard]] BiPoly pow(unsigned n) const {
    BiPoly r(K(1));
    for (unsigned k = 0; k < n; ++k) r *= *this;
    return r;
  }

  BiPoly operator-() const {
    BiPoly r;
    for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
  }
  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, c);
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    for (const auto& [e, c] : o.t_) add_term(e, -c);
    return *this;
  }
  BiPoly& operator*=(const BiPoly& o) {
    *this = *this * o;
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    BiPoly r;
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
    return r;
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.t_ == b.t_; }

  /// Exact division; nullopt when divisor does not divide this.
  [[nodiscard]] std::optional<BiPoly> divide_exact(const BiPoly& divisor) const {
    if (divisor.is_zero()) throw DivisionByZero("bivariate division by zero polynomial");
    // Lexicographic leading terms; a nonzero remainder term means no exact division.
    auto lead_of = [](const BiPoly& p) { return *p.t_.rbegin(); };
    auto [de, dc] = lead_of(divisor);
    K inv = K(1) / dc;
    BiPoly rest = *this, quot;
    while (!rest.is_zero()) {
      auto [e, c] = lead_of(rest);
      if (e.first < de.first || e.second < de.second) return std::nullopt;
      BiPoly step = monomial(e.first - de.first, e.second - de.second, c * inv);
      quot += step;
      rest -= step * divisor;
    }
    return quot;
  }

  /// Pretty form, highest total degree first.
  [[nodiscard]] std::string str(const std::string& v1 = "a", const std::string& v2 = "b") const {
    if (is_zero()) return "0";
    std::vector<std::pair<Exponent, K>> items(t_.begin(), t_.end());
    std::stable_sort(items.begin(), items.end(), [](const auto& x, const auto& y) {
      return x.first.first + x.first.second > y.first.first + y.first.second;
    });
    std::string out;
    for (const auto& [e, c] : items) {
      std::string mono;
      auto pw = [](const std::string& v, unsigned d) {
        return d == 0 ? std::string() : (d == 1 ? v : v + "^" + std::to_string(d));
      };
      std::string m1 = pw(v1, e.first), m2 = pw(v2, e.second);
      mono = m1.empty() ? m2 : (m2.empty() ? m1 : m1 + "*" + m2);
      std::string cs = c.str();
      bool simple = c.is_rational();
      std::string term;
      if (simple) {
        Rational r = c.as_rational();
        bool neg = r.sign() < 0;
        Rational mag = r.abs();
        term = mono.empty() ? mag.str() : (mag == Rational(1) ? mono : mag.str() + "*" + mono);
        out += out.empty() ? (neg ? "-" : "") + term : (neg ? " - " : " + ") + term;
      } else {
        term = "(" + cs + ")" + (mono.empty() ? "" : "*" + mono);
        out += out.empty() ? term : " + " + term;
      }
    }
    return out;
  }

 private:
  Terms t_;
};

template <class K>
BiPoly<K> conj(const BiPoly<K>& p) {
  return p.conj();
}

/// The symbolic complex number alpha = a + i*b in Q(zeta_8)[a, b].
inline BiPoly<Cyc8> alpha_symbol() {
  return BiPoly<Cyc8>::var1() + BiPoly<Cyc8>::monomial(0, 1, Cyc8::imag_unit());
}

/// Replaces s -> a^2 + b^2 and r -> 2a in a polynomial written in (s, r).
template <class K>
BiPoly<K> substitute_sr(const BiPoly<K>& e) {
  BiPoly<K> s = BiPoly<K>::monomial(2, 0) + BiPoly<K>::monomial(0, 2);
  BiPoly<K> r = BiPoly<K>::monomial(1, 0, K(2));
  BiPoly<K> out;
  for (const auto& [ex, c] : e.terms()) out += BiPoly<K>(c) * s.pow(ex.first) * r.pow(ex.second);
  return out;
}

/// Passes iff every coefficient is rational; returns the rational image.
inline BiPoly<Rational> realness_check(const BiPoly<Cyc8>& e) {
  BiPoly<Rational> out;
  for (const auto& [ex, c] : e.terms()) {
    if (!c.is_rational())
      throw NotRationalError("non-real coefficient " + c.str() + " on monomial a^" +
                             std::to_string(ex.first) + "*b^" + std::to_string(ex.second));
    out.add_term(ex, c.as_rational());
  }
  return out;
}

inline BiPoly<Cyc8> to_cyc8(const BiPoly<Rational>& e) {
  BiPoly<Cyc8> out;
  for (const auto& [ex, c] : e.terms()) out.add_term(ex, Cyc8(c));
  return out;
}

}  // namespace qgev
