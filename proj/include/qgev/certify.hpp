#pragma once

// Certificates about real algebraic numbers given as (polynomial, isolating
// interval) pairs, and a small checker for hand-written positivity arguments
// about polynomials in alpha = a + i b.

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qgev/error.hpp"
#include "qgev/linalg.hpp"
#include "qgev/poly.hpp"

namespace qgev {

/// A real algebraic number: the unique root of iv.poly in (iv.lo, iv.hi].
class AlgebraicScalar {
 public:
  explicit AlgebraicScalar(IsolatingInterval iv) : iv_(std::move(iv)) {
    if (!iv_.verify()) throw PreconditionError("interval " + iv_.str() + " does not isolate a single root");
  }
  static AlgebraicScalar from_rational(const Rational& r) {
    return AlgebraicScalar(IsolatingInterval{r - Rational(1), r, UniPoly::linear_root(r)});
  }

  [[nodiscard]] const IsolatingInterval& interval() const { return iv_; }
  [[nodiscard]] const UniPoly& poly() const { return iv_.poly; }
  [[nodiscard]] std::optional<Rational> exact() const { return iv_.exact_root(); }

  /// Returns a copy refined to width <= width.
  [[nodiscard]] AlgebraicScalar refined(const Rational& width) const {
    IsolatingInterval iv = iv_;
    refine(iv, width);
    return AlgebraicScalar(std::move(iv), 0);
  }
  void bisect() {
    SturmSequence sturm(iv_.poly);
    detail::bisect_once(sturm, iv_.lo, iv_.hi);
  }

  [[nodiscard]] std::string str() const { return "root of " + iv_.poly.str() + " in " + iv_.str(); }

 private:
  AlgebraicScalar(IsolatingInterval iv, int /*trusted*/) : iv_(std::move(iv)) {}
  IsolatingInterval iv_;
};

enum class Ordering { less, equal, greater };

inline const char* to_string(Ordering o) {
  switch (o) {
    case Ordering::less: return "less";
    case Ordering::equal: return "equal";
    case Ordering::greater: return "greater";
  }
  return "?";
}

/// Exact comparison. Intervals are bisected until disjoint; within the
/// refinement budget, equality is settled by a common factor having a single
/// root across both intervals.
inline Ordering compare(AlgebraicScalar x, AlgebraicScalar y, int budget = 400) {
  UniPoly g = gcd(x.poly(), y.poly());
  const bool may_be_equal = g.degree() >= 1 &&
                            SturmSequence(g).count_unchecked(x.interval().lo, x.interval().hi) == 1 &&
                            SturmSequence(g).count_unchecked(y.interval().lo, y.interval().hi) == 1;
  for (int step = 0;; ++step) {
    const auto& a = x.interval();
    const auto& b = y.interval();
    if (a.hi <= b.lo) return Ordering::less;
    if (b.hi <= a.lo) return Ordering::greater;
    if (may_be_equal) {
      // Both are roots of g; equal iff g has one root in the union.
      Rational lo = std::min(a.lo, b.lo), hi = std::max(a.hi, b.hi);
      if (SturmSequence(g).count_unchecked(lo, hi) == 1) return Ordering::equal;
    } else if (step > budget) {
      throw Error("comparison of algebraic numbers did not terminate within budget");
    }
    if (a.width() >= b.width())
      x.bisect();
    else
      y.bisect();
  }
}

inline bool strict_less(const AlgebraicScalar& x, const AlgebraicScalar& y) {
  return compare(x, y) == Ordering::less;
}

/// Sign of an algebraic number.
inline int sign(const AlgebraicScalar& x) {
  switch (compare(x, AlgebraicScalar::from_rational(Rational(0)))) {
    case Ordering::less: return -1;
    case Ordering::equal: return 0;
    case Ordering::greater: return 1;
  }
  return 0;
}

/// Least eigenvalue of a Hermitian matrix with rational characteristic polynomial.
inline AlgebraicScalar smallest_eigenvalue(const ExactMatrix& h, const Rational& width) {
  if (!h.is_hermitian()) throw PreconditionError("smallest_eigenvalue requires a Hermitian matrix");
  UniPoly p = charpoly(h);
  Rational lower = -root_bound(p) - Rational(1);
  return AlgebraicScalar(isolate_smallest_root(p, lower, width));
}

/// Multiplicity of lam as a root of p via the chain p, gcd(p, p'), ...
inline int root_multiplicity(const UniPoly& p, const AlgebraicScalar& lam) {
  int m = 0;
  UniPoly cur = p;
  const auto& iv = lam.interval();
  while (cur.degree() >= 1) {
    UniPoly g = gcd(cur, lam.poly());
    // g divides lam.poly, so g(lo) != 0 and its only possible root in the interval is lam.
    if (g.degree() < 1 || SturmSequence(g).count_unchecked(iv.lo, iv.hi) == 0) break;
    ++m;
    cur = gcd(cur, cur.derivative());
  }
  return m;
}

/// rank(H - lam I) for Hermitian H.
inline std::size_t shifted_rank(const ExactMatrix& h, const AlgebraicScalar& lam) {
  if (!h.is_hermitian()) throw PreconditionError("shifted_rank requires a Hermitian matrix");
  return h.rows() - static_cast<std::size_t>(root_multiplicity(charpoly(h), lam));
}

/// H - lam I is PSD iff lam <= lambda_min(H).
inline bool shifted_psd(const ExactMatrix& h, const AlgebraicScalar& lam,
                        const Rational& width = Rational(1, 100000000)) {
  auto mu = smallest_eigenvalue(h, width);
  return compare(lam, mu) != Ordering::greater;
}

// ---------------------------------------------------------------------------
// Positivity scripts

/// weight * |c_alpha*alpha + c_alpha_bar*conj(alpha) + c_s*|alpha|^2 + c_one|^2
struct SquareTerm {
  Rational weight{1};
  Cyc8 c_alpha;
  Cyc8 c_alpha_bar;
  Rational c_s;
  Cyc8 c_one;

  [[nodiscard]] BiPoly<Cyc8> form() const {
    BiPoly<Cyc8> alpha = alpha_symbol();
    BiPoly<Cyc8> s = BiPoly<Cyc8>::monomial(2, 0) + BiPoly<Cyc8>::monomial(0, 2);
    return BiPoly<Cyc8>(c_alpha) * alpha + BiPoly<Cyc8>(c_alpha_bar) * alpha.conj() + BiPoly<Cyc8>(Cyc8(c_s)) * s +
           BiPoly<Cyc8>(c_one);
  }
  /// Expanded weight*|form|^2 in (a, b); rational by construction.
  [[nodiscard]] BiPoly<Rational> expanded() const {
    auto f = form();
    return realness_check(BiPoly<Cyc8>(Cyc8(weight)) * f * f.conj());
  }
};

namespace step {
/// target = factor * s^power * quotient, checked by exact division.
struct FactorOutS {
  Rational factor{1};
  unsigned power = 0;
};
/// current - sum of squares == remainder(s, r) after s -> a^2+b^2, r -> 2a.
struct SplitSquares {
  std::vector<SquareTerm> squares;
  BiPoly<Rational> remainder;  // in (s, r)
};
/// remainder = A(s) + B(s) r with B of one sign on s >= 0; uses |r| <= 2|alpha| = 2t
/// to obtain the univariate lower bound A(t^2) - 2t|B(t^2)|.
struct AffineLowerBoundInR {};
/// lower bound >= scale * q coefficientwise on t >= 0, and q > 0 on [0, inf).
struct UnivariatePositive {
  UniPoly q;
  Rational scale{1};
  bool over_reals = false;  // also demand no real roots at all
};
}  // namespace step

using ScriptStep = std::variant<step::FactorOutS, step::SplitSquares, step::AffineLowerBoundInR, step::UnivariatePositive>;

/// A hand-encoded argument that target(a, b) > 0 whenever (a, b) != (0, 0).
struct PositivityScript {
  std::string name;
  BiPoly<Rational> target;  // in (a, b)
  std::vector<ScriptStep> steps;
};

struct ScriptResult {
  bool pass = false;
  std::vector<std::string> log;
  std::optional<std::size_t> failed_step;
  std::string residual;
  std::optional<UniPoly> terminal;  // the univariate polynomial shown positive
};

namespace detail {

inline BiPoly<Rational> s_symbol() { return BiPoly<Rational>::monomial(2, 0) + BiPoly<Rational>::monomial(0, 2); }

}  // namespace detail

inline ScriptResult run_positivity_script(const PositivityScript& script) {
  ScriptResult res;
  std::optional<BiPoly<Rational>> in_ab = script.target;
  std::optional<BiPoly<Rational>> in_sr;
  std::optional<UniPoly> lower_t;  // univariate lower bound in t = |alpha|
  bool concluded = false;

  auto fail = [&](std::size_t k, std::string why, std::string residual) {
    res.pass = false;
    res.failed_step = k;
    res.log.push_back("step " + std::to_string(k + 1) + " FAILED: " + why);
    res.residual = std::move(residual);
    return res;
  };

  for (std::size_t k = 0; k < script.steps.size(); ++k) {
    const auto& st = script.steps[k];
    if (const auto* f = std::get_if<step::FactorOutS>(&st)) {
      if (!in_ab) return fail(k, "FactorOutS needs a polynomial in (a, b)", "");
      if (f->factor.sign() <= 0) return fail(k, "factor must be positive", f->factor.str());
      BiPoly<Rational> q = *in_ab * BiPoly<Rational>(f->factor.inverse());
      for (unsigned p = 0; p < f->power; ++p) {
        auto d = q.divide_exact(detail::s_symbol());
        if (!d) return fail(k, "not divisible by s^" + std::to_string(f->power), q.str());
        q = *d;
      }
      in_ab = q;
      res.log.push_back("factored out " + f->factor.str() + "*s^" + std::to_string(f->power) + " exactly");
    } else if (const auto* sq = std::get_if<step::SplitSquares>(&st)) {
      if (!in_ab) return fail(k, "SplitSquares needs a polynomial in (a, b)", "");
      BiPoly<Rational> rest = *in_ab;
      for (const auto& t : sq->squares) {
        if (t.weight.sign() < 0) return fail(k, "square weight must be nonnegative", t.weight.str());
        rest -= t.expanded();
      }
      BiPoly<Rational> residual = rest - substitute_sr(sq->remainder);
      if (!residual.is_zero()) return fail(k, "sum-of-squares identity does not hold", residual.str());
      in_ab.reset();
      in_sr = sq->remainder;
      res.log.push_back("identity: current = " + std::to_string(sq->squares.size()) + " square(s) + " +
                        sq->remainder.str("s", "r"));
    } else if (std::holds_alternative<step::AffineLowerBoundInR>(st)) {
      if (!in_sr) return fail(k, "AffineLowerBoundInR needs a remainder in (s, r)", "");
      if (in_sr->degree2() > 1) return fail(k, "remainder is not affine in r", in_sr->str("s", "r"));
      // E = A(s) + B(s) r
      std::vector<Rational> a_coeffs, b_coeffs;
      int b_sign = 0;
      for (const auto& [e, c] : in_sr->terms()) {
        auto& dst = e.second == 0 ? a_coeffs : b_coeffs;
        if (dst.size() <= e.first) dst.resize(e.first + 1);
        dst[e.first] = c;
        if (e.second == 1) {
          if (b_sign != 0 && c.sign() != b_sign)
            return fail(k, "r-coefficient has no definite sign on s >= 0", in_sr->str("s", "r"));
          b_sign = c.sign();
        }
      }
      // s -> t^2; r -> -2t if B >= 0, r -> +2t if B <= 0.
      UniPoly at, bt;
      {
        std::vector<Rational> va(2 * a_coeffs.size() + 1), vb(2 * b_coeffs.size() + 1);
        for (std::size_t i = 0; i < a_coeffs.size(); ++i) va[2 * i] = a_coeffs[i];
        for (std::size_t i = 0; i < b_coeffs.size(); ++i) vb[2 * i] = b_coeffs[i];
        at = UniPoly(va);
        bt = UniPoly(vb);
      }
      Rational r_sub = b_sign >= 0 ? Rational(-2) : Rational(2);
      lower_t = at + bt * UniPoly({Rational(0), r_sub});
      in_sr.reset();
      res.log.push_back("bound via |alpha+conj(alpha)| <= 2|alpha|: >= " + lower_t->str("t"));
    } else if (const auto* up = std::get_if<step::UnivariatePositive>(&st)) {
      if (!lower_t) return fail(k, "UnivariatePositive needs a univariate bound in t", "");
      if (up->scale.sign() <= 0) return fail(k, "scale must be positive", up->scale.str());
      UniPoly slack = *lower_t - up->q * up->scale;
      for (const auto& c : slack.coeffs())
        if (c.sign() < 0) return fail(k, "bound does not dominate scale*q coefficientwise", slack.str("t"));
      const UniPoly& q = up->q;
      if (q.is_zero() || q(Rational(0)).sign() <= 0) return fail(k, "q(0) must be positive", q.str("t"));
      if (q.lead().sign() <= 0) return fail(k, "leading coefficient must be positive", q.str("t"));
      SturmSequence sturm(q);
      int pos = sturm.count(Rational(0), std::nullopt);
      if (pos != 0) return fail(k, std::to_string(pos) + " root(s) in (0, inf)", q.str("t"));
      std::string extra;
      if (up->over_reals) {
        int all = sturm.count(std::nullopt, std::nullopt);
        if (all != 0) return fail(k, std::to_string(all) + " real root(s)", q.str("t"));
        extra = ", no real roots";
      }
      res.terminal = q;
      concluded = true;
      res.log.push_back(q.str("t") + " > 0 on [0, inf) (Sturm count 0" + extra + ")");
    }
  }
  if (!concluded) {
    res.failed_step = script.steps.size();
    res.log.push_back("script ended without a univariate positivity conclusion");
    return res;
  }
  res.pass = true;
  return res;
}

// ---------------------------------------------------------------------------
// Reports

enum class Verdict { pass, fail, skipped };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}

struct Check {
  std::string name;
  Verdict verdict = Verdict::fail;
  std::string evidence;
  std::vector<std::pair<std::string, std::string>> exact;  // named exact values
};

/// Ordered list of checks; passes iff no check failed.
class CertificateReport {
 public:
  Check& add(std::string name, bool ok, std::string evidence,
             std::vector<std::pair<std::string, std::string>> exact = {}) {
    checks_.push_back(Check{std::move(name), ok ? Verdict::pass : Verdict::fail, std::move(evidence), std::move(exact)});
    return checks_.back();
  }
  Check& skip(std::string name, std::string why) {
    checks_.push_back(Check{std::move(name), Verdict::skipped, std::move(why), {}});
    return checks_.back();
  }
  void append(const CertificateReport& other) { checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end()); }

  [[nodiscard]] const std::vector<Check>& checks() const { return checks_; }
  [[nodiscard]] bool overall() const {
    for (const auto& c : checks_)
      if (c.verdict == Verdict::fail) return false;
    return true;
  }
  [[nodiscard]] std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks_) n += c.verdict == Verdict::fail;
    return n;
  }
  [[nodiscard]] const Check* first_failure() const {
    for (const auto& c : checks_)
      if (c.verdict == Verdict::fail) return &c;
    return nullptr;
  }
  [[nodiscard]] const Check* find(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }

  /// Fixed-column text rendering ending in "overall: pass|fail".
  [[nodiscard]] std::string text() const {
    std::ostringstream os;
    for (const auto& c : checks_) {
      std::string tag = c.verdict == Verdict::pass ? "PASS" : (c.verdict == Verdict::fail ? "FAIL" : "SKIP");
      std::string name = c.name;
      if (name.size() < 44) name.resize(44, ' ');
      os << "[" << tag << "] " << name << "  " << c.evidence << "\n";
    }
    os << "checks: " << checks_.size() << ", failures: " << failures() << "\n";
    os << "overall: " << (overall() ? "pass" : "fail") << "\n";
    return os.str();
  }

 private:
  std::vector<Check> checks_;
};

}  // namespace qgev
