#pragma once

// Exact scalars: arbitrary-precision rationals and the cyclotomic field Q(zeta_8).

#include <gmpxx.h>

#include <array>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "qgev/error.hpp"

namespace qgev {

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rational(const mpz_class& v) : q_(v) {}
  explicit Rational(const mpq_class& v) : q_(v) { q_.canonicalize(); }

  /// Parses "p/q" or "p" (decimal, optional leading '-'). Non-canonical input
  /// such as "2/4" is accepted and reduced.
  static Rational parse(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw ParseError("empty rational literal");
    auto valid_int = [](std::string_view t, bool allow_sign) {
      if (t.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num, true) || !valid_int(den, false))
      throw ParseError("malformed rational literal '" + s + "'");
    if (num[0] == '+') num.erase(0, 1);
    return Rational(mpz_class(num, 10), mpz_class(den, 10));
  }

  [[nodiscard]] std::string str() const { return q_.get_str(10); }
  [[nodiscard]] mpz_class num() const { return q_.get_num(); }
  [[nodiscard]] mpz_class den() const { return q_.get_den(); }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] double to_double() const { return q_.get_d(); }
  [[nodiscard]] const mpq_class& raw() const { return q_; }
  // Uniform interface with Cyc8 for generic code.
  [[nodiscard]] bool is_rational() const { return true; }
  [[nodiscard]] const Rational& as_rational() const { return *this; }

  [[nodiscard]] Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  [[nodiscard]] Rational inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero rational");
    return Rational(mpq_class(1 / q_));
  }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) {
    q_ += o.q_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    q_ -= o.q_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    q_ *= o.q_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByZero("rational division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

/// Element c0 + c1*z + c2*z^2 + c3*z^3 of Q(z), z a primitive 8th root of
/// unity (z^4 = -1). i = z^2 and sqrt(2) = z - z^3.
class Cyc8 {
 public:
  using Coords = std::array<Rational, 4>;

  Cyc8() = default;
  Cyc8(const Rational& r) : c_{r, 0, 0, 0} {}  // NOLINT(google-explicit-constructor)
  Cyc8(long v) : c_{Rational(v), 0, 0, 0} {}   // NOLINT(google-explicit-constructor)
  Cyc8(int v) : c_{Rational(v), 0, 0, 0} {}    // NOLINT(google-explicit-constructor)
  Cyc8(Rational c0, Rational c1, Rational c2, Rational c3)
      : c_{std::move(c0), std::move(c1), std::move(c2), std::move(c3)} {}

  static Cyc8 zeta(unsigned power = 1) {
    power %= 8;
    Cyc8 r;
    r.c_[power % 4] = power < 4 ? Rational(1) : Rational(-1);
    return r;
  }
  static Cyc8 imag_unit() { return zeta(2); }
  static Cyc8 sqrt2() { return Cyc8(0, 1, 0, -1); }
  /// a + b*i
  static Cyc8 from_gauss(const Rational& re, const Rational& im) { return Cyc8(re, 0, im, 0); }

  [[nodiscard]] const Coords& coords() const { return c_; }
  [[nodiscard]] const Rational& operator[](std::size_t k) const { return c_[k]; }

  [[nodiscard]] bool is_zero() const {
    return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
  }
  [[nodiscard]] bool is_rational() const {
    return c_[1].is_zero() && c_[2].is_zero() && c_[3].is_zero();
  }
  /// True for elements of the real subfield Q(sqrt 2), i.e. fixed by conjugation.
  [[nodiscard]] bool is_real() const { return c_[2].is_zero() && c_[1] == -c_[3]; }

  /// Rational value; throws NotRationalError naming the nonzero coordinates otherwise.
  [[nodiscard]] Rational as_rational() const {
    if (is_rational()) return c_[0];
    std::string bad;
    for (int k = 1; k < 4; ++k) {
      if (c_[k].is_zero()) continue;
      if (!bad.empty()) bad += ", ";
      bad += "c" + std::to_string(k) + "=" + c_[k].str();
    }
    throw NotRationalError("element " + str() + " is not rational (" + bad + ")");
  }

  /// Exact sign of a real element a + b*sqrt(2).
  [[nodiscard]] int real_sign() const {
    if (!is_real()) throw NotRationalError("sign requested for non-real element " + str());
    const Rational& a = c_[0];
    const Rational& b = c_[1];
    int sa = a.sign(), sb = b.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    auto lhs = a * a;
    auto rhs = Rational(2) * b * b;
    return lhs > rhs ? sa : sb;
  }

  /// Complex conjugation z -> z^7 = -z^3.
  [[nodiscard]] Cyc8 conj() const { return Cyc8(c_[0], -c_[3], -c_[2], -c_[1]); }

  /// Galois automorphism z -> z^k for odd k.
  [[nodiscard]] Cyc8 galois(unsigned k) const {
    k %= 8;
    if (k % 2 == 0) throw PreconditionError("galois exponent must be odd");
    Cyc8 r;
    for (unsigned j = 0; j < 4; ++j) r += Cyc8(c_[j]) * zeta(j * k);
    return r;
  }

  /// Field norm down to Q: product of the four Galois conjugates.
  [[nodiscard]] Rational norm() const {
    return (*this * galois(3) * galois(5) * galois(7)).as_rational();
  }

  [[nodiscard]] Cyc8 inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in Q(zeta_8)");
    Cyc8 rest = galois(3) * galois(5) * galois(7);
    Rational n = (*this * rest).as_rational();
    return rest * Cyc8(n.inverse());
  }

  Cyc8 operator-() const { return Cyc8(-c_[0], -c_[1], -c_[2], -c_[3]); }
  Cyc8& operator+=(const Cyc8& o) {
    for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Cyc8& operator-=(const Cyc8& o) {
    for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Cyc8& operator*=(const Cyc8& o) {
    *this = *this * o;
    return *this;
  }
  Cyc8& operator/=(const Cyc8& o) {
    *this = *this * o.inverse();
    return *this;
  }
  friend Cyc8 operator+(Cyc8 a, const Cyc8& b) { return a += b; }
  friend Cyc8 operator-(Cyc8 a, const Cyc8& b) { return a -= b; }
  friend Cyc8 operator/(Cyc8 a, const Cyc8& b) { return a /= b; }
  friend Cyc8 operator*(const Cyc8& a, const Cyc8& b) {
    if (a.is_rational() && b.is_rational()) return Cyc8(a.c_[0] * b.c_[0]);
    Cyc8 r;
    for (int i = 0; i < 4; ++i) {
      if (a.c_[i].is_zero()) continue;
      for (int j = 0; j < 4; ++j) {
        if (b.c_[j].is_zero()) continue;
        Rational t = a.c_[i] * b.c_[j];
        int e = i + j;
        if (e >= 4)
          r.c_[e - 4] -= t;
        else
          r.c_[e] += t;
      }
    }
    return r;
  }

  friend bool operator==(const Cyc8& a, const Cyc8& b) { return a.c_ == b.c_; }

  /// Compact human-readable form, e.g. "3/2 - 2*z^3".
  [[nodiscard]] std::string str() const {
    if (is_rational()) return c_[0].str();
    std::string out;
    static constexpr const char* kBasis[] = {"", "z", "z^2", "z^3"};
    for (int k = 0; k < 4; ++k) {
      if (c_[k].is_zero()) continue;
      Rational mag = c_[k].abs();
      std::string term;
      if (k == 0)
        term = mag.str();
      else if (mag == Rational(1))
        term = kBasis[k];
      else
        term = mag.str() + "*" + kBasis[k];
      if (out.empty())
        out = (c_[k].sign() < 0 ? "-" : "") + term;
      else
        out += (c_[k].sign() < 0 ? " - " : " + ") + term;
    }
    return out;
  }
  friend std::ostream& operator<<(std::ostream& os, const Cyc8& u) { return os << u.str(); }

 private:
  Coords c_{};
};

inline Cyc8 conj(const Cyc8& u) { return u.conj(); }
inline Rational conj(const Rational& r) { return r; }

}  // namespace qgev
