#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

#include "confext/errors.hpp"

namespace confext {

using Integer = mpz_class;
using Rational = mpq_class;  // gmpxx keeps it canonical after every operation

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

// Writes n = s^2 * d with d squarefree (sign kept in d). Returns d, sets s.
Integer squarefree_decompose(const Integer& n, Integer& s);

// a + b*sqrt(d). d == 0 means a plain rational and then b == 0.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(v) {}  // NOLINT: implicit on purpose, literals read naturally
  Scalar(const Rational& q) : a_(q) {}  // NOLINT
  Scalar(const Rational& a, const Rational& b, long d);

  // s * sqrt(n), with the square part of n pulled out.
  static Scalar sqrt_of(long n);
  static Scalar parse(std::string_view text);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_coeff() const { return b_; }
  long radicand() const { return d_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_one() const { return d_ == 0 && a_ == 1; }
  bool is_rational() const { return d_ == 0; }
  // Only meaningful when is_rational().
  const Rational& as_rational() const { return a_; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& y);
  Scalar& operator-=(const Scalar& y);
  Scalar& operator*=(const Scalar& y);
  Scalar& operator/=(const Scalar& y);
  // this += x * y and this -= x * y without temporaries on the rational path.
  Scalar& add_mul(const Scalar& x, const Scalar& y);
  Scalar& sub_mul(const Scalar& x, const Scalar& y);
  Scalar inverse() const;
  // Galois conjugate a - b*sqrt(d).
  Scalar conjugate() const;

  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
  // Total order used only for canonical sorting, not the real ordering.
  friend bool canonical_less(const Scalar& x, const Scalar& y);

  std::string str() const;

 private:
  void normalize();
  long joint_radicand(const Scalar& y) const;

  Rational a_, b_;
  long d_ = 0;
};

bool canonical_less(const Scalar& x, const Scalar& y);

// Dense univariate polynomial over Q, ascending coefficients, no trailing zeros.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly constant(const Rational& c);
  static UniPoly x();

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  UniPoly operator-() const;
  friend UniPoly operator+(const UniPoly& p, const UniPoly& q);
  friend UniPoly operator-(const UniPoly& p, const UniPoly& q);
  friend UniPoly operator*(const UniPoly& p, const UniPoly& q);
  friend UniPoly operator*(const Rational& s, const UniPoly& p);
  friend bool operator==(const UniPoly& p, const UniPoly& q) { return p.c_ == q.c_; }

  // p = q*d + r with deg r < deg d.
  static void divmod(const UniPoly& p, const UniPoly& d, UniPoly& q, UniPoly& r);
  static UniPoly gcd(UniPoly a, UniPoly b);  // monic, zero only if both are zero

  Rational eval(const Rational& x) const;
  Scalar eval(const Scalar& x) const;
  UniPoly derivative() const;
  UniPoly monic() const;
  UniPoly squarefree_part() const;
  // Integer coefficients with content 1 and positive leading coefficient.
  std::vector<Integer> primitive_integer() const;

  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

struct RootSet {
  std::vector<Rational> rational_roots;   // ascending
  std::vector<Scalar> quadratic_roots;    // conjugate pairs, canonical order
  std::vector<UniPoly> quadratic_factors; // monic, one per pair
  UniPoly residual;                       // monic product of the unfactored part
};

// Rational roots, roots of quadratic factors over Q, and what is left.
// Works on the squarefree part, so each root is reported once.
RootSet extract_roots(const UniPoly& p);

}  // namespace confext
