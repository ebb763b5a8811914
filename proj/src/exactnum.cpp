#include "confext/exactnum.hpp"

#include <algorithm>
#include <regex>
#include <sstream>

namespace confext {

namespace {

const std::regex kRationalRe(R"(^([+-]?)(\d+)(?:/(\d+))?$)");

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char ch : s)
    if (ch != ' ' && ch != '\t') out.push_back(ch);
  return out;
}

// Trial division up to this bound; whatever is left is treated as a prime power
// candidate (checked for being a perfect square). Plenty for the discriminants here.
constexpr unsigned long kTrialBound = 1000000;

std::vector<std::pair<Integer, int>> factor_abs(Integer m) {
  std::vector<std::pair<Integer, int>> f;
  if (m < 0) m = -m;
  if (m <= 1) return f;
  for (unsigned long p = 2; p <= kTrialBound; p += (p == 2 ? 1 : 2)) {
    Integer pp = p;
    if (pp * pp > m) break;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      int e = 0;
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        m /= p;
        ++e;
      }
      f.emplace_back(pp, e);
    }
  }
  if (m > 1) {
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      Integer r;
      mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
      f.emplace_back(r, 2);
    } else {
      f.emplace_back(m, 1);
    }
  }
  return f;
}

std::vector<Integer> positive_divisors(const Integer& m) {
  std::vector<Integer> divs{1};
  for (auto& [p, e] : factor_abs(m)) {
    std::size_t n = divs.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

Integer eval_int(const std::vector<Integer>& c, long x) {
  Integer acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = strip_spaces(text);
  std::smatch m;
  if (!std::regex_match(s, m, kRationalRe)) throw ParseError("not a rational: '" + s + "'");
  Integer num(m[2].str());
  Integer den = m[3].matched ? Integer(m[3].str()) : Integer(1);
  if (den == 0) throw DivisionByZero("zero denominator in '" + s + "'");
  if (m[1].str() == "-") num = -num;
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer squarefree_decompose(const Integer& n, Integer& s) {
  s = 1;
  if (n == 0) return 0;
  Integer d = n < 0 ? Integer(-1) : Integer(1);
  for (auto& [p, e] : factor_abs(n)) {
    for (int k = 0; k < e / 2; ++k) s *= p;
    if (e % 2) d *= p;
  }
  return d;
}

Scalar::Scalar(const Rational& a, const Rational& b, long d) : a_(a), b_(b), d_(d) {
  if (d_ != 0 && sgn(b_) != 0) {
    Integer s;
    Integer sf = squarefree_decompose(Integer(d_), s);
    b_ *= s;
    d_ = sf.get_si();
  }
  normalize();
}

void Scalar::normalize() {
  if (sgn(b_) == 0) {
    d_ = 0;
  } else if (d_ == 1) {
    a_ += b_;
    b_ = 0;
    d_ = 0;
  } else if (d_ == 0) {
    throw OutOfRange("radical coefficient without radicand");
  }
}

Scalar Scalar::sqrt_of(long n) { return Scalar(Rational(0), Rational(1), n); }

long Scalar::joint_radicand(const Scalar& y) const {
  if (d_ == 0) return y.d_;
  if (y.d_ == 0 || y.d_ == d_) return d_;
  throw MixedExtension("sqrt(" + std::to_string(d_) + ") and sqrt(" + std::to_string(y.d_) + ")");
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& y) {
  long d = joint_radicand(y);
  a_ += y.a_;
  if (y.d_ != 0) b_ += y.b_;
  d_ = d;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& y) {
  long d = joint_radicand(y);
  a_ -= y.a_;
  if (y.d_ != 0) b_ -= y.b_;
  d_ = d;
  normalize();
  return *this;
}

Scalar& Scalar::add_mul(const Scalar& x, const Scalar& y) {
  if (d_ == 0 && x.d_ == 0 && y.d_ == 0) {
    thread_local Rational t;
    mpq_mul(t.get_mpq_t(), x.a_.get_mpq_t(), y.a_.get_mpq_t());
    mpq_add(a_.get_mpq_t(), a_.get_mpq_t(), t.get_mpq_t());
    return *this;
  }
  return *this += x * y;
}

Scalar& Scalar::sub_mul(const Scalar& x, const Scalar& y) {
  if (d_ == 0 && x.d_ == 0 && y.d_ == 0) {
    thread_local Rational t;
    mpq_mul(t.get_mpq_t(), x.a_.get_mpq_t(), y.a_.get_mpq_t());
    mpq_sub(a_.get_mpq_t(), a_.get_mpq_t(), t.get_mpq_t());
    return *this;
  }
  return *this -= x * y;
}

Scalar& Scalar::operator*=(const Scalar& y) {
  if (d_ == 0 && y.d_ == 0) {
    a_ *= y.a_;
    return *this;
  }
  long d = joint_radicand(y);
  Rational na = a_ * y.a_ + b_ * y.b_ * d;
  Rational nb = a_ * y.b_ + b_ * y.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  d_ = d;
  normalize();
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (d_ == 0) return Scalar(Rational(1) / a_);
  Rational norm = a_ * a_ - b_ * b_ * d_;
  return Scalar(a_ / norm, -b_ / norm, d_);
}

Scalar& Scalar::operator/=(const Scalar& y) {
  if (y.is_zero()) throw DivisionByZero("division by zero");
  if (d_ == 0 && y.d_ == 0) {
    a_ /= y.a_;
    return *this;
  }
  joint_radicand(y);
  return *this *= y.inverse();
}

Scalar Scalar::conjugate() const {
  Scalar r = *this;
  r.b_ = -r.b_;
  return r;
}

bool canonical_less(const Scalar& x, const Scalar& y) {
  if (x.d_ != y.d_) return x.d_ < y.d_;
  if (x.a_ != y.a_) return x.a_ < y.a_;
  return x.b_ < y.b_;
}

std::string Scalar::str() const {
  if (d_ == 0) return to_string(a_);
  std::string rad = "sqrt(" + std::to_string(d_) + ")";
  Rational ab = abs(b_);
  std::string mag = ab == 1 ? rad : to_string(ab) + "*" + rad;
  if (sgn(a_) == 0) return (sgn(b_) < 0 ? "-" : "") + mag;
  return to_string(a_) + (sgn(b_) < 0 ? "-" : "+") + mag;
}

Scalar Scalar::parse(std::string_view text) {
  std::string s = strip_spaces(text);
  static const std::regex full(
      R"(^(?:([+-]?\d+(?:/\d+)?)(?=[+-]|$))?(?:([+-]?)(?:(\d+(?:/\d+)?)\*)?sqrt\((-?\d+)\))?$)");
  std::smatch m;
  if (s.empty() || !std::regex_match(s, m, full)) throw ParseError("not a scalar: '" + s + "'");
  Rational a = m[1].matched ? parse_rational(m[1].str()) : Rational(0);
  if (!m[4].matched) {
    if (!m[1].matched) throw ParseError("not a scalar: '" + s + "'");
    return Scalar(a);
  }
  if (m[1].matched && m[2].str().empty()) throw ParseError("missing sign before radical in '" + s + "'");
  Rational b = m[3].matched ? parse_rational(m[3].str()) : Rational(1);
  if (m[2].str() == "-") b = -b;
  long d = std::stol(m[4].str());
  if (d == 0) return Scalar(a);
  return Scalar(a, b, d);
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }
UniPoly UniPoly::x() { return UniPoly({Rational(0), Rational(1)}); }

void UniPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UniPoly operator+(const UniPoly& p, const UniPoly& q) {
  std::vector<Rational> c(std::max(p.c_.size(), q.c_.size()));
  for (std::size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
  for (std::size_t i = 0; i < q.c_.size(); ++i) c[i] += q.c_[i];
  return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& p, const UniPoly& q) { return p + (-q); }

UniPoly operator*(const UniPoly& p, const UniPoly& q) {
  if (p.is_zero() || q.is_zero()) return UniPoly();
  std::vector<Rational> c(p.c_.size() + q.c_.size() - 1);
  for (std::size_t i = 0; i < p.c_.size(); ++i)
    for (std::size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
  return UniPoly(std::move(c));
}

UniPoly operator*(const Rational& s, const UniPoly& p) {
  std::vector<Rational> c = p.c_;
  for (auto& x : c) x *= s;
  return UniPoly(std::move(c));
}

void UniPoly::divmod(const UniPoly& p, const UniPoly& d, UniPoly& q, UniPoly& r) {
  if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
  std::vector<Rational> rem = p.c_;
  int dd = d.degree();
  std::vector<Rational> quo(std::max(0, p.degree() - dd + 1));
  for (int i = p.degree(); i >= dd; --i) {
    if (sgn(rem[i]) == 0) continue;
    Rational f = rem[i] / d.leading();
    quo[i - dd] = f;
    for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * d.c_[j];
  }
  q = UniPoly(std::move(quo));
  r = UniPoly(std::move(rem));
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

Rational UniPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Scalar UniPoly::eval(const Scalar& x) const {
  Scalar acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Scalar(*it);
  return acc;
}

UniPoly UniPoly::derivative() const {
  std::vector<Rational> c;
  for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * static_cast<long>(i));
  return UniPoly(std::move(c));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return (Rational(1) / leading()) * *this;
}

UniPoly UniPoly::squarefree_part() const {
  if (is_zero()) throw ZeroPolynomial("squarefree part of zero");
  UniPoly g = gcd(*this, derivative());
  UniPoly q, r;
  divmod(*this, g, q, r);
  return q.monic();
}

std::vector<Integer> UniPoly::primitive_integer() const {
  Integer l = 1;
  for (auto& c : c_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> out;
  Integer g = 0;
  for (auto& c : c_) {
    Integer v = c.get_num() * (l / c.get_den());
    out.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  if (g == 0) return out;
  if (out.back() < 0) g = -g;
  for (auto& v : out) v /= g;
  return out;
}

std::string UniPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[i];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << to_string(mag);
      continue;
    }
    if (mag != 1) os << to_string(mag) << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

// ---------------------------------------------------------------- roots

RootSet extract_roots(const UniPoly& p) {
  if (p.is_zero()) throw ZeroPolynomial("extract_roots of zero");
  RootSet out;
  UniPoly rest = p.squarefree_part();

  auto divide_exact = [](UniPoly& a, const UniPoly& d) {
    UniPoly q, r;
    UniPoly::divmod(a, d, q, r);
    if (!r.is_zero()) return false;
    a = q;
    return true;
  };

  if (rest.degree() >= 1 && sgn(rest.coeff(0)) == 0) {
    out.rational_roots.push_back(0);
    divide_exact(rest, UniPoly::x());
  }
  if (rest.degree() >= 1) {
    std::vector<Integer> ic = rest.primitive_integer();
    auto nums = positive_divisors(ic.front());
    auto dens = positive_divisors(ic.back());
    for (const auto& u : nums) {
      for (const auto& v : dens) {
        for (int sign : {1, -1}) {
          Rational cand(sign * u, v);
          cand.canonicalize();
          if (cand.get_den() != v) continue;  // reached through a smaller denominator
          if (rest.degree() >= 1 && sgn(rest.eval(cand)) == 0) {
            out.rational_roots.push_back(cand);
            divide_exact(rest, UniPoly({-cand, Rational(1)}));
          }
        }
      }
    }
  }
  std::sort(out.rational_roots.begin(), out.rational_roots.end());

  // Quadratic factors q2*x^2 + q1*x + q0 of the primitive integer form.
  while (rest.degree() >= 2) {
    if (rest.degree() == 2) {
      out.quadratic_factors.push_back(rest.monic());
      rest = UniPoly::constant(1);
      break;
    }
    if (rest.degree() == 3) break;  // no rational root means irreducible
    std::vector<Integer> ic = rest.primitive_integer();
    Integer p1 = eval_int(ic, 1), pm1 = eval_int(ic, -1);
    bool found = false;
    for (const auto& q2 : positive_divisors(ic.back())) {
      for (const auto& q0abs : positive_divisors(ic.front())) {
        for (int s0 : {1, -1}) {
          Integer q0 = s0 * q0abs;
          for (const auto& d1abs : positive_divisors(p1)) {
            for (int s1 : {1, -1}) {
              Integer q1 = s1 * d1abs - q2 - q0;
              Integer vm1 = q2 - q1 + q0;
              if (vm1 == 0 || !mpz_divisible_p(pm1.get_mpz_t(), vm1.get_mpz_t())) continue;
              UniPoly cand({Rational(q0), Rational(q1), Rational(q2)});
              if (divide_exact(rest, cand)) {
                out.quadratic_factors.push_back(cand.monic());
                found = true;
                break;
              }
            }
            if (found) break;
          }
          if (found) break;
        }
        if (found) break;
      }
      if (found) break;
    }
    if (!found) break;
  }
  out.residual = rest.monic();

  for (const auto& q : out.quadratic_factors) {
    // x^2 + b x + c, roots -b/2 +- sqrt(b^2 - 4c)/2
    Rational b = q.coeff(1), c = q.coeff(0);
    Rational disc = b * b - 4 * c;
    Integer s;
    Integer nd = disc.get_num() * disc.get_den();
    Integer d = squarefree_decompose(nd, s);
    Rational coeff = Rational(s) / (2 * disc.get_den());
    coeff.canonicalize();
    Rational mid = -b / 2;
    out.quadratic_roots.emplace_back(mid, coeff, d.get_si());
    out.quadratic_roots.emplace_back(mid, -coeff, d.get_si());
  }
  std::sort(out.quadratic_roots.begin(), out.quadratic_roots.end(), canonical_less);
  return out;
}

}  // namespace confext
