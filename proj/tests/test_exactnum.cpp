#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "confext/exactnum.hpp"

using namespace confext;

namespace {

Scalar random_scalar(std::mt19937& rng, long d) {
  std::uniform_int_distribution<long> num(-30, 30), den(1, 12);
  Rational a(num(rng), den(rng)), b(num(rng), den(rng));
  a.canonicalize();
  b.canonicalize();
  return Scalar(a, d == 0 ? Rational(0) : b, d);
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(to_string(parse_rational("-10/4")) == "-5/2");
  CHECK_THROWS_AS(parse_rational("1/0"), DivisionByZero);
  CHECK_THROWS_AS(parse_rational("x"), ParseError);
}

TEST_CASE("scalar componentwise addition") {
  Scalar x = Scalar::parse("1/2");
  Scalar y = Scalar(Rational(1, 2), Rational(1), 19);
  CHECK((x + y).str() == "1+sqrt(19)");
}

TEST_CASE("norm of a root pair") {
  Scalar r1 = Scalar::parse("-5/2+1/2*sqrt(19)");
  Scalar r2 = Scalar::parse("-5/2-1/2*sqrt(19)");
  // product of the roots of 2x^2+10x+3 is 3/2
  CHECK(r1 * r2 == Scalar(Rational(3, 2)));
  CHECK((r1 * r2).is_rational());
}

TEST_CASE("inverse of a pure radical") {
  Scalar s = Scalar::sqrt_of(19);
  CHECK(s.inverse() == Scalar(Rational(0), Rational(1, 19), 19));
  CHECK_THROWS_AS(Scalar().inverse(), DivisionByZero);
}

TEST_CASE("radicands are squarefree") {
  Scalar s = Scalar::sqrt_of(76);
  CHECK(s.radicand() == 19);
  CHECK(s.radical_coeff() == 2);
  CHECK(Scalar::sqrt_of(49) == Scalar(7));
}

TEST_CASE("mixed extensions are rejected") {
  CHECK_THROWS_AS(Scalar::sqrt_of(2) + Scalar::sqrt_of(3), MixedExtension);
  CHECK_NOTHROW(Scalar::sqrt_of(2) + Scalar(5));
}

TEST_CASE("scalar text round trip") {
  for (const char* s : {"0", "-3/7", "sqrt(19)", "-sqrt(19)", "7/2+1/2*sqrt(19)", "-5/2-1/2*sqrt(19)", "3*sqrt(2)"}) {
    CHECK(Scalar::parse(s).str() == s);
  }
  CHECK_THROWS_AS(Scalar::parse("1/2 sqrt(3)"), ParseError);
}

TEST_CASE("field axioms on samples") {
  std::mt19937 rng(20240601);
  for (long d : {0L, 19L, 2L}) {
    for (int it = 0; it < 200; ++it) {
      Scalar x = random_scalar(rng, d), y = random_scalar(rng, d), z = random_scalar(rng, d);
      CHECK((x + y) + z == x + (y + z));
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * (y + z) == x * y + x * z);
      CHECK(x + y == y + x);
      CHECK(x * y == y * x);
      CHECK(x - x == Scalar());
      if (!x.is_zero()) CHECK(x * x.inverse() == Scalar(1));
      if (!y.is_zero()) CHECK((x / y) * y == x);
    }
  }
}

TEST_CASE("unipoly arithmetic") {
  UniPoly p({Rational(-1), Rational(0), Rational(1)});  // x^2-1
  UniPoly q({Rational(1), Rational(1)});               // x+1
  UniPoly quo, rem;
  UniPoly::divmod(p, q, quo, rem);
  CHECK(rem.is_zero());
  CHECK(quo == UniPoly({Rational(-1), Rational(1)}));
  CHECK(UniPoly::gcd(p, q) == q);
  CHECK(p.derivative() == UniPoly({Rational(0), Rational(2)}));
  CHECK((q * q).squarefree_part() == q);
  CHECK(p.str() == "x^2 - 1");
}

TEST_CASE("extract_roots: quadratic with irrational roots") {
  RootSet r = extract_roots(UniPoly({Rational(3), Rational(10), Rational(2)}));
  CHECK(r.rational_roots.empty());
  REQUIRE(r.quadratic_roots.size() == 2);
  CHECK(r.quadratic_roots[0] == Scalar::parse("-5/2-1/2*sqrt(19)"));
  CHECK(r.quadratic_roots[1] == Scalar::parse("-5/2+1/2*sqrt(19)"));
  CHECK(r.residual.degree() == 0);
}

TEST_CASE("extract_roots: rational roots") {
  RootSet r = extract_roots(UniPoly({Rational(0), Rational(4), Rational(1)}));
  CHECK(r.rational_roots == std::vector<Rational>{Rational(-4), Rational(0)});
  CHECK(r.quadratic_roots.empty());
}

TEST_CASE("extract_roots: irreducible cubic stays residual") {
  UniPoly p({Rational(-2), Rational(0), Rational(0), Rational(1)});
  RootSet r = extract_roots(p);
  CHECK(r.rational_roots.empty());
  CHECK(r.quadratic_roots.empty());
  CHECK(r.residual == p);
  CHECK_THROWS_AS(extract_roots(UniPoly()), ZeroPolynomial);
}

TEST_CASE("extract_roots: mixed product, degree bookkeeping and substitution") {
  UniPoly x = UniPoly::x();
  auto lin = [&](long a, long b) { return Rational(a) * x + UniPoly::constant(b); };
  UniPoly quad19({Rational(3), Rational(10), Rational(2)});
  UniPoly quad2({Rational(-2), Rational(0), Rational(1)});
  UniPoly cubic({Rational(-2), Rational(0), Rational(0), Rational(1)});
  UniPoly p = lin(3, -2) * lin(1, 5) * quad19 * cubic * quad2;
  RootSet r = extract_roots(p);
  CHECK(r.rational_roots == std::vector<Rational>{Rational(-5), Rational(2, 3)});
  CHECK(r.quadratic_roots.size() == 4);
  CHECK(r.residual == cubic);
  CHECK(r.residual.degree() + static_cast<int>(r.rational_roots.size()) +
            2 * static_cast<int>(r.quadratic_factors.size()) ==
        p.degree());
  for (const auto& q : r.rational_roots) CHECK(sgn(p.eval(q)) == 0);
  for (const auto& s : r.quadratic_roots) CHECK(p.eval(s).is_zero());
}

TEST_CASE("extract_roots: quartic splitting into two quadratics") {
  UniPoly a({Rational(-19), Rational(0), Rational(1)});
  UniPoly b({Rational(1), Rational(1), Rational(1)});  // complex pair
  RootSet r = extract_roots(a * b);
  CHECK(r.quadratic_factors.size() == 2);
  for (const auto& s : r.quadratic_roots) CHECK((a * b).eval(s).is_zero());
  CHECK(r.residual.degree() == 0);
}
