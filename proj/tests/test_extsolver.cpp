#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "confext/errors.hpp"
#include "confext/extsolver.hpp"
#include "closed_forms.hpp"

using namespace confext;
using confext_tests::closed_forms;

namespace {

ExtProblem problem(const std::string& alg, const std::string& sub, const std::string& quot, int dp, int dl) {
  ConfAlgebra a = parse_algebra(alg);
  return ExtProblem{a, parse_descriptor(sub, a), parse_descriptor(quot, a), DegreeBounds{dp, dl}};
}

ExtProblem vir_pair(const Scalar& alpha, const Scalar& lower, const Scalar& upper, int bound) {
  return ExtProblem{ConfAlgebra::vir(), ModuleDescriptor::vir(alpha, lower), ModuleDescriptor::vir(alpha, upper),
                    DegreeBounds{bound, bound}};
}

ExtResult fixed(const ExtProblem& p) {
  ExtOptions o;
  o.detect_unbounded = false;
  return solve_ext(p, o);
}

MPoly dv() { return MPoly::var(D); }
MPoly lv() { return MPoly::var(L); }

Assignment slot_cochain(const ActionAnsatz& an, int g, int w, int v, const MPoly& f) {
  Assignment a;
  for (const auto& [m, c] : f.terms()) a[an.correction_unknown(g, w, v, m)] = c.constant();
  return a;
}

MPoly power(const MPoly& p, int k) {
  MPoly r(Scalar(1));
  for (int i = 0; i < k; ++i) r = r * p;
  return r;
}

// Lagrange interpolation of a quartic through x = 0..4.
UniPoly interpolate_quartic(const std::function<Rational(const Rational&)>& value) {
  UniPoly acc;
  for (int i = 0; i <= 4; ++i) {
    UniPoly basis = UniPoly::constant(1);
    Rational den(1);
    for (int j = 0; j <= 4; ++j) {
      if (j == i) continue;
      basis = basis * (UniPoly::x() - UniPoly::constant(Rational(j)));
      den *= Rational(i - j);
    }
    acc = acc + (value(Rational(i)) / den) * basis;
  }
  return acc;
}

}  // namespace

TEST_CASE("worked extension dimensions") {
  struct Row {
    std::string label, alg, sub, quot;
    int bound, expected;
  };
  std::vector<Row> rows = {
      {"vir weights 0 under 1", "vir", "M(0,0)", "M(0,1)", 8, 3},
      {"character -1 under weight 2", "vir", "C(-1)", "M(1,2)", 8, 1},
      {"sl2 V3 under V1", "cur:sl2", "M(V3)", "M(V1)", 4, 2},
      {"vir gap 2 at 1/3", "vir", "M(0,1/3)", "M(0,7/3)", 8, 1},
      {"vir equal weights 5/7", "vir", "M(0,5/7)", "M(0,5/7)", 8, 2},
      {"vir gap 5/2", "vir", "M(0,1/3)", "M(0,17/6)", 8, 0},
  };
  for (const auto& r : rows) {
    CAPTURE(r.label);
    ExtResult res = solve_ext(problem(r.alg, r.sub, r.quot, r.bound, r.bound));
    CHECK(res.ext_dim == r.expected);
    CHECK_FALSE(res.unbounded_family);
    CHECK(res.certificates.size() == static_cast<std::size_t>(res.ext_dim));
    CHECK(res.quotient_basis.size() == static_cast<std::size_t>(res.ext_dim));
  }
}

TEST_CASE("rank-one sweep over weight gaps") {
  // seeded random lower weights, skipping the handful of special values
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 9);
  std::vector<Scalar> lowers;
  while (lowers.size() < 40) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    Scalar s(q);
    if (s == Scalar(0) || s == Scalar(-4) || s == Scalar(1) || s == Scalar(-1)) continue;
    if (std::find(lowers.begin(), lowers.end(), s) != lowers.end()) continue;
    lowers.push_back(s);
  }
  for (int gap = 0; gap <= 8; ++gap) {
    int expected = gap == 0 ? 2 : (gap >= 2 && gap <= 4 ? 1 : 0);
    int bound = std::max(2, gap + 2);
    for (std::size_t i = 0; i < lowers.size(); i += (gap >= 6 ? 8 : 1)) {
      CAPTURE(gap);
      CAPTURE(lowers[i].str());
      CHECK(fixed(vir_pair(0, lowers[i], lowers[i] + Scalar(gap), bound)).ext_dim == expected);
    }
  }
}

TEST_CASE("non-integer gaps split and integer gaps above one carry at most one class") {
  for (Rational gap : {Rational(1, 2), Rational(7, 3), Rational(-5, 4)}) {
    CAPTURE(gap);
    CHECK(fixed(vir_pair(0, Scalar(Rational(2, 5)), Scalar(Rational(2, 5)) + Scalar(gap), 6)).ext_dim == 0);
  }
  for (int gap = 2; gap <= 7; ++gap)
    for (Scalar lower : {Scalar(0), Scalar(-4), Scalar(Rational(-5, 2))}) {
      CAPTURE(gap);
      CHECK(fixed(vir_pair(0, lower, lower + Scalar(gap), gap + 1)).ext_dim <= 1);
    }
}

TEST_CASE("parametric classification by degree") {
  ConditionPolys c6 = classify_vir_parametric(6);
  CHECK_FALSE(c6.identically_satisfiable);
  CHECK(c6.roots == std::vector<Scalar>{Scalar(-4), Scalar(0)});

  ConditionPolys c7 = classify_vir_parametric(7);
  REQUIRE(c7.roots.size() == 2);
  Scalar r(Rational(0), Rational(1, 2), 19);
  CHECK(((c7.roots[0] == Scalar(Rational(-5, 2)) + r && c7.roots[1] == Scalar(Rational(-5, 2)) - r) ||
         (c7.roots[1] == Scalar(Rational(-5, 2)) + r && c7.roots[0] == Scalar(Rational(-5, 2)) - r)));
  // the pair is the root set of x^2 + 5x + 3/2
  for (const Scalar& x : c7.roots) CHECK(x * x + Scalar(5) * x + Scalar(Rational(3, 2)) == Scalar(0));

  for (int n = 3; n <= 5; ++n) {
    CAPTURE(n);
    CHECK(classify_vir_parametric(n).identically_satisfiable);
  }
  for (int n = 8; n <= 12; ++n) {
    CAPTURE(n);
    ConditionPolys c = classify_vir_parametric(n);
    CHECK_FALSE(c.identically_satisfiable);
    CHECK(c.roots.empty());
  }
}

TEST_CASE("recursion coefficients") {
  // n = 6 at lower weight 0: a4 = 2 a2 - 3/2 a3
  CHECK(recursion_coeff(6, 0, 4, 1, 0) == Scalar(2));
  CHECK(recursion_coeff(6, 0, 4, 0, 1) == Scalar(Rational(-3, 2)));
  CHECK(recursion_coeff(9, Scalar(Rational(1, 3)), 7, 0, 0) == Scalar(0));
  CHECK_THROWS_AS(recursion_coeff(6, 0, 7, 1, 0), OutOfRange);
  CHECK_THROWS_AS(recursion_coeff(6, 0, 3, 1, 0), OutOfRange);
}

TEST_CASE("recursion agrees with the closed forms for a4..a8") {
  for (int n = 6; n <= 12; ++n)
    for (Scalar x : {Scalar(0), Scalar(Rational(1, 3)), Scalar(-4), Scalar(Rational(-7, 5))})
      for (auto [a2, a3] : {std::pair<Scalar, Scalar>{1, 0}, {0, 1}, {Scalar(Rational(2, 3)), Scalar(-5)}}) {
        std::map<int, Scalar> a{{0, 0}, {1, 0}, {2, a2}, {3, a3}};
        for (int k = 4; k <= n; ++k) a[k] = recursion_coeff(n, x, k, a2, a3);
        auto closed = closed_forms(n, x, a);
        for (int k = 4; k <= std::min(n, 8); ++k) {
          CAPTURE(n);
          CAPTURE(k);
          CAPTURE(x.str());
          CHECK(a[k] == closed[k]);
        }
      }
}

TEST_CASE("quartic condition has no rational or quadratic roots from degree 9") {
  for (int n = 9; n <= 20; ++n) {
    CAPTURE(n);
    UniPoly a = interpolate_quartic([n](const Rational& x) { return quartic_condition(n, Scalar(x)).as_rational(); });
    REQUIRE(a.degree() == 4);
    RootSet rs = extract_roots(a);
    CHECK(rs.rational_roots.empty());
    CHECK(rs.quadratic_roots.empty());
    CHECK(rs.residual.degree() == 4);
  }
  // at degree 8 the quartic vanishes at weight 0, yet the pair still splits
  UniPoly a8 = interpolate_quartic([](const Rational& x) { return quartic_condition(8, Scalar(x)).as_rational(); });
  CHECK(extract_roots(a8).rational_roots == std::vector<Rational>{Rational(0)});
  CHECK(fixed(vir_pair(0, 0, 7, 8)).ext_dim == 0);
}

TEST_CASE("triviality certificates") {
  SUBCASE("constant times lambda between unequal weights") {
    ExtProblem p = vir_pair(0, 2, Scalar(Rational(1, 3)), 3);
    ActionAnsatz an(p);
    auto tc = triviality_certificate(an, slot_cochain(an, 0, 1, 0, lv()));
    CHECK(tc.trivial);
    REQUIRE(tc.splitting.size() == 1);
    REQUIRE(tc.splitting[0].size() == 1);
    // t = 1 / (sub weight - quotient weight)
    CHECK(tc.splitting[0][0] == MPoly(Scalar(Rational(3, 5))));
  }
  SUBCASE("lambda^2 (D + lambda) at gap 2") {
    ExtProblem p = vir_pair(0, Scalar(Rational(1, 3)), Scalar(Rational(7, 3)), 3);
    ActionAnsatz an(p);
    auto tc = triviality_certificate(an, slot_cochain(an, 0, 1, 0, lv() * lv() * (dv() + lv())));
    CHECK_FALSE(tc.trivial);
    CHECK_FALSE(tc.residual.empty());
  }
  SUBCASE("difference of shifted powers at gap 3") {
    Scalar x(Rational(1, 3));
    ExtProblem p = vir_pair(0, x, x + Scalar(3), 4);
    ActionAnsatz an(p);
    MPoly f = power(dv() + lv(), 3) * (dv() + lv().scaled(x)) - (dv() + lv().scaled(x + Scalar(3))) * power(dv(), 3);
    auto tc = triviality_certificate(an, slot_cochain(an, 0, 1, 0, f));
    CHECK(tc.trivial);
    CHECK(tc.splitting[0][0] == power(dv(), 3));
  }
  SUBCASE("non-cocycles are rejected") {
    ExtProblem p = vir_pair(0, Scalar(Rational(1, 3)), Scalar(Rational(7, 3)), 3);
    ActionAnsatz an(p);
    CHECK_THROWS_AS(triviality_certificate(an, slot_cochain(an, 0, 1, 0, MPoly(Scalar(1)))), NotACocycle);
  }
}

TEST_CASE("current cocycles above degree two are coboundaries") {
  // the bracket identities are homogeneous in total degree, so each degree-M part
  // of a cocycle is a cocycle; from M = 3 on it must split
  for (auto [sub, quot] : {std::pair<std::string, std::string>{"M(adj)", "M(adj)"}, {"M(V3)", "M(V1)"}}) {
    CAPTURE(sub);
    ExtResult r = fixed(problem("cur:sl2", sub, quot, 4, 4));
    const ActionAnsatz& an = *r.ansatz;
    for (const Assignment& c : r.cocycle_basis)
      for (int m = 3; m <= 4; ++m) {
        Assignment part;
        for (const auto& [id, v] : c)
          if (an.info(id).mono.deg() == m) part[id] = v;
        if (part.empty()) continue;
        CAPTURE(m);
        CHECK(triviality_certificate(an, part).trivial);
      }
  }
}

TEST_CASE("unbounded families are flagged") {
  ExtResult triv_adj = solve_ext(problem("cur:sl2", "M(triv)", "M(adj)", 2, 2));
  CHECK(triv_adj.unbounded_family);
  CHECK(triv_adj.next_bound_dim > triv_adj.ext_dim);
  ExtResult bounded = solve_ext(problem("vir", "M(0,1/3)", "M(0,7/3)", 4, 4));
  CHECK_FALSE(bounded.unbounded_family);
  CHECK(bounded.next_bound_dim == bounded.ext_dim);
}

TEST_CASE("alpha shift leaves extension dimensions unchanged") {
  for (Scalar alpha : {Scalar(Rational(2, 3)), Scalar(-3), Scalar::sqrt_of(2)}) {
    CAPTURE(alpha.str());
    for (auto [lo, hi] : {std::pair<Scalar, Scalar>{Scalar(Rational(1, 3)), Scalar(Rational(7, 3))},
                          {Scalar(0), Scalar(1)},
                          {Scalar(Rational(2, 5)), Scalar(Rational(2, 5))},
                          {Scalar(0), Scalar(5)}}) {
      CHECK(fixed(vir_pair(0, lo, hi, 6)).ext_dim == fixed(vir_pair(alpha, lo, hi, 6)).ext_dim);
    }
  }
}
