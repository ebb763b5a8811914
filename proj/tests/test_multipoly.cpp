#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "confext/multipoly.hpp"

using namespace confext;

namespace {

const MPoly d = MPoly::var(D), l = MPoly::var(L), m = MPoly::var(M);

MPoly random_known(std::mt19937& rng, int maxdeg) {
  std::uniform_int_distribution<int> e(0, maxdeg), c(-9, 9);
  MPoly p;
  for (int i = 0; i < 5; ++i) p.add_term(Mono::of(e(rng), e(rng)), LinearForm(Scalar(c(rng))));
  return p;
}

}  // namespace

TEST_CASE("canonical text form") {
  MPoly p = MPoly::parse("3/2*D^2*L + (-1)*L^3");
  CHECK(p.str() == "3/2*D^2*L + (-1)*L^3");
  CHECK(MPoly::parse(p.str()) == p);
  CHECK(MPoly().str() == "0");
  MPoly q = d * d + l.scaled(Scalar::parse("1/2+1/2*sqrt(19)")) + Scalar(-4);
  CHECK(MPoly::parse(q.str()) == q);
}

TEST_CASE("binomial identity cancels") {
  MPoly s = d + l;
  CHECK((s * s - d * d - (d * l).scaled(2) - l * l).is_zero());
}

TEST_CASE("products stay linear in unknowns") {
  UnknownRegistry reg;
  UnknownId a = reg.add("a"), b = reg.add("b");
  MPoly f = MPoly::term(Mono::of(1, 0), LinearForm::unknown(a)) + MPoly::term(Mono::of(0, 1), LinearForm::unknown(b));
  MPoly g = (d + l.scaled(Scalar(Rational(1, 3)))) * f;
  CHECK(g.has_unknowns());
  CHECK(g.coeff(Mono::of(1, 1)) == LinearForm::unknown(a, Scalar(Rational(1, 3))) + LinearForm::unknown(b));
  CHECK_THROWS_AS(f * f, NonlinearProduct);
  CHECK(g.str(&reg) == "a*D^2 + (1/3*a + b)*D*L + (1/3*b)*L^2");
}

TEST_CASE("substitution") {
  MPoly f = MPoly::parse("D^2*L + 3*L^2");
  MPoly shifted = f.substitute(D, d + m);
  CHECK(shifted == (d + m) * (d + m) * l + (l * l).scaled(3));
  CHECK(f.substitute(L, l) == f);
  UnknownRegistry reg;
  MPoly u = MPoly::term(Mono{}, LinearForm::unknown(reg.add("a")));
  CHECK_THROWS_AS(f.substitute(D, u), UnknownIndeterminate);
  // shift-then-kill
  MPoly g = MPoly::parse("D^3 + (-2)*D + 5");
  CHECK(g.substitute(D, d + l).substitute(L, MPoly()) == g);
}

TEST_CASE("random shift-then-kill consistency") {
  std::mt19937 rng(7);
  for (int it = 0; it < 50; ++it) {
    MPoly p = random_known(rng, 4).substitute(L, MPoly());
    CHECK(p.substitute(D, d + l).substitute(L, MPoly()) == p);
  }
}

TEST_CASE("empty and identity systems") {
  UnknownRegistry reg;
  UnknownId a = reg.add("a"), b = reg.add("b");
  auto ns = nullspace(to_linear_system({}, {a, b}));
  CHECK(ns.size() == 2);
  MPoly ia = MPoly::term(Mono::of(1), LinearForm::unknown(a)) + MPoly::term(Mono{}, LinearForm::unknown(b));
  CHECK(nullspace(to_linear_system({ia})).empty());
  MPoly bad = ia + MPoly(Scalar(1));
  CHECK_THROWS_AS(to_linear_system({bad}), NonhomogeneousSystem);
}

// f(L) = sum f_n L^n, n <= 4: (L + Delta*M) f(L) - (M + Delta*L) f(M) = (L - M) f(L + M)
TEST_CASE("one-variable cocycle equation at weight 2") {
  UnknownRegistry reg;
  MPoly f;
  std::vector<UnknownId> ids;
  for (int n = 0; n <= 4; ++n) {
    ids.push_back(reg.add("f" + std::to_string(n)));
    f += MPoly::term(Mono::of(0, n), LinearForm::unknown(ids.back()));
  }
  Scalar delta(2);
  MPoly fm = f.substitute(L, m);
  MPoly fs = f.substitute(L, l + m);
  MPoly id = (l + m.scaled(delta)) * f - (m + l.scaled(delta)) * fm - (l - m) * fs;
  auto sys = to_linear_system({id}, ids);
  auto ns = nullspace(sys);
  // solution space: multiples of L (a coboundary) and L^3
  REQUIRE(ns.size() == 2);
  for (const auto& s : ns) CHECK(id.evaluate(s).is_zero());
  Echelon e;
  for (const auto& s : ns) e.insert(to_sparse(s, sys));
  CHECK(e.contains(to_sparse(Assignment{{ids[1], Scalar(1)}}, sys)));
  CHECK(e.contains(to_sparse(Assignment{{ids[3], Scalar(1)}}, sys)));
}

TEST_CASE("nullspace basis is reduced with unit pivots") {
  UnknownRegistry reg;
  std::vector<UnknownId> ids;
  for (int i = 0; i < 4; ++i) ids.push_back(reg.add("x" + std::to_string(i)));
  // x0 + x1 + x2 + x3 = 0, x0 - x1 = 0
  MPoly p = MPoly::term(Mono::of(1), LinearForm::unknown(ids[0]) + LinearForm::unknown(ids[1]) +
                                          LinearForm::unknown(ids[2]) + LinearForm::unknown(ids[3])) +
            MPoly::term(Mono{}, LinearForm::unknown(ids[0]) - LinearForm::unknown(ids[1]));
  auto sys = to_linear_system({p});
  auto ns = nullspace(sys);
  REQUIRE(ns.size() == 2);
  Echelon e;
  for (const auto& s : ns) {
    SparseVec v = to_sparse(s, sys);
    CHECK(v.front().second == Scalar(1));
    e.insert(v);
  }
  for (const auto& s : ns) CHECK(p.evaluate(s).is_zero());
}

TEST_CASE("concatenated systems intersect") {
  std::mt19937 rng(11);
  UnknownRegistry reg;
  std::vector<UnknownId> ids;
  for (int i = 0; i < 6; ++i) ids.push_back(reg.add("y" + std::to_string(i)));
  std::uniform_int_distribution<int> c(-3, 3);
  auto random_identity = [&]() {
    MPoly p;
    for (int r = 0; r < 2; ++r) {
      LinearForm f;
      for (auto id : ids) f += LinearForm::unknown(id, Scalar(c(rng)));
      p.add_term(Mono::of(r), f);
    }
    return p;
  };
  MPoly i1 = random_identity(), i2 = random_identity();
  auto both = nullspace(to_linear_system({i1, i2}, ids));
  for (const auto& s : both) {
    CHECK(i1.evaluate(s).is_zero());
    CHECK(i2.evaluate(s).is_zero());
  }
  auto sys1 = to_linear_system({i1}, ids);
  Echelon e1;
  for (const auto& s : nullspace(sys1)) e1.insert(to_sparse(s, sys1));
  for (const auto& s : both) CHECK(e1.contains(to_sparse(s, sys1)));
}
