#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "confext/catalog.hpp"
#include "confext/errors.hpp"
#include "confext/extsolver.hpp"
#include "confext/modeoracle.hpp"

using namespace confext;

namespace {

ExtProblem vir_pair(const Scalar& alpha, const Scalar& lower, const Scalar& upper, int bound) {
  return ExtProblem{ConfAlgebra::vir(), ModuleDescriptor::vir(alpha, lower), ModuleDescriptor::vir(alpha, upper),
                    DegreeBounds{bound, bound}};
}

Assignment slot_cochain(const ActionAnsatz& an, const MPoly& f) {
  Assignment a;
  for (const auto& [m, c] : f.terms()) a[an.correction_unknown(0, 1, 0, m)] = c.constant();
  return a;
}

ModeVec single(int b, long n, const Scalar& c) { return c.is_zero() ? ModeVec{} : ModeVec{{ModeKey{b, n}, c}}; }

ModeVec plus(const ModeVec& x, const ModeVec& y) {
  std::map<ModeKey, Scalar> acc;
  mode_axpy(acc, 1, x);
  mode_axpy(acc, 1, y);
  return to_mode_vec(acc);
}

ModeWindow small_window() {
  ModeWindow w;
  w.N = 4;
  w.P = 4;
  return w;
}

}  // namespace

TEST_CASE("free Virasoro module modes") {
  // L_m v[n] = ((Delta - 1)(m + 1) - n) v[m + n] + alpha v[m + n + 1], where L_m is the
  // generator mode L[m + 1] of the j-th product expansion
  Scalar alpha(Rational(2, 3)), delta(Rational(5, 7));
  ExtProblem p = vir_pair(alpha, delta, Scalar(3), 2);
  ActionAnsatz an(p);
  ModeAction ma(concrete_action(an, Assignment{}));
  for (long m = -3; m <= 3; ++m)
    for (long n = -3; n <= 3; ++n) {
      CAPTURE(m);
      CAPTURE(n);
      Scalar c = (delta - Scalar(1)) * Scalar(m + 1) - Scalar(n);
      CHECK(ma.apply(0, m + 1, 0, n) == plus(single(0, m + n, c), single(0, m + n + 1, alpha)));
    }
}

TEST_CASE("a constant correction adds the shifted sub mode") {
  ExtProblem p = vir_pair(0, Scalar(Rational(1, 3)), Scalar(Rational(4, 3)), 2);
  ActionAnsatz an(p);
  ModeAction zero(concrete_action(an, Assignment{}));
  ModeAction one(concrete_action(an, slot_cochain(an, MPoly(Scalar(1)))));
  for (long m = -2; m <= 2; ++m)
    for (long q = -2; q <= 2; ++q) {
      CAPTURE(m);
      CAPTURE(q);
      CHECK(one.apply(0, m, 1, q) == plus(zero.apply(0, m, 1, q), single(0, m + q, 1)));
    }
}

TEST_CASE("split extensions and solved cocycles pass the bracket check") {
  ModeWindow w = small_window();
  ExtProblem p = vir_pair(Scalar(Rational(2, 3)), Scalar(Rational(1, 3)), Scalar(Rational(10, 3)), 4);
  ActionAnsatz an(p);
  OracleReport zero = verify_brackets(ModeAction(concrete_action(an, Assignment{})), w);
  CHECK(zero.ok());
  CHECK(zero.checked > 0);

  ExtOptions o;
  o.detect_unbounded = false;
  ExtResult r = solve_ext(p, o);
  REQUIRE(r.ext_dim == 1);
  OracleReport rep = verify_brackets(ModeAction(concrete_action(*r.ansatz, r.quotient_basis[0])), w);
  CHECK(rep.ok());
  CHECK(rep.skipped == 0);
}

TEST_CASE("a sign error in a gap-3 coefficient is caught") {
  ModeWindow w = small_window();
  Scalar x(Rational(1, 3));
  ExtProblem p = vir_pair(0, x, x + Scalar(3), 4);
  ActionAnsatz an(p);
  // every lambda^2 (a2 D + a3 lambda) is a cocycle at gap 2, so use gap 3
  std::vector<MPoly> fam = spanning_vir_polys(VirCase::Gap3, x);
  REQUIRE_FALSE(fam.empty());
  const MPoly& f = fam[0];
  CHECK(verify_brackets(ModeAction(concrete_action(an, slot_cochain(an, f))), w).ok());

  MPoly broken;
  bool flipped = false;
  for (const auto& [m, c] : f.terms()) {
    bool flip = !flipped;
    flipped = flipped || flip;
    broken.add_term(m, flip ? c.constant() * Scalar(-1) : c.constant());
  }
  REQUIRE(flipped);
  OracleReport rep = verify_brackets(ModeAction(concrete_action(an, slot_cochain(an, broken))), w);
  CHECK_FALSE(rep.ok());
  CHECK(rep.failed.front().lhs != rep.failed.front().rhs);
}

TEST_CASE("realizations agree with the solver-side cochains") {
  ModeWindow w = small_window();
  for (Scalar alpha : {Scalar(0), Scalar(Rational(2, 3))}) {
    CAPTURE(alpha.str());
    RealizationParams prm;
    prm.alpha = alpha;
    for (Realization k : {Realization::VirDelta1, Realization::VirDelta2, Realization::ExactForms,
                          Realization::AffineKM}) {
      CAPTURE(realization_name(k));
      RealizationCheck c = check_realization(k, prm, w);
      CHECK(c.cocycle);
      CHECK(c.nontrivial);
      CHECK(c.entries > 0);
      CHECK(c.diffs.empty());
    }
    for (auto [vc, lower, gap] : {std::tuple{VirCase::Gap2, Scalar(Rational(1, 3)), 2},
                                  std::tuple{VirCase::Gap3, Scalar(Rational(-2, 5)), 3},
                                  std::tuple{VirCase::Gap4, Scalar(Rational(1, 3)), 4},
                                  std::tuple{VirCase::FiveZero, Scalar(0), 5},
                                  std::tuple{VirCase::OneMinusFour, Scalar(-4), 5}}) {
      for (const MPoly& f : spanning_vir_polys(vc, lower)) {
        RealizationParams q = prm;
        q.lower_weight = lower;
        q.weight_gap = gap;
        q.f = f;
        CAPTURE(f.str());
        CHECK(check_realization(Realization::GeneralS7, q, w).ok());
      }
    }
  }
}

TEST_CASE("realization names") {
  for (Realization k : {Realization::VirDelta1, Realization::VirDelta2, Realization::ExactForms,
                        Realization::AffineKM, Realization::GeneralS7})
    CHECK(parse_realization(realization_name(k)) == k);
  CHECK_THROWS(parse_realization("no-such-construction"));
}

TEST_CASE("every mutant of a cocycle table is caught") {
  ModeWindow w = small_window();
  ExtProblem p = vir_pair(0, Scalar(Rational(1, 3)), Scalar(Rational(7, 3)), 4);
  ExtOptions o;
  o.detect_unbounded = false;
  ExtResult r = solve_ext(p, o);
  REQUIRE(r.ext_dim == 1);
  MutationReport m = mutation_suite(concrete_action(*r.ansatz, r.quotient_basis[0]), w, 12);
  CHECK(m.mutants == 12);
  CHECK(m.caught == m.mutants);
  CHECK(m.escaped.empty());
}

TEST_CASE("a zero guard band skips checks that leave the window") {
  ModeWindow w;
  w.N = 1;
  w.P = 1;
  w.guard = 0;
  ExtProblem p = vir_pair(0, Scalar(Rational(1, 3)), Scalar(Rational(7, 3)), 4);
  ActionAnsatz an(p);
  OracleReport rep = verify_brackets(ModeAction(concrete_action(an, Assignment{})), w);
  CHECK(rep.skipped > 0);
  CHECK(rep.ok());

  w.guard = 10;
  OracleReport full = verify_brackets(ModeAction(concrete_action(an, Assignment{})), w);
  CHECK(full.skipped == 0);
  CHECK(full.checked >= rep.checked);
}

TEST_CASE("report json") {
  ModeWindow w = small_window();
  ExtProblem p = vir_pair(0, Scalar(Rational(1, 3)), Scalar(Rational(7, 3)), 2);
  ActionAnsatz an(p);
  OracleReport rep = verify_brackets(ModeAction(concrete_action(an, Assignment{})), w);
  std::string j = rep.json();
  CHECK(j.find("\"checked\"") != std::string::npos);
  CHECK(j.find("\"skipped\"") != std::string::npos);
  CHECK(j.find("\"failed\"") != std::string::npos);
}
