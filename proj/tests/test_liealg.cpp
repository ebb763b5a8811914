#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "confext/liealg.hpp"

using namespace confext;

namespace {

// Multiplicity of V(n) in V(2) (x) V(m) from weight multiplicities alone.
int clebsch_gordan_multiplicity(int m, int n) {
  std::map<int, int> weights;
  for (int a = 2; a >= -2; a -= 2)
    for (int b = m; b >= -m; b -= 2) weights[a + b]++;
  return weights[n] - weights[n + 2];
}

// Combinations sum c_i T_i satisfying extra linear conditions; returns the dimension.
// cond(T) returns the list of scalar expressions that must vanish, evaluated per basis map.
template <class Cond>
std::vector<SparseVec> restricted(const std::vector<Matrix>& space, Cond cond) {
  std::vector<std::vector<Scalar>> values;
  for (const auto& t : space) values.push_back(cond(t));
  Echelon e;
  if (!space.empty()) {
    for (std::size_t r = 0; r < values[0].size(); ++r) {
      SparseVec row;
      for (std::size_t i = 0; i < space.size(); ++i)
        if (!values[i][r].is_zero()) row.emplace_back(static_cast<int>(i), values[i][r]);
      e.insert(std::move(row));
    }
  }
  return e.nullspace(static_cast<int>(space.size()));
}

Scalar apply_T(const Matrix& t, int v, int y, int u, int du) { return t[v][y * du + u]; }

}  // namespace

TEST_CASE("sl2 irreps") {
  auto v0 = sl2_irrep(0);
  CHECK(v0->dim() == 1);
  CHECK(v0->is_trivial());
  auto v2 = sl2_irrep(2);
  CHECK(v2->entry(1, 0, 0) == Scalar(2));
  CHECK(v2->entry(1, 1, 1) == Scalar(0));
  CHECK(v2->entry(1, 2, 2) == Scalar(-2));
  auto v5 = sl2_irrep(5);  // the constructor already checks every bracket
  Matrix comm = matsub(matmul(v5->matrix(0), v5->matrix(2)), matmul(v5->matrix(2), v5->matrix(0)));
  CHECK(comm == v5->matrix(1));
}

TEST_CASE("built-in algebras satisfy Jacobi and are perfect") {
  CHECK(sl2()->is_perfect());
  CHECK(sl3()->dim() == 8);
  CHECK(sl3()->is_perfect());
  CHECK_NOTHROW(adjoint_rep(sl3()));
  CHECK_NOTHROW(sl3_fundamental());
}

TEST_CASE("Killing form of sl2") {
  Matrix k = invariant_form(*sl2());
  CHECK(k[1][1] == Scalar(8));
  CHECK(k[0][2] == Scalar(4));
  CHECK(k[0][0] == Scalar(0));
  // invariance k([x,y],z) + k(y,[x,z]) = 0
  const LieAlgebra& g = *sl2();
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z) {
        Scalar s;
        for (const auto& [i, c] : g.bracket(x, y)) s += c * k[i][z];
        for (const auto& [i, c] : g.bracket(x, z)) s += c * k[y][i];
        CHECK(s.is_zero());
      }
}

TEST_CASE("degenerate Killing form") {
  auto ab = std::make_shared<LieAlgebra>("a1", std::vector<std::string>{"a"}, std::vector<LieAlgebra::Entry>{});
  CHECK_THROWS_AS(invariant_form(*ab), DegenerateForm);
}

TEST_CASE("intertwiner dimensions match Clebsch-Gordan") {
  for (int m = 0; m <= 6; ++m)
    for (int n = 0; n <= 8; ++n) {
      auto sp = intertwiner_space(*sl2_irrep(m), *sl2_irrep(n));
      CHECK(static_cast<int>(sp.size()) == clebsch_gordan_multiplicity(m, n));
    }
  CHECK(intertwiner_space(*sl2_irrep(1), *sl2_irrep(3)).size() == 1);
  CHECK(intertwiner_space(*sl2_irrep(1), *sl2_irrep(5)).empty());
}

TEST_CASE("adjoint self-intertwiner is the action") {
  auto v2 = sl2_irrep(2);
  auto sp = intertwiner_space(*v2, *v2);
  REQUIRE(sp.size() == 1);
  // proportional to T(a (x) u) = pi(a) u
  const Matrix& t = sp[0];
  Scalar ratio;
  for (int a = 0; a < 3; ++a)
    for (int u = 0; u < 3; ++u)
      for (int v = 0; v < 3; ++v) {
        const Scalar& p = v2->entry(a, v, u);
        const Scalar& q = apply_T(t, v, a, u, 3);
        if (p.is_zero()) {
          CHECK(q.is_zero());
        } else if (ratio.is_zero()) {
          ratio = q / p;
        } else {
          CHECK(q == ratio * p);
        }
      }
  CHECK(!ratio.is_zero());
}

TEST_CASE("module homomorphisms") {
  CHECK(module_homs(*sl2_irrep(2), *sl2_irrep(2)).size() == 1);
  CHECK(module_homs(*sl2_irrep(1), *sl2_irrep(3)).empty());
  auto adj = adjoint_rep(sl3());
  CHECK(module_homs(*adj, *adj).size() == 1);
}

TEST_CASE("symmetric intertwiners vanish for nontrivial sl2 irreps") {
  const LieAlgebra& g = *sl2();
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= 6; ++n) {
      auto U = sl2_irrep(m), V = sl2_irrep(n);
      auto sp = intertwiner_space(*U, *V);
      auto sym = restricted(sp, [&](const Matrix& t) {
        std::vector<Scalar> out;
        for (int a = 0; a < g.dim(); ++a)
          for (int b = 0; b < g.dim(); ++b)
            for (int u = 0; u < U->dim(); ++u)
              for (int v = 0; v < V->dim(); ++v) {
                Scalar s;
                for (int w = 0; w < V->dim(); ++w)
                  s += V->entry(a, v, w) * apply_T(t, w, b, u, U->dim()) + V->entry(b, v, w) * apply_T(t, w, a, u, U->dim());
                out.push_back(s);
              }
        return out;
      });
      CHECK(sym.empty());
    }
}

TEST_CASE("rank two: commuting-pair intertwiners are multiples of the action") {
  const LieAlgebra& g = *sl3();
  auto check_case = [&](RepPtr U, RepPtr V, int expected) {
    auto sp = intertwiner_space(*U, *V);
    auto sub = restricted(sp, [&](const Matrix& t) {
      std::vector<Scalar> out;
      for (int a = 0; a < g.dim(); ++a)
        for (int b = 0; b < g.dim(); ++b) {
          if (!g.bracket(a, b).empty()) continue;
          for (int u = 0; u < U->dim(); ++u)
            for (int v = 0; v < V->dim(); ++v) {
              Scalar s;
              for (int w = 0; w < V->dim(); ++w) s += V->entry(a, v, w) * apply_T(t, w, b, u, U->dim());
              for (int u2 = 0; u2 < U->dim(); ++u2) s -= U->entry(b, u2, u) * apply_T(t, v, a, u2, U->dim());
              out.push_back(s);
            }
        }
      return out;
    });
    CHECK(static_cast<int>(sub.size()) == expected);
    if (expected == 1) {
      // the surviving map is proportional to pi(a)u
      Matrix t = zero_matrix(V->dim(), g.dim() * U->dim());
      for (const auto& [i, c] : sub[0])
        for (int r = 0; r < V->dim(); ++r)
          for (int col = 0; col < g.dim() * U->dim(); ++col) t[r][col] += c * sp[i][r][col];
      Scalar ratio;
      for (int a = 0; a < g.dim(); ++a)
        for (int u = 0; u < U->dim(); ++u)
          for (int v = 0; v < V->dim(); ++v) {
            const Scalar& p = U->entry(a, v, u);
            const Scalar& q = apply_T(t, v, a, u, U->dim());
            if (p.is_zero())
              CHECK(q.is_zero());
            else if (ratio.is_zero())
              ratio = q / p;
            else
              CHECK(q == ratio * p);
          }
    }
  };
  auto adj = adjoint_rep(sl3());
  check_case(adj, adj, 1);
  check_case(sl3_fundamental(), sl3_fundamental(), 1);
  // Hom(g (x) g, g) is 2-dimensional for sl3; only the action survives
  CHECK(intertwiner_space(*adj, *adj).size() == 2);
}

TEST_CASE("structure-constants file round trip and rejection") {
  LieBundle b = builtin_lie("sl3");
  LieBundle c = load_lie_json(dump_lie_json(b));
  CHECK(c.algebra->dim() == 8);
  CHECK(c.reps.at("fund")->dim() == 3);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) CHECK(c.algebra->bracket(i, j) == b.algebra->bracket(i, j));

  const char* bad_jacobi = R"({"name":"bad","dim":3,"basis":["x","y","z"],
    "brackets":[[0,1,0,"1"],[1,2,1,"1"],[2,0,0,"1"]]})";
  CHECK_THROWS_AS(load_lie_json(bad_jacobi), InvalidInput);
  const char* bad_anti = R"({"name":"bad","dim":2,"basis":["x","y"],
    "brackets":[[0,1,0,"1"],[1,0,0,"1"]]})";
  CHECK_THROWS_AS(load_lie_json(bad_anti), InvalidInput);
  const char* bad_rep = R"({"name":"sl2","dim":3,"basis":["e","h","f"],
    "brackets":[[0,2,1,"1"],[1,0,0,"2"],[1,2,2,"-2"]],
    "reps":{"broken":{"dim":2,"matrices":{"e":[[0,1],[0,0]],"h":[[1,0],[0,1]],"f":[[0,0],[1,0]]}}}})";
  CHECK_THROWS_AS(load_lie_json(bad_rep), InvalidInput);
}
