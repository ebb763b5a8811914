#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "confext/exactnum.hpp"
#include "confext/multipoly.hpp"

namespace confext {

using Matrix = std::vector<std::vector<Scalar>>;

Matrix zero_matrix(int rows, int cols);
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matsub(const Matrix& a, const Matrix& b);
Scalar trace(const Matrix& a);
int matrix_rank(const Matrix& a);

class LieAlgebra {
 public:
  struct Entry {
    int i, j, k;
    Scalar value;
  };

  // Entries give [x_i, x_j] = sum value * x_k. Entries for (j, i) are derived when
  // absent. Throws InvalidInput naming the first violated triple.
  LieAlgebra(std::string name, std::vector<std::string> basis, const std::vector<Entry>& brackets);

  const std::string& name() const { return name_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<std::string>& basis() const { return basis_; }
  int index_of(const std::string& basis_name) const;

  // [x_i, x_j] as a sparse vector over the basis.
  const SparseVec& bracket(int i, int j) const { return c_[i][j]; }
  Scalar structure_constant(int i, int j, int k) const;
  Matrix ad(int i) const;
  // [g, g] = g
  bool is_perfect() const;

 private:
  std::string name_;
  std::vector<std::string> basis_;
  std::vector<std::vector<SparseVec>> c_;
};

class Representation {
 public:
  // mats[x][r][c]: x acting on basis vector c has component r.
  Representation(std::shared_ptr<const LieAlgebra> alg, std::string name, std::vector<Matrix> mats);

  const LieAlgebra& algebra() const { return *alg_; }
  std::shared_ptr<const LieAlgebra> algebra_ptr() const { return alg_; }
  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const Matrix& matrix(int x) const { return mats_[x]; }
  const Scalar& entry(int x, int r, int c) const { return mats_[x][r][c]; }
  bool is_trivial() const;

 private:
  std::shared_ptr<const LieAlgebra> alg_;
  std::string name_;
  int dim_;
  std::vector<Matrix> mats_;
};

using RepPtr = std::shared_ptr<const Representation>;
using LiePtr = std::shared_ptr<const LieAlgebra>;

// sl2 in the basis (e, h, f).
LiePtr sl2();
// sl3 in the basis E12, E13, E23, E21, E31, E32, H1 = E11-E22, H2 = E22-E33.
LiePtr sl3();

RepPtr sl2_irrep(int m);
RepPtr adjoint_rep(LiePtr alg);
RepPtr trivial_rep(LiePtr alg);
RepPtr sl3_fundamental();

// Hom_g(g (x) U, V). Each map is dimV x (dim g * dimU); column y*dimU + u holds T(x_y (x) u).
std::vector<Matrix> intertwiner_space(const Representation& U, const Representation& V);
// Hom_g(U, V), each map dimV x dimU.
std::vector<Matrix> module_homs(const Representation& U, const Representation& V);
// Killing form. DegenerateForm when singular.
Matrix invariant_form(const LieAlgebra& alg);

struct LieBundle {
  LiePtr algebra;
  std::map<std::string, RepPtr> reps;
};

// Structure-constants file: {name, dim, basis, brackets:[[i,j,k,"p/q"]], reps:{...}}.
LieBundle load_lie_json(const std::string& text);
std::string dump_lie_json(const LieBundle& bundle);

// Built-in algebra by name ("sl2", "sl3") with its named representations.
LieBundle builtin_lie(const std::string& name);
// Representation lookup by descriptor name: "V<m>" for sl2, "adj", "triv", "fund", or a file rep.
RepPtr lookup_rep(const LieBundle& bundle, const std::string& rep_name);

}  // namespace confext
