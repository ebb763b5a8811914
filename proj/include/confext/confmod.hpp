#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <tuple>
#include <optional>
#include <string>
#include <vector>

#include "confext/liealg.hpp"
#include "confext/multipoly.hpp"

namespace confext {

class ConfAlgebra {
 public:
  enum class Kind { Vir, Cur, VirCur, VirAb };

  static ConfAlgebra vir();
  static ConfAlgebra cur(LieBundle lie);
  static ConfAlgebra vircur(LieBundle lie);
  static ConfAlgebra virab();

  Kind kind() const { return kind_; }
  bool has_virasoro() const { return kind_ != Kind::Cur; }
  const LieAlgebra* lie() const { return lie_.algebra.get(); }
  const LieBundle& lie_bundle() const { return lie_; }
  std::string name() const;

  // Generator order: L first (when present), then the current generators.
  int num_generators() const;
  std::string generator_name(int g) const;
  bool is_virasoro_generator(int g) const { return has_virasoro() && g == 0; }
  // Index into the Lie basis for a current generator (VirAb: 0 for "a").
  int current_index(int g) const { return has_virasoro() ? g - 1 : g; }

  // [g_lambda h] = sum_k P_k(D, L) k, lambda written as L.
  std::vector<std::pair<int, MPoly>> bracket(int g, int h) const;

 private:
  Kind kind_ = Kind::Vir;
  LieBundle lie_;
};

class ModuleDescriptor {
 public:
  enum class Kind { OneDim, Vir, Cur, VirCur, VirAb };

  static ModuleDescriptor one_dim(const Scalar& beta);
  static ModuleDescriptor vir(const Scalar& alpha, const Scalar& delta);
  static ModuleDescriptor cur(RepPtr rep);
  static ModuleDescriptor vircur(const Scalar& alpha, const Scalar& delta, RepPtr rep);
  static ModuleDescriptor virab(const Scalar& alpha, const Scalar& delta, const Scalar& k);

  Kind kind() const { return kind_; }
  bool is_one_dim() const { return kind_ == Kind::OneDim; }
  const Scalar& alpha() const { return alpha_; }
  const Scalar& delta() const { return delta_; }
  const Scalar& beta() const { return beta_; }
  const Scalar& k() const { return k_; }
  const RepPtr& rep() const { return rep_; }
  // Rank over C[D].
  int rank() const;

  // Irreducibility violations (warnings only).
  std::vector<std::string> warnings() const;
  // Whether the descriptor is a module over that algebra variant.
  bool compatible_with(const ConfAlgebra& alg) const;
  // Descriptor grammar: C(b) | M(a,D) | M(rep) | M(a,D,rep) | M(a,D,k=..)
  std::string str() const;

  // Known generator action on basis vector i: g_lambda e_i = sum_j P_j(D, L) e_j.
  std::vector<std::pair<int, MPoly>> known_action(const ConfAlgebra& alg, int g, int i) const;

 private:
  Kind kind_ = Kind::OneDim;
  Scalar alpha_, delta_, beta_, k_;
  RepPtr rep_;
};

ModuleDescriptor parse_descriptor(const std::string& text, const ConfAlgebra& alg);
ConfAlgebra parse_algebra(const std::string& text);

struct DegreeBounds {
  int dpart = 8;
  int dlam = 8;
};

struct ExtProblem {
  ConfAlgebra algebra;
  ModuleDescriptor sub;   // V, the submodule
  ModuleDescriptor quot;  // W, the quotient
  DegreeBounds bounds;

  // "S1".."S10" or "outside-catalog" when both sides are one-dimensional.
  std::string scenario() const;
  // Throws InvalidInput when a descriptor does not fit the algebra.
  void validate() const;
};

// Basis of E = V + W. Sub vectors first.
struct BasisVector {
  bool in_sub = true;
  int local = 0;        // index inside its module
  bool one_dim = false;
  Scalar beta;          // D-eigenvalue for one-dimensional modules
  std::string name;
};

// Coordinates of an unknown: which slot of the cochain and which monomial.
struct UnknownInfo {
  bool perturbation = false;  // a(D) block of a one-dimensional quotient
  int gen = 0;                // generator (corrections only)
  int w = 0;                  // quotient basis index (global E index)
  int v = 0;                  // sub basis index (global E index)
  Mono mono;
};

using Element = std::vector<MPoly>;  // one polynomial per E basis vector

class ActionAnsatz {
 public:
  explicit ActionAnsatz(const ExtProblem& p);

  const ExtProblem& problem() const { return p_; }
  const std::vector<BasisVector>& basis() const { return basis_; }
  int num_sub() const { return p_.sub.rank(); }
  int num_basis() const { return static_cast<int>(basis_.size()); }
  std::vector<int> quotient_indices() const;
  std::vector<int> sub_indices() const;

  const UnknownRegistry& registry() const { return *reg_; }
  std::shared_ptr<const UnknownRegistry> registry_ptr() const { return reg_; }
  const std::vector<UnknownId>& unknowns() const { return unknowns_; }
  const UnknownInfo& info(UnknownId id) const { return info_[id]; }
  bool has_perturbation() const { return has_perturbation_; }

  // Correction polynomial of g_lambda w in component v (unknown-laden).
  const MPoly& correction(int g, int w, int v) const { return corr_[g][w - num_sub()][v]; }
  // a_v(D) for the one-dimensional quotient.
  const MPoly& perturbation(int v) const { return pert_[v]; }
  // Monomial box of an admissible correction slot.
  bool in_box(int v, const Mono& m) const;
  bool in_perturbation_box(int v, const Mono& m) const;
  // Unknown id of a slot monomial, or -1 if outside the box.
  UnknownId correction_unknown(int g, int w, int v, const Mono& m) const;
  UnknownId perturbation_unknown(int v, const Mono& m) const;

  // Full action g_var(e_b) with the given variable standing for lambda.
  Element base_action(int g, int b, Var var) const;
  // D-eigen shift data: D e_c for the one-dimensional quotient.
  Element d_on_basis(int b) const;

  // Action of g (lambda = var) on an element, with the D-shift rule.
  Element act(int g, Var var, const Element& x) const;
  // D applied to an element.
  Element apply_d(const Element& x) const;
  // Multiplies by a known polynomial in (D, L, M) viewed as an operator (D acts).
  Element mul_operator(const MPoly& op, const Element& x) const;
  // Removes D from one-dimensional sub components (D acts as beta there).
  void normalize(Element& x) const;

  Element unit(int b) const;

  // Concrete cochain at an assignment: substitutes unknown values.
  MPoly correction_value(int g, int w, int v, const Assignment& a) const;
  MPoly perturbation_value(int v, const Assignment& a) const;

 private:
  ExtProblem p_;
  std::shared_ptr<UnknownRegistry> reg_;
  std::vector<BasisVector> basis_;
  std::vector<std::vector<std::vector<MPoly>>> corr_;  // [g][w - nsub][v]
  std::vector<MPoly> pert_;
  bool has_perturbation_ = false;
  std::vector<UnknownId> unknowns_;
  std::vector<UnknownInfo> info_;
  std::map<std::tuple<bool, int, int, int, std::array<std::uint8_t, 3>>, UnknownId> index_;
};

// Every bracket identity the cochain has to satisfy, in D, L, M.
std::vector<MPoly> build_constraints(const ActionAnsatz& ansatz);

// Splitting changes w' = w + t_w(D) and the cochains they induce.
struct CoboundaryData {
  std::shared_ptr<UnknownRegistry> reg;  // t unknowns
  std::vector<UnknownId> t_unknowns;
  // t_w polynomials, indexed [w - nsub][v]
  std::vector<std::vector<MPoly>> t;
  // cochain coordinates as linear forms in t unknowns, keyed by ansatz unknown
  std::map<UnknownId, LinearForm> image;
  // rows that must vanish for the image to stay in the box
  std::vector<LinearForm> outside;
};

CoboundaryData coboundary_data(const ActionAnsatz& ansatz);
// Spanning set of coboundary cochains inside the degree box, in RREF.
std::vector<Assignment> coboundary_generators(const ActionAnsatz& ansatz);

}  // namespace confext
