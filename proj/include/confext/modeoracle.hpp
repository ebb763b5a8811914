#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "confext/confmod.hpp"

namespace confext {

struct ModeWindow {
  int N = 8;      // generator modes |m| <= N
  int P = 8;      // module indices |p| <= P
  int guard = 10;
  long bound() const { return static_cast<long>(N) + P + guard; }
};

// Mode symbol e_b[n] of an extension basis vector.
struct ModeKey {
  int b = 0;
  long n = 0;
  friend bool operator<(const ModeKey& x, const ModeKey& y) { return x.b != y.b ? x.b < y.b : x.n < y.n; }
  friend bool operator==(const ModeKey& x, const ModeKey& y) { return x.b == y.b && x.n == y.n; }
};

// Sparse combination of mode symbols, sorted by key, no zero coefficients.
using ModeVec = std::vector<std::pair<ModeKey, Scalar>>;

// acc += s * x
void mode_axpy(std::map<ModeKey, Scalar>& acc, const Scalar& s, const ModeVec& x);
ModeVec to_mode_vec(const std::map<ModeKey, Scalar>& acc);
std::string mode_vec_str(const ModeVec& x, const std::vector<std::string>& names);

// Unknown-free lambda-action of an extension E = V + W.
struct ConcreteAction {
  ConfAlgebra algebra;
  std::vector<BasisVector> basis;
  // action[g][b]: g_lambda e_b = sum (target, P(D, L)) with L standing for lambda
  std::vector<std::vector<std::vector<std::pair<int, MPoly>>>> action;
  // For one-dimensional quotient vectors: D e_b = beta e_b + sum (target, P(D)) e_target
  std::vector<std::vector<std::pair<int, MPoly>>> d_extra;

  int num_basis() const { return static_cast<int>(basis.size()); }
  std::vector<std::string> names() const;
};

// The action at a solved assignment of the ansatz unknowns.
ConcreteAction concrete_action(const ActionAnsatz& an, const Assignment& a);

// One table slot: g[m] applied to e_b[p].
struct TableKey {
  int g = 0;
  long m = 0;
  int b = 0;
  long p = 0;
  friend bool operator<(const TableKey& x, const TableKey& y) {
    if (x.g != y.g) return x.g < y.g;
    if (x.m != y.m) return x.m < y.m;
    if (x.b != y.b) return x.b < y.b;
    return x.p < y.p;
  }
};
using ModeTable = std::map<TableKey, ModeVec>;

// Mode algebra representation of a concrete action. Symbols are kept in normal
// form: free-module symbols at every index, one-dimensional vectors only at
// index -1, everything else rewritten through (D x)[n] = -n x[n-1].
class ModeAction {
 public:
  explicit ModeAction(ConcreteAction a);

  const ConcreteAction& action() const { return a_; }
  bool is_free_symbol(int b, long n) const;
  // Free symbols of a basis vector inside |p| <= P.
  std::vector<long> free_indices(int b, int P) const;

  // Result of g[m] on the symbol e_b[p] (normal form). reach receives the largest
  // |index| touched while computing it.
  const ModeVec& apply(int g, long m, int b, long p, long* reach = nullptr);
  ModeVec apply(int g, long m, const ModeVec& x, long* reach = nullptr);
  // Normal form of a raw symbol.
  const ModeVec& normal_form(int b, long n, long* reach = nullptr);
  // (P(D) e_b)[n] for a polynomial in D.
  ModeVec poly_mode(int b, const MPoly& p_of_d, long n, long* reach = nullptr);

  // Adds delta to one table entry (g[m] e_b[p] -> target). Clears caches.
  void perturb(const TableKey& k, const ModeKey& target, const Scalar& delta);

  ModeTable table(const ModeWindow& w);

 private:
  struct Cached {
    ModeVec v;
    long reach = 0;
  };
  struct Term {
    int target;
    int dpow;
    Scalar coef;  // lambda^j coefficient times j!
  };
  using Key = std::uint64_t;
  static Key pack(int a, long m, int b, long p);

  ConcreteAction a_;
  int ng_ = 0;
  // terms_[g][b][j]: the lambda^j part of g_lambda e_b
  std::vector<std::vector<std::vector<std::vector<Term>>>> terms_;
  std::vector<Scalar> beta_;
  std::vector<std::vector<std::pair<int, MPoly>>> d_extra_;
  // Linear relation among sub symbols from a one-dimensional quotient with
  // beta = 0: pivot symbol -> its value.
  std::map<ModeKey, ModeVec> relations_;
  std::map<TableKey, std::map<ModeKey, Scalar>> perturbations_;
  std::unordered_map<Key, Cached> apply_cache_;
  std::unordered_map<Key, Cached> nf_cache_;

  void build_relations();
  ModeVec reduce_relations(std::map<ModeKey, Scalar> acc) const;
};

ModeAction expand_modes(const ConcreteAction& a, const ModeWindow& w);

struct BracketFailure {
  int gen1 = 0;
  long m = 0;
  int gen2 = 0;
  long n = 0;
  int basis = 0;
  long p = 0;
  std::string lhs, rhs;
};

struct OracleReport {
  ModeWindow window;
  long checked = 0;
  long skipped = 0;
  std::vector<BracketFailure> failed;
  bool ok() const { return failed.empty(); }
  std::string json() const;
  void merge(const OracleReport& o);
};

struct VerifyOptions {
  bool parallel = true;
  // Restrict to checks touching one table slot (mutation runs); null checks everything.
  const TableKey* focus = nullptr;
  std::size_t max_failures = 64;  // recorded, the count is exact regardless
  long* failure_count = nullptr;
};

// [g[m], h[n]] e_b[p] = sum_k C(m,k) (g_(k) h)[m+n-k] e_b[p] on every in-guard combination.
OracleReport verify_brackets(const ModeAction& ma, const ModeWindow& w, const VerifyOptions& opt = {});

// ----------------------------------------------------------------- realizations

enum class Realization { VirDelta1, VirDelta2, ExactForms, AffineKM, GeneralS7 };

Realization parse_realization(const std::string& name);  // UnknownRealization
std::string realization_name(Realization r);

struct RealizationParams {
  Scalar alpha;
  // GeneralS7: sub weight, weight difference and f = sum a_ik D^i L^k.
  Scalar lower_weight;
  int weight_gap = 0;
  MPoly f;
  // AffineKM: Lie algebra with its invariant form (Killing form when empty).
  std::string lie = "sl2";
};

// The extension problem the realization lives in (basis order of the table).
ExtProblem realization_problem(Realization kind, const RealizationParams& params);
// Table computed from residue and derivative formulas in C[t, 1/t] e^{-alpha t}.
ModeTable realize(Realization kind, const RealizationParams& params, const ModeWindow& w);

// Ansatz assignment of an explicit cochain: g_lambda w gains slots[g][w][v] e_v,
// and a one-dimensional quotient gains D w += pert[v] e_v.
struct ExplicitCochain {
  std::map<std::tuple<int, int, int>, MPoly> slots;  // (g, w, v) -> P(D, L)
  std::map<int, MPoly> pert;                          // v -> P(D)
};
Assignment cochain_assignment(const ActionAnsatz& an, const ExplicitCochain& c);

// Solver-side cochain matching a realization (the cocycle the construction encodes).
ExplicitCochain realization_cochain(Realization kind, const RealizationParams& params);

// Entries present in only one table or with different values, as readable lines.
std::vector<std::string> table_diff(const ModeTable& x, const ModeTable& y, const std::vector<std::string>& names,
                                    std::size_t limit = 10);

// Realization table against the solver-side pipeline: the cochain is checked to be a
// nontrivial cocycle, then both tables are compared on free symbols.
struct RealizationCheck {
  bool cocycle = false;
  bool nontrivial = false;
  std::size_t entries = 0;
  std::vector<std::string> diffs;
  bool ok() const { return cocycle && nontrivial && diffs.empty(); }
};
RealizationCheck check_realization(Realization kind, const RealizationParams& params, const ModeWindow& w);

// ----------------------------------------------------------------- mutations

struct MutationReport {
  int mutants = 0;
  int caught = 0;
  std::vector<std::string> escaped;
};

// Perturbs table entries of the cocycle part (quotient symbol -> sub symbol) by +1,
// one at a time, and reruns the checks touching that entry. At most max_mutants
// entries, taken at an even stride over the window.
MutationReport mutation_suite(const ConcreteAction& a, const ModeWindow& w, int max_mutants = 24);

}  // namespace confext
