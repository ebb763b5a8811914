#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "confext/confmod.hpp"

namespace confext {

struct NontrivialityCertificate {
  UnknownId pivot = -1;      // column where the representative survives modulo coboundaries
  std::string pivot_name;
  Scalar pivot_value;
  int residual_terms = 0;    // nonzero coordinates of the reduced representative
};

struct ExtResult {
  std::shared_ptr<const ActionAnsatz> ansatz;
  std::vector<Assignment> cocycle_basis;
  std::vector<Assignment> coboundary_basis;
  std::vector<Assignment> quotient_basis;
  std::vector<NontrivialityCertificate> certificates;
  int ext_dim = 0;
  bool unbounded_family = false;
  bool reducible_input_warning = false;
  std::vector<std::string> warnings;
  int next_bound_dim = -1;  // truncated dimension one degree higher, when probed

  const ExtProblem& problem() const { return ansatz->problem(); }
};

struct ExtOptions {
  // Re-solve with both bounds raised by one; a larger truncated dimension marks
  // the result as an unbounded polynomial family.
  bool detect_unbounded = true;
};

ExtResult solve_ext(const ExtProblem& p, const ExtOptions& opt = {});

// Cocycle space alone (RREF basis).
std::vector<Assignment> cocycle_space(const ActionAnsatz& an);

struct TrivialityCertificate {
  bool trivial = false;
  // Trivial: the coboundary combination and the splitting change producing it.
  std::vector<Scalar> combination;          // coefficients on coboundary_generators
  std::vector<std::vector<MPoly>> splitting;  // t_w(D) per quotient vector and sub component
  // Nontrivial: the cocycle reduced modulo the coboundary span.
  Assignment residual;
};

// NotACocycle when the assignment violates a bracket identity.
TrivialityCertificate triviality_certificate(const ActionAnsatz& an, const Assignment& cocycle);

// How a set of explicit cochains sits in the solved extension space.
struct SpanCheck {
  bool all_cocycles = true;
  int rank_modulo_coboundaries = 0;  // dimension of their span in Ext
};
SpanCheck span_modulo_coboundaries(const ExtResult& r, const std::vector<Assignment>& cochains);

// Readable polynomial of one action slot of an assignment.
std::string slot_string(const ActionAnsatz& an, const Assignment& a, int g, int w, int v);

// ----------------------------------------------------------------- weight-difference classification

struct ConditionPolys {
  int n = 0;
  // a_j = p_j(x) a2 + q_j(x) a3, x standing for the lower weight
  std::vector<std::pair<UniPoly, UniPoly>> coefficients;
  // constraint rows (coefficient of a2, coefficient of a3)
  std::vector<std::pair<UniPoly, UniPoly>> rows;
  std::vector<UniPoly> generators;  // nonzero entries and 2x2 minors
  UniPoly condition;                // gcd of generators (monic), zero if all vanish
  bool identically_satisfiable = false;
  std::vector<Scalar> roots;        // accepted roots
  std::vector<Scalar> rejected_roots;  // gcd roots failing the fixed-parameter check
  UniPoly residual;                 // unfactored part of the condition
};

// Degree-n homogeneous cocycles with weight difference n-1 over symbolic lower weight.
// verify: re-check each root with solve_ext.
ConditionPolys classify_vir_parametric(int n, bool verify = true);

// a_k from the recursion in terms of a2, a3 (4 <= k <= n).
Scalar recursion_coeff(int n, const Scalar& lower_weight, int k, const Scalar& a2, const Scalar& a3);

// The quartic-in-n, quadratic-in-x condition that must vanish for n >= 8 degree
// solutions, evaluated at (n, x).
Scalar quartic_condition(int n, const Scalar& x);

}  // namespace confext
