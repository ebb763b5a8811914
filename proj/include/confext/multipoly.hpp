#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "confext/exactnum.hpp"

namespace confext {

// Formal indeterminates: D = the derivation, L and M = the two bracket parameters.
enum Var : int { D = 0, L = 1, M = 2 };
constexpr int kNumVars = 3;

struct Mono {
  std::array<std::uint8_t, kNumVars> e{};

  static Mono of(int d, int l = 0, int m = 0) {
    Mono r;
    r.e = {static_cast<std::uint8_t>(d), static_cast<std::uint8_t>(l), static_cast<std::uint8_t>(m)};
    return r;
  }
  int deg() const { return e[0] + e[1] + e[2]; }
  int operator[](int v) const { return e[v]; }
  friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
  friend Mono operator*(const Mono& a, const Mono& b) {
    Mono r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = static_cast<std::uint8_t>(a.e[i] + b.e[i]);
    return r;
  }
};

// Graded-lex with D > L > M; "less" means printed first (the larger monomial).
struct MonoOrder {
  bool operator()(const Mono& a, const Mono& b) const {
    int da = a.deg(), db = b.deg();
    if (da != db) return da > db;
    return a.e > b.e;
  }
};

using UnknownId = int;

class UnknownRegistry {
 public:
  UnknownId add(std::string name) {
    names_.push_back(std::move(name));
    return static_cast<UnknownId>(names_.size()) - 1;
  }
  const std::string& name(UnknownId id) const { return names_.at(id); }
  int size() const { return static_cast<int>(names_.size()); }

 private:
  std::vector<std::string> names_;
};

using Assignment = std::map<UnknownId, Scalar>;

// constant + sum coeff_i * unknown_i, no stored zero coefficients.
class LinearForm {
 public:
  using Terms = std::vector<std::pair<UnknownId, Scalar>>;

  LinearForm() = default;
  LinearForm(const Scalar& c) : c_(c) {}  // NOLINT
  static LinearForm unknown(UnknownId id, const Scalar& coeff = Scalar(1));

  const Scalar& constant() const { return c_; }
  const Terms& terms() const { return t_; }
  bool is_zero() const { return c_.is_zero() && t_.empty(); }
  bool is_constant() const { return t_.empty(); }

  LinearForm& operator+=(const LinearForm& y);
  LinearForm& operator-=(const LinearForm& y);
  LinearForm& scale(const Scalar& s);
  // this += s * y
  LinearForm& add_scaled(const LinearForm& y, const Scalar& s);
  Scalar eval(const Assignment& a) const;
  friend LinearForm operator+(LinearForm x, const LinearForm& y) { return x += y; }
  friend LinearForm operator-(LinearForm x, const LinearForm& y) { return x -= y; }
  friend bool operator==(const LinearForm& x, const LinearForm& y) { return x.c_ == y.c_ && x.t_ == y.t_; }

  std::string str(const UnknownRegistry* reg) const;

 private:
  Scalar c_;
  Terms t_;
};

class MPoly {
 public:
  using Terms = std::map<Mono, LinearForm, MonoOrder>;

  MPoly() = default;
  MPoly(const Scalar& c);  // NOLINT
  static MPoly var(Var v);
  static MPoly term(const Mono& m, const LinearForm& c);
  // Parses the canonical text form of an unknown-free polynomial.
  static MPoly parse(const std::string& text);

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool has_unknowns() const;
  int degree_in(Var v) const;
  int total_degree() const;
  LinearForm coeff(const Mono& m) const;
  void add_term(const Mono& m, const LinearForm& c);

  MPoly& operator+=(const MPoly& q);
  MPoly& operator-=(const MPoly& q);
  MPoly operator-() const;
  MPoly scaled(const Scalar& s) const;
  friend MPoly operator+(MPoly p, const MPoly& q) { return p += q; }
  friend MPoly operator-(MPoly p, const MPoly& q) { return p -= q; }
  // At least one side must be unknown-free; NonlinearProduct otherwise.
  friend MPoly operator*(const MPoly& p, const MPoly& q);
  friend bool operator==(const MPoly& p, const MPoly& q) { return p.t_ == q.t_; }
  friend bool operator!=(const MPoly& p, const MPoly& q) { return !(p == q); }
  MPoly pow(int k) const;

  // Replace v by expr (unknown-free). UnknownIndeterminate if expr carries unknowns.
  MPoly substitute(Var v, const MPoly& expr) const;
  MPoly evaluate(const Assignment& a) const;

  std::string str(const UnknownRegistry* reg = nullptr) const;

 private:
  Terms t_;
};

// Sparse vector over dense column indices, sorted, no zeros.
using SparseVec = std::vector<std::pair<int, Scalar>>;

// v -= s * w
void sparse_axpy(SparseVec& v, const Scalar& s, const SparseVec& w);

// Incremental exact row echelon form over Scalars.
class Echelon {
 public:
  // Reduces v against the stored rows. Returns true (and stores it) if independent.
  bool insert(SparseVec v);
  void reduce(SparseVec& v) const;
  bool contains(SparseVec v) const;
  int rank() const { return static_cast<int>(rows_.size()); }
  // Brings the stored rows to reduced row echelon form with unit pivots.
  void make_reduced();
  // Rows ordered by pivot column (call make_reduced first for RREF).
  std::vector<SparseVec> rows() const;
  std::vector<int> pivots() const;
  // Basis of {x : row.x = 0 for all rows} in RREF, over ncols columns.
  std::vector<SparseVec> nullspace(int ncols);

 private:
  std::map<int, SparseVec> rows_;  // pivot column -> row with unit pivot
  bool reduced_ = true;
};

struct LinearSystem {
  std::vector<UnknownId> columns;  // column j is unknown columns[j]
  std::vector<SparseVec> rows;
  int column_of(UnknownId id) const;
};

// One row per (identity, monomial). Extra columns make unknowns that appear in no
// identity still count as free.
LinearSystem to_linear_system(const std::vector<MPoly>& identities,
                              const std::vector<UnknownId>& extra_columns = {});
std::vector<Assignment> nullspace(const LinearSystem& sys);

SparseVec to_sparse(const Assignment& a, const LinearSystem& sys);
Assignment to_assignment(const SparseVec& v, const std::vector<UnknownId>& columns);

}  // namespace confext
