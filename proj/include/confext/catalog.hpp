#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "confext/extsolver.hpp"
#include "confext/modeoracle.hpp"

namespace confext {

// Cases of the rank-one Virasoro classification, at alpha = 0.
enum class VirCase { SameWeight, OneZero, Gap2, Gap3, Gap4, FiveZero, OneMinusFour, Sqrt19 };

// The published polynomial for a case at lower weight x with parameters (a2, a3).
// SameWeight reads (a2, a3) as (a0, a1); OneZero uses a2*D + a3*D*L + L^2 with the
// last coefficient fixed by spanning_vir_polys instead.
MPoly vir_case_poly(VirCase c, const Scalar& lower, const Scalar& a2, const Scalar& a3);
// A spanning set of the published family for a case (one polynomial per free parameter).
std::vector<MPoly> spanning_vir_polys(VirCase c, const Scalar& lower);

enum class RowStatus { Pass, Fail, Discrepancy };
std::string status_name(RowStatus s);

struct Sample {
  std::string algebra;
  std::string sub, quot;
  DegreeBounds bounds;
  bool probe_unbounded = true;
};

struct CatalogRow {
  std::string label;
  std::vector<Sample> samples;
  std::string expected;  // "2", "0", "unbounded", ...
  std::string computed;
  RowStatus status = RowStatus::Fail;
  std::string note;
  std::vector<std::shared_ptr<const ExtResult>> results;
  double seconds = 0;  // solve and check time, kept out of the printed tables
};

struct SectionTable {
  int section = 0;
  std::vector<CatalogRow> rows;
  bool ok() const;
  std::string text() const;
  std::string csv() const;
  std::string json() const;
};

// Recomputes every dimension claim of a section (2..5) at the committed
// representative parameters.
SectionTable run_section(int section);

// Quotient-basis cocycles of a set of tables, each with its origin label.
struct SweepItem {
  std::string origin;
  std::shared_ptr<const ExtResult> result;
  int index = 0;
};
std::vector<SweepItem> sweep_items(const std::vector<SectionTable>& tables);

// The 50 seeded off-locus weight pairs (lower, upper) of the rank-one table.
std::vector<std::pair<Scalar, Scalar>> off_locus_pairs(int count = 50, unsigned seed = 20260417);

// Bracket checks over every sweep item, realization cross-checks and (optionally)
// the mutation suite.
struct OracleSweep {
  ModeWindow window;
  int items = 0;
  OracleReport brackets;
  std::vector<std::string> failing_items;
  std::vector<std::pair<std::string, RealizationCheck>> realizations;
  bool mutated = false;
  MutationReport mutations;
  double mutation_threshold = 0.95;

  bool realizations_ok() const;
  bool mutations_ok() const;
  bool ok() const { return brackets.ok() && realizations_ok() && mutations_ok(); }
  std::string text() const;
  std::string json() const;
};

// Realization cases: the four classical constructions and GeneralS7 on the spanning
// polynomial of every rank-one case, at alpha = 0 and 2/3.
std::vector<std::pair<std::string, RealizationCheck>> realization_suite(const ModeWindow& w);

OracleSweep run_oracle(const std::vector<SectionTable>& tables, const ModeWindow& w, bool mutate,
                       int mutants_per_item = 8);

}  // namespace confext
