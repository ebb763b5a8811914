#pragma once

#include <string>
#include <vector>

#include "confext/extsolver.hpp"

namespace confext {

// Problem descriptor file: {"algebra": "...", "sub": "...", "quot": "...",
// "bounds": {"dpart": 8, "dlam": 8}}. Bounds are optional.
ExtProblem parse_problem_json(const std::string& text);
std::string problem_json(const ExtProblem& p);

// One nonzero slot of a quotient-basis cocycle.
struct BasisEntry {
  std::string generator;  // "L", "e", ..., or "D" for the perturbation block
  std::string quotient;   // quotient basis vector acted on
  std::string sub;        // sub basis vector receiving the correction
  std::string poly;
};
std::vector<BasisEntry> basis_entries(const ExtResult& r, const Assignment& cocycle);

std::string ext_result_json(const ExtResult& r);
std::string ext_result_text(const ExtResult& r);

// Classification over a degree range. sqrt_radicand > 0 restricts accepted
// irrational roots to Q(sqrt d); roots outside that field are listed apart.
struct ClassifyRow {
  ConditionPolys polys;
  std::vector<Scalar> roots;
  std::vector<Scalar> outside_field;
};
std::vector<ClassifyRow> classify_range(int lo, int hi, long sqrt_radicand = 0);
std::string classify_text(const std::vector<ClassifyRow>& rows);
std::string classify_json(const std::vector<ClassifyRow>& rows);
std::string classify_csv(const std::vector<ClassifyRow>& rows);

// Shown with every bounded computation.
extern const char* const kDegreeBoundCaveat;

}  // namespace confext
