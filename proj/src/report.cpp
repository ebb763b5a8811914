#include "confext/report.hpp"

#include <json.hpp>
#include <sstream>

#include "confext/errors.hpp"
#include "confext/parallel.hpp"

namespace confext {

using ojson = nlohmann::ordered_json;

const char* const kDegreeBoundCaveat =
    "note: dimensions are exact up to the degree bounds; completeness beyond them rests on the classification "
    "theorems, not on this computation";

ExtProblem parse_problem_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("problem file: ") + e.what());
  }
  for (const char* key : {"algebra", "sub", "quot"})
    if (!j.contains(key) || !j[key].is_string()) throw ParseError(std::string("problem file needs string '") + key + "'");
  ConfAlgebra a = parse_algebra(j["algebra"].get<std::string>());
  ExtProblem p{a, parse_descriptor(j["sub"].get<std::string>(), a), parse_descriptor(j["quot"].get<std::string>(), a),
               DegreeBounds{}};
  if (j.contains("bounds")) {
    const auto& b = j["bounds"];
    if (b.contains("dpart")) p.bounds.dpart = b["dpart"].get<int>();
    if (b.contains("dlam")) p.bounds.dlam = b["dlam"].get<int>();
  }
  p.validate();
  return p;
}

std::string problem_json(const ExtProblem& p) {
  ojson j;
  j["algebra"] = p.algebra.name();
  j["sub"] = p.sub.str();
  j["quot"] = p.quot.str();
  j["bounds"] = {{"dpart", p.bounds.dpart}, {"dlam", p.bounds.dlam}};
  return j.dump(2);
}

std::vector<BasisEntry> basis_entries(const ExtResult& r, const Assignment& cocycle) {
  const ActionAnsatz& an = *r.ansatz;
  const auto& basis = an.basis();
  std::vector<BasisEntry> out;
  const int ng = an.problem().algebra.num_generators();
  for (int w : an.quotient_indices())
    for (int g = 0; g < ng; ++g)
      for (int v : an.sub_indices()) {
        MPoly f = an.correction_value(g, w, v, cocycle);
        if (!f.is_zero()) out.push_back({an.problem().algebra.generator_name(g), basis[w].name, basis[v].name, f.str()});
      }
  if (an.has_perturbation())
    for (int v : an.sub_indices()) {
      MPoly f = an.perturbation_value(v, cocycle);
      if (!f.is_zero()) out.push_back({"D", basis[an.quotient_indices().front()].name, basis[v].name, f.str()});
    }
  return out;
}

std::string ext_result_json(const ExtResult& r) {
  const ExtProblem& p = r.problem();
  ojson j;
  j["scenario"] = p.scenario();
  j["params"] = {{"algebra", p.algebra.name()},
                 {"sub", p.sub.str()},
                 {"quot", p.quot.str()},
                 {"bounds", {{"dpart", p.bounds.dpart}, {"dlam", p.bounds.dlam}}}};
  j["ext_dim"] = r.ext_dim;
  auto basis = ojson::array();
  for (const Assignment& c : r.quotient_basis) {
    auto entries = ojson::array();
    for (const auto& e : basis_entries(r, c))
      entries.push_back({{"generator", e.generator}, {"quotient", e.quotient}, {"sub", e.sub}, {"poly", e.poly}});
    basis.push_back(entries);
  }
  j["basis"] = basis;
  auto certs = ojson::array();
  for (const auto& c : r.certificates)
    certs.push_back({{"pivot", c.pivot_name}, {"value", c.pivot_value.str()}, {"residual_terms", c.residual_terms}});
  j["certificates"] = certs;
  j["flags"] = {{"unbounded_family", r.unbounded_family},
                {"reducible_input", r.reducible_input_warning},
                {"next_bound_dim", r.next_bound_dim}};
  j["warnings"] = r.warnings;
  j["caveat"] = kDegreeBoundCaveat;
  return j.dump(2);
}

std::string ext_result_text(const ExtResult& r) {
  const ExtProblem& p = r.problem();
  std::ostringstream os;
  os << "algebra   " << p.algebra.name() << "\n";
  os << "sub       " << p.sub.str() << "\n";
  os << "quotient  " << p.quot.str() << "\n";
  os << "scenario  " << p.scenario() << "\n";
  os << "bounds    D <= " << p.bounds.dpart << ", lambda <= " << p.bounds.dlam << "\n";
  os << "ext_dim   " << r.ext_dim << "\n";
  if (r.unbounded_family)
    os << "flag      unbounded polynomial family (dimension " << r.next_bound_dim << " one degree higher)\n";
  for (const auto& w : r.warnings) os << "warning   " << w << "\n";
  for (std::size_t i = 0; i < r.quotient_basis.size(); ++i) {
    os << "class " << i + 1 << ":\n";
    for (const auto& e : basis_entries(r, r.quotient_basis[i])) {
      if (e.generator == "D")
        os << "  D " << e.quotient << " += (" << e.poly << ") " << e.sub << "\n";
      else
        os << "  " << e.generator << "_lambda " << e.quotient << " += (" << e.poly << ") " << e.sub << "\n";
    }
    const auto& c = r.certificates[i];
    os << "  nontrivial: survives at " << c.pivot_name << " = " << c.pivot_value.str() << " modulo coboundaries\n";
  }
  os << kDegreeBoundCaveat << "\n";
  return os.str();
}

// ---------------------------------------------------------------- classification

std::vector<ClassifyRow> classify_range(int lo, int hi, long sqrt_radicand) {
  if (lo < 3 || hi < lo) throw OutOfRange("degree range needs 3 <= a <= b");
  std::vector<ClassifyRow> rows(hi - lo + 1);
  parallel_for(static_cast<int>(rows.size()), [&](int i, int) {
    ClassifyRow& row = rows[i];
    row.polys = classify_vir_parametric(lo + i);
    for (const Scalar& x : row.polys.roots) {
      bool in_field = x.is_rational() || sqrt_radicand <= 0 || x.radicand() == sqrt_radicand;
      (in_field ? row.roots : row.outside_field).push_back(x);
    }
  });
  return rows;
}

namespace {

std::string root_set(const std::vector<Scalar>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].str();
  return s + "}";
}

}  // namespace

std::string classify_text(const std::vector<ClassifyRow>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) {
    os << "degree " << r.polys.n << " (weight gap " << r.polys.n - 1 << "): ";
    if (r.polys.identically_satisfiable) {
      os << "identically satisfiable\n";
      continue;
    }
    os << "condition " << r.polys.condition.str() << ", roots " << root_set(r.roots) << "\n";
    if (!r.outside_field.empty()) os << "  roots outside the requested field: " << root_set(r.outside_field) << "\n";
    if (!r.polys.rejected_roots.empty())
      os << "  rejected by the fixed-weight check: " << root_set(r.polys.rejected_roots) << "\n";
    if (r.polys.residual.degree() > 0) os << "  unfactored part: " << r.polys.residual.str() << "\n";
  }
  os << "summary:";
  for (const auto& r : rows)
    os << " " << r.polys.n << ":" << (r.polys.identically_satisfiable ? std::string("all") : root_set(r.roots));
  os << "\n";
  return os.str();
}

std::string classify_json(const std::vector<ClassifyRow>& rows) {
  auto arr = ojson::array();
  for (const auto& r : rows) {
    auto strs = [](const std::vector<Scalar>& xs) {
      std::vector<std::string> out;
      for (const auto& x : xs) out.push_back(x.str());
      return out;
    };
    arr.push_back({{"degree", r.polys.n},
                   {"identically_satisfiable", r.polys.identically_satisfiable},
                   {"condition", r.polys.condition.str()},
                   {"roots", strs(r.roots)},
                   {"outside_field", strs(r.outside_field)},
                   {"rejected", strs(r.polys.rejected_roots)},
                   {"residual", r.polys.residual.str()}});
  }
  return arr.dump(2);
}

std::string classify_csv(const std::vector<ClassifyRow>& rows) {
  std::ostringstream os;
  os << "degree,identically_satisfiable,condition,roots\n";
  for (const auto& r : rows) {
    std::string roots;
    for (std::size_t i = 0; i < r.roots.size(); ++i) roots += (i ? ";" : "") + r.roots[i].str();
    os << r.polys.n << "," << (r.polys.identically_satisfiable ? "true" : "false") << ",\"" << r.polys.condition.str()
       << "\",\"" << roots << "\"\n";
  }
  return os.str();
}

}  // namespace confext
