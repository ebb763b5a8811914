// Command-line front end: ext, classify, table, oracle, selftest.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "confext/catalog.hpp"
#include "confext/errors.hpp"
#include "confext/report.hpp"

using namespace confext;

namespace {

enum Exit { kOk = 0, kVerifyFail = 1, kUsage = 2, kArithmetic = 3 };

enum class Format { Text, Json, Csv };

struct Common {
  bool json = false;
  bool csv = false;
  Format format() const { return json ? Format::Json : (csv ? Format::Csv : Format::Text); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "a..b" or a single degree.
std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      int n = std::stoi(s);
      return {n, n};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ParseError("degree range '" + s + "' is not of the form a..b");
  }
}

struct ExtArgs {
  std::string alg = "vir", sub, quot, problem_file;
  int dpart = 8, dlam = 8;
  bool no_probe = false;
};

int cmd_ext(const ExtArgs& a, const Common& c) {
  ExtProblem p;
  if (!a.problem_file.empty()) {
    p = parse_problem_json(read_file(a.problem_file));
  } else {
    if (a.sub.empty() || a.quot.empty()) throw ParseError("ext needs --sub and --quot, or --problem");
    ConfAlgebra alg = parse_algebra(a.alg);
    p = ExtProblem{alg, parse_descriptor(a.sub, alg), parse_descriptor(a.quot, alg), DegreeBounds{a.dpart, a.dlam}};
  }
  p.validate();
  ExtOptions o;
  o.detect_unbounded = !a.no_probe;
  ExtResult r = solve_ext(p, o);
  switch (c.format()) {
    case Format::Json:
      std::cout << ext_result_json(r) << "\n";
      break;
    case Format::Csv:
      std::cout << "class,generator,quotient,sub,poly\n";
      for (std::size_t i = 0; i < r.quotient_basis.size(); ++i)
        for (const auto& e : basis_entries(r, r.quotient_basis[i]))
          std::cout << i + 1 << "," << e.generator << "," << e.quotient << "," << e.sub << ",\"" << e.poly << "\"\n";
      break;
    case Format::Text:
      std::cout << ext_result_text(r);
      break;
  }
  return kOk;
}

int cmd_classify(const std::string& degrees, long sqrt_d, const Common& c) {
  auto [lo, hi] = parse_range(degrees);
  auto rows = classify_range(lo, hi, sqrt_d);
  switch (c.format()) {
    case Format::Json:
      std::cout << classify_json(rows) << "\n";
      break;
    case Format::Csv:
      std::cout << classify_csv(rows);
      break;
    case Format::Text:
      std::cout << classify_text(rows);
      std::cout << "note: roots are accepted only after a fixed-weight recomputation of Ext\n";
      break;
  }
  return kOk;
}

int cmd_table(int section, const Common& c) {
  if (section < 2 || section > 5) throw OutOfRange("--section must be 2, 3, 4 or 5");
  SectionTable t = run_section(section);
  switch (c.format()) {
    case Format::Json:
      std::cout << t.json() << "\n";
      break;
    case Format::Csv:
      std::cout << t.csv();
      break;
    case Format::Text:
      std::cout << t.text() << kDegreeBoundCaveat << "\n";
      break;
  }
  return t.ok() ? kOk : kVerifyFail;
}

int cmd_oracle(int window, int guard, bool mutate, const Common& c) {
  if (window < 1) throw OutOfRange("--window must be at least 1");
  if (guard < 0) throw OutOfRange("--guard must be non-negative");
  ModeWindow w;
  w.N = window;
  w.P = window;
  w.guard = guard;
  std::vector<SectionTable> tables;
  for (int s = 2; s <= 5; ++s) tables.push_back(run_section(s));
  OracleSweep sweep = run_oracle(tables, w, mutate);
  std::cout << (c.format() == Format::Json ? sweep.json() + "\n" : sweep.text());
  return sweep.ok() ? kOk : kVerifyFail;
}

int cmd_selftest() {
  int failures = 0;
  auto line = [&](const std::string& what, bool ok) {
    std::cout << (ok ? "PASS " : "FAIL ") << what << "\n";
    if (!ok) ++failures;
  };
  auto ext_dim = [](const std::string& alg, const std::string& sub, const std::string& quot, int bound) {
    ConfAlgebra a = parse_algebra(alg);
    ExtOptions o;
    o.detect_unbounded = false;
    return solve_ext({a, parse_descriptor(sub, a), parse_descriptor(quot, a), {bound, bound}}, o).ext_dim;
  };
  line("weights 0 under 1 give 3", ext_dim("vir", "M(0,0)", "M(0,1)", 8) == 3);
  line("character -1 under weight 2 gives 1", ext_dim("vir", "C(-1)", "M(1,2)", 8) == 1);
  line("sl2 V3 under V1 gives 2", ext_dim("cur:sl2", "M(V3)", "M(V1)", 3) == 2);
  line("degree 6 roots {-4, 0}", classify_vir_parametric(6).roots == std::vector<Scalar>{Scalar(-4), Scalar(0)});
  line("degree 7 has two roots", classify_vir_parametric(7).roots.size() == 2);
  line("degree 8 has no roots", classify_vir_parametric(8).roots.empty());
  return failures == 0 ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extensions of conformal modules over Virasoro and current conformal algebras"};
  app.require_subcommand(1);
  Common common;
  app.add_flag("--json", common.json, "JSON output");
  app.add_flag("--csv", common.csv, "CSV output");

  ExtArgs ext;
  auto* ext_cmd = app.add_subcommand("ext", "Ext^1 dimension and basis for one pair of modules");
  ext_cmd->add_option("--alg", ext.alg, "vir | virab | cur:<lie> | vircur:<lie>, <lie> = sl2, sl3 or a .json file")
      ->capture_default_str();
  ext_cmd->add_option("--sub", ext.sub, "submodule descriptor, e.g. M(0,1) or C(-1)");
  ext_cmd->add_option("--quot", ext.quot, "quotient descriptor");
  ext_cmd->add_option("--problem", ext.problem_file, "problem descriptor file (JSON)");
  ext_cmd->add_option("--dpart", ext.dpart, "degree bound in D")->capture_default_str()->check(CLI::NonNegativeNumber);
  ext_cmd->add_option("--dlam", ext.dlam, "degree bound in lambda")->capture_default_str()->check(CLI::NonNegativeNumber);
  ext_cmd->add_flag("--no-probe", ext.no_probe, "skip the one-degree-higher re-solve");

  std::string degrees;
  long sqrt_d = 0;
  auto* cls_cmd = app.add_subcommand("classify", "weight pairs with a degree-n cocycle, symbolic in the lower weight");
  cls_cmd->add_option("--degrees", degrees, "degree range a..b, a >= 3")->required();
  cls_cmd->add_option("--sqrt", sqrt_d, "accept irrational roots only in Q(sqrt d)");

  int section = 0;
  auto* tab_cmd = app.add_subcommand("table", "recompute the dimension claims of one section");
  tab_cmd->add_option("--section", section, "2, 3, 4 or 5")->required();

  int window = 8, guard = 10;
  bool mutate = false;
  auto* ora_cmd = app.add_subcommand("oracle", "mode-expansion check of every cocycle of the section sweep");
  ora_cmd->add_option("--window", window, "mode window N = P")->capture_default_str();
  ora_cmd->add_option("--guard", guard, "guard band")->capture_default_str();
  ora_cmd->add_flag("--mutate", mutate, "also run the mutation suite");

  auto* self_cmd = app.add_subcommand("selftest", "quick consistency checks");

  for (auto* sub : {ext_cmd, cls_cmd, tab_cmd, ora_cmd}) {
    sub->add_flag("--json", common.json, "JSON output");
    sub->add_flag("--csv", common.csv, "CSV output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if (common.json && common.csv) {
    std::cerr << "error: --json and --csv are exclusive\n";
    return kUsage;
  }

  try {
    if (*ext_cmd) return cmd_ext(ext, common);
    if (*cls_cmd) return cmd_classify(degrees, sqrt_d, common);
    if (*tab_cmd) return cmd_table(section, common);
    if (*ora_cmd) return cmd_oracle(window, guard, mutate, common);
    if (*self_cmd) return cmd_selftest();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.error_class() == ErrorClass::Usage ? kUsage : kArithmetic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kArithmetic;
  }
  return kUsage;
}
