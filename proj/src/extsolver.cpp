#include "confext/extsolver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace confext {

namespace {

LinearSystem ansatz_columns(const ActionAnsatz& an) {
  LinearSystem s;
  s.columns = an.unknowns();
  std::sort(s.columns.begin(), s.columns.end());
  return s;
}

}  // namespace

std::vector<Assignment> cocycle_space(const ActionAnsatz& an) {
  LinearSystem sys = to_linear_system(build_constraints(an), an.unknowns());
  return nullspace(sys);
}

ExtResult solve_ext(const ExtProblem& p, const ExtOptions& opt) {
  ExtResult r;
  auto an = std::make_shared<ActionAnsatz>(p);
  r.ansatz = an;
  for (const auto* m : {&p.sub, &p.quot})
    for (auto& w : m->warnings()) r.warnings.push_back(w);
  r.reducible_input_warning = !r.warnings.empty();

  LinearSystem cols = ansatz_columns(*an);
  r.cocycle_basis = cocycle_space(*an);
  r.coboundary_basis = coboundary_generators(*an);

  Echelon z;
  for (const auto& a : r.cocycle_basis) z.insert(to_sparse(a, cols));
  Echelon combined;
  std::set<int> bpivots;
  for (const auto& b : r.coboundary_basis) {
    SparseVec v = to_sparse(b, cols);
    if (!z.contains(v)) throw std::logic_error("coboundary generator violates the cocycle identities");
    bpivots.insert(v.front().first);
    combined.insert(std::move(v));
  }
  for (const auto& a : r.cocycle_basis) combined.insert(to_sparse(a, cols));
  combined.make_reduced();
  for (const auto& row : combined.rows()) {
    if (bpivots.count(row.front().first)) continue;
    r.quotient_basis.push_back(to_assignment(row, cols.columns));
    NontrivialityCertificate c;
    c.pivot = cols.columns[row.front().first];
    c.pivot_name = an->registry().name(c.pivot);
    c.pivot_value = row.front().second;
    c.residual_terms = static_cast<int>(row.size());
    r.certificates.push_back(c);
  }
  r.ext_dim = static_cast<int>(r.quotient_basis.size());

  if (opt.detect_unbounded) {
    ExtProblem bigger = p;
    bigger.bounds.dpart += 1;
    bigger.bounds.dlam += 1;
    ExtOptions inner;
    inner.detect_unbounded = false;
    r.next_bound_dim = solve_ext(bigger, inner).ext_dim;
    r.unbounded_family = r.next_bound_dim > r.ext_dim;
  }
  return r;
}

TrivialityCertificate triviality_certificate(const ActionAnsatz& an, const Assignment& cocycle) {
  for (const auto& id : build_constraints(an))
    if (!id.evaluate(cocycle).is_zero()) throw NotACocycle("assignment violates a bracket identity");

  TrivialityCertificate out;
  CoboundaryData cd = coboundary_data(an);
  LinearSystem tcols;
  tcols.columns = cd.t_unknowns;
  std::sort(tcols.columns.begin(), tcols.columns.end());
  const int rhs = static_cast<int>(tcols.columns.size());

  auto row_of = [&](const LinearForm& f, const Scalar& b) {
    SparseVec row;
    for (const auto& [id, v] : f.terms()) row.emplace_back(tcols.column_of(id), v);
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    if (!b.is_zero()) row.emplace_back(rhs, b);
    return row;
  };
  Echelon e;
  std::set<UnknownId> touched;
  for (const auto& [u, f] : cd.image) touched.insert(u);
  for (const auto& [u, x] : cocycle) touched.insert(u);
  for (UnknownId u : touched) {
    auto it = cd.image.find(u);
    auto ct = cocycle.find(u);
    e.insert(row_of(it == cd.image.end() ? LinearForm() : it->second, ct == cocycle.end() ? Scalar() : ct->second));
  }
  for (const auto& f : cd.outside) e.insert(row_of(f, Scalar()));
  e.make_reduced();
  bool consistent = true;
  Assignment tval;
  for (const auto& row : e.rows()) {
    if (row.front().first == rhs) {
      consistent = false;
      break;
    }
    if (row.back().first == rhs) tval[tcols.columns[row.front().first]] = row.back().second;
  }

  LinearSystem cols = ansatz_columns(an);
  auto gens = coboundary_generators(an);
  if (consistent) {
    out.trivial = true;
    const int ns = an.num_sub();
    out.splitting.assign(cd.t.size(), std::vector<MPoly>(ns));
    for (std::size_t w = 0; w < cd.t.size(); ++w)
      for (int v = 0; v < ns; ++v) out.splitting[w][v] = cd.t[w][v].evaluate(tval);
    SparseVec target = to_sparse(cocycle, cols);
    for (const auto& g : gens) {
      SparseVec gv = to_sparse(g, cols);
      Scalar c;
      for (const auto& [col, x] : target)
        if (col == gv.front().first) c = x;
      out.combination.push_back(c);
    }
  } else {
    Echelon b;
    for (const auto& g : gens) b.insert(to_sparse(g, cols));
    b.make_reduced();
    SparseVec v = to_sparse(cocycle, cols);
    b.reduce(v);
    out.residual = to_assignment(v, cols.columns);
  }
  return out;
}

SpanCheck span_modulo_coboundaries(const ExtResult& r, const std::vector<Assignment>& cochains) {
  SpanCheck out;
  const ActionAnsatz& an = *r.ansatz;
  auto ids = build_constraints(an);
  LinearSystem cols = ansatz_columns(an);
  Echelon e;
  for (const auto& b : r.coboundary_basis) e.insert(to_sparse(b, cols));
  for (const auto& c : cochains) {
    for (const auto& id : ids)
      if (!id.evaluate(c).is_zero()) {
        out.all_cocycles = false;
        break;
      }
    if (e.insert(to_sparse(c, cols))) ++out.rank_modulo_coboundaries;
  }
  return out;
}

std::string slot_string(const ActionAnsatz& an, const Assignment& a, int g, int w, int v) {
  return an.correction_value(g, w, v, a).str();
}

// ---------------------------------------------------------------- classification

namespace {

using Pair = std::pair<UniPoly, UniPoly>;

Rational binom(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Pair add(const Pair& a, const Pair& b) { return {a.first + b.first, a.second + b.second}; }
Pair mul(const UniPoly& s, const Pair& a) { return {s * a.first, s * a.second}; }

// Coefficient polynomials of a_0..a_n in (a2, a3) over Q[x]; rows collects the
// relations with vanishing leading factor.
std::vector<Pair> run_recursion(int n, std::vector<Pair>* rows) {
  const UniPoly x = UniPoly::x();
  const UniPoly one = UniPoly::constant(1);
  std::vector<Pair> a(n + 2, Pair{UniPoly(), UniPoly()});
  a[2] = {one, UniPoly()};
  a[3] = {UniPoly(), one};
  auto c = [](const Rational& q) { return UniPoly::constant(q); };
  for (int k = 1; k <= n; ++k) {
    Pair rhs{UniPoly(), UniPoly()};
    if (k <= n - 1) {
      for (int j = 0; j <= k - 1; ++j) {
        UniPoly coef = c((n - j) * binom(n - j - 1, k - j)) + c((n - j) * binom(n - j - 1, k - j - 1)) * x;
        if (j >= 1) coef = coef - c(j * binom(n - j, k - j + 1)) - c((j - 1) * binom(n - j, k - j)) * x;
        rhs = add(rhs, mul(coef, a[j]));
      }
    } else {
      for (int j = 0; j <= n - 1; ++j) rhs = add(rhs, mul(c(Rational(n - 2 * j + 1)) * x, a[j]));
    }
    Rational lead = Rational(Integer(1) << k) - Rational(k * k - k + 2);
    if (sgn(lead) == 0) {
      // 0 * a_k = rhs: a constraint (a_k itself stays as given)
      if (rows) {
        // the equation reads lead*a_k - rhs = 0
        Pair row{-rhs.first, -rhs.second};
        if (k >= 4) row = add(row, mul(c(lead), a[k]));
        rows->push_back(row);
      }
      continue;
    }
    if (k >= 4) a[k] = mul(c(Rational(1) / lead), rhs);
    else if (rows) rows->push_back(add(mul(c(lead), a[k]), Pair{-rhs.first, -rhs.second}));
  }
  return a;
}

}  // namespace

Scalar recursion_coeff(int n, const Scalar& lower_weight, int k, const Scalar& a2, const Scalar& a3) {
  if (n < 4 || k < 4 || k > n) throw OutOfRange("recursion_coeff needs 4 <= k <= n");
  auto a = run_recursion(n, nullptr);
  return a[k].first.eval(lower_weight) * a2 + a[k].second.eval(lower_weight) * a3;
}

Scalar quartic_condition(int n, const Scalar& x) {
  Scalar N(n);
  Scalar x2 = x * x;
  return Scalar(48) * x2 * x2 + Scalar(96) * (N - Scalar(2)) * x2 * x +
         (Scalar(72) * N * N - Scalar(386) * N + Scalar(808)) * x2 +
         (Scalar(24) * N * N * N - Scalar(224) * N * N + Scalar(968) * N - Scalar(1232)) * x +
         Scalar(3) * N * N * N * N - Scalar(44) * N * N * N + Scalar(267) * N * N - Scalar(946) * N + Scalar(720);
}

ConditionPolys classify_vir_parametric(int n, bool verify) {
  if (n < 3) throw OutOfRange("classification needs degree n >= 3");
  ConditionPolys out;
  out.n = n;
  std::vector<Pair> rows;
  auto a = run_recursion(n, &rows);
  a.resize(n + 2);  // a_{n+1} = 0
  out.coefficients.assign(a.begin(), a.begin() + n + 1);

  // Evenness of the lambda -> -lambda combination: odd k up to n+1.
  const UniPoly x = UniPoly::x();
  auto c = [](const Rational& q) { return UniPoly::constant(q); };
  UniPoly one_minus_delta = c(Rational(2 - n)) - x;  // 1 - (x + n - 1)
  for (int k = 1; k <= n + 1; k += 2) {
    Pair row = mul(one_minus_delta, a[k - 1]);
    for (int j = 0; j <= k - 1 && j <= n; ++j) {
      Rational sgnj = (j % 2) ? -1 : 1;
      UniPoly coef = c(sgnj * binom(n - j, k - j)) + c(sgnj * binom(n - j, k - j - 1)) * x;
      row = add(row, mul(coef, a[j]));
    }
    rows.push_back(row);
  }
  out.rows = rows;

  for (const auto& r : rows) {
    if (!r.first.is_zero()) out.generators.push_back(r.first);
    if (!r.second.is_zero()) out.generators.push_back(r.second);
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      UniPoly minor = rows[i].first * rows[j].second - rows[j].first * rows[i].second;
      if (!minor.is_zero()) out.generators.push_back(minor);
    }
  UniPoly g;
  for (const auto& p : out.generators) g = UniPoly::gcd(g, p);
  out.condition = g;
  if (g.is_zero()) {
    out.identically_satisfiable = true;
    return out;
  }
  RootSet rs = extract_roots(g);
  out.residual = rs.residual;
  std::vector<Scalar> candidates;
  for (const auto& q : rs.rational_roots) candidates.emplace_back(q);
  for (const auto& s : rs.quadratic_roots) candidates.push_back(s);
  for (const auto& root : candidates) {
    bool ok = true;
    if (verify) {
      ExtProblem p{ConfAlgebra::vir(), ModuleDescriptor::vir(Scalar(), root),
                   ModuleDescriptor::vir(Scalar(), root + Scalar(n - 1)), DegreeBounds{n, n}};
      ExtOptions opt;
      opt.detect_unbounded = false;
      ok = solve_ext(p, opt).ext_dim >= 1;
    }
    (ok ? out.roots : out.rejected_roots).push_back(root);
  }
  return out;
}

}  // namespace confext
