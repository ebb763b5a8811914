#include "confext/confmod.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace confext {

namespace {

const MPoly kD = MPoly::var(D);
const MPoly kL = MPoly::var(L);
const MPoly kM = MPoly::var(M);

MPoly lam_poly(Var var) { return MPoly::var(var); }

std::vector<std::string> split_args(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    if (ch != ' ') cur.push_back(ch);
  }
  out.push_back(cur);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- ConfAlgebra

ConfAlgebra ConfAlgebra::vir() { return ConfAlgebra(); }

ConfAlgebra ConfAlgebra::cur(LieBundle lie) {
  ConfAlgebra a;
  a.kind_ = Kind::Cur;
  a.lie_ = std::move(lie);
  return a;
}

ConfAlgebra ConfAlgebra::vircur(LieBundle lie) {
  ConfAlgebra a;
  a.kind_ = Kind::VirCur;
  a.lie_ = std::move(lie);
  return a;
}

ConfAlgebra ConfAlgebra::virab() {
  ConfAlgebra a;
  a.kind_ = Kind::VirAb;
  a.lie_.algebra = std::make_shared<LieAlgebra>("ab1", std::vector<std::string>{"a"}, std::vector<LieAlgebra::Entry>{});
  return a;
}

std::string ConfAlgebra::name() const {
  switch (kind_) {
    case Kind::Vir: return "vir";
    case Kind::Cur: return "cur:" + lie_.algebra->name();
    case Kind::VirCur: return "vircur:" + lie_.algebra->name();
    case Kind::VirAb: return "virab";
  }
  return "?";
}

int ConfAlgebra::num_generators() const {
  switch (kind_) {
    case Kind::Vir: return 1;
    case Kind::Cur: return lie_.algebra->dim();
    case Kind::VirCur: return 1 + lie_.algebra->dim();
    case Kind::VirAb: return 2;
  }
  return 0;
}

std::string ConfAlgebra::generator_name(int g) const {
  if (is_virasoro_generator(g)) return "L";
  return lie_.algebra->basis()[current_index(g)];
}

std::vector<std::pair<int, MPoly>> ConfAlgebra::bracket(int g, int h) const {
  bool lg = is_virasoro_generator(g), lh = is_virasoro_generator(h);
  if (lg && lh) return {{0, kD + kL.scaled(2)}};
  if (lg) return {{h, kD + kL}};
  if (lh) return {{g, kL}};
  std::vector<std::pair<int, MPoly>> out;
  int off = has_virasoro() ? 1 : 0;
  for (const auto& [k, c] : lie_.algebra->bracket(current_index(g), current_index(h))) out.emplace_back(k + off, MPoly(c));
  return out;
}

ConfAlgebra parse_algebra(const std::string& text) {
  if (text == "vir") return ConfAlgebra::vir();
  if (text == "virab") return ConfAlgebra::virab();
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("unknown algebra '" + text + "'");
  std::string head = text.substr(0, colon), lie = text.substr(colon + 1);
  LieBundle bundle;
  if (lie.size() > 5 && lie.substr(lie.size() - 5) == ".json") {
    std::ifstream in(lie);
    if (!in) throw ParseError("cannot read structure-constants file '" + lie + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    bundle = load_lie_json(ss.str());
    if (!bundle.reps.count("adj")) bundle.reps["adj"] = adjoint_rep(bundle.algebra);
    if (!bundle.reps.count("triv")) bundle.reps["triv"] = trivial_rep(bundle.algebra);
  } else {
    bundle = builtin_lie(lie);
  }
  if (head == "cur") return ConfAlgebra::cur(bundle);
  if (head == "vircur") return ConfAlgebra::vircur(bundle);
  throw ParseError("unknown algebra '" + text + "'");
}

// ---------------------------------------------------------------- ModuleDescriptor

ModuleDescriptor ModuleDescriptor::one_dim(const Scalar& beta) {
  ModuleDescriptor m;
  m.kind_ = Kind::OneDim;
  m.beta_ = beta;
  return m;
}

ModuleDescriptor ModuleDescriptor::vir(const Scalar& alpha, const Scalar& delta) {
  ModuleDescriptor m;
  m.kind_ = Kind::Vir;
  m.alpha_ = alpha;
  m.delta_ = delta;
  return m;
}

ModuleDescriptor ModuleDescriptor::cur(RepPtr rep) {
  ModuleDescriptor m;
  m.kind_ = Kind::Cur;
  m.rep_ = std::move(rep);
  return m;
}

ModuleDescriptor ModuleDescriptor::vircur(const Scalar& alpha, const Scalar& delta, RepPtr rep) {
  ModuleDescriptor m;
  m.kind_ = Kind::VirCur;
  m.alpha_ = alpha;
  m.delta_ = delta;
  m.rep_ = std::move(rep);
  return m;
}

ModuleDescriptor ModuleDescriptor::virab(const Scalar& alpha, const Scalar& delta, const Scalar& k) {
  ModuleDescriptor m;
  m.kind_ = Kind::VirAb;
  m.alpha_ = alpha;
  m.delta_ = delta;
  m.k_ = k;
  return m;
}

int ModuleDescriptor::rank() const {
  return (kind_ == Kind::Cur || kind_ == Kind::VirCur) ? rep_->dim() : 1;
}

std::vector<std::string> ModuleDescriptor::warnings() const {
  std::vector<std::string> w;
  switch (kind_) {
    case Kind::Vir:
      if (delta_.is_zero()) w.push_back(str() + " is reducible (weight 0)");
      break;
    case Kind::Cur:
      if (rep_->is_trivial()) w.push_back(str() + " is reducible (trivial representation)");
      break;
    case Kind::VirCur:
      if (rep_->is_trivial() && delta_.is_zero()) w.push_back(str() + " is reducible (trivial representation, weight 0)");
      break;
    case Kind::VirAb:
      if (delta_.is_zero() && k_.is_zero()) w.push_back(str() + " is reducible (weight 0, k = 0)");
      break;
    case Kind::OneDim:
      break;
  }
  return w;
}

bool ModuleDescriptor::compatible_with(const ConfAlgebra& alg) const {
  switch (kind_) {
    case Kind::OneDim: return true;
    case Kind::Vir: return alg.kind() == ConfAlgebra::Kind::Vir;
    case Kind::Cur:
      return alg.kind() == ConfAlgebra::Kind::Cur && rep_->algebra().name() == alg.lie()->name();
    case Kind::VirCur:
      return alg.kind() == ConfAlgebra::Kind::VirCur && rep_->algebra().name() == alg.lie()->name();
    case Kind::VirAb: return alg.kind() == ConfAlgebra::Kind::VirAb;
  }
  return false;
}

std::string ModuleDescriptor::str() const {
  switch (kind_) {
    case Kind::OneDim: return "C(" + beta_.str() + ")";
    case Kind::Vir: return "M(" + alpha_.str() + "," + delta_.str() + ")";
    case Kind::Cur: return "M(" + rep_->name() + ")";
    case Kind::VirCur: return "M(" + alpha_.str() + "," + delta_.str() + "," + rep_->name() + ")";
    case Kind::VirAb: return "M(" + alpha_.str() + "," + delta_.str() + ",k=" + k_.str() + ")";
  }
  return "?";
}

std::vector<std::pair<int, MPoly>> ModuleDescriptor::known_action(const ConfAlgebra& alg, int g, int i) const {
  auto vir_part = [&]() { return std::vector<std::pair<int, MPoly>>{{i, kD + MPoly(alpha_) + kL.scaled(delta_)}}; };
  auto rep_part = [&](int x) {
    std::vector<std::pair<int, MPoly>> out;
    for (int j = 0; j < rep_->dim(); ++j)
      if (!rep_->entry(x, j, i).is_zero()) out.emplace_back(j, MPoly(rep_->entry(x, j, i)));
    return out;
  };
  switch (kind_) {
    case Kind::OneDim: return {};
    case Kind::Vir: return vir_part();
    case Kind::Cur: return rep_part(alg.current_index(g));
    case Kind::VirCur: return alg.is_virasoro_generator(g) ? vir_part() : rep_part(alg.current_index(g));
    case Kind::VirAb:
      if (alg.is_virasoro_generator(g)) return vir_part();
      if (k_.is_zero()) return {};
      return {{i, MPoly(k_)}};
  }
  return {};
}

ModuleDescriptor parse_descriptor(const std::string& text, const ConfAlgebra& alg) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  if (s.size() < 3 || s[1] != '(' || s.back() != ')') throw ParseError("bad module descriptor '" + text + "'");
  auto args = split_args(s.substr(2, s.size() - 3));
  if (s[0] == 'C') {
    if (args.size() != 1) throw ParseError("C(beta) takes one argument");
    return ModuleDescriptor::one_dim(Scalar::parse(args[0]));
  }
  if (s[0] != 'M') throw ParseError("bad module descriptor '" + text + "'");
  auto need_lie = [&]() -> const LieBundle& {
    if (!alg.lie() || alg.kind() == ConfAlgebra::Kind::VirAb || alg.kind() == ConfAlgebra::Kind::Vir)
      throw ParseError("descriptor '" + text + "' needs a current algebra");
    return alg.lie_bundle();
  };
  if (args.size() == 1) return ModuleDescriptor::cur(lookup_rep(need_lie(), args[0]));
  if (args.size() == 2) {
    if (alg.kind() == ConfAlgebra::Kind::VirAb)
      return ModuleDescriptor::virab(Scalar::parse(args[0]), Scalar::parse(args[1]), Scalar());
    return ModuleDescriptor::vir(Scalar::parse(args[0]), Scalar::parse(args[1]));
  }
  if (args.size() == 3) {
    Scalar a = Scalar::parse(args[0]), d = Scalar::parse(args[1]);
    if (args[2].rfind("k=", 0) == 0) return ModuleDescriptor::virab(a, d, Scalar::parse(args[2].substr(2)));
    return ModuleDescriptor::vircur(a, d, lookup_rep(need_lie(), args[2]));
  }
  throw ParseError("bad module descriptor '" + text + "'");
}

// ---------------------------------------------------------------- ExtProblem

std::string ExtProblem::scenario() const {
  bool s1 = sub.is_one_dim(), q1 = quot.is_one_dim();
  if (s1 && q1) return "outside-catalog";
  switch (algebra.kind()) {
    case ConfAlgebra::Kind::Vir: return s1 ? "S1" : q1 ? "S2" : "S7";
    case ConfAlgebra::Kind::Cur: return s1 ? "S3" : q1 ? "S4" : "S8";
    case ConfAlgebra::Kind::VirCur: return s1 ? "S5" : q1 ? "S6" : "S9";
    case ConfAlgebra::Kind::VirAb: return "S10";
  }
  return "?";
}

void ExtProblem::validate() const {
  if (!sub.compatible_with(algebra)) throw InvalidInput(sub.str() + " is not a module over " + algebra.name());
  if (!quot.compatible_with(algebra)) throw InvalidInput(quot.str() + " is not a module over " + algebra.name());
  if (bounds.dpart < 0 || bounds.dlam < 0) throw OutOfRange("degree bounds must be >= 0");
}

// ---------------------------------------------------------------- ActionAnsatz

ActionAnsatz::ActionAnsatz(const ExtProblem& p) : p_(p), reg_(std::make_shared<UnknownRegistry>()) {
  p_.validate();
  auto add_basis = [&](const ModuleDescriptor& m, bool sub, const std::string& stem) {
    for (int i = 0; i < m.rank(); ++i) {
      BasisVector b;
      b.in_sub = sub;
      b.local = i;
      b.one_dim = m.is_one_dim();
      b.beta = m.beta();
      b.name = m.rank() == 1 ? stem : stem + std::to_string(i);
      basis_.push_back(b);
    }
  };
  add_basis(p_.sub, true, "v");
  add_basis(p_.quot, false, "u");

  const int ns = num_sub(), ng = p_.algebra.num_generators();
  const int dp = p_.bounds.dpart, dl = p_.bounds.dlam;
  auto box_monos = [&](int v, bool pert) {
    std::vector<Mono> ms;
    bool one = basis_[v].one_dim;
    for (int i = 0; i <= (one ? 0 : dp); ++i)
      for (int j = 0; j <= (pert ? 0 : dl); ++j) ms.push_back(Mono::of(i, j));
    std::sort(ms.begin(), ms.end(), MonoOrder());
    return ms;
  };
  auto mono_text = [](const Mono& m) {
    std::string s = MPoly::term(m, LinearForm(Scalar(1))).str();
    return s;
  };

  corr_.assign(ng, std::vector<std::vector<MPoly>>(basis_.size() - ns, std::vector<MPoly>(ns)));
  for (int g = 0; g < ng; ++g)
    for (int w = ns; w < num_basis(); ++w)
      for (int v = 0; v < ns; ++v)
        for (const Mono& m : box_monos(v, false)) {
          UnknownId id = reg_->add(p_.algebra.generator_name(g) + "[" + basis_[w].name + ">" + basis_[v].name + "]" +
                                   mono_text(m));
          unknowns_.push_back(id);
          info_.push_back({false, g, w, v, m});
          index_[{false, g, w, v, m.e}] = id;
          corr_[g][w - ns][v].add_term(m, LinearForm::unknown(id));
        }
  has_perturbation_ = p_.quot.is_one_dim();
  pert_.assign(ns, MPoly());
  if (has_perturbation_) {
    for (int v = 0; v < ns; ++v)
      for (const Mono& m : box_monos(v, true)) {
        UnknownId id = reg_->add("a[" + basis_[v].name + "]" + mono_text(m));
        unknowns_.push_back(id);
        info_.push_back({true, 0, ns, v, m});
        index_[{true, 0, ns, v, m.e}] = id;
        pert_[v].add_term(m, LinearForm::unknown(id));
      }
  }
}

std::vector<int> ActionAnsatz::quotient_indices() const {
  std::vector<int> out;
  for (int b = num_sub(); b < num_basis(); ++b) out.push_back(b);
  return out;
}

std::vector<int> ActionAnsatz::sub_indices() const {
  std::vector<int> out;
  for (int b = 0; b < num_sub(); ++b) out.push_back(b);
  return out;
}

bool ActionAnsatz::in_box(int v, const Mono& m) const {
  if (m[M] != 0) return false;
  if (basis_[v].one_dim && m[D] != 0) return false;
  return m[D] <= p_.bounds.dpart && m[L] <= p_.bounds.dlam;
}

bool ActionAnsatz::in_perturbation_box(int v, const Mono& m) const {
  if (m[M] != 0 || m[L] != 0) return false;
  if (basis_[v].one_dim && m[D] != 0) return false;
  return m[D] <= p_.bounds.dpart;
}

UnknownId ActionAnsatz::correction_unknown(int g, int w, int v, const Mono& m) const {
  auto it = index_.find({false, g, w, v, m.e});
  return it == index_.end() ? -1 : it->second;
}

UnknownId ActionAnsatz::perturbation_unknown(int v, const Mono& m) const {
  auto it = index_.find({true, 0, num_sub(), v, m.e});
  return it == index_.end() ? -1 : it->second;
}

Element ActionAnsatz::unit(int b) const {
  Element e(num_basis());
  e[b] = MPoly(Scalar(1));
  return e;
}

Element ActionAnsatz::base_action(int g, int b, Var var) const {
  Element out(num_basis());
  const int ns = num_sub();
  const BasisVector& bv = basis_[b];
  const ModuleDescriptor& mod = bv.in_sub ? p_.sub : p_.quot;
  int off = bv.in_sub ? 0 : ns;
  for (auto& [j, poly] : mod.known_action(p_.algebra, g, bv.local)) out[off + j] += poly;
  if (!bv.in_sub)
    for (int v = 0; v < ns; ++v) out[v] += corr_[g][b - ns][v];
  if (var != L)
    for (auto& p : out)
      if (!p.is_zero()) p = p.substitute(L, lam_poly(var));
  normalize(out);
  return out;
}

void ActionAnsatz::normalize(Element& x) const {
  for (int b = 0; b < num_basis(); ++b) {
    if (!basis_[b].one_dim || x[b].is_zero() || x[b].degree_in(D) <= 0) continue;
    if (!basis_[b].in_sub) throw InvalidInput("D-dependent coefficient on a one-dimensional quotient vector");
    x[b] = x[b].substitute(D, MPoly(basis_[b].beta));
  }
}

Element ActionAnsatz::d_on_basis(int b) const {
  Element out(num_basis());
  const BasisVector& bv = basis_[b];
  if (!bv.one_dim) {
    out[b] = kD;
    return out;
  }
  out[b] = MPoly(bv.beta);
  if (!bv.in_sub && has_perturbation_)
    for (int v = 0; v < num_sub(); ++v) out[v] += pert_[v];
  normalize(out);
  return out;
}

Element ActionAnsatz::apply_d(const Element& x) const {
  Element out(num_basis());
  for (int b = 0; b < num_basis(); ++b) {
    if (x[b].is_zero()) continue;
    const BasisVector& bv = basis_[b];
    if (!bv.one_dim) {
      out[b] += kD * x[b];
    } else if (bv.in_sub) {
      out[b] += x[b].scaled(bv.beta);
    } else {
      Element db = d_on_basis(b);
      for (int c = 0; c < num_basis(); ++c)
        if (!db[c].is_zero()) out[c] += x[b] * db[c];
    }
  }
  normalize(out);
  return out;
}

Element ActionAnsatz::mul_operator(const MPoly& op, const Element& x) const {
  // op = sum_i c_i(L, M) D^i
  std::map<int, MPoly> by_d;
  for (const auto& [m, c] : op.terms()) {
    Mono rest = m;
    rest.e[D] = 0;
    by_d[m[D]].add_term(rest, c);
  }
  Element out(num_basis());
  Element cur = x;
  int power = 0;
  for (const auto& [i, c] : by_d) {
    while (power < i) {
      cur = apply_d(cur);
      ++power;
    }
    for (int b = 0; b < num_basis(); ++b)
      if (!cur[b].is_zero()) out[b] += c * cur[b];
  }
  return out;
}

Element ActionAnsatz::act(int g, Var var, const Element& x) const {
  Element out(num_basis());
  MPoly shift = kD + lam_poly(var);
  for (int b = 0; b < num_basis(); ++b) {
    if (x[b].is_zero()) continue;
    MPoly coef = x[b];
    if (!basis_[b].one_dim) {
      coef = coef.substitute(D, shift);
    } else if (coef.degree_in(D) > 0) {
      throw InvalidInput("D-dependent coefficient on a one-dimensional vector");
    }
    Element ab = base_action(g, b, var);
    for (int c = 0; c < num_basis(); ++c)
      if (!ab[c].is_zero()) out[c] += coef * ab[c];
  }
  normalize(out);
  return out;
}

MPoly ActionAnsatz::correction_value(int g, int w, int v, const Assignment& a) const {
  return correction(g, w, v).evaluate(a);
}

MPoly ActionAnsatz::perturbation_value(int v, const Assignment& a) const { return pert_[v].evaluate(a); }

// ---------------------------------------------------------------- constraints

std::vector<MPoly> build_constraints(const ActionAnsatz& an) {
  const ExtProblem& p = an.problem();
  const int ng = p.algebra.num_generators();
  const int ns = an.num_sub();
  std::vector<MPoly> ids;
  auto emit = [&](const Element& e) {
    for (int b = 0; b < an.num_basis(); ++b) {
      if (e[b].is_zero()) continue;
      if (b >= ns && !e[b].has_unknowns())
        throw InvalidInput("quotient module violates a bracket identity; check the descriptor");
      if (b < ns) ids.push_back(e[b]);
    }
  };
  const MPoly lam_sum = kL + kM;
  const MPoly minus_sum = -(kL + kM);
  for (int w : an.quotient_indices()) {
    for (int g = 0; g < ng; ++g)
      for (int h = g; h < ng; ++h) {
        // g_L(h_M w) - h_M(g_L w) - [g_L h]_{L+M} w
        Element lhs = an.act(g, L, an.base_action(h, w, M));
        Element t2 = an.act(h, M, an.base_action(g, w, L));
        for (int b = 0; b < an.num_basis(); ++b) lhs[b] -= t2[b];
        for (const auto& [x, poly] : p.algebra.bracket(g, h)) {
          MPoly coef = poly.substitute(D, minus_sum);
          Element xa = an.base_action(x, w, L);
          for (int b = 0; b < an.num_basis(); ++b) {
            if (xa[b].is_zero()) continue;
            lhs[b] -= coef * xa[b].substitute(L, lam_sum);
          }
        }
        emit(lhs);
      }
    if (an.basis()[w].one_dim && an.has_perturbation()) {
      // g_L(D w) = (D + L) g_L w
      for (int g = 0; g < ng; ++g) {
        Element lhs = an.act(g, L, an.d_on_basis(w));
        Element rhs = an.mul_operator(kD + kL, an.base_action(g, w, L));
        for (int b = 0; b < an.num_basis(); ++b) lhs[b] -= rhs[b];
        emit(lhs);
      }
    }
  }
  return ids;
}

// ---------------------------------------------------------------- coboundaries

CoboundaryData coboundary_data(const ActionAnsatz& an) {
  const ExtProblem& p = an.problem();
  const int ns = an.num_sub(), ng = p.algebra.num_generators();
  CoboundaryData cd;
  cd.reg = std::make_shared<UnknownRegistry>();
  const int tdeg = p.bounds.dpart + p.bounds.dlam + 1;
  cd.t.assign(an.num_basis() - ns, std::vector<MPoly>(ns));
  for (int w : an.quotient_indices())
    for (int v = 0; v < ns; ++v) {
      int top = an.basis()[v].one_dim ? 0 : tdeg;
      for (int i = 0; i <= top; ++i) {
        UnknownId id = cd.reg->add("t[" + an.basis()[w].name + ">" + an.basis()[v].name + "]" + std::to_string(i));
        cd.t_unknowns.push_back(id);
        cd.t[w - ns][v].add_term(Mono::of(i), LinearForm::unknown(id));
      }
    }
  auto t_elem = [&](int w) {
    Element e(an.num_basis());
    for (int v = 0; v < ns; ++v) e[v] = cd.t[w - ns][v];
    return e;
  };
  auto record = [&](const MPoly& poly, bool pert, int g, int w, int v) {
    for (const auto& [m, c] : poly.terms()) {
      UnknownId u = pert ? an.perturbation_unknown(v, m) : an.correction_unknown(g, w, v, m);
      if (u < 0) {
        cd.outside.push_back(c);
      } else {
        cd.image[u] += c;
      }
    }
  };
  for (int w : an.quotient_indices()) {
    for (int g = 0; g < ng; ++g) {
      // g_L t_w - sum_{w2} K_{g,w->w2}(D, L) t_{w2}
      Element delta = an.act(g, L, t_elem(w));
      const ModuleDescriptor& q = p.quot;
      for (const auto& [j, poly] : q.known_action(p.algebra, g, an.basis()[w].local)) {
        Element kt = an.mul_operator(poly, t_elem(ns + j));
        for (int b = 0; b < ns; ++b) delta[b] -= kt[b];
      }
      for (int v = 0; v < ns; ++v) record(delta[v], false, g, w, v);
    }
    if (an.basis()[w].one_dim && an.has_perturbation()) {
      Element dt = an.apply_d(t_elem(w));
      for (int v = 0; v < ns; ++v) record(dt[v] - cd.t[w - ns][v].scaled(an.basis()[w].beta), true, 0, w, v);
    }
  }
  return cd;
}

std::vector<Assignment> coboundary_generators(const ActionAnsatz& an) {
  CoboundaryData cd = coboundary_data(an);
  LinearSystem tsys;
  tsys.columns = cd.t_unknowns;
  std::sort(tsys.columns.begin(), tsys.columns.end());
  Echelon out_rows;
  for (const auto& f : cd.outside) {
    SparseVec row;
    for (const auto& [id, v] : f.terms()) row.emplace_back(tsys.column_of(id), v);
    out_rows.insert(std::move(row));
  }
  auto kernel = out_rows.nullspace(static_cast<int>(tsys.columns.size()));
  LinearSystem asys;
  asys.columns = an.unknowns();
  std::sort(asys.columns.begin(), asys.columns.end());
  Echelon gens;
  for (const auto& kv : kernel) {
    Assignment tval = to_assignment(kv, tsys.columns);
    Assignment img;
    for (const auto& [u, f] : cd.image) {
      Scalar x = f.eval(tval);
      if (!x.is_zero()) img[u] = x;
    }
    if (!img.empty()) gens.insert(to_sparse(img, asys));
  }
  gens.make_reduced();
  std::vector<Assignment> result;
  for (const auto& r : gens.rows()) result.push_back(to_assignment(r, asys.columns));
  return result;
}

}  // namespace confext
