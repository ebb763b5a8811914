#include "confext/modeoracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <json.hpp>
#include <sstream>

#include "confext/errors.hpp"
#include "confext/extsolver.hpp"
#include "confext/parallel.hpp"

namespace confext {

namespace {

// x (x-1) ... (x-k+1)
Scalar falling(long x, int k) {
  Scalar r(1);
  for (int i = 0; i < k; ++i) r *= Scalar(x - i);
  return r;
}

Scalar factorial(int k) { return falling(k, k); }

Scalar power(const Scalar& x, int k) {
  Scalar r(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

long labs_(long x) { return x < 0 ? -x : x; }

void bump(long* reach, long v) {
  if (reach && labs_(v) > *reach) *reach = labs_(v);
}

}  // namespace

void mode_axpy(std::map<ModeKey, Scalar>& acc, const Scalar& s, const ModeVec& x) {
  if (s.is_zero()) return;
  for (const auto& [k, c] : x) {
    auto it = acc.find(k);
    if (it == acc.end()) {
      acc.emplace(k, s * c);
    } else {
      it->second += s * c;
      if (it->second.is_zero()) acc.erase(it);
    }
  }
}

ModeVec to_mode_vec(const std::map<ModeKey, Scalar>& acc) {
  ModeVec out;
  out.reserve(acc.size());
  for (const auto& [k, c] : acc)
    if (!c.is_zero()) out.emplace_back(k, c);
  return out;
}

std::string mode_vec_str(const ModeVec& x, const std::vector<std::string>& names) {
  if (x.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : x) {
    if (!s.empty()) s += " + ";
    std::string cs = c.str();
    if (cs.find_first_of("+-*") != std::string::npos) cs = "(" + cs + ")";
    s += cs + "*" + names[k.b] + "[" + std::to_string(k.n) + "]";
  }
  return s;
}

std::vector<std::string> ConcreteAction::names() const {
  std::vector<std::string> out;
  for (const auto& b : basis) out.push_back(b.name);
  return out;
}

ConcreteAction concrete_action(const ActionAnsatz& an, const Assignment& a) {
  ConcreteAction out;
  out.algebra = an.problem().algebra;
  out.basis = an.basis();
  const int ng = out.algebra.num_generators(), nb = an.num_basis();
  out.action.assign(ng, std::vector<std::vector<std::pair<int, MPoly>>>(nb));
  for (int g = 0; g < ng; ++g)
    for (int b = 0; b < nb; ++b) {
      Element e = an.base_action(g, b, L);
      for (int c = 0; c < nb; ++c) {
        MPoly p = e[c].evaluate(a);
        if (!p.is_zero()) out.action[g][b].emplace_back(c, p);
      }
    }
  out.d_extra.assign(nb, {});
  for (int b = 0; b < nb; ++b) {
    if (!out.basis[b].one_dim || out.basis[b].in_sub) continue;
    Element e = an.d_on_basis(b);
    for (int c = 0; c < nb; ++c) {
      if (c == b) continue;
      MPoly p = e[c].evaluate(a);
      if (!p.is_zero()) out.d_extra[b].emplace_back(c, p);
    }
  }
  return out;
}

// ---------------------------------------------------------------- ModeAction

ModeAction::ModeAction(ConcreteAction a) : a_(std::move(a)) {
  ng_ = a_.algebra.num_generators();
  const int nb = a_.num_basis();
  terms_.assign(ng_, std::vector<std::vector<std::vector<Term>>>(nb));
  for (int g = 0; g < ng_; ++g)
    for (int b = 0; b < nb; ++b)
      for (const auto& [target, poly] : a_.action[g][b])
        for (const auto& [mono, c] : poly.terms()) {
          if (!c.is_constant()) throw InvalidInput("mode expansion needs an unknown-free action");
          if (mono[M] != 0) throw InvalidInput("action polynomial mentions the second bracket variable");
          int j = mono[L];
          auto& slot = terms_[g][b];
          if (static_cast<int>(slot.size()) <= j) slot.resize(j + 1);
          slot[j].push_back({target, mono[D], c.constant() * factorial(j)});
        }
  for (const auto& bv : a_.basis) beta_.push_back(bv.beta);
  d_extra_ = a_.d_extra;
  build_relations();
}

ModeAction::Key ModeAction::pack(int a, long m, int b, long p) {
  auto u = [](long x) { return static_cast<std::uint64_t>(static_cast<std::uint32_t>(static_cast<std::int32_t>(x))) & 0xFFFFFu; };
  return (static_cast<std::uint64_t>(a) << 52) | (static_cast<std::uint64_t>(b) << 40) | (u(m) << 20) | u(p);
}

bool ModeAction::is_free_symbol(int b, long n) const {
  if (a_.basis[b].one_dim) return n == -1;
  return relations_.count({b, n}) == 0;
}

std::vector<long> ModeAction::free_indices(int b, int P) const {
  std::vector<long> out;
  for (long p = -P; p <= P; ++p)
    if (is_free_symbol(b, p)) out.push_back(p);
  return out;
}

void ModeAction::build_relations() {
  // A one-dimensional quotient with D c = A (beta = 0) forces A[0] = 0.
  for (int b = 0; b < a_.num_basis(); ++b) {
    if (!a_.basis[b].one_dim || a_.basis[b].in_sub || !beta_[b].is_zero() || d_extra_[b].empty()) continue;
    std::map<ModeKey, Scalar> acc;
    for (const auto& [v, poly] : d_extra_[b]) mode_axpy(acc, Scalar(1), poly_mode(v, poly, 0));
    ModeVec r = to_mode_vec(acc);
    if (r.empty()) continue;
    const auto [pivot, pc] = r.back();
    ModeVec value;
    for (const auto& [k, c] : r)
      if (!(k == pivot)) value.emplace_back(k, -c / pc);
    relations_[pivot] = value;
  }
  nf_cache_.clear();
  apply_cache_.clear();
}

ModeVec ModeAction::reduce_relations(std::map<ModeKey, Scalar> acc) const {
  for (const auto& [pivot, value] : relations_) {
    auto it = acc.find(pivot);
    if (it == acc.end()) continue;
    Scalar c = it->second;
    acc.erase(it);
    mode_axpy(acc, c, value);
  }
  return to_mode_vec(acc);
}

const ModeVec& ModeAction::normal_form(int b, long n, long* reach) {
  Key key = pack(0, 0, b, n);
  auto it = nf_cache_.find(key);
  if (it != nf_cache_.end()) {
    bump(reach, it->second.reach);
    return it->second.v;
  }
  Cached out;
  out.reach = labs_(n);
  const BasisVector& bv = a_.basis[b];
  std::map<ModeKey, Scalar> acc;
  if (!bv.one_dim) {
    acc[{b, n}] = Scalar(1);
  } else if (bv.in_sub) {
    // D c = beta c: c[n] = 0 for n >= 0, c[-k-1] = beta^k / k! c[-1]
    if (n <= -1) {
      int k = static_cast<int>(-1 - n);
      Scalar c = power(beta_[b], k) / factorial(k);
      if (!c.is_zero()) acc[{b, -1}] = c;
    }
  } else if (n == -1) {
    acc[{b, -1}] = Scalar(1);
  } else {
    // D c = beta c + A:  beta c[q] + A[q] + q c[q-1] = 0
    auto a_mode = [&](long q) {
      std::map<ModeKey, Scalar> s;
      for (const auto& [v, poly] : d_extra_[b]) mode_axpy(s, Scalar(1), poly_mode(v, poly, q, &out.reach));
      return to_mode_vec(s);
    };
    const Scalar& beta = beta_[b];
    if (beta.is_zero()) {
      // c[n] = -A[n+1] / (n+1)
      mode_axpy(acc, Scalar(-1) / Scalar(n + 1), a_mode(n + 1));
      bump(&out.reach, n + 1);
    } else if (n >= 0) {
      // c[n] = -(A[n] + n c[n-1]) / beta
      Scalar inv = Scalar(-1) / beta;
      mode_axpy(acc, inv, a_mode(n));
      mode_axpy(acc, inv * Scalar(n), normal_form(b, n - 1, &out.reach));
    } else {
      // c[n] = -(beta c[n+1] + A[n+1]) / (n+1)
      Scalar inv = Scalar(-1) / Scalar(n + 1);
      mode_axpy(acc, inv * beta, normal_form(b, n + 1, &out.reach));
      mode_axpy(acc, inv, a_mode(n + 1));
      bump(&out.reach, n + 1);
    }
  }
  out.v = reduce_relations(std::move(acc));
  bump(reach, out.reach);
  return nf_cache_.emplace(key, std::move(out)).first->second.v;
}

ModeVec ModeAction::poly_mode(int b, const MPoly& p_of_d, long n, long* reach) {
  // (D^i x)[n] = (-1)^i n (n-1) ... (n-i+1) x[n-i]
  std::map<ModeKey, Scalar> acc;
  for (const auto& [mono, c] : p_of_d.terms()) {
    int i = mono[D];
    Scalar s = c.constant() * falling(n, i);
    if (i % 2) s = -s;
    if (s.is_zero()) continue;
    bump(reach, n - i);
    mode_axpy(acc, s, normal_form(b, n - i, reach));
  }
  return to_mode_vec(acc);
}

const ModeVec& ModeAction::apply(int g, long m, int b, long p, long* reach) {
  Key key = pack(g + 1, m, b, p);
  auto it = apply_cache_.find(key);
  if (it != apply_cache_.end()) {
    bump(reach, it->second.reach);
    return it->second.v;
  }
  Cached out;
  out.reach = std::max(labs_(m), labs_(p));
  std::map<ModeKey, Scalar> acc;
  if (!is_free_symbol(b, p)) {
    ModeVec nf = normal_form(b, p, &out.reach);
    for (const auto& [k, c] : nf) mode_axpy(acc, c, apply(g, m, k.b, k.n, &out.reach));
  } else {
    // g[m] x[p] = sum_j C(m,j) (g_(j) x)[m+p-j]
    const auto& slots = terms_[g][b];
    for (int j = 0; j < static_cast<int>(slots.size()); ++j) {
      if (slots[j].empty()) continue;
      Scalar mj = falling(m, j) / factorial(j);
      if (mj.is_zero()) continue;
      long q = m + p - j;
      bump(&out.reach, q);
      for (const Term& t : slots[j]) {
        Scalar s = mj * t.coef * falling(q, t.dpow);
        if (t.dpow % 2) s = -s;
        if (s.is_zero()) continue;
        bump(&out.reach, q - t.dpow);
        mode_axpy(acc, s, normal_form(t.target, q - t.dpow, &out.reach));
      }
    }
    auto pt = perturbations_.find({g, m, b, p});
    if (pt != perturbations_.end())
      for (const auto& [k, c] : pt->second) mode_axpy(acc, c, normal_form(k.b, k.n, &out.reach));
  }
  out.v = reduce_relations(std::move(acc));
  bump(reach, out.reach);
  return apply_cache_.emplace(key, std::move(out)).first->second.v;
}

ModeVec ModeAction::apply(int g, long m, const ModeVec& x, long* reach) {
  std::map<ModeKey, Scalar> acc;
  for (const auto& [k, c] : x) mode_axpy(acc, c, apply(g, m, k.b, k.n, reach));
  return to_mode_vec(acc);
}

void ModeAction::perturb(const TableKey& k, const ModeKey& target, const Scalar& delta) {
  auto& slot = perturbations_[k];
  slot[target] += delta;
  apply_cache_.clear();
}

ModeTable ModeAction::table(const ModeWindow& w) {
  ModeTable out;
  for (int g = 0; g < ng_; ++g)
    for (long m = -w.N; m <= w.N; ++m)
      for (int b = 0; b < a_.num_basis(); ++b)
        for (long p : free_indices(b, w.P)) {
          const ModeVec& v = apply(g, m, b, p);
          if (!v.empty()) out[{g, m, b, p}] = v;
        }
  return out;
}

ModeAction expand_modes(const ConcreteAction& a, const ModeWindow& w) {
  ModeAction ma(a);
  ma.table(w);  // warms the cache over the window
  return ma;
}

// ---------------------------------------------------------------- verification

std::string OracleReport::json() const {
  nlohmann::ordered_json j;
  j["window"] = {{"N", window.N}, {"P", window.P}, {"guard", window.guard}};
  j["checked"] = checked;
  j["skipped"] = skipped;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& f : failed)
    arr.push_back({{"gen1", f.gen1}, {"m", f.m}, {"gen2", f.gen2}, {"n", f.n}, {"basis", f.basis}, {"p", f.p},
                   {"lhs", f.lhs}, {"rhs", f.rhs}});
  j["failed"] = arr;
  return j.dump(2);
}

void OracleReport::merge(const OracleReport& o) {
  checked += o.checked;
  skipped += o.skipped;
  failed.insert(failed.end(), o.failed.begin(), o.failed.end());
}

namespace {

struct BracketTerm {
  int gen;
  int k;     // lambda power
  int dpow;  // D power
  Scalar coef;
};

std::vector<std::vector<std::vector<BracketTerm>>> bracket_terms(const ConfAlgebra& alg) {
  const int ng = alg.num_generators();
  std::vector<std::vector<std::vector<BracketTerm>>> out(ng, std::vector<std::vector<BracketTerm>>(ng));
  for (int g = 0; g < ng; ++g)
    for (int h = 0; h < ng; ++h)
      for (const auto& [e, poly] : alg.bracket(g, h))
        for (const auto& [mono, c] : poly.terms()) out[g][h].push_back({e, mono[L], mono[D], c.constant()});
  return out;
}

struct CheckTask {
  int g, h;
  long m;
};

}  // namespace

OracleReport verify_brackets(const ModeAction& ma0, const ModeWindow& w, const VerifyOptions& opt) {
  const ConcreteAction& act = ma0.action();
  const int ng = act.algebra.num_generators(), nb = act.num_basis();
  const auto bt = bracket_terms(act.algebra);
  const long bound = w.bound();
  const auto names = act.names();

  std::vector<CheckTask> tasks;
  for (int g = 0; g < ng; ++g)
    for (int h = g; h < ng; ++h)
      for (long m = -w.N; m <= w.N; ++m) tasks.push_back({g, h, m});

  const int workers = opt.parallel ? std::max(1, std::min<int>(worker_count(), static_cast<int>(tasks.size()))) : 1;
  std::vector<std::unique_ptr<ModeAction>> copies(workers);
  std::vector<OracleReport> parts(tasks.size());

  std::vector<std::vector<long>> free_idx(nb);
  for (int b = 0; b < nb; ++b) free_idx[b] = ma0.free_indices(b, w.P);
  const long span = 2 * bound + 1;

  auto run = [&](int ti, int worker) {
    if (!copies[worker]) copies[worker] = std::make_unique<ModeAction>(ma0);
    ModeAction& ma = *copies[worker];
    const CheckTask& t = tasks[ti];
    OracleReport& rep = parts[ti];
    const TableKey* f = opt.focus;
    // lhs - rhs accumulated densely over in-guard symbols
    std::vector<Scalar> acc(static_cast<std::size_t>(nb * span));
    std::vector<std::size_t> touched;
    std::vector<std::pair<Scalar, const ModeVec*>> rhs_parts;
    auto slot = [&](const ModeKey& k) { return static_cast<std::size_t>(k.b * span + (k.n + bound)); };
    for (long n = -w.N; n <= w.N; ++n)
      for (int b = 0; b < nb; ++b)
        for (long p : free_idx[b]) {
          if (f) {
            bool touches = (t.g == f->g && t.m == f->m) || (t.h == f->g && n == f->m) || (b == f->b && p == f->p);
            if (!touches) continue;
          }
          long reach = std::max({labs_(t.m), labs_(n), labs_(p)});
          const ModeVec& inner1 = ma.apply(t.h, n, b, p, &reach);
          const ModeVec& inner2 = ma.apply(t.g, t.m, b, p, &reach);
          rhs_parts.clear();
          for (const BracketTerm& term : bt[t.g][t.h]) {
            // C(m,k) k! (coefficient of lambda^k) is m^(k falling) times the coefficient
            long q = t.m + n - term.k;
            Scalar s = falling(t.m, term.k) * term.coef * falling(q, term.dpow);
            if (term.dpow % 2) s = -s;
            if (s.is_zero()) continue;
            bump(&reach, q - term.dpow);
            rhs_parts.push_back({std::move(s), &ma.apply(term.gen, q - term.dpow, b, p, &reach)});
          }
          std::vector<const ModeVec*> outer1, outer2;
          outer1.reserve(inner1.size());
          outer2.reserve(inner2.size());
          for (const auto& kc : inner1) outer1.push_back(&ma.apply(t.g, t.m, kc.first.b, kc.first.n, &reach));
          for (const auto& kc : inner2) outer2.push_back(&ma.apply(t.h, n, kc.first.b, kc.first.n, &reach));
          if (reach > bound) {
            ++rep.skipped;
            continue;
          }
          bool inside = true;
          auto in_range = [&](const ModeVec& x) {
            for (const auto& kc : x) inside = inside && labs_(kc.first.n) <= bound;
          };
          for (const ModeVec* x : outer1) in_range(*x);
          for (const ModeVec* x : outer2) in_range(*x);
          for (const auto& rp : rhs_parts) in_range(*rp.second);
          if (!inside) {
            ++rep.skipped;
            continue;
          }
          ++rep.checked;
          auto add = [&](const Scalar& c, const ModeVec& x, bool minus) {
            for (const auto& [k, v] : x) {
              std::size_t i = slot(k);
              if (acc[i].is_zero()) touched.push_back(i);
              if (minus)
                acc[i].sub_mul(c, v);
              else
                acc[i].add_mul(c, v);
            }
          };
          for (std::size_t i = 0; i < inner1.size(); ++i) add(inner1[i].second, *outer1[i], false);
          for (std::size_t i = 0; i < inner2.size(); ++i) add(inner2[i].second, *outer2[i], true);
          for (const auto& [s, x] : rhs_parts) add(s, *x, true);
          bool zero = true;
          for (std::size_t i : touched) {
            if (!acc[i].is_zero()) zero = false;
            acc[i] = Scalar();
          }
          touched.clear();
          if (zero) continue;
          if (opt.failure_count) ++*opt.failure_count;
          if (rep.failed.size() < opt.max_failures) {
            std::map<ModeKey, Scalar> lhs, rhs;
            for (std::size_t i = 0; i < inner1.size(); ++i) mode_axpy(lhs, inner1[i].second, *outer1[i]);
            for (std::size_t i = 0; i < inner2.size(); ++i) mode_axpy(lhs, -inner2[i].second, *outer2[i]);
            for (const auto& [s, x] : rhs_parts) mode_axpy(rhs, s, *x);
            rep.failed.push_back(
                {t.g, t.m, t.h, n, b, p, mode_vec_str(to_mode_vec(lhs), names), mode_vec_str(to_mode_vec(rhs), names)});
          }
          if (opt.failure_count && f) return;  // one failure suffices for a focused run
        }
  };
  if (workers == 1) {
    for (int i = 0; i < static_cast<int>(tasks.size()); ++i) {
      run(i, 0);
      if (opt.focus && opt.failure_count && *opt.failure_count > 0) break;
    }
  } else {
    parallel_for(static_cast<int>(tasks.size()), run);
  }
  OracleReport out;
  out.window = w;
  for (const auto& part : parts) out.merge(part);
  if (out.failed.size() > opt.max_failures) out.failed.resize(opt.max_failures);
  return out;
}

// ---------------------------------------------------------------- realizations

namespace {

// sum c_q t^q e^{-alpha t}
using TFun = std::map<long, Scalar>;

void tf_add(TFun& f, long q, const Scalar& c) {
  if (c.is_zero()) return;
  auto& x = f[q];
  x += c;
  if (x.is_zero()) f.erase(q);
}

TFun tf_deriv(const TFun& f, const Scalar& alpha) {
  TFun out;
  for (const auto& [q, c] : f) {
    tf_add(out, q - 1, c * Scalar(q));
    tf_add(out, q, -alpha * c);
  }
  return out;
}

TFun tf_deriv(TFun f, const Scalar& alpha, int times) {
  for (int i = 0; i < times; ++i) f = tf_deriv(f, alpha);
  return f;
}

// Multiply by c t^r (no exponential factor).
TFun tf_times(const TFun& f, const Scalar& c, long r) {
  TFun out;
  for (const auto& [q, x] : f) tf_add(out, q + r, x * c);
  return out;
}

Scalar tf_res(const TFun& f, const Scalar& alpha) {
  Scalar s;
  for (const auto& [q, c] : f)
    if (q <= -1) {
      int k = static_cast<int>(-1 - q);
      s += c * power(-alpha, k) / factorial(k);
    }
  return s;
}

// r-th derivative of -t^m: coefficient and exponent.
std::pair<Scalar, long> h_deriv(long m, int r) { return {-falling(m, r), m - r}; }

TFun mono(long p) { return TFun{{p, Scalar(1)}}; }

void put(ModeTable& t, const TableKey& k, std::map<ModeKey, Scalar> acc) {
  ModeVec v = to_mode_vec(acc);
  if (!v.empty()) t[k] = std::move(v);
}

void add_fun(std::map<ModeKey, Scalar>& acc, int b, const TFun& f) {
  for (const auto& [q, c] : f) {
    auto& x = acc[{b, q}];
    x += c;
    if (x.is_zero()) acc.erase({b, q});
  }
}

}  // namespace

Realization parse_realization(const std::string& name) {
  if (name == "VirDelta1") return Realization::VirDelta1;
  if (name == "VirDelta2") return Realization::VirDelta2;
  if (name == "ExactForms") return Realization::ExactForms;
  if (name == "AffineKM") return Realization::AffineKM;
  if (name == "GeneralS7") return Realization::GeneralS7;
  throw UnknownRealization("no realization named '" + name + "'");
}

std::string realization_name(Realization r) {
  switch (r) {
    case Realization::VirDelta1: return "VirDelta1";
    case Realization::VirDelta2: return "VirDelta2";
    case Realization::ExactForms: return "ExactForms";
    case Realization::AffineKM: return "AffineKM";
    case Realization::GeneralS7: return "GeneralS7";
  }
  return "?";
}

ExtProblem realization_problem(Realization kind, const RealizationParams& prm) {
  const Scalar& a = prm.alpha;
  DegreeBounds small{3, 3};
  switch (kind) {
    case Realization::VirDelta1:
      return {ConfAlgebra::vir(), ModuleDescriptor::one_dim(-a), ModuleDescriptor::vir(a, Scalar(1)), small};
    case Realization::VirDelta2:
      return {ConfAlgebra::vir(), ModuleDescriptor::one_dim(-a), ModuleDescriptor::vir(a, Scalar(2)), small};
    case Realization::ExactForms:
      return {ConfAlgebra::vir(), ModuleDescriptor::vir(a, Scalar(1)), ModuleDescriptor::one_dim(-a), small};
    case Realization::AffineKM: {
      LieBundle lie = builtin_lie(prm.lie);
      return {ConfAlgebra::cur(lie), ModuleDescriptor::one_dim(-a), ModuleDescriptor::cur(adjoint_rep(lie.algebra)),
              small};
    }
    case Realization::GeneralS7: {
      int deg = std::max(prm.f.degree_in(D), prm.f.degree_in(L));
      DegreeBounds b{std::max(deg, 1), std::max(deg, 1)};
      return {ConfAlgebra::vir(), ModuleDescriptor::vir(a, prm.lower_weight),
              ModuleDescriptor::vir(a, prm.lower_weight + Scalar(prm.weight_gap)), b};
    }
  }
  throw UnknownRealization("unhandled realization");
}

ModeTable realize(Realization kind, const RealizationParams& prm, const ModeWindow& w) {
  const Scalar& alpha = prm.alpha;
  ModeTable t;
  auto vir_part = [&](long m, long p, const Scalar& weight) {
    // (h d/dt)(g dt^(1-weight)) = ((1-weight) h' g + h g') dt^(1-weight), h = -t^m, g = t^p
    TFun g = mono(p);
    auto [h1c, h1e] = h_deriv(m, 1);
    TFun out = tf_times(g, (Scalar(1) - weight) * h1c, h1e);
    TFun hg = tf_times(tf_deriv(g, alpha), Scalar(-1), m);
    for (const auto& [q, c] : hg) tf_add(out, q, c);
    return out;
  };
  switch (kind) {
    case Realization::VirDelta1:
    case Realization::VirDelta2: {
      // basis: c (index 0), u (index 1)
      const bool two = kind == Realization::VirDelta2;
      for (long m = -w.N; m <= w.N; ++m)
        for (long p = -w.P; p <= w.P; ++p) {
          std::map<ModeKey, Scalar> acc;
          add_fun(acc, 1, vir_part(m, p, Scalar(two ? 2 : 1)));
          // Res(f'' g) or Res(f''' g) with f = -t^m
          auto [hc, he] = h_deriv(m, two ? 3 : 2);
          Scalar res = tf_res(tf_times(mono(p), hc, he), alpha);
          if (!res.is_zero()) acc[{0, -1}] += res;
          put(t, {0, m, 1, p}, acc);
        }
      break;
    }
    case Realization::ExactForms: {
      // basis: v (index 0) with v[p] = d(t^p e^{-alpha t}), c (index 1) = t^{-1} e^{-alpha t} dt
      for (long m = -w.N; m <= w.N; ++m) {
        for (long p = -w.P; p <= w.P; ++p) {
          // Lie derivative commutes with d: d(h F')
          std::map<ModeKey, Scalar> acc;
          add_fun(acc, 0, tf_times(tf_deriv(mono(p), alpha), Scalar(-1), m));
          put(t, {0, m, 0, p}, acc);
        }
        // Lie_h(omega) = d(i_h omega) for a top form
        std::map<ModeKey, Scalar> acc;
        add_fun(acc, 0, tf_times(mono(-1), Scalar(-1), m));
        put(t, {0, m, 1, -1}, acc);
      }
      break;
    }
    case Realization::AffineKM: {
      LieBundle lie = builtin_lie(prm.lie);
      const LieAlgebra& g = *lie.algebra;
      Matrix form = invariant_form(g);
      // basis: c (index 0), then the adjoint module
      for (int a = 0; a < g.dim(); ++a)
        for (long m = -w.N; m <= w.N; ++m)
          for (int b = 0; b < g.dim(); ++b)
            for (long p = -w.P; p <= w.P; ++p) {
              std::map<ModeKey, Scalar> acc;
              for (const auto& [e, c] : g.bracket(a, b)) acc[{1 + e, m + p}] += c;
              // (a|b) Res(f' g), f = t^m
              Scalar res = tf_res(tf_times(mono(p), Scalar(m), m - 1), alpha) * form[a][b];
              if (!res.is_zero()) acc[{0, -1}] += res;
              put(t, {a, m, 1 + b, p}, acc);
            }
      break;
    }
    case Realization::GeneralS7: {
      // basis: v (index 0) at the lower weight, u (index 1) at the upper weight
      const Scalar upper = prm.lower_weight + Scalar(prm.weight_gap);
      for (long m = -w.N; m <= w.N; ++m)
        for (long p = -w.P; p <= w.P; ++p) {
          std::map<ModeKey, Scalar> low, up;
          add_fun(low, 0, vir_part(m, p, prm.lower_weight));
          put(t, {0, m, 0, p}, low);
          add_fun(up, 1, vir_part(m, p, upper));
          // - sum a_ik (-1)^i sum_j C(i,j) h^(k+i-j) g^(j)
          for (const auto& [mo, coef] : prm.f.terms()) {
            int i = mo[D], k = mo[L];
            Scalar a_ik = coef.constant();
            if (i % 2) a_ik = -a_ik;
            for (int j = 0; j <= i; ++j) {
              auto [hc, he] = h_deriv(m, k + i - j);
              if (hc.is_zero()) continue;
              Scalar c = -a_ik * falling(i, j) / factorial(j) * hc;
              add_fun(up, 0, tf_times(tf_deriv(mono(p), alpha, j), c, he));
            }
          }
          put(t, {0, m, 1, p}, up);
        }
      break;
    }
  }
  return t;
}

Assignment cochain_assignment(const ActionAnsatz& an, const ExplicitCochain& c) {
  Assignment a;
  for (const auto& [slot, poly] : c.slots) {
    auto [g, w, v] = slot;
    for (const auto& [mono, coef] : poly.terms()) {
      UnknownId id = an.correction_unknown(g, w, v, mono);
      if (id < 0) throw OutOfRange("cochain term outside the degree box");
      a[id] += coef.constant();
    }
  }
  for (const auto& [v, poly] : c.pert)
    for (const auto& [mono, coef] : poly.terms()) {
      UnknownId id = an.perturbation_unknown(v, mono);
      if (id < 0) throw OutOfRange("perturbation term outside the degree box");
      a[id] += coef.constant();
    }
  for (auto it = a.begin(); it != a.end();) it = it->second.is_zero() ? a.erase(it) : std::next(it);
  return a;
}

ExplicitCochain realization_cochain(Realization kind, const RealizationParams& prm) {
  ExplicitCochain c;
  const MPoly lam = MPoly::var(L);
  switch (kind) {
    case Realization::VirDelta1: c.slots[{0, 1, 0}] = -(lam * lam); break;
    case Realization::VirDelta2: c.slots[{0, 1, 0}] = -(lam * lam * lam); break;
    case Realization::ExactForms:
      c.slots[{0, 1, 0}] = MPoly(Scalar(-1));
      c.pert[0] = MPoly(Scalar(-1));
      break;
    case Realization::AffineKM: {
      LieBundle lie = builtin_lie(prm.lie);
      Matrix form = invariant_form(*lie.algebra);
      for (int a = 0; a < lie.algebra->dim(); ++a)
        for (int b = 0; b < lie.algebra->dim(); ++b)
          if (!form[a][b].is_zero()) c.slots[{a, 1 + b, 0}] = lam.scaled(form[a][b]);
      break;
    }
    case Realization::GeneralS7:
      // the construction twists f by the exponential factor: D -> D + alpha
      c.slots[{0, 1, 0}] = prm.f.substitute(D, MPoly::var(D) + MPoly(prm.alpha));
      break;
  }
  return c;
}

std::vector<std::string> table_diff(const ModeTable& x, const ModeTable& y, const std::vector<std::string>& names,
                                    std::size_t limit) {
  std::vector<std::string> out;
  auto line = [&](const TableKey& k, const ModeVec* a, const ModeVec* b) {
    std::ostringstream s;
    s << "g" << k.g << "[" << k.m << "] " << names[k.b] << "[" << k.p << "]: " << (a ? mode_vec_str(*a, names) : "0")
      << " vs " << (b ? mode_vec_str(*b, names) : "0");
    out.push_back(s.str());
  };
  for (const auto& [k, v] : x) {
    if (out.size() >= limit) return out;
    auto it = y.find(k);
    if (it == y.end()) line(k, &v, nullptr);
    else if (it->second != v) line(k, &v, &it->second);
  }
  for (const auto& [k, v] : y) {
    if (out.size() >= limit) return out;
    if (!x.count(k)) line(k, nullptr, &v);
  }
  return out;
}

RealizationCheck check_realization(Realization kind, const RealizationParams& prm, const ModeWindow& w) {
  RealizationCheck out;
  ActionAnsatz an(realization_problem(kind, prm));
  Assignment a = cochain_assignment(an, realization_cochain(kind, prm));
  out.cocycle = true;
  for (const MPoly& id : build_constraints(an))
    if (!id.evaluate(a).is_zero()) out.cocycle = false;
  if (out.cocycle) out.nontrivial = !triviality_certificate(an, a).trivial;
  ModeAction ma(concrete_action(an, a));
  ModeTable mine = ma.table(w);
  ModeTable theirs;
  for (const auto& [key, v] : realize(kind, prm, w)) {
    if (!ma.is_free_symbol(key.b, key.p)) continue;
    std::map<ModeKey, Scalar> acc;
    for (const auto& [s, c] : v) mode_axpy(acc, c, ma.normal_form(s.b, s.n));
    ModeVec mv = to_mode_vec(acc);
    if (!mv.empty()) theirs[key] = std::move(mv);
  }
  out.entries = mine.size();
  out.diffs = table_diff(mine, theirs, ma.action().names());
  return out;
}

// ---------------------------------------------------------------- mutations

MutationReport mutation_suite(const ConcreteAction& a, const ModeWindow& w, int max_mutants) {
  ModeAction base(a);
  struct Candidate {
    TableKey key;
    ModeKey target;
  };
  std::vector<Candidate> all;
  for (int g = 0; g < a.algebra.num_generators(); ++g)
    for (long m = -w.N; m <= w.N; ++m)
      for (int b = 0; b < a.num_basis(); ++b) {
        if (a.basis[b].in_sub) continue;
        for (long p : base.free_indices(b, w.P))
          for (const auto& [k, c] : base.apply(g, m, b, p))
            if (a.basis[k.b].in_sub) all.push_back({{g, m, b, p}, k});
      }
  std::vector<Candidate> picked;
  if (static_cast<int>(all.size()) <= max_mutants) {
    picked = all;
  } else {
    for (int i = 0; i < max_mutants; ++i) picked.push_back(all[all.size() * i / max_mutants]);
  }
  MutationReport rep;
  rep.mutants = static_cast<int>(picked.size());
  std::vector<char> caught(picked.size(), 0);
  const auto names = a.names();
  parallel_for(static_cast<int>(picked.size()), [&](int i, int) {
    ModeAction mutant(a);
    mutant.perturb(picked[i].key, picked[i].target, Scalar(1));
    long failures = 0;
    VerifyOptions opt;
    opt.parallel = false;
    opt.focus = &picked[i].key;
    opt.failure_count = &failures;
    opt.max_failures = 1;
    verify_brackets(mutant, w, opt);
    caught[i] = failures > 0;
  });
  for (std::size_t i = 0; i < picked.size(); ++i) {
    if (caught[i]) {
      ++rep.caught;
    } else {
      const auto& c = picked[i];
      rep.escaped.push_back("g" + std::to_string(c.key.g) + "[" + std::to_string(c.key.m) + "] " + names[c.key.b] + "[" +
                            std::to_string(c.key.p) + "] -> " + names[c.target.b] + "[" + std::to_string(c.target.n) + "]");
    }
  }
  return rep;
}

}  // namespace confext
