#include "confext/multipoly.hpp"

#include <algorithm>
#include <sstream>

namespace confext {

namespace {

const char* kVarNames[kNumVars] = {"D", "L", "M"};

std::string scalar_factor(const Scalar& s) {
  if (s.is_rational() && sgn(s.as_rational()) > 0) return s.str();
  return "(" + s.str() + ")";
}

std::string unknown_name(UnknownId id, const UnknownRegistry* reg) {
  return reg ? reg->name(id) : "u" + std::to_string(id);
}

// Splits at top-level occurrences of any char in seps; keeps a leading sign with its term.
std::vector<std::string> split_top(const std::string& s, const std::string& seps, bool keep_sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    bool sep = depth == 0 && seps.find(ch) != std::string::npos;
    if (sep && keep_sep && (cur.empty() || cur.back() == '*' || cur.back() == '^')) {
      cur.push_back(ch);  // a sign, not a separator
      continue;
    }
    if (sep) {
      out.push_back(cur);
      cur.clear();
      if (keep_sep) cur.push_back(ch);
      continue;
    }
    cur.push_back(ch);
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- LinearForm

LinearForm LinearForm::unknown(UnknownId id, const Scalar& coeff) {
  LinearForm f;
  if (!coeff.is_zero()) f.t_.emplace_back(id, coeff);
  return f;
}

LinearForm& LinearForm::add_scaled(const LinearForm& y, const Scalar& s) {
  if (s.is_zero()) return *this;
  c_ += y.c_ * s;
  if (y.t_.empty()) return *this;
  Terms merged;
  merged.reserve(t_.size() + y.t_.size());
  auto i = t_.begin();
  auto j = y.t_.begin();
  while (i != t_.end() || j != y.t_.end()) {
    if (j == y.t_.end() || (i != t_.end() && i->first < j->first)) {
      merged.push_back(std::move(*i++));
    } else if (i == t_.end() || j->first < i->first) {
      merged.emplace_back(j->first, j->second * s);
      ++j;
    } else {
      Scalar v = i->second + j->second * s;
      if (!v.is_zero()) merged.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  t_ = std::move(merged);
  return *this;
}

LinearForm& LinearForm::operator+=(const LinearForm& y) { return add_scaled(y, Scalar(1)); }
LinearForm& LinearForm::operator-=(const LinearForm& y) { return add_scaled(y, Scalar(-1)); }

LinearForm& LinearForm::scale(const Scalar& s) {
  if (s.is_zero()) {
    c_ = Scalar();
    t_.clear();
    return *this;
  }
  c_ *= s;
  for (auto& [id, v] : t_) v *= s;
  return *this;
}

Scalar LinearForm::eval(const Assignment& a) const {
  Scalar r = c_;
  for (const auto& [id, v] : t_) {
    auto it = a.find(id);
    if (it != a.end()) r += v * it->second;
  }
  return r;
}

std::string LinearForm::str(const UnknownRegistry* reg) const {
  std::vector<std::string> parts;
  if (!c_.is_zero() || t_.empty()) parts.push_back(c_.is_rational() && sgn(c_.as_rational()) >= 0 ? c_.str() : "(" + c_.str() + ")");
  for (const auto& [id, v] : t_) {
    if (v.is_one())
      parts.push_back(unknown_name(id, reg));
    else
      parts.push_back(scalar_factor(v) + "*" + unknown_name(id, reg));
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
  return out;
}

// ---------------------------------------------------------------- MPoly

MPoly::MPoly(const Scalar& c) {
  if (!c.is_zero()) t_.emplace(Mono{}, LinearForm(c));
}

MPoly MPoly::var(Var v) {
  Mono m;
  m.e[v] = 1;
  return term(m, LinearForm(Scalar(1)));
}

MPoly MPoly::term(const Mono& m, const LinearForm& c) {
  MPoly p;
  p.add_term(m, c);
  return p;
}

void MPoly::add_term(const Mono& m, const LinearForm& c) {
  if (c.is_zero()) return;
  auto it = t_.find(m);
  if (it == t_.end()) {
    t_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

bool MPoly::has_unknowns() const {
  for (const auto& [m, c] : t_)
    if (!c.is_constant()) return true;
  return false;
}

int MPoly::degree_in(Var v) const {
  int d = -1;
  for (const auto& [m, c] : t_) d = std::max(d, static_cast<int>(m.e[v]));
  return d;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : t_) d = std::max(d, m.deg());
  return d;
}

LinearForm MPoly::coeff(const Mono& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? LinearForm() : it->second;
}

MPoly& MPoly::operator+=(const MPoly& q) {
  for (const auto& [m, c] : q.t_) add_term(m, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& q) {
  for (const auto& [m, c] : q.t_) {
    LinearForm n = c;
    n.scale(Scalar(-1));
    add_term(m, n);
  }
  return *this;
}

MPoly MPoly::operator-() const { return scaled(Scalar(-1)); }

MPoly MPoly::scaled(const Scalar& s) const {
  MPoly r;
  if (s.is_zero()) return r;
  for (const auto& [m, c] : t_) {
    LinearForm n = c;
    n.scale(s);
    r.t_.emplace(m, std::move(n));
  }
  return r;
}

MPoly operator*(const MPoly& p, const MPoly& q) {
  bool pu = p.has_unknowns(), qu = q.has_unknowns();
  if (pu && qu) throw NonlinearProduct("both factors carry unknowns");
  const MPoly& known = pu ? q : p;
  const MPoly& other = pu ? p : q;
  MPoly r;
  for (const auto& [mk, ck] : known.t_) {
    const Scalar& s = ck.constant();
    for (const auto& [mo, co] : other.t_) {
      Mono m = mk * mo;
      auto it = r.t_.find(m);
      if (it == r.t_.end()) {
        LinearForm n = co;
        n.scale(s);
        r.t_.emplace(m, std::move(n));
      } else {
        it->second.add_scaled(co, s);
        if (it->second.is_zero()) r.t_.erase(it);
      }
    }
  }
  return r;
}

MPoly MPoly::pow(int k) const {
  MPoly r(Scalar(1));
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

MPoly MPoly::substitute(Var v, const MPoly& expr) const {
  if (v < 0 || v >= kNumVars) throw UnknownIndeterminate("variable index " + std::to_string(v));
  if (expr.has_unknowns()) throw UnknownIndeterminate("substituted expression carries unknowns");
  std::vector<MPoly> powers{MPoly(Scalar(1))};
  MPoly r;
  for (const auto& [m, c] : t_) {
    int k = m.e[v];
    while (static_cast<int>(powers.size()) <= k) powers.push_back(powers.back() * expr);
    Mono rest = m;
    rest.e[v] = 0;
    for (const auto& [pm, pc] : powers[k].t_) {
      LinearForm n = c;
      n.scale(pc.constant());
      r.add_term(rest * pm, n);
    }
  }
  return r;
}

MPoly MPoly::evaluate(const Assignment& a) const {
  MPoly r;
  for (const auto& [m, c] : t_) r.add_term(m, LinearForm(c.eval(a)));
  return r;
}

std::string MPoly::str(const UnknownRegistry* reg) const {
  if (t_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : t_) {
    std::string mono;
    for (int v = 0; v < kNumVars; ++v) {
      if (m.e[v] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += kVarNames[v];
      if (m.e[v] > 1) mono += "^" + std::to_string(m.e[v]);
    }
    std::string coef;
    if (c.is_constant()) {
      const Scalar& s = c.constant();
      if (mono.empty())
        coef = scalar_factor(s);
      else if (!s.is_one())
        coef = scalar_factor(s);
    } else {
      coef = c.terms().size() == 1 && c.constant().is_zero() && c.terms()[0].second.is_one()
                 ? c.str(reg)
                 : "(" + c.str(reg) + ")";
    }
    std::string term = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
    out += (first ? "" : " + ") + term;
    first = false;
  }
  return out;
}

MPoly MPoly::parse(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s.push_back(ch);
  if (s.empty()) throw ParseError("empty polynomial");
  MPoly r;
  for (std::string termtxt : split_top(s, "+-", true)) {
    Scalar coef(1);
    if (!termtxt.empty() && (termtxt[0] == '+' || termtxt[0] == '-')) {
      if (termtxt[0] == '-') coef = Scalar(-1);
      termtxt.erase(0, 1);
    }
    if (termtxt.empty()) throw ParseError("dangling sign in '" + text + "'");
    Mono m;
    for (const std::string& f : split_top(termtxt, "*", false)) {
      if (f.size() >= 2 && f.front() == '(' && f.back() == ')') {
        coef *= Scalar::parse(f.substr(1, f.size() - 2));
        continue;
      }
      int v = -1;
      for (int i = 0; i < kNumVars; ++i)
        if (!f.empty() && f[0] == kVarNames[i][0]) v = i;
      if (v >= 0) {
        int e = 1;
        if (f.size() > 1) {
          if (f[1] != '^') throw ParseError("bad factor '" + f + "'");
          e = std::stoi(f.substr(2));
        }
        m.e[v] = static_cast<std::uint8_t>(m.e[v] + e);
      } else {
        coef *= Scalar::parse(f);
      }
    }
    r.add_term(m, LinearForm(coef));
  }
  return r;
}

// ---------------------------------------------------------------- sparse algebra

void sparse_axpy(SparseVec& v, const Scalar& s, const SparseVec& w) {
  if (s.is_zero() || w.empty()) return;
  SparseVec out;
  out.reserve(v.size() + w.size());
  auto i = v.begin();
  auto j = w.begin();
  while (i != v.end() || j != w.end()) {
    if (j == w.end() || (i != v.end() && i->first < j->first)) {
      out.push_back(std::move(*i++));
    } else if (i == v.end() || j->first < i->first) {
      out.emplace_back(j->first, -(j->second * s));
      ++j;
    } else {
      Scalar x = i->second - j->second * s;
      if (!x.is_zero()) out.emplace_back(i->first, std::move(x));
      ++i;
      ++j;
    }
  }
  v = std::move(out);
}

void Echelon::reduce(SparseVec& v) const {
  std::size_t idx = 0;
  while (idx < v.size()) {
    auto it = rows_.find(v[idx].first);
    if (it == rows_.end()) {
      ++idx;
      continue;
    }
    Scalar s = v[idx].second;
    sparse_axpy(v, s, it->second);
  }
}

bool Echelon::insert(SparseVec v) {
  reduce(v);
  if (v.empty()) return false;
  Scalar inv = v.front().second.inverse();
  if (!inv.is_one())
    for (auto& [c, x] : v) x *= inv;
  int p = v.front().first;
  rows_.emplace(p, std::move(v));
  reduced_ = false;
  return true;
}

bool Echelon::contains(SparseVec v) const {
  reduce(v);
  return v.empty();
}

void Echelon::make_reduced() {
  if (reduced_) return;
  // Highest pivot first: each row is cleared against rows already fully reduced.
  for (auto it = rows_.rbegin(); it != rows_.rend(); ++it) {
    SparseVec& row = it->second;
    std::size_t idx = 1;
    while (idx < row.size()) {
      auto pr = rows_.find(row[idx].first);
      if (pr == rows_.end()) {
        ++idx;
        continue;
      }
      Scalar s = row[idx].second;
      sparse_axpy(row, s, pr->second);
    }
  }
  reduced_ = true;
}

std::vector<SparseVec> Echelon::rows() const {
  std::vector<SparseVec> out;
  for (const auto& [p, r] : rows_) out.push_back(r);
  return out;
}

std::vector<int> Echelon::pivots() const {
  std::vector<int> out;
  for (const auto& [p, r] : rows_) out.push_back(p);
  return out;
}

std::vector<SparseVec> Echelon::nullspace(int ncols) {
  make_reduced();
  std::map<int, SparseVec> free_vecs;
  for (int c = 0; c < ncols; ++c)
    if (!rows_.count(c)) free_vecs[c].emplace_back(c, Scalar(1));
  for (const auto& [p, row] : rows_) {
    for (std::size_t k = 1; k < row.size(); ++k) free_vecs[row[k].first].emplace_back(p, -row[k].second);
  }
  Echelon basis;
  for (auto& [c, v] : free_vecs) {
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    basis.insert(std::move(v));
  }
  basis.make_reduced();
  return basis.rows();
}

int LinearSystem::column_of(UnknownId id) const {
  auto it = std::lower_bound(columns.begin(), columns.end(), id);
  if (it == columns.end() || *it != id) return -1;
  return static_cast<int>(it - columns.begin());
}

LinearSystem to_linear_system(const std::vector<MPoly>& identities, const std::vector<UnknownId>& extra_columns) {
  LinearSystem sys;
  std::vector<UnknownId> cols = extra_columns;
  for (const auto& p : identities)
    for (const auto& [m, c] : p.terms())
      for (const auto& [id, v] : c.terms()) cols.push_back(id);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  sys.columns = std::move(cols);
  for (const auto& p : identities) {
    for (const auto& [m, c] : p.terms()) {
      if (!c.constant().is_zero())
        throw NonhomogeneousSystem("constant " + c.constant().str() + " in identity row");
      SparseVec row;
      row.reserve(c.terms().size());
      for (const auto& [id, v] : c.terms()) row.emplace_back(sys.column_of(id), v);
      sys.rows.push_back(std::move(row));
    }
  }
  return sys;
}

std::vector<Assignment> nullspace(const LinearSystem& sys) {
  Echelon e;
  for (const auto& r : sys.rows) e.insert(r);
  std::vector<Assignment> out;
  for (const auto& v : e.nullspace(static_cast<int>(sys.columns.size()))) out.push_back(to_assignment(v, sys.columns));
  return out;
}

SparseVec to_sparse(const Assignment& a, const LinearSystem& sys) {
  SparseVec v;
  for (const auto& [id, x] : a) {
    if (x.is_zero()) continue;
    int c = sys.column_of(id);
    if (c < 0) throw DimensionMismatch("unknown " + std::to_string(id) + " not a column");
    v.emplace_back(c, x);
  }
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return v;
}

Assignment to_assignment(const SparseVec& v, const std::vector<UnknownId>& columns) {
  Assignment a;
  for (const auto& [c, x] : v) a.emplace(columns[c], x);
  return a;
}

}  // namespace confext
