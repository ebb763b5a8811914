#include "confext/liealg.hpp"

#include <algorithm>
#include <json.hpp>

namespace confext {

using nlohmann::json;

Matrix zero_matrix(int rows, int cols) { return Matrix(rows, std::vector<Scalar>(cols)); }

Matrix matmul(const Matrix& a, const Matrix& b) {
  int n = static_cast<int>(a.size()), k = static_cast<int>(b.size());
  int m = k ? static_cast<int>(b[0].size()) : 0;
  Matrix r = zero_matrix(n, m);
  for (int i = 0; i < n; ++i)
    for (int t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (int j = 0; j < m; ++j)
        if (!b[t][j].is_zero()) r[i][j] += a[i][t] * b[t][j];
    }
  return r;
}

Matrix matsub(const Matrix& a, const Matrix& b) {
  Matrix r = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) r[i][j] -= b[i][j];
  return r;
}

Scalar trace(const Matrix& a) {
  Scalar t;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

int matrix_rank(const Matrix& a) {
  Echelon e;
  for (const auto& row : a) {
    SparseVec v;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (!row[j].is_zero()) v.emplace_back(static_cast<int>(j), row[j]);
    e.insert(std::move(v));
  }
  return e.rank();
}

// ---------------------------------------------------------------- LieAlgebra

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> basis, const std::vector<Entry>& brackets)
    : name_(std::move(name)), basis_(std::move(basis)) {
  int n = dim();
  if (n <= 0) throw InvalidInput("Lie algebra '" + name_ + "' has empty basis");
  std::map<std::tuple<int, int, int>, Scalar> given;
  for (const auto& e : brackets) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= n || e.j >= n || e.k >= n)
      throw InvalidInput("bracket index out of range (" + std::to_string(e.i) + "," + std::to_string(e.j) + "," +
                         std::to_string(e.k) + ")");
    if (e.value.is_zero()) continue;
    given[{e.i, e.j, e.k}] += e.value;
  }
  std::map<std::tuple<int, int, int>, Scalar> full = given;
  for (const auto& [key, v] : given) {
    auto [i, j, k] = key;
    if (i == j) throw InvalidInput("antisymmetry violated: [x" + std::to_string(i) + ",x" + std::to_string(i) + "] != 0");
    auto it = given.find({j, i, k});
    if (it != given.end()) {
      if (it->second != -v)
        throw InvalidInput("antisymmetry violated at (" + std::to_string(i) + "," + std::to_string(j) + "," +
                           std::to_string(k) + ")");
    } else {
      full[{j, i, k}] = -v;
    }
  }
  c_.assign(n, std::vector<SparseVec>(n));
  for (const auto& [key, v] : full) {
    auto [i, j, k] = key;
    if (!v.is_zero()) c_[i][j].emplace_back(k, v);
  }
  // Jacobi: [x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0
  auto br = [&](int a, const SparseVec& v) {
    SparseVec out;
    for (const auto& [b, s] : v) sparse_axpy(out, -s, c_[a][b]);
    return out;  // [x_a, v]
  };
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      for (int z = y + 1; z < n; ++z) {
        SparseVec acc = br(x, c_[y][z]);
        SparseVec t2 = br(y, c_[z][x]);
        SparseVec t3 = br(z, c_[x][y]);
        sparse_axpy(acc, Scalar(-1), t2);
        sparse_axpy(acc, Scalar(-1), t3);
        if (!acc.empty())
          throw InvalidInput("Jacobi identity fails for basis triple (" + std::to_string(x) + "," + std::to_string(y) +
                             "," + std::to_string(z) + ")");
      }
}

int LieAlgebra::index_of(const std::string& basis_name) const {
  for (int i = 0; i < dim(); ++i)
    if (basis_[i] == basis_name) return i;
  throw InvalidInput("no basis element '" + basis_name + "' in " + name_);
}

Scalar LieAlgebra::structure_constant(int i, int j, int k) const {
  for (const auto& [kk, v] : c_[i][j])
    if (kk == k) return v;
  return Scalar();
}

Matrix LieAlgebra::ad(int i) const {
  Matrix m = zero_matrix(dim(), dim());
  for (int j = 0; j < dim(); ++j)
    for (const auto& [k, v] : c_[i][j]) m[k][j] = v;
  return m;
}

bool LieAlgebra::is_perfect() const {
  Echelon e;
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j) e.insert(c_[i][j]);
  return e.rank() == dim();
}

// ---------------------------------------------------------------- Representation

Representation::Representation(std::shared_ptr<const LieAlgebra> alg, std::string name, std::vector<Matrix> mats)
    : alg_(std::move(alg)), name_(std::move(name)), mats_(std::move(mats)) {
  const LieAlgebra& g = *alg_;
  if (static_cast<int>(mats_.size()) != g.dim())
    throw InvalidInput("representation '" + name_ + "' needs one matrix per basis element");
  dim_ = mats_.empty() ? 0 : static_cast<int>(mats_[0].size());
  if (dim_ <= 0) throw InvalidInput("representation '" + name_ + "' has dimension 0");
  for (const auto& m : mats_) {
    if (static_cast<int>(m.size()) != dim_) throw InvalidInput("representation '" + name_ + "': ragged matrices");
    for (const auto& row : m)
      if (static_cast<int>(row.size()) != dim_) throw InvalidInput("representation '" + name_ + "': non-square matrix");
  }
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j) {
      Matrix lhs = matsub(matmul(mats_[i], mats_[j]), matmul(mats_[j], mats_[i]));
      for (const auto& [k, v] : g.bracket(i, j))
        for (int r = 0; r < dim_; ++r)
          for (int c = 0; c < dim_; ++c) lhs[r][c] -= v * mats_[k][r][c];
      for (const auto& row : lhs)
        for (const auto& x : row)
          if (!x.is_zero())
            throw InvalidInput("representation '" + name_ + "' violates the bracket for (" + g.basis()[i] + "," +
                               g.basis()[j] + ")");
    }
}

bool Representation::is_trivial() const {
  for (const auto& m : mats_)
    for (const auto& row : m)
      for (const auto& x : row)
        if (!x.is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------- built-ins

LiePtr sl2() {
  static const LiePtr g = std::make_shared<LieAlgebra>(
      "sl2", std::vector<std::string>{"e", "h", "f"},
      std::vector<LieAlgebra::Entry>{{0, 2, 1, Scalar(1)}, {1, 0, 0, Scalar(2)}, {1, 2, 2, Scalar(-2)}});
  return g;
}

namespace {

// Traceless 3x3 basis matrices for sl3, in the order documented in the header.
std::vector<Matrix> sl3_matrices() {
  auto unit = [](int r, int c) {
    Matrix m = zero_matrix(3, 3);
    m[r][c] = Scalar(1);
    return m;
  };
  Matrix h1 = zero_matrix(3, 3), h2 = zero_matrix(3, 3);
  h1[0][0] = 1;
  h1[1][1] = -1;
  h2[1][1] = 1;
  h2[2][2] = -1;
  return {unit(0, 1), unit(0, 2), unit(1, 2), unit(1, 0), unit(2, 0), unit(2, 1), h1, h2};
}

// Coordinates of a traceless matrix in the basis above.
SparseVec sl3_coords(const Matrix& m) {
  const std::pair<int, int> offdiag[6] = {{0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 0}, {2, 1}};
  SparseVec v;
  for (int i = 0; i < 6; ++i) {
    const Scalar& x = m[offdiag[i].first][offdiag[i].second];
    if (!x.is_zero()) v.emplace_back(i, x);
  }
  // diag(a, b, c) = a*H1 + (a+b)*H2
  Scalar a = m[0][0], ab = m[0][0] + m[1][1];
  if (!a.is_zero()) v.emplace_back(6, a);
  if (!ab.is_zero()) v.emplace_back(7, ab);
  return v;
}

}  // namespace

LiePtr sl3() {
  static const LiePtr g = [] {
    auto mats = sl3_matrices();
    std::vector<LieAlgebra::Entry> entries;
    for (int i = 0; i < 8; ++i)
      for (int j = i + 1; j < 8; ++j) {
        Matrix br = matsub(matmul(mats[i], mats[j]), matmul(mats[j], mats[i]));
        for (const auto& [k, v] : sl3_coords(br)) entries.push_back({i, j, k, v});
      }
    return std::make_shared<LieAlgebra>(
        "sl3", std::vector<std::string>{"E12", "E13", "E23", "E21", "E31", "E32", "H1", "H2"}, entries);
  }();
  return g;
}

RepPtr sl2_irrep(int m) {
  if (m < 0) throw OutOfRange("sl2 irrep highest weight must be >= 0");
  int n = m + 1;
  Matrix e = zero_matrix(n, n), h = zero_matrix(n, n), f = zero_matrix(n, n);
  for (int j = 0; j < n; ++j) {
    h[j][j] = Scalar(m - 2 * j);
    if (j > 0) e[j - 1][j] = Scalar(static_cast<long>(j) * (m - j + 1));
    if (j < m) f[j + 1][j] = Scalar(1);
  }
  return std::make_shared<Representation>(sl2(), "V" + std::to_string(m), std::vector<Matrix>{e, h, f});
}

RepPtr adjoint_rep(LiePtr alg) {
  std::vector<Matrix> mats;
  for (int i = 0; i < alg->dim(); ++i) mats.push_back(alg->ad(i));
  return std::make_shared<Representation>(alg, "adj", std::move(mats));
}

RepPtr trivial_rep(LiePtr alg) {
  std::vector<Matrix> mats(alg->dim(), zero_matrix(1, 1));
  return std::make_shared<Representation>(alg, "triv", std::move(mats));
}

RepPtr sl3_fundamental() {
  static const RepPtr r = std::make_shared<Representation>(sl3(), "fund", sl3_matrices());
  return r;
}

// ---------------------------------------------------------------- intertwiners

std::vector<Matrix> intertwiner_space(const Representation& U, const Representation& V) {
  const LieAlgebra& g = U.algebra();
  if (&g != &V.algebra() && g.name() != V.algebra().name())
    throw DimensionMismatch("representations over different algebras");
  int dg = g.dim(), du = U.dim(), dv = V.dim();
  int cols_per_row = dg * du;
  auto col = [&](int v, int y, int u) { return v * cols_per_row + y * du + u; };
  Echelon e;
  for (int x = 0; x < dg; ++x)
    for (int y = 0; y < dg; ++y)
      for (int u = 0; u < du; ++u)
        for (int v = 0; v < dv; ++v) {
          // rho(x) T(y(x)u) - T([x,y](x)u) - T(y (x) pi(x)u) = 0, component v
          std::map<int, Scalar> row;
          for (int w = 0; w < dv; ++w)
            if (!V.entry(x, v, w).is_zero()) row[col(w, y, u)] += V.entry(x, v, w);
          for (const auto& [k, c] : g.bracket(x, y)) row[col(v, k, u)] -= c;
          for (int u2 = 0; u2 < du; ++u2)
            if (!U.entry(x, u2, u).is_zero()) row[col(v, y, u2)] -= U.entry(x, u2, u);
          SparseVec sv;
          for (auto& [c, s] : row)
            if (!s.is_zero()) sv.emplace_back(c, s);
          e.insert(std::move(sv));
        }
  std::vector<Matrix> out;
  for (const auto& vec : e.nullspace(dv * cols_per_row)) {
    Matrix t = zero_matrix(dv, cols_per_row);
    for (const auto& [c, s] : vec) t[c / cols_per_row][c % cols_per_row] = s;
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Matrix> module_homs(const Representation& U, const Representation& V) {
  const LieAlgebra& g = U.algebra();
  if (&g != &V.algebra() && g.name() != V.algebra().name())
    throw DimensionMismatch("representations over different algebras");
  int du = U.dim(), dv = V.dim();
  Echelon e;
  for (int x = 0; x < g.dim(); ++x)
    for (int u = 0; u < du; ++u)
      for (int v = 0; v < dv; ++v) {
        // rho(x) T u - T pi(x) u = 0
        std::map<int, Scalar> row;
        for (int w = 0; w < dv; ++w)
          if (!V.entry(x, v, w).is_zero()) row[w * du + u] += V.entry(x, v, w);
        for (int u2 = 0; u2 < du; ++u2)
          if (!U.entry(x, u2, u).is_zero()) row[v * du + u2] -= U.entry(x, u2, u);
        SparseVec sv;
        for (auto& [c, s] : row)
          if (!s.is_zero()) sv.emplace_back(c, s);
        e.insert(std::move(sv));
      }
  std::vector<Matrix> out;
  for (const auto& vec : e.nullspace(dv * du)) {
    Matrix t = zero_matrix(dv, du);
    for (const auto& [c, s] : vec) t[c / du][c % du] = s;
    out.push_back(std::move(t));
  }
  return out;
}

Matrix invariant_form(const LieAlgebra& alg) {
  int n = alg.dim();
  std::vector<Matrix> ads;
  for (int i = 0; i < n; ++i) ads.push_back(alg.ad(i));
  Matrix k = zero_matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) k[i][j] = k[j][i] = trace(matmul(ads[i], ads[j]));
  if (matrix_rank(k) < n) throw DegenerateForm("Killing form of " + alg.name() + " is singular");
  return k;
}

// ---------------------------------------------------------------- files

namespace {

Scalar json_scalar(const json& v) {
  if (v.is_string()) return Scalar::parse(v.get<std::string>());
  if (v.is_number_integer()) return Scalar(v.get<long>());
  throw InvalidInput("scalar must be a string or an integer: " + v.dump());
}

json scalar_json(const Scalar& s) { return s.str(); }

}  // namespace

LieBundle load_lie_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed structure-constants file: ") + e.what());
  }
  try {
    std::string name = j.value("name", "g");
    auto basis = j.at("basis").get<std::vector<std::string>>();
    if (j.contains("dim") && j.at("dim").get<int>() != static_cast<int>(basis.size()))
      throw InvalidInput("dim does not match the basis length");
    std::vector<LieAlgebra::Entry> entries;
    for (const auto& b : j.value("brackets", json::array())) {
      if (!b.is_array() || b.size() != 4) throw InvalidInput("bracket entry must be [i,j,k,value]: " + b.dump());
      entries.push_back({b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), json_scalar(b[3])});
    }
    LieBundle out;
    out.algebra = std::make_shared<LieAlgebra>(name, basis, entries);
    if (j.contains("reps")) {
      for (const auto& [rname, rj] : j.at("reps").items()) {
        int dim = rj.at("dim").get<int>();
        std::vector<Matrix> mats(basis.size(), zero_matrix(dim, dim));
        for (const auto& [bname, mj] : rj.at("matrices").items()) {
          int x = out.algebra->index_of(bname);
          if (mj.size() != static_cast<std::size_t>(dim)) throw InvalidInput("rep '" + rname + "': wrong row count");
          for (int r = 0; r < dim; ++r) {
            if (mj[r].size() != static_cast<std::size_t>(dim))
              throw InvalidInput("rep '" + rname + "': wrong column count");
            for (int c = 0; c < dim; ++c) mats[x][r][c] = json_scalar(mj[r][c]);
          }
        }
        out.reps[rname] = std::make_shared<Representation>(out.algebra, rname, std::move(mats));
      }
    }
    return out;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("structure-constants file: ") + e.what());
  }
}

std::string dump_lie_json(const LieBundle& bundle) {
  const LieAlgebra& g = *bundle.algebra;
  json j;
  j["name"] = g.name();
  j["dim"] = g.dim();
  j["basis"] = g.basis();
  json br = json::array();
  for (int a = 0; a < g.dim(); ++a)
    for (int b = a + 1; b < g.dim(); ++b)
      for (const auto& [k, v] : g.bracket(a, b)) br.push_back({a, b, k, scalar_json(v)});
  j["brackets"] = br;
  json reps = json::object();
  for (const auto& [name, rep] : bundle.reps) {
    json mats = json::object();
    for (int x = 0; x < g.dim(); ++x) {
      json m = json::array();
      for (const auto& row : rep->matrix(x)) {
        json r = json::array();
        for (const auto& s : row) r.push_back(scalar_json(s));
        m.push_back(r);
      }
      mats[g.basis()[x]] = m;
    }
    reps[name] = {{"dim", rep->dim()}, {"matrices", mats}};
  }
  j["reps"] = reps;
  return j.dump(2);
}

LieBundle builtin_lie(const std::string& name) {
  LieBundle b;
  if (name == "sl2") {
    b.algebra = sl2();
    b.reps["adj"] = adjoint_rep(b.algebra);
    b.reps["triv"] = trivial_rep(b.algebra);
    return b;
  }
  if (name == "sl3") {
    b.algebra = sl3();
    b.reps["adj"] = adjoint_rep(b.algebra);
    b.reps["triv"] = trivial_rep(b.algebra);
    b.reps["fund"] = sl3_fundamental();
    return b;
  }
  throw ParseError("unknown built-in Lie algebra '" + name + "'");
}

RepPtr lookup_rep(const LieBundle& bundle, const std::string& rep_name) {
  auto it = bundle.reps.find(rep_name);
  if (it != bundle.reps.end()) return it->second;
  if (bundle.algebra->name() == "sl2" && rep_name.size() >= 2 && rep_name[0] == 'V') {
    try {
      return sl2_irrep(std::stoi(rep_name.substr(1)));
    } catch (const std::invalid_argument&) {
    }
  }
  throw ParseError("unknown representation '" + rep_name + "' for " + bundle.algebra->name());
}

}  // namespace confext
