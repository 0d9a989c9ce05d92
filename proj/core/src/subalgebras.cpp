#include <algorithm>
#include <map>

#include "lieprelim/classify.hpp"
#include "lieprelim/format.hpp"
#include "lieprelim/verify.hpp"

namespace lieprelim {

namespace {

using E = EquivAlgebraElement;
using Row = std::vector<Rational>;
using Matrix = std::vector<Row>;

Expr param(const std::map<std::string, Expr>& p, const std::string& name) {
  auto it = p.find(name);
  return it == p.end() ? sym(name) : it->second;
}

Rational rational(const Expr& e, const char* what) {
  if (!e.is_number()) throw Error(std::string("non-rational coefficient ") + what + ": " + to_string(e));
  return e.value();
}

// Sparse coordinates of an element.
std::map<std::string, Rational> coords(const E& v) {
  std::map<std::string, Rational> c;
  auto put = [&](const std::string& k, const Rational& q) {
    if (q != 0) c[k] += q;
  };
  put("a1", rational(v.a1, "a1"));
  put("a2", rational(v.a2, "a2"));
  put("a3", rational(v.a3, "a3"));
  put("a0", rational(v.a0, "a0"));
  for (const auto& t : terms_of(v.h)) {
    auto [q, m] = split_coefficient(t);
    put("h:" + to_string(m), q);
  }
  for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
  return c;
}

std::map<std::string, Rational> coords(const VectorField& v) {
  std::map<std::string, Rational> c;
  for (const auto& name : v.coordinates()) {
    for (const auto& t : terms_of(v.coefficient(name))) {
      auto [q, m] = split_coefficient(t);
      c[name + ":" + to_string(m)] += q;
    }
  }
  for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
  return c;
}

// Columns are elements, rows are coordinate keys.
Matrix column_matrix(std::vector<std::map<std::string, Rational>> cols) {
  std::vector<std::string> keys;
  for (const auto& c : cols) {
    for (const auto& [k, q] : c) keys.push_back(k);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  Matrix m(keys.size(), Row(cols.size(), 0));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      auto it = cols[j].find(keys[i]);
      if (it != cols[j].end()) m[i][j] = it->second;
    }
  }
  return m;
}

Matrix column_matrix(const Basis& s, const std::vector<std::map<std::string, Rational>>& extra = {}) {
  std::vector<std::map<std::string, Rational>> cols;
  for (const auto& v : s) cols.push_back(coords(v));
  for (const auto& e : extra) cols.push_back(e);
  return column_matrix(std::move(cols));
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& q : m[r]) q *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational k = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= k * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int matrix_rank(Matrix m) {
  if (m.empty()) return 0;
  std::size_t n = m[0].size();
  return static_cast<int>(rref(m, n).size());
}

// Null space basis of m (rows x n).
std::vector<Row> null_space(Matrix m, std::size_t n) {
  auto pivots = rref(m, n);
  std::vector<Row> out;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    Row x(n, 0);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][free];
    out.push_back(std::move(x));
  }
  return out;
}

// Last column is the target.
std::optional<std::vector<Rational>> solve_span(Matrix m, std::size_t n) {
  if (m.empty()) return std::vector<Rational>(n, 0);
  auto pivots = rref(m, n + 1);
  if (!pivots.empty() && pivots.back() == n) return std::nullopt;
  std::vector<Rational> x(n, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][n];
  return x;
}

}  // namespace

int rank(const Basis& s) { return s.empty() ? 0 : matrix_rank(column_matrix(s)); }

std::optional<std::vector<Rational>> in_span(const Basis& s, const EquivAlgebraElement& v) {
  return solve_span(column_matrix(s, {coords(v)}), s.size());
}

std::optional<std::vector<Rational>> in_span(const std::vector<VectorField>& s, const VectorField& v) {
  std::vector<std::map<std::string, Rational>> cols;
  for (const auto& w : s) cols.push_back(coords(w));
  cols.push_back(coords(v));
  return solve_span(column_matrix(std::move(cols)), s.size());
}

bool is_closed(const Basis& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (!in_span(s, bracket(s[i], s[j]))) return false;
    }
  }
  return true;
}

namespace {

// Rows (a1, a3, a0) per element, as columns of a 3 x n matrix.
Matrix outside_g1(const Basis& s) {
  Matrix m(3, Row(s.size(), 0));
  for (std::size_t j = 0; j < s.size(); ++j) {
    m[0][j] = rational(s[j].a1, "a1");
    m[1][j] = rational(s[j].a3, "a3");
    m[2][j] = rational(s[j].a0, "a0");
  }
  return m;
}

// Basis of span(s) ∩ <D^t, G(h)>, assuming s linearly independent.
Basis g1_intersection(const Basis& s) {
  Basis out;
  for (const auto& x : null_space(outside_g1(s), s.size())) {
    E v;
    for (std::size_t j = 0; j < s.size(); ++j) v = v + Expr(x[j]) * s[j];
    out.push_back(v);
  }
  return out;
}

}  // namespace

int m_value(const Basis& s) { return rank(s) - matrix_rank(outside_g1(s)); }

Expr wronskian(const std::vector<Expr>& hs) {
  std::size_t n = hs.size();
  if (n == 0) return 1;
  std::vector<std::vector<Expr>> w(n, std::vector<Expr>(n));
  for (std::size_t j = 0; j < n; ++j) {
    Expr d = hs[j];
    for (std::size_t i = 0; i < n; ++i) {
      w[i][j] = d;
      d = diff(d, "u");
    }
  }
  // Laplace expansion; n is at most 4 here.
  std::function<Expr(std::vector<std::size_t>, std::size_t)> det = [&](std::vector<std::size_t> cols,
                                                                       std::size_t row) -> Expr {
    if (cols.size() == 1) return w[row][cols[0]];
    Expr sum;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      std::vector<std::size_t> rest = cols;
      rest.erase(rest.begin() + static_cast<long>(k));
      Expr term = w[row][cols[k]] * det(rest, row + 1);
      sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
  };
  std::vector<std::size_t> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = j;
  return det(cols, 0);
}

AppropriatenessReport appropriateness(const Basis& s, const std::optional<std::pair<Expr, Expr>>& candidate) {
  AppropriatenessReport r;
  r.dimension = rank(s);
  r.closed = is_closed(s);
  r.contains_Dt = in_span(s, E::Dt()).has_value();
  r.m = m_value(s);
  if (!r.closed) r.failures.push_back("not closed under the commutator");
  if (r.contains_Dt) r.failures.push_back("D^t lies in the subalgebra");
  if (r.m > 2) {
    std::string msg = "m_s = " + std::to_string(r.m) + " > 2";
    Basis inter = g1_intersection(s);
    bool pure = std::all_of(inter.begin(), inter.end(), [](const E& v) { return v.a2.is_zero(); });
    if (pure) {
      std::vector<Expr> hs;
      for (const auto& v : inter) hs.push_back(v.h);
      msg += ", Wronskian " + to_string(wronskian(hs));
    }
    r.failures.push_back(msg);
  }
  if (r.dimension > 4) r.failures.push_back("dimension " + std::to_string(r.dimension) + " > 4");
  for (const auto& v : g1_intersection(s)) {
    if (!v.a2.is_zero()) r.pure_g_intersection = false;
  }
  if (candidate) {
    bool ok = !candidate->second.is_zero() && isc_check(s, candidate->first, candidate->second).passed;
    r.candidate_ok = ok;
    if (!ok) r.failures.push_back("candidate does not solve the invariant surface conditions");
  }
  return r;
}

// ---- canonical lists ----

CanonicalSubalgebra canonical(const std::string& id, const std::map<std::string, Expr>& p) {
  CanonicalSubalgebra s;
  s.list_id = id;
  Expr a = param(p, "a"), b = param(p, "b"), d = param(p, "delta"), dt = param(p, "delta_tilde"),
       dh = param(p, "delta_hat");
  Expr u = sym("u");
  E Dx = E::Dx(), Dt = E::Dt(), dx = E::dx();
  auto G = [](const Expr& h) { return E::G(h); };
  auto use = [&](std::initializer_list<std::pair<const char*, Expr>> used) {
    for (const auto& [k, v] : used) s.parameters[k] = v;
  };
  if (id == "1D-1") {
    use({{"a", a}, {"delta", d}});
    s.basis = {Dx + a * Dt - G(d)};
  } else if (id == "1D-2") {
    use({{"delta_tilde", dt}, {"delta", d}});
    s.basis = {Dt + dt * dx - G(d)};
  } else if (id == "1D-3") {
    use({{"delta", d}});
    s.basis = {dx - G(d)};
  } else if (id == "1D-4") {
    s.basis = {G(1)};
  } else if (id == "2D-1") {
    use({{"delta_hat", dh}, {"delta", d}});
    s.basis = {Dx - G(dh), Dt - G(d)};
  } else if (id == "2D-2") {
    use({{"a", a}});
    s.basis = {Dx + a * Dt + G(u), dx - G(1)};
  } else if (id == "2D-3") {
    use({{"a", a}, {"delta", d}});
    s.basis = {Dx + a * Dt - G(d), dx};
  } else if (id == "2D-4") {
    use({{"delta", d}, {"delta_tilde", dt}});
    s.basis = {Dt - G(d), dx - G(dt)};
  } else if (id == "2D-5") {
    use({{"a", a}, {"b", b}});
    s.basis = {Dx + a * Dt + G(b * u), G(1)};
  } else if (id == "2D-6") {
    use({{"delta", d}, {"b", b}});
    s.basis = {Dt - d * dx + G(b * u), G(1)};
  } else if (id == "2D-7") {
    use({{"delta", d}});
    s.basis = {dx - G(d * u), G(1)};
  } else if (id == "2D-8") {
    s.basis = {G(1), G(u)};
  } else if (id == "HD-1") {
    s.basis = {Dx + G(2), dx, Dt - G(1)};
  } else if (id == "HD-2") {
    use({{"b", b}});
    s.basis = {Dx + 2 * Dt + G(b * u), dx, G(1)};
  } else if (id == "HD-3") {
    use({{"a", a}});
    s.basis = {Dx + a * Dt, G(1), G(u)};
  } else if (id == "HD-4") {
    use({{"delta", d}});
    s.basis = {dx - d * Dt, G(1), G(u)};
  } else if (id == "HD-5") {
    s.basis = {Dx + 2 * Dt, dx, G(1), G(u)};
  } else {
    throw Error("unknown list id " + id);
  }
  return s;
}

bool in_canonical_range(const CanonicalSubalgebra& s) {
  auto binary = [&](const char* k) {
    auto it = s.parameters.find(k);
    if (it == s.parameters.end() || !it->second.is_number()) return true;
    return it->second.is_zero() || it->second.is_one();
  };
  if (!binary("delta") || !binary("delta_tilde")) return false;
  auto d = s.parameters.find("delta");
  if (s.parameters.count("delta_hat") && d != s.parameters.end() && d->second.is_zero()) {
    return binary("delta_hat");
  }
  return true;
}

std::vector<CanonicalSubalgebra> higher_dimensional_list() {
  return {canonical("HD-1"), canonical("HD-2"), canonical("HD-3"), canonical("HD-4"), canonical("HD-5")};
}

}  // namespace lieprelim
