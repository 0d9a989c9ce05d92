#include "lieprelim/jet.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lieprelim/calculus.hpp"

namespace lieprelim {

std::string JetSpace::name(int nt, int nx) {
  if (nt == 0 && nx == 0) return "u";
  return "u_" + std::string(static_cast<std::size_t>(nt), 't') + std::string(static_cast<std::size_t>(nx), 'x');
}

std::optional<std::pair<int, int>> JetSpace::index(std::string_view s) {
  if (s == "u") return std::pair{0, 0};
  if (s.size() < 3 || s.substr(0, 2) != "u_") return std::nullopt;
  int nt = 0, nx = 0;
  for (char c : s.substr(2)) {
    if (c == 't' && nx == 0) {
      ++nt;
    } else if (c == 'x') {
      ++nx;
    } else {
      return std::nullopt;
    }
  }
  return std::pair{nt, nx};
}

Expr JetSpace::variable(int nt, int nx) const {
  if (nt < 0 || nx < 0 || nt + nx > order) throw Error("jet variable outside truncation order");
  return sym(name(nt, nx));
}

std::vector<Expr> JetSpace::derivatives() const {
  std::vector<Expr> out;
  for (int k = 1; k <= order; ++k) {
    for (int nt = k; nt >= 0; --nt) out.push_back(sym(name(nt, k - nt)));
  }
  return out;
}

bool JetSpace::contains(const Expr& v) const {
  if (!v.is_symbol()) return false;
  auto ix = index(v.name());
  return ix && ix->first + ix->second <= order;
}

Expr total_derivative(const Expr& e, std::string_view wrt, const JetSpace& js) {
  if (wrt != "t" && wrt != "x") throw Error("total derivative only with respect to t or x");
  std::vector<std::string> names;
  collect_symbols(e, names);
  std::vector<Expr> terms{diff(e, std::string(wrt))};
  for (const auto& n : names) {
    auto ix = JetSpace::index(n);
    if (!ix) continue;
    Expr d = diff(e, n);
    if (d.is_zero()) continue;
    int nt = ix->first + (wrt == "t" ? 1 : 0);
    int nx = ix->second + (wrt == "x" ? 1 : 0);
    if (nt + nx > js.order) throw Error("total derivative exceeds jet truncation order");
    terms.push_back(d * sym(JetSpace::name(nt, nx)));
  }
  return add(std::move(terms));
}

Environment EquationClass::environment() const {
  Environment env;
  for (const auto& s : arbitrary_elements) env.declare(s);
  return env;
}

const FunctionSignature* EquationClass::element(std::string_view n) const {
  auto it = std::find_if(arbitrary_elements.begin(), arbitrary_elements.end(),
                         [&](const auto& s) { return s.name == n; });
  return it == arbitrary_elements.end() ? nullptr : &*it;
}

Expr EquationClass::parse(std::string_view text) const { return lieprelim::parse(text, environment()); }

namespace {

AuxiliaryCondition parse_auxiliary(const std::string& s, const EquationClass& cls) {
  auto us = s.find('_');
  if (us == std::string::npos || us + 1 >= s.size()) throw Error("malformed auxiliary condition '" + s + "'");
  AuxiliaryCondition a{s.substr(0, us), s.substr(us + 1)};
  if (!cls.element(a.function)) throw Error("auxiliary condition on undeclared element '" + a.function + "'");
  return a;
}

}  // namespace

EquationClass parse_class(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("class declaration: ") + e.what());
  }
  if (!j.is_object()) throw Error("class declaration must be a JSON object");
  EquationClass cls;
  try {
    cls.name = j.value("name", "");
    cls.solved_for = j.value("solved_for", "u_t");
    if (!JetSpace::index(cls.solved_for)) throw Error("solved_for must be a jet variable");
    if (j.contains("arbitrary_elements")) {
      for (auto& [n, args] : j.at("arbitrary_elements").items()) {
        cls.arbitrary_elements.push_back({n, args.get<std::vector<std::string>>()});
      }
    }
    if (!j.contains("rhs")) throw Error("class declaration lacks 'rhs'");
    cls.rhs = cls.parse(j.at("rhs").get<std::string>());
    cls.delta = sym(cls.solved_for) - cls.rhs;
    if (j.contains("delta")) {
      Expr d = cls.parse(j.at("delta").get<std::string>());
      if (!(d - cls.delta).is_zero()) throw Error("delta is not solved_for - rhs");
    }
    for (const auto& a : j.value("auxiliary", std::vector<std::string>{})) {
      cls.auxiliary.push_back(parse_auxiliary(a, cls));
    }
    for (const auto& n : j.value("nonvanishing", std::vector<std::string>{})) cls.nonvanishing.push_back(cls.parse(n));
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("class declaration: ") + e.what());
  }
  return cls;
}

EquationClass load_class(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_class(ss.str());
}

EquationClass generalized_diffusion_class() {
  EquationClass cls;
  cls.name = "generalized diffusion";
  cls.arbitrary_elements = {{"f", {"x", "u"}}, {"g", {"x", "u"}}};
  cls.rhs = cls.parse("f*u_x^2 + g*u_xx");
  cls.delta = sym("u_t") - cls.rhs;
  cls.auxiliary = {{"f", "t"}, {"g", "t"}};
  cls.nonvanishing = {cls.parse("g")};
  return cls;
}

EquationClass linear_class() {
  EquationClass cls;
  cls.name = "linear evolution";
  cls.arbitrary_elements = {{"A", {"t", "x"}}, {"B", {"t", "x"}}, {"C", {"t", "x"}}};
  cls.rhs = cls.parse("A*u_xx + B*u_x + C*u");
  cls.delta = sym("u_t") - cls.rhs;
  cls.auxiliary = {{"A", "u"}, {"B", "u"}, {"C", "u"}};
  cls.nonvanishing = {cls.parse("A")};
  return cls;
}

EquationClass specialize(const EquationClass& cls, const std::map<std::string, Expr>& values,
                         const std::vector<FunctionSignature>& parameters) {
  Bindings b;
  for (const auto& [n, v] : values) {
    const FunctionSignature* s = cls.element(n);
    if (!s) throw Error("specialize: '" + n + "' is not an arbitrary element");
    b.bind_function(n, s->args, v);
  }
  EquationClass out;
  out.name = cls.name;
  out.solved_for = cls.solved_for;
  out.rhs = substitute(cls.rhs, b);
  out.delta = sym(out.solved_for) - out.rhs;
  out.arbitrary_elements = parameters;
  for (const auto& s : cls.arbitrary_elements) {
    if (!values.count(s.name)) out.arbitrary_elements.push_back(s);
  }
  for (const auto& a : cls.auxiliary) {
    if (!values.count(a.function)) out.auxiliary.push_back(a);
  }
  for (const auto& n : cls.nonvanishing) out.nonvanishing.push_back(substitute(n, b));
  return out;
}

Expr on_manifold(const Expr& e, const EquationClass& cls) {
  Bindings b;
  b.bind(cls.solved_for, cls.rhs);
  return substitute(e, b);
}

const DeterminingEquation* DeterminingSystem::find(const Expr& monomial) const {
  auto it = std::find_if(equations.begin(), equations.end(), [&](const auto& q) { return q.monomial == monomial; });
  return it == equations.end() ? nullptr : &*it;
}

Expr DeterminingSystem::reconstruct() const {
  std::vector<Expr> terms;
  for (const auto& q : equations) terms.push_back(q.monomial * q.lhs);
  return add(std::move(terms));
}

namespace {

struct MonomialKey {
  int t_derivs = 0;
  int degree = 0;
  int max_order = 0;
};

MonomialKey key_of(const Expr& m) {
  MonomialKey k;
  for (const auto& f : factors_of(m)) {
    auto [b, x] = as_power(f);
    int p = static_cast<int>(x.value().get_num().get_si());
    auto ix = JetSpace::index(b.name());
    k.t_derivs += p * ix->first;
    k.degree += p;
    k.max_order = std::max(k.max_order, ix->first + ix->second);
  }
  return k;
}

}  // namespace

DeterminingSystem split_determining(const Expr& e, const JetSpace& js) {
  std::vector<std::string> names;
  collect_symbols(e, names);
  for (const auto& n : names) {
    auto ix = JetSpace::index(n);
    if (ix && ix->first + ix->second > js.order) throw Error("jet variable " + n + " beyond truncation order");
  }
  DeterminingSystem sys;
  for (auto& [m, c] : collect(e, js.derivatives())) sys.equations.push_back({m, c});
  std::stable_sort(sys.equations.begin(), sys.equations.end(), [](const auto& a, const auto& b) {
    MonomialKey ka = key_of(a.monomial), kb = key_of(b.monomial);
    if (ka.t_derivs != kb.t_derivs) return ka.t_derivs > kb.t_derivs;
    if (ka.degree != kb.degree) return ka.degree > kb.degree;
    return ka.max_order > kb.max_order;
  });
  return sys;
}

}  // namespace lieprelim
