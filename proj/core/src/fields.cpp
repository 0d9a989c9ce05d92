#include "lieprelim/fields.hpp"

#include <algorithm>

#include "lieprelim/format.hpp"

namespace lieprelim {

VectorField::VectorField(std::vector<std::string> coordinates, const std::map<std::string, Expr>& coeffs)
    : coords_(std::move(coordinates)) {
  for (const auto& [c, v] : coeffs) set(c, v);
}

VectorField VectorField::base(const Expr& tau, const Expr& xi, const Expr& eta) {
  VectorField v(base_coordinates());
  v.set("t", tau).set("x", xi).set("u", eta);
  return v;
}

Expr VectorField::coefficient(const std::string& c) const {
  auto it = coeffs_.find(c);
  return it == coeffs_.end() ? Expr(0) : it->second;
}

VectorField& VectorField::set(const std::string& c, const Expr& value) {
  if (std::find(coords_.begin(), coords_.end(), c) == coords_.end()) {
    throw Error("vector field has no coordinate '" + c + "'");
  }
  if (value.is_zero()) {
    coeffs_.erase(c);
  } else {
    coeffs_.insert_or_assign(c, value);
  }
  return *this;
}

bool VectorField::is_zero() const { return coeffs_.empty(); }

VectorField VectorField::extend(const std::vector<std::string>& coordinates) const {
  VectorField out(coordinates);
  for (const auto& [c, v] : coeffs_) out.set(c, v);
  return out;
}

VectorField VectorField::project(const std::vector<std::string>& coordinates) const {
  VectorField out(coordinates);
  for (const auto& [c, v] : coeffs_) {
    if (std::find(coordinates.begin(), coordinates.end(), c) != coordinates.end()) out.set(c, v);
  }
  return out;
}

Expr VectorField::operator()(const Expr& e) const {
  std::vector<Expr> terms;
  for (const auto& [c, v] : coeffs_) {
    Expr d = diff(e, c);
    if (!d.is_zero()) terms.push_back(v * d);
  }
  return add(std::move(terms));
}

VectorField VectorField::map(const std::function<Expr(const Expr&)>& fn) const {
  VectorField out(coords_);
  for (const auto& [c, v] : coeffs_) out.set(c, fn(v));
  return out;
}

namespace {

void check_same(const VectorField& a, const VectorField& b) {
  if (a.coordinates() != b.coordinates()) throw Error("vector fields on different coordinate sets");
}

}  // namespace

bool operator==(const VectorField& a, const VectorField& b) {
  return a.coordinates() == b.coordinates() && a.coeffs_.size() == b.coeffs_.size() &&
         std::equal(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin());
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  check_same(a, b);
  VectorField out = a;
  for (const auto& c : a.coordinates()) out.set(c, a.coefficient(c) + b.coefficient(c));
  return out;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  check_same(a, b);
  VectorField out = a;
  for (const auto& c : a.coordinates()) out.set(c, a.coefficient(c) - b.coefficient(c));
  return out;
}

VectorField operator*(const Expr& k, const VectorField& v) {
  return v.map([&](const Expr& e) { return k * e; });
}

const std::vector<std::string>& base_coordinates() {
  static const std::vector<std::string> c{"t", "x", "u"};
  return c;
}

std::vector<std::string> extended_coordinates(const EquationClass& cls) {
  std::vector<std::string> c = base_coordinates();
  for (const auto& s : cls.arbitrary_elements) c.push_back(s.name);
  return c;
}

namespace {

std::string render(const VectorField& v, bool latex) {
  std::string out;
  for (const auto& c : v.coordinates()) {
    Expr k = v.coefficient(c);
    if (k.is_zero()) continue;
    std::string dir = latex ? "\\partial_{" + to_latex(sym(c)) + "}" : "d" + c;
    auto [q, m] = split_coefficient(k);
    bool negative = k.kind() != Kind::Sum && q < 0;
    Expr mag = negative ? -k : k;
    std::string body;
    if (mag.is_one()) {
      body = dir;
    } else {
      std::string s = latex ? to_latex(mag) : to_string(mag);
      if (mag.kind() == Kind::Sum) s = latex ? "\\left(" + s + "\\right)" : "(" + s + ")";
      body = s + (latex ? " " : "*") + dir;
    }
    if (out.empty()) {
      out = (negative ? "-" : "") + body;
    } else {
      out += (negative ? " - " : " + ") + body;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string to_string(const VectorField& v) { return render(v, false); }
std::string to_latex(const VectorField& v) { return render(v, true); }

VectorField parse_field(std::string_view text, const std::vector<std::string>& coordinates, const Environment& env) {
  Expr e = parse(text, env);
  std::vector<Expr> dirs;
  for (const auto& c : coordinates) dirs.push_back(sym("d" + c));
  VectorField v(coordinates);
  for (const auto& [m, k] : collect(e, dirs)) {
    auto it = std::find(dirs.begin(), dirs.end(), m);
    if (it == dirs.end()) throw Error("vector field '" + std::string(text) + "' is not linear in the directions");
    v.set(coordinates[static_cast<std::size_t>(it - dirs.begin())], k);
  }
  return v;
}

VectorField commutator(const VectorField& v, const VectorField& w) {
  check_same(v, w);
  VectorField out(v.coordinates());
  for (const auto& c : v.coordinates()) out.set(c, v(w.coefficient(c)) - w(v.coefficient(c)));
  return out;
}

Expr realize(const Expr& e, const EquationClass& cls) {
  Bindings b;
  for (const auto& s : cls.arbitrary_elements) b.bind(s.name, s.apply());
  return substitute(e, b);
}

ProlongedField prolong(const VectorField& v, const EquationClass& cls) {
  ProlongedField pf{v, 0, 0, 0, {}};
  Expr tau = realize(v.coefficient("t"), cls);
  Expr xi = realize(v.coefficient("x"), cls);
  Expr eta = realize(v.coefficient("u"), cls);
  Expr ut = sym("u_t"), ux = sym("u_x");
  Expr w = eta - tau * ut - xi * ux;
  JetSpace js;
  pf.eta_t = total_derivative(w, "t", js) + tau * sym("u_tt") + xi * sym("u_tx");
  Expr wx = total_derivative(w, "x", js);
  pf.eta_x = wx + tau * sym("u_tx") + xi * sym("u_xx");
  pf.eta_xx = total_derivative(wx, "x", js) + tau * sym("u_txx") + xi * sym("u_xxx");

  DiffOptions frozen;
  for (const auto& s : cls.arbitrary_elements) frozen.frozen.insert(s.name);
  const auto& coords = v.coordinates();
  for (const auto& aux : cls.auxiliary) {
    if (std::find(coords.begin(), coords.end(), aux.function) == coords.end()) continue;
    const FunctionSignature* sig = cls.element(aux.function);
    Expr phi = realize(v.coefficient(aux.function), cls);
    std::vector<Expr> terms{diff(phi, aux.variable, frozen)};
    for (const auto& z : sig->args) {
      Expr dz = diff(realize(v.coefficient(z), cls), aux.variable, frozen);
      if (!dz.is_zero()) terms.push_back(-dz * sig->derivative({z}));
    }
    pf.auxiliary[aux.function + "_" + aux.variable] = add(std::move(terms));
  }
  return pf;
}

Expr apply(const ProlongedField& pf, const Expr& e, const EquationClass& cls) {
  std::vector<std::string> names;
  collect_symbols(e, names);
  for (const auto& n : names) {
    auto ix = JetSpace::index(n);
    if (ix && ix->first + ix->second > 2) throw Error("apply: " + n + " exceeds the second prolongation");
  }
  // arbitrary elements are independent coordinates only for fields that move them
  const auto& coords = pf.field.coordinates();
  DiffOptions frozen;
  for (const auto& s : cls.arbitrary_elements) {
    if (std::find(coords.begin(), coords.end(), s.name) != coords.end()) frozen.frozen.insert(s.name);
  }
  std::vector<Expr> terms;
  for (const auto& c : base_coordinates()) {
    Expr k = pf.field.coefficient(c);
    if (!k.is_zero()) terms.push_back(realize(k, cls) * diff(e, c, frozen));
  }
  terms.push_back(pf.eta_t * diff(e, "u_t"));
  terms.push_back(pf.eta_x * diff(e, "u_x"));
  terms.push_back(pf.eta_xx * diff(e, "u_xx"));
  for (const auto& s : cls.arbitrary_elements) {
    if (std::find(coords.begin(), coords.end(), s.name) == coords.end()) continue;
    Expr k = pf.field.coefficient(s.name);
    if (!k.is_zero()) terms.push_back(realize(k, cls) * diff(e, s.apply()));
  }
  return add(std::move(terms));
}

Expr PointTransformation::rule(const std::string& c) const {
  auto it = rules.find(c);
  return it == rules.end() ? sym(c) : it->second;
}

Expr PointTransformation::apply_to(const Expr& e) const {
  Bindings b;
  b.allow_derivative_arguments = true;
  for (const auto& [c, r] : rules) b.bind(c, r);
  return substitute(e, b);
}

Expr PointTransformation::pull_back(const Expr& e) const {
  if (!inverse) throw Error("transformation " + label + " has no explicit inverse");
  Bindings b;
  b.allow_derivative_arguments = true;
  for (const auto& [c, r] : *inverse) b.bind(c, r);
  return substitute(e, b);
}

PointTransformation identity_transformation(const std::vector<std::string>& coordinates) {
  PointTransformation p;
  p.label = "id";
  p.coordinates = coordinates;
  p.inverse.emplace();
  return p;
}

PointTransformation compose(const PointTransformation& p, const PointTransformation& q) {
  if (p.coordinates != q.coordinates) throw Error("composing transformations on different coordinates");
  PointTransformation out;
  out.label = p.label + "*" + q.label;
  out.coordinates = p.coordinates;
  for (const auto& c : p.coordinates) {
    Expr r = q.apply_to(p.rule(c));
    if (!(r == sym(c))) out.rules[c] = r;
  }
  if (p.inverse && q.inverse) {
    out.inverse.emplace();
    for (const auto& c : p.coordinates) {
      Expr r = p.pull_back(q.inverse->count(c) ? q.inverse->at(c) : sym(c));
      if (!(r == sym(c))) (*out.inverse)[c] = r;
    }
  }
  out.nondegenerate = p.nondegenerate;
  for (const auto& n : q.nondegenerate) out.nondegenerate.push_back(n);
  return out;
}

PointTransformation invert(const PointTransformation& p) {
  if (!p.inverse) throw Error("transformation " + p.label + " is not invertible in closed form");
  PointTransformation out;
  out.label = p.label + "^-1";
  out.coordinates = p.coordinates;
  out.rules = *p.inverse;
  out.inverse = p.rules;
  for (const auto& n : p.nondegenerate) out.nondegenerate.push_back(p.pull_back(n));
  return out;
}

bool is_identity(const PointTransformation& p) {
  return std::all_of(p.coordinates.begin(), p.coordinates.end(), [&](const auto& c) { return p.rule(c) == sym(c); });
}

VectorField pushforward(const PointTransformation& p, const VectorField& v) {
  if (!p.inverse) throw Error("push-forward needs an invertible transformation");
  VectorField vv = v.extend(p.coordinates);
  VectorField out(p.coordinates);
  for (const auto& c : p.coordinates) out.set(c, p.pull_back(vv(p.rule(c))));
  return out.project(v.coordinates());
}

UFunction UFunction::identity() { return {sym("u"), sym("u")}; }

UFunction UFunction::affine(const Expr& alpha, const Expr& beta) {
  if (alpha.is_zero()) throw DomainError("affine U with zero slope");
  Expr u = sym("u");
  return {alpha * u + beta, (u - beta) / alpha};
}

UFunction UFunction::exponential(const Expr& c) {
  if (c.is_zero()) throw DomainError("exp(c u) with c = 0");
  Expr u = sym("u");
  return {exp(c * u), log(u) / c};
}

UFunction UFunction::power(const Expr& k) {
  if (k.is_zero()) throw DomainError("u^k with k = 0");
  Expr u = sym("u");
  return {lieprelim::pow(u, k), lieprelim::pow(u, 1 / k)};
}

UFunction UFunction::logarithm() {
  Expr u = sym("u");
  return {log(u), exp(u)};
}

UFunction UFunction::general(const Expr& forward) { return {forward, std::nullopt}; }

UFunction UFunction::after(const UFunction& inner) const {
  Bindings b;
  b.bind("u", inner.forward);
  UFunction out{substitute(forward, b), std::nullopt};
  if (inverse && inner.inverse) {
    Bindings bi;
    bi.bind("u", *inverse);
    out.inverse = substitute(*inner.inverse, bi);
  }
  return out;
}

UFunction UFunction::inverted() const {
  if (!inverse) throw Error("U has no closed-form inverse");
  return {*inverse, forward};
}

EquivTransform EquivTransform::translation_t(const Expr& a0) {
  EquivTransform e;
  e.A0 = a0;
  return e;
}

EquivTransform EquivTransform::translation_x(const Expr& b0) {
  EquivTransform e;
  e.B0 = b0;
  return e;
}

EquivTransform EquivTransform::scaling_t(const Expr& a1) {
  EquivTransform e;
  e.A1 = a1;
  return e;
}

EquivTransform EquivTransform::scaling_x(const Expr& b1) {
  EquivTransform e;
  e.B1 = b1;
  return e;
}

EquivTransform EquivTransform::gauge(const UFunction& u) {
  EquivTransform e;
  e.U = u;
  return e;
}

namespace {

std::map<std::string, Expr> equiv_rules(const EquivTransform& e) {
  Expr t = sym("t"), x = sym("x"), f = sym("f"), g = sym("g");
  Expr Uu = diff(e.U.forward, "u");
  Expr Uuu = diff(Uu, "u");
  std::map<std::string, Expr> r;
  r["t"] = e.A1 * t + e.A0;
  r["x"] = e.B1 * x + e.B0;
  r["u"] = e.U.forward;
  r["f"] = e.B1 * e.B1 / (e.A1 * Uu) * (f - Uuu / Uu * g);
  r["g"] = e.B1 * e.B1 / e.A1 * g;
  for (auto it = r.begin(); it != r.end();) {
    it = it->second == sym(it->first) ? r.erase(it) : std::next(it);
  }
  return r;
}

}  // namespace

PointTransformation EquivTransform::point() const {
  PointTransformation p;
  p.label = "G~";
  p.coordinates = {"t", "x", "u", "f", "g"};
  p.rules = equiv_rules(*this);
  if (auto inv = inverted()) p.inverse = equiv_rules(*inv);
  p.nondegenerate = {A1, B1, diff(U.forward, "u")};
  return p;
}

std::optional<EquivTransform> EquivTransform::inverted() const {
  if (!U.inverse) return std::nullopt;
  EquivTransform e;
  e.A1 = 1 / A1;
  e.A0 = -A0 / A1;
  e.B1 = 1 / B1;
  e.B0 = -B0 / B1;
  e.U = U.inverted();
  return e;
}

EquivTransform EquivTransform::after(const EquivTransform& q) const {
  EquivTransform e;
  e.A1 = A1 * q.A1;
  e.A0 = A1 * q.A0 + A0;
  e.B1 = B1 * q.B1;
  e.B0 = B1 * q.B0 + B0;
  e.U = U.after(q.U);
  return e;
}

std::pair<Expr, Expr> transform_class_element(const EquivTransform& p, const Expr& f0, const Expr& g0) {
  Expr Uu = diff(p.U.forward, "u");
  if (p.A1.is_zero() || p.B1.is_zero() || Uu.is_zero()) throw DomainError("degenerate equivalence transformation");
  if (g0.is_zero()) throw DomainError("g must not vanish");
  PointTransformation pt = p.point();
  if (!pt.inverse) throw Error("U has no closed-form inverse");
  Bindings src;
  src.bind("f", f0).bind("g", g0);
  src.allow_derivative_arguments = true;
  Expr fs = substitute(pt.rule("f"), src);
  Expr gs = substitute(pt.rule("g"), src);
  return {pt.pull_back(fs), pt.pull_back(gs)};
}

EquivTransform reflection_t() { return EquivTransform::scaling_t(-1); }
EquivTransform reflection_x() { return EquivTransform::scaling_x(-1); }
EquivTransform reflection_u() { return EquivTransform::gauge(UFunction::affine(-1, 0)); }

}  // namespace lieprelim
