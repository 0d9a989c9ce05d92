#include "lieprelim/classify.hpp"

#include <cctype>
#include <cmath>

#include "lieprelim/format.hpp"
#include "lieprelim/numeric.hpp"
#include "lieprelim/parse.hpp"
#include "shape.hpp"

namespace lieprelim {

namespace {

const Expr& U() {
  static const Expr u = sym("u");
  return u;
}

Expr subst_u(const Expr& e, const Expr& value) {
  Bindings b;
  b.bind("u", value);
  b.allow_derivative_arguments = true;
  return substitute(e, b);
}

bool same(const Expr& a, const Expr& b) { return a == b || is_identically_zero(a - b); }

}  // namespace

EquivAlgebraElement EquivAlgebraElement::Dx() {
  EquivAlgebraElement e;
  e.a1 = 1;
  return e;
}

EquivAlgebraElement EquivAlgebraElement::Dt() {
  EquivAlgebraElement e;
  e.a2 = 1;
  return e;
}

EquivAlgebraElement EquivAlgebraElement::dx() {
  EquivAlgebraElement e;
  e.a3 = 1;
  return e;
}

EquivAlgebraElement EquivAlgebraElement::dt() {
  EquivAlgebraElement e;
  e.a0 = 1;
  return e;
}

EquivAlgebraElement EquivAlgebraElement::G(const Expr& h) {
  EquivAlgebraElement e;
  e.h = h;
  return e;
}

bool EquivAlgebraElement::is_zero() const {
  return a1.is_zero() && a2.is_zero() && a3.is_zero() && a0.is_zero() && h.is_zero();
}

VectorField EquivAlgebraElement::to_field() const {
  Expr t = sym("t"), x = sym("x"), f = sym("f"), g = sym("g");
  Expr hu = diff(h, "u");
  Expr huu = diff(hu, "u");
  Expr scale = 2 * a1 - a2;
  VectorField v({"t", "x", "u", "f", "g"});
  v.set("t", a2 * t + a0);
  v.set("x", a1 * x + a3);
  v.set("u", h);
  v.set("f", scale * f - (hu * f + huu * g));
  v.set("g", scale * g);
  return v;
}

bool operator==(const EquivAlgebraElement& a, const EquivAlgebraElement& b) {
  return a.a1 == b.a1 && a.a2 == b.a2 && a.a3 == b.a3 && a.a0 == b.a0 && a.h == b.h;
}

EquivAlgebraElement operator+(const EquivAlgebraElement& a, const EquivAlgebraElement& b) {
  return {a.a1 + b.a1, a.a2 + b.a2, a.a3 + b.a3, a.a0 + b.a0, a.h + b.h};
}

EquivAlgebraElement operator-(const EquivAlgebraElement& a, const EquivAlgebraElement& b) {
  return {a.a1 - b.a1, a.a2 - b.a2, a.a3 - b.a3, a.a0 - b.a0, a.h - b.h};
}

EquivAlgebraElement operator*(const Expr& k, const EquivAlgebraElement& v) {
  return {k * v.a1, k * v.a2, k * v.a3, k * v.a0, k * v.h};
}

EquivAlgebraElement bracket(const EquivAlgebraElement& v, const EquivAlgebraElement& w) {
  EquivAlgebraElement r;
  r.a3 = v.a3 * w.a1 - w.a3 * v.a1;
  r.a0 = v.a0 * w.a2 - w.a0 * v.a2;
  r.h = v.h * diff(w.h, "u") - w.h * diff(v.h, "u");
  return r;
}

bool equivalent(const EquivAlgebraElement& a, const EquivAlgebraElement& b) {
  return same(a.a1, b.a1) && same(a.a2, b.a2) && same(a.a3, b.a3) && same(a.a0, b.a0) && same(a.h, b.h);
}

// ---- text ----

EquivAlgebraElement parse_element(std::string_view text) {
  std::string rewritten;
  std::vector<Expr> hs;
  for (std::size_t i = 0; i < text.size();) {
    bool boundary = i == 0 || !(std::isalnum(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '_');
    std::size_t j = i + 1;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    bool next_ok = i + 1 >= text.size() || !(std::isalnum(static_cast<unsigned char>(text[i + 1])) || text[i + 1] == '_');
    if (text[i] == 'G' && boundary && next_ok && j < text.size() && text[j] == '(') {
      int depth = 0;
      std::size_t k = j;
      for (; k < text.size(); ++k) {
        if (text[k] == '(') ++depth;
        if (text[k] == ')' && --depth == 0) break;
      }
      if (k >= text.size()) throw ParseError("unbalanced G(", i);
      hs.push_back(parse(text.substr(j + 1, k - j - 1)));
      rewritten += "__G" + std::to_string(hs.size() - 1);
      i = k + 1;
      continue;
    }
    rewritten += text[i];
    ++i;
  }
  Expr e = parse(rewritten);
  std::vector<std::string> gens{"Dx", "Dt", "dx", "dt"};
  for (std::size_t i = 0; i < hs.size(); ++i) gens.push_back("__G" + std::to_string(i));
  std::vector<Expr> coefs;
  Expr rest = e;
  for (const auto& g : gens) {
    Expr c = diff(e, g);
    for (const auto& other : gens) {
      if (contains_symbol(c, other)) throw Error("element is not linear in the generators: " + std::string(text));
    }
    coefs.push_back(c);
    rest -= c * sym(g);
  }
  if (!rest.is_zero()) throw Error("element has a term without generator: " + std::string(text));
  EquivAlgebraElement v;
  v.a1 = coefs[0];
  v.a2 = coefs[1];
  v.a3 = coefs[2];
  v.a0 = coefs[3];
  Expr h;
  for (std::size_t i = 0; i < hs.size(); ++i) h += coefs[4 + i] * hs[i];
  v.h = h;
  return v;
}

namespace {

struct Term {
  bool negative = false;
  std::string body;
};

Term scaled(const Expr& c, const std::string& name, bool latex) {
  Term t;
  Expr k = c;
  if (terms_of(c).size() == 1 && split_coefficient(c).first < 0) {
    t.negative = true;
    k = -c;
  }
  std::string sep = latex ? " " : "*";
  if (k.is_one()) {
    t.body = name;
  } else if (k.kind() == Kind::Sum) {
    t.body = (latex ? "\\left(" + to_latex(k) + "\\right)" : "(" + to_string(k) + ")") + sep + name;
  } else {
    t.body = (latex ? to_latex(k) : to_string(k)) + sep + name;
  }
  return t;
}

std::string render(const EquivAlgebraElement& v, bool latex) {
  std::vector<Term> terms;
  const std::pair<const Expr*, const char*> parts[] = {
      {&v.a1, latex ? "\\mathcal{D}^x" : "Dx"},
      {&v.a2, latex ? "\\mathcal{D}^t" : "Dt"},
      {&v.a3, latex ? "\\partial_x" : "dx"},
      {&v.a0, latex ? "\\partial_t" : "dt"},
  };
  for (const auto& [c, name] : parts) {
    if (!c->is_zero()) terms.push_back(scaled(*c, name, latex));
  }
  if (!v.h.is_zero()) {
    Term t;
    Expr h = v.h;
    if (terms_of(h).size() == 1 && split_coefficient(h).first < 0) {
      t.negative = true;
      h = -h;
    }
    t.body = latex ? "\\mathcal{G}(" + to_latex(h) + ")" : "G(" + to_string(h) + ")";
    terms.push_back(t);
  }
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i == 0) {
      out += (terms[i].negative ? "-" : "") + terms[i].body;
    } else {
      out += (terms[i].negative ? " - " : " + ") + terms[i].body;
    }
  }
  return out;
}

}  // namespace

std::string to_string(const EquivAlgebraElement& v) { return render(v, false); }
std::string to_latex(const EquivAlgebraElement& v) { return render(v, true); }

// ---- adjoint action ----

SeriesResult adjoint_series(const EquivAlgebraElement& v, const EquivAlgebraElement& w, const Expr& eps, int order) {
  SeriesResult r;
  r.value = w;
  r.terms = w.is_zero() ? 0 : 1;
  EquivAlgebraElement term = w;
  Expr weight = 1;
  for (int n = 1; n <= order; ++n) {
    term = Expr(-1) * bracket(v, term);
    weight = weight * eps / Expr(n);
    if (term.is_zero()) {
      r.terminated = true;
      return r;
    }
    r.value = r.value + weight * term;
    ++r.terms;
  }
  r.terminated = bracket(v, term).is_zero();
  return r;
}


std::optional<Expr> flow(const Expr& h, const Expr& eps) {
  detail::HShape s = detail::shape_of(h);
  const Expr& u = U();
  switch (s.kind) {
    case detail::HShape::Zero:
      return u;
    case detail::HShape::Constant:
      return u + s.c * eps;
    case detail::HShape::Affine: {
      Expr shift = s.beta / s.alpha;
      return (u + shift) * exp(s.alpha * eps) - shift;
    }
    case detail::HShape::Exponential:
      return Expr(-1) / s.k * log(exp(-s.k * u) - s.c * s.k * eps);
    case detail::HShape::Power: {
      Expr m = 1 - s.k;
      return pow(pow(u, m) + m * s.c * eps, 1 / m);
    }
    case detail::HShape::Other:
      break;
  }
  return std::nullopt;
}

EquivAlgebraElement adjoint_closed(const EquivAlgebraElement& v, const EquivAlgebraElement& w, const Expr& eps) {
  int nonzero = !v.a1.is_zero() + !v.a2.is_zero() + !v.a3.is_zero() + !v.a0.is_zero() + !v.h.is_zero();
  if (nonzero == 0) return w;
  if (nonzero > 1) throw Error("adjoint_closed: v must be a multiple of a single generator");
  EquivAlgebraElement r = w;
  if (!v.a3.is_zero()) {
    r.a3 = w.a3 - v.a3 * eps * w.a1;
  } else if (!v.a0.is_zero()) {
    r.a0 = w.a0 - v.a0 * eps * w.a2;
  } else if (!v.a1.is_zero()) {
    r.a3 = exp(v.a1 * eps) * w.a3;
  } else if (!v.a2.is_zero()) {
    r.a0 = exp(v.a2 * eps) * w.a0;
  } else {
    auto H = flow(v.h, -eps);
    if (!H) throw OutsideCatalog("flow of " + to_string(v.h) + " is outside the catalog");
    r.h = subst_u(w.h, *H) / diff(*H, "u");
  }
  return r;
}

double adjoint_h_numeric(const Expr& h1, const Expr& h2, double eps, double u, int steps) {
  Expr h1u = diff(h1, "u");
  auto at = [](const Expr& e, double value) { return eval_numeric(e, {{"u", value}}); };
  // (H, J) with H' = h1(H), J' = h1_u(H) J over s from 0 to -eps.
  double H = u, J = 1.0;
  double ds = -eps / steps;
  for (int i = 0; i < steps; ++i) {
    double k1h = at(h1, H), k1j = at(h1u, H) * J;
    double k2h = at(h1, H + ds / 2 * k1h), k2j = at(h1u, H + ds / 2 * k1h) * (J + ds / 2 * k1j);
    double k3h = at(h1, H + ds / 2 * k2h), k3j = at(h1u, H + ds / 2 * k2h) * (J + ds / 2 * k2j);
    double k4h = at(h1, H + ds * k3h), k4j = at(h1u, H + ds * k3h) * (J + ds * k3j);
    H += ds / 6 * (k1h + 2 * k2h + 2 * k3h + k4h);
    J += ds / 6 * (k1j + 2 * k2j + 2 * k3j + k4j);
  }
  if (J == 0.0 || !std::isfinite(H) || !std::isfinite(J)) throw DomainError("numeric flow degenerates");
  return at(h2, H) / J;
}

EquivAlgebraElement push_forward(const EquivTransform& T, const EquivAlgebraElement& v) {
  if (!T.U.inverse) throw Error("push_forward: U has no closed-form inverse");
  const Expr& Ut = *T.U.inverse;
  EquivAlgebraElement r = v;
  r.a0 = T.A1 * v.a0 - T.A0 * v.a2;
  r.a3 = T.B1 * v.a3 - T.B0 * v.a1;
  if (!v.h.is_zero()) r.h = subst_u(v.h, Ut) / diff(Ut, "u");
  return r;
}

}  // namespace lieprelim
