#include "shape.hpp"

#include <optional>

#include "lieprelim/calculus.hpp"

namespace lieprelim::detail {

namespace {

bool free_of_u(const Expr& e) { return !contains_symbol(e, "u"); }

}  // namespace

HShape shape_of(const Expr& h) {
  HShape s;
  if (h.is_zero()) {
    s.kind = HShape::Zero;
    return s;
  }
  Expr u = sym("u");
  Expr d = diff(h, "u");
  if (free_of_u(d)) {
    s.alpha = d;
    s.beta = h - d * u;
    if (!free_of_u(s.beta)) return s;
    if (d.is_zero()) {
      s.kind = HShape::Constant;
      s.c = h;
    } else {
      s.kind = HShape::Affine;
    }
    return s;
  }
  if (terms_of(h).size() != 1) return s;
  auto [coef, mono] = split_coefficient(h);
  std::vector<Expr> rest{Expr::number(coef)};
  std::optional<Expr> special;
  for (const auto& f : factors_of(mono)) {
    if (free_of_u(f)) {
      rest.push_back(f);
    } else if (special) {
      return s;
    } else {
      special = f;
    }
  }
  Expr c = mul(std::move(rest));
  if (special->kind() == Kind::Exp) {
    const Expr& arg = special->operands()[0];
    Expr k = diff(arg, "u");
    if (!free_of_u(k) || !(arg - k * u).is_zero()) return s;
    s.kind = HShape::Exponential;
    s.c = c;
    s.k = k;
    return s;
  }
  if (special->kind() == Kind::Power && special->base() == u && free_of_u(special->exponent())) {
    s.kind = HShape::Power;
    s.c = c;
    s.k = special->exponent();
  }
  return s;
}

}  // namespace lieprelim::detail
