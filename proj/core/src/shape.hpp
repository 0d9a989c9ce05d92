#pragma once

#include "lieprelim/expr.hpp"

namespace lieprelim::detail {

// Recognized forms of a function h(u).
struct HShape {
  enum Kind { Zero, Constant, Affine, Exponential, Power, Other } kind = Other;
  Expr c = 0, k = 0;         // c, c e^{k u}, c u^k
  Expr alpha = 0, beta = 0;  // alpha u + beta
};

HShape shape_of(const Expr& h);

}  // namespace lieprelim::detail
