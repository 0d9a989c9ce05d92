#pragma once

#include <random>
#include <vector>

#include "lieprelim/expr.hpp"
#include "lieprelim/parse.hpp"

namespace corpus {

using lieprelim::Expr;

inline lieprelim::Environment environment() {
  return lieprelim::Environment{{"f", {"x", "u"}}, {"g", {"x", "u"}}, {"h", {"u"}}, {"eta", {"t", "x", "u"}}};
}

// Random normalized expressions over t, x, u, a few jet variables, constants
// and unknown functions.  Depth-bounded; exponents stay small.
class Generator {
 public:
  explicit Generator(std::uint64_t seed, bool jets = true) : rng_(seed), jets_(jets) {}

  // Polynomial in u_x, u_xx, u_tx with jet-free coefficients.
  Expr jet_polynomial(int terms = 4) {
    static const char* names[] = {"u_x", "u_xx", "u_tx"};
    bool saved = jets_;
    jets_ = false;
    std::vector<Expr> out;
    for (int i = 0; i < terms; ++i) {
      Expr m = 1;
      for (unsigned k = pick(3); k > 0; --k) m *= lieprelim::sym(names[pick(3)]);
      out.push_back(next(2) * m);
    }
    jets_ = saved;
    return lieprelim::add(std::move(out));
  }

  Expr next(int depth = 3) {
    if (depth == 0) return leaf();
    switch (pick(7)) {
      case 0:
      case 1:
        return next(depth - 1) + next(depth - 1);
      case 2:
      case 3:
        return next(depth - 1) * next(depth - 1);
      case 4:
        return lieprelim::pow(next(depth - 1), Expr(static_cast<int>(pick(3)) + 1));
      case 5:
        return lieprelim::exp(Expr(static_cast<int>(pick(3)) - 1) * leaf());
      default:
        return lieprelim::log(positive_leaf());
    }
  }

 private:
  unsigned pick(unsigned n) { return std::uniform_int_distribution<unsigned>(0, n - 1)(rng_); }

  Expr positive_leaf() {
    static const char* names[] = {"x", "u", "t"};
    return lieprelim::sym(names[pick(3)]);
  }

  Expr leaf() {
    static const char* names[] = {"t", "x", "u", "a", "c", "u_x", "u_xx"};
    switch (pick(5)) {
      case 0:
        return lieprelim::Rational(static_cast<int>(pick(9)) - 4, static_cast<int>(pick(3)) + 1);
      case 1:
        return Expr::function("f", {"x", "u"});
      case 2: {
        std::vector<int> d{static_cast<int>(pick(2)), static_cast<int>(pick(2))};
        return Expr::function("g", {"x", "u"}).with_derivs(d);
      }
      default:
        return lieprelim::sym(names[pick(jets_ ? 7 : 5)]);
    }
  }

  std::mt19937_64 rng_;
  bool jets_;
};

}  // namespace corpus
