#pragma once

#include <iosfwd>
#include <string>

#include "lieprelim/expr.hpp"

namespace lieprelim {

// Canonical ASCII rendering in the input grammar; parse(to_string(e)) == e.
std::string to_string(const Expr& e);
std::string to_latex(const Expr& e);

std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace lieprelim
