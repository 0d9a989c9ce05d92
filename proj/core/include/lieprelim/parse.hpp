#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lieprelim/expr.hpp"

namespace lieprelim {

// An unknown function and the coordinates it depends on; differentiating
// with respect to anything outside `args` gives zero.
struct FunctionSignature {
  std::string name;
  std::vector<std::string> args;

  Expr apply() const { return Expr::function(name, args); }
  Expr derivative(const std::vector<std::string>& wrt) const;
};

class Environment {
 public:
  Environment() = default;
  Environment(std::initializer_list<FunctionSignature> sigs);

  Environment& declare(FunctionSignature sig);
  const FunctionSignature* find(std::string_view name) const;
  const std::vector<FunctionSignature>& signatures() const { return sigs_; }

  Expr apply(std::string_view name) const;

 private:
  std::vector<FunctionSignature> sigs_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-'? factor
//   factor := base ('^' unary)?
//   base   := NUMBER | IDENT | IDENT '(' args ')'
//           | 'Diff' '(' IDENT ['(' args ')'] (',' IDENT)+ ')' | '(' expr ')'
// Declared function names without argument list denote the function applied
// to its own signature.  Built-ins: exp, ln.
Expr parse(std::string_view text, const Environment& env = {});

}  // namespace lieprelim
