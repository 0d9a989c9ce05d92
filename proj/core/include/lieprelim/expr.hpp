#pragma once

// Immutable symbolic expressions over exact rationals.
//
// Every Expr is kept in normal form by the smart constructors below: sums are
// flattened and like terms merged, products are flattened with their rational
// coefficient in front and factors sorted, positive integer powers of sums are
// expanded.  Two expressions are equal as functions on the chart x>0 whenever
// their normal forms coincide; the converse is not guaranteed (no rational
// function cancellation), which is what the numeric oracle in numeric.hpp is
// for.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace lieprelim {

using Rational = mpq_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

enum class Kind : std::uint8_t {
  Number,
  Symbol,
  Function,
  Exp,
  Log,
  Power,
  Product,
  Sum,
};

struct Node;

class Expr {
 public:
  Expr();
  Expr(int v);  // NOLINT(google-explicit-constructor)
  Expr(long v);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& v);  // NOLINT(google-explicit-constructor)

  static Expr number(const Rational& v);
  static Expr symbol(std::string name);
  // Application of an unknown function `name` with signature `params`,
  // evaluated at `args`, differentiated `derivs[i]` times in slot i.
  static Expr function(std::string name, std::vector<std::string> params,
                       std::vector<Expr> args, std::vector<int> derivs = {});
  // f applied to its own parameters, e.g. f(x,u).
  static Expr function(std::string name, std::vector<std::string> params);

  Kind kind() const;
  bool is_number() const { return kind() == Kind::Number; }
  bool is_symbol() const { return kind() == Kind::Symbol; }
  bool is_function() const { return kind() == Kind::Function; }
  bool is_zero() const;
  bool is_one() const;
  bool is_integer() const;

  const Rational& value() const;
  const std::string& name() const;
  std::span<const Expr> operands() const;

  // Function nodes.
  const std::vector<std::string>& params() const;
  const std::vector<int>& derivs() const;
  int derivative_order() const;
  // True when every argument is the symbol named by the matching parameter.
  bool has_canonical_args() const;
  // Same function, same arguments, no derivatives.
  Expr underived() const;
  Expr with_derivs(std::vector<int> derivs) const;

  // Power nodes.
  const Expr& base() const;
  const Expr& exponent() const;

  std::size_t hash() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

  const Node* node() const { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  friend struct Build;
  std::shared_ptr<const Node> node_;
};

struct Node {
  Kind kind;
  Rational num;
  std::string name;
  std::vector<std::string> params;
  std::vector<int> derivs;
  std::vector<Expr> ops;
  std::size_t hash = 0;
};

int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

template <class V>
using ExprMap = std::map<Expr, V, ExprLess>;

// Normalizing constructors.
Expr add(std::vector<Expr> terms);
Expr mul(std::vector<Expr> factors);
Expr pow(const Expr& base, const Expr& exponent);
Expr exp(const Expr& arg);
Expr log(const Expr& arg);

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);

inline Expr sym(std::string n) { return Expr::symbol(std::move(n)); }

// Splits a term into rational coefficient and the remaining monomial.
std::pair<Rational, Expr> split_coefficient(const Expr& term);
// Terms of a sum (a single-element list for non-sums, empty for zero).
std::vector<Expr> terms_of(const Expr& e);
// Factors of a product without the numeric coefficient.
std::vector<Expr> factors_of(const Expr& e);
// (base, exponent) view of a factor; non-powers have exponent 1.
std::pair<Expr, Expr> as_power(const Expr& factor);

// Structural queries.
bool contains(const Expr& e, const Expr& atom);
bool contains_symbol(const Expr& e, const std::string& name);
bool contains_function(const Expr& e, const std::string& name);
void collect_symbols(const Expr& e, std::vector<std::string>& out);
void collect_functions(const Expr& e, std::vector<Expr>& out);
// Bottom-up rebuild: `f` is applied to each node after its children are
// rebuilt; returning std::nullopt keeps the rebuilt node.
Expr transform(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& f);

}  // namespace lieprelim

template <>
struct std::hash<lieprelim::Expr> {
  std::size_t operator()(const lieprelim::Expr& e) const noexcept { return e.hash(); }
};
