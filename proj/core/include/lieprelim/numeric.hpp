#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lieprelim/calculus.hpp"
#include "lieprelim/expr.hpp"

namespace lieprelim {

using Assignment = std::map<std::string, double>;
// Concrete closed forms for unknown functions, in terms of their parameters.
using FunctionTable = std::map<std::string, FunctionBinding>;

// Floating-point value of `e`.  Throws DomainError on division by zero or on
// ln / non-integer power of a nonpositive number.
double eval_numeric(const Expr& e, const Assignment& at, const FunctionTable& fns = {});

inline constexpr double kOracleTolerance = 1e-9;

struct OracleOptions {
  int samples = 10;
  double tolerance = kOracleTolerance;
  // Symbols are sampled from (lo, hi), which keeps every chart positive.
  double lo = 0.3;
  double hi = 2.0;
  std::uint64_t seed = 20120101;
};

struct OracleResult {
  bool zero = true;
  double max_abs = 0.0;
  int evaluated = 0;
};

// Random closed forms for every unknown function occurring in `e`, drawn
// from smooth, positive-valued building blocks.
FunctionTable random_function_table(const Expr& e, std::mt19937_64& rng);

// Samples all free symbols and unknown functions of `e` and checks |e| below
// tolerance.  Points where evaluation hits a domain error are redrawn.
OracleResult numerically_zero(const Expr& e, const OracleOptions& opts = {});

// Exact normal-form test, falling back to the oracle.
bool is_identically_zero(const Expr& e, const OracleOptions& opts = {});

}  // namespace lieprelim
