#include "lieprelim/format.hpp"

#include <cctype>
#include <map>
#include <ostream>
#include <sstream>

namespace lieprelim {

namespace {

std::string rational_str(const Rational& q) { return q.get_str(); }

bool is_tight(const Expr& e) {
  switch (e.kind()) {
    case Kind::Symbol:
    case Kind::Function:
    case Kind::Exp:
    case Kind::Log:
      return true;
    case Kind::Number:
      return e.value() >= 0 && e.value().get_den() == 1;
    default:
      return false;
  }
}

std::string ascii(const Expr& e);

std::string function_ascii(const Expr& e) {
  std::string head = e.name();
  if (!e.has_canonical_args()) {
    head += "(";
    bool first = true;
    for (const auto& a : e.operands()) {
      if (!first) head += ",";
      head += ascii(a);
      first = false;
    }
    head += ")";
  }
  if (e.derivative_order() == 0) return head;
  std::string s = "Diff(" + head;
  for (std::size_t i = 0; i < e.params().size(); ++i) {
    for (int k = 0; k < e.derivs()[i]; ++k) s += "," + e.params()[i];
  }
  return s + ")";
}

std::string power_ascii(const Expr& e) {
  std::string b = ascii(e.base());
  if (!is_tight(e.base())) b = "(" + b + ")";
  const Expr& x = e.exponent();
  std::string xs = ascii(x);
  if (!(x.is_symbol() || (x.is_integer() && x.value() >= 0))) xs = "(" + xs + ")";
  return b + "^" + xs;
}

// Product without sign; returns magnitude rendering.
std::string product_ascii(const Rational& c, const Expr& mono) {
  std::string out;
  Rational a = abs(c);
  auto fs = factors_of(mono);
  if (fs.empty()) return rational_str(a);
  if (a != 1) out = rational_str(a) + "*";
  bool first = true;
  for (const auto& f : fs) {
    if (!first) out += "*";
    out += ascii(f);
    first = false;
  }
  return out;
}

std::string ascii(const Expr& e) {
  switch (e.kind()) {
    case Kind::Number:
      return rational_str(e.value());
    case Kind::Symbol:
      return e.name();
    case Kind::Function:
      return function_ascii(e);
    case Kind::Exp:
      return "exp(" + ascii(e.operands()[0]) + ")";
    case Kind::Log:
      return "ln(" + ascii(e.operands()[0]) + ")";
    case Kind::Power:
      return power_ascii(e);
    case Kind::Product: {
      auto [c, m] = split_coefficient(e);
      return (c < 0 ? "-" : "") + product_ascii(c, m);
    }
    case Kind::Sum: {
      std::string out;
      bool first = true;
      for (const auto& t : e.operands()) {
        auto [c, m] = split_coefficient(t);
        if (first) {
          out += (c < 0 ? "-" : "") + product_ascii(c, m);
        } else {
          out += (c < 0 ? " - " : " + ") + product_ascii(c, m);
        }
        first = false;
      }
      return out;
    }
  }
  return {};
}

const std::map<std::string, std::string>& greek() {
  static const std::map<std::string, std::string> m{
      {"alpha", "\\alpha"}, {"beta", "\\beta"},   {"gamma", "\\gamma"}, {"delta", "\\delta"},
      {"epsilon", "\\varepsilon"}, {"eps", "\\varepsilon"}, {"eta", "\\eta"}, {"theta", "\\theta"},
      {"tau", "\\tau"},     {"xi", "\\xi"},       {"phi", "\\varphi"},  {"mu", "\\mu"},
      {"ftilde", "\\tilde f"}, {"gtilde", "\\tilde g"}, {"deltatilde", "\\tilde\\delta"},
      {"deltahat", "\\hat\\delta"}, {"omega", "\\omega"}};
  return m;
}

std::string latex_name(const std::string& n) {
  auto it = greek().find(n);
  if (it != greek().end()) return it->second;
  auto us = n.find('_');
  if (us != std::string::npos) return latex_name(n.substr(0, us)) + "_{" + n.substr(us + 1) + "}";
  // trailing digits become subscripts: c1 -> c_{1}
  std::size_t k = n.size();
  while (k > 0 && std::isdigit(static_cast<unsigned char>(n[k - 1]))) --k;
  if (k > 0 && k < n.size()) return latex_name(n.substr(0, k)) + "_{" + n.substr(k) + "}";
  return n;
}

std::string latex(const Expr& e);

std::string latex_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

std::string latex_product(const Rational& c, const Expr& mono) {
  Rational a = abs(c);
  auto fs = factors_of(mono);
  if (fs.empty()) return latex_rational(a);
  std::string out = a != 1 ? latex_rational(a) : "";
  for (const auto& f : fs) {
    std::string s = latex(f);
    if (f.kind() == Kind::Sum) s = "\\left(" + s + "\\right)";
    out += out.empty() ? s : " " + s;
  }
  return out;
}

std::string latex(const Expr& e) {
  switch (e.kind()) {
    case Kind::Number:
      return (e.value() < 0 ? "-" : "") + latex_rational(abs(e.value()));
    case Kind::Symbol:
      return latex_name(e.name());
    case Kind::Function: {
      std::string s = latex_name(e.name());
      if (e.derivative_order() > 0) {
        std::string sub;
        for (std::size_t i = 0; i < e.params().size(); ++i) {
          for (int k = 0; k < e.derivs()[i]; ++k) sub += latex_name(e.params()[i]);
        }
        s += "_{" + sub + "}";
      }
      if (!e.has_canonical_args()) {
        s += "\\left(";
        bool first = true;
        for (const auto& a : e.operands()) {
          if (!first) s += ",";
          s += latex(a);
          first = false;
        }
        s += "\\right)";
      }
      return s;
    }
    case Kind::Exp:
      return "e^{" + latex(e.operands()[0]) + "}";
    case Kind::Log:
      return "\\ln\\left(" + latex(e.operands()[0]) + "\\right)";
    case Kind::Power: {
      std::string b = latex(e.base());
      if (!is_tight(e.base()) || e.base().kind() == Kind::Exp) b = "\\left(" + b + "\\right)";
      return b + "^{" + latex(e.exponent()) + "}";
    }
    case Kind::Product: {
      auto [c, m] = split_coefficient(e);
      return (c < 0 ? "-" : "") + latex_product(c, m);
    }
    case Kind::Sum: {
      std::string out;
      bool first = true;
      for (const auto& t : e.operands()) {
        auto [c, m] = split_coefficient(t);
        if (first) {
          out += (c < 0 ? "-" : "") + latex_product(c, m);
        } else {
          out += (c < 0 ? " - " : " + ") + latex_product(c, m);
        }
        first = false;
      }
      return out;
    }
  }
  return {};
}

}  // namespace

std::string to_string(const Expr& e) { return ascii(e); }
std::string to_latex(const Expr& e) { return latex(e); }

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << to_string(e); }

}  // namespace lieprelim
