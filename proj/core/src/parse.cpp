#include "lieprelim/parse.hpp"

#include <algorithm>
#include <cctype>

namespace lieprelim {

Expr FunctionSignature::derivative(const std::vector<std::string>& wrt) const {
  std::vector<int> d(args.size(), 0);
  for (const auto& w : wrt) {
    auto it = std::find(args.begin(), args.end(), w);
    if (it == args.end()) return 0;
    ++d[static_cast<std::size_t>(it - args.begin())];
  }
  return Expr::function(name, args).with_derivs(std::move(d));
}

Environment::Environment(std::initializer_list<FunctionSignature> sigs) {
  for (const auto& s : sigs) declare(s);
}

Environment& Environment::declare(FunctionSignature sig) {
  auto it = std::find_if(sigs_.begin(), sigs_.end(), [&](const auto& s) { return s.name == sig.name; });
  if (it != sigs_.end()) {
    *it = std::move(sig);
  } else {
    sigs_.push_back(std::move(sig));
  }
  return *this;
}

const FunctionSignature* Environment::find(std::string_view name) const {
  auto it = std::find_if(sigs_.begin(), sigs_.end(), [&](const auto& s) { return s.name == name; });
  return it == sigs_.end() ? nullptr : &*it;
}

Expr Environment::apply(std::string_view name) const {
  const auto* s = find(name);
  if (!s) throw Error("undeclared function " + std::string(name));
  return s->apply();
}

ParseError::ParseError(const std::string& msg, std::size_t position)
    : Error(msg + " at position " + std::to_string(position)), position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Environment& env) : text_(text), env_(env) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    if (pos_ >= text_.size() || !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      fail("expected identifier");
    }
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(-term());
      } else {
        break;
      }
    }
    return add(std::move(terms));
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Expr d = unary();
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc / d;
      } else {
        break;
      }
    }
    return acc;
  }

  Expr unary() {
    if (accept('-')) return -factor();
    return factor();
  }

  Expr factor() {
    Expr b = base();
    if (accept('^')) {
      std::size_t at = pos_;
      Expr e = unary();
      try {
        return pow(b, e);
      } catch (const DomainError& err) {
        throw ParseError(err.what(), at);
      }
    }
    return b;
  }

  Expr number() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string whole(text_.substr(start, pos_ - start));
    Rational q(whole.empty() ? std::string("0") : whole);
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      std::string frac(text_.substr(fs, pos_ - fs));
      if (!frac.empty()) {
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        q += Rational(mpz_class(frac), den);
      }
    }
    q.canonicalize();
    return q;
  }

  std::vector<Expr> args() {
    std::vector<Expr> out{expr()};
    while (accept(',')) out.push_back(expr());
    expect(')');
    return out;
  }

  Expr call(const FunctionSignature& sig, std::vector<Expr> a, std::size_t at) {
    if (a.size() != sig.args.size()) {
      throw ParseError("function " + sig.name + " expects " + std::to_string(sig.args.size()) + " arguments", at);
    }
    return Expr::function(sig.name, sig.args, std::move(a));
  }

  Expr diff_node() {
    expect('(');
    std::size_t at = pos_;
    std::string name = ident();
    const auto* sig = env_.find(name);
    if (!sig) throw ParseError("undeclared function " + name, at);
    Expr fn = sig->apply();
    if (accept('(')) fn = call(*sig, args(), at);
    std::vector<int> d(sig->args.size(), 0);
    int count = 0;
    while (accept(',')) {
      std::size_t vat = pos_;
      std::string v = ident();
      auto it = std::find(sig->args.begin(), sig->args.end(), v);
      if (it == sig->args.end()) {
        // derivative of the canonical application with respect to a
        // foreign coordinate vanishes; composite arguments need a slot name
        if (!fn.has_canonical_args()) throw ParseError("malformed derivative: " + v + " is not a slot of " + name, vat);
        return (skip_rest_of_diff(), Expr(0));
      }
      ++d[static_cast<std::size_t>(it - sig->args.begin())];
      ++count;
    }
    if (count == 0) fail("malformed derivative: missing differentiation variable");
    expect(')');
    return fn.with_derivs(std::move(d));
  }

  void skip_rest_of_diff() {
    while (accept(',')) ident();
    expect(')');
  }

  Expr base() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    std::size_t at = pos_;
    std::string id = ident();
    if (id == "Diff") return diff_node();
    if (id == "exp" || id == "ln") {
      expect('(');
      Expr a = expr();
      expect(')');
      try {
        return id == "exp" ? exp(a) : log(a);
      } catch (const DomainError& err) {
        throw ParseError(err.what(), at);
      }
    }
    const auto* sig = env_.find(id);
    skip();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      if (!sig) throw ParseError("undeclared function " + id, at);
      ++pos_;
      return call(*sig, args(), at);
    }
    if (sig) return sig->apply();
    return sym(id);
  }

  std::string_view text_;
  const Environment& env_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const Environment& env) { return Parser(text, env).run(); }

}  // namespace lieprelim
