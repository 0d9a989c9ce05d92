#include <array>
#include <cmath>

#include "lieprelim/classify.hpp"
#include "lieprelim/format.hpp"
#include "lieprelim/numeric.hpp"
#include "shape.hpp"

namespace lieprelim {

namespace {

using E = EquivAlgebraElement;

Rational q(const Expr& e) {
  if (!e.is_number()) throw Error("normalization needs rational coefficients, got " + to_string(e));
  return e.value();
}

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

std::string str(const Rational& r) { return to_string(Expr(r)); }

// U~ with h(U~)/U~_u = sign for a nonzero catalog h, or nullopt.  Constants
// reach `target` directly.
struct Gauge {
  UFunction Ut;
  int sign = 1;
};

std::optional<Gauge> catalog_gauge(const Expr& h, int target) {
  detail::HShape s = detail::shape_of(h);
  auto num = [](const Expr& e) { return e.is_number(); };
  switch (s.kind) {
    case detail::HShape::Constant:
      if (!num(s.c)) return std::nullopt;
      return Gauge{UFunction::affine(s.c * target, 0), target};
    case detail::HShape::Affine:
      if (!num(s.alpha) || !num(s.beta)) return std::nullopt;
      return Gauge{UFunction::affine(1, -s.beta / s.alpha).after(UFunction::exponential(s.alpha)), 1};
    case detail::HShape::Exponential: {
      if (!num(s.c) || !num(s.k)) return std::nullopt;
      Rational ck = s.c.value() * s.k.value();
      Expr scale = Expr(abs(ck));
      UFunction Ut = UFunction::affine(-1 / s.k, 0).after(UFunction::logarithm()).after(UFunction::affine(scale, 0));
      return Gauge{Ut, ck > 0 ? -1 : 1};
    }
    case detail::HShape::Power: {
      if (!num(s.c) || !num(s.k)) return std::nullopt;
      Rational m = 1 - s.k.value();
      Rational mc = m * s.c.value();
      UFunction Ut = UFunction::power(Expr(1 / m)).after(UFunction::affine(Expr(abs(mc)), 0));
      return Gauge{Ut, mc > 0 ? 1 : -1};
    }
    default:
      return std::nullopt;
  }
}

// Integrates U' = h(U), U(0) = 1 on [-2, 2]; returns the Richardson error
// estimate, or nullopt when h vanishes or changes sign along the path.
std::optional<double> numeric_flow_check(const Expr& h) {
  auto run = [&](double step) -> std::optional<std::pair<double, double>> {
    auto f = [&](double y) { return eval_numeric(h, {{"u", y}}); };
    std::pair<double, double> ends;
    for (int dir : {-1, 1}) {
      double y = 1.0;
      double sign = f(y) > 0 ? 1 : -1;
      int n = static_cast<int>(std::lround(2.0 / step));
      double ds = dir * step;
      for (int i = 0; i < n; ++i) {
        double k1 = f(y), k2 = f(y + ds / 2 * k1), k3 = f(y + ds / 2 * k2), k4 = f(y + ds * k3);
        y += ds / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
        double hy = f(y);
        if (!std::isfinite(y) || std::fabs(y) > 1e8 || !(hy * sign > 0)) return std::nullopt;
      }
      (dir < 0 ? ends.first : ends.second) = y;
    }
    return ends;
  };
  try {
    auto fine = run(1e-3);
    auto coarse = run(2e-3);
    if (!fine || !coarse) return std::nullopt;
    double err = std::max(std::fabs(fine->first - coarse->first), std::fabs(fine->second - coarse->second)) / 15.0;
    if (err > 1e-6) return std::nullopt;
    return err;
  } catch (const Error&) {
    return std::nullopt;
  }
}

class Normalizer {
 public:
  explicit Normalizer(Basis input) : cur_(std::move(input)) {}

  Basis& cur() { return cur_; }
  NormalizationWitness& witness() { return w_; }

  void trace(std::string s) { w_.trace.push_back(std::move(s)); }

  void basis(std::vector<std::vector<Rational>> m, std::string label) {
    bool identity = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m[i].size(); ++j) identity = identity && m[i][j] == (i == j ? 1 : 0);
    }
    if (identity) return;
    WitnessStep s;
    s.kind = WitnessStep::Kind::Basis;
    s.label = std::move(label);
    s.matrix = std::move(m);
    record(std::move(s));
  }

  void scale(std::size_t i, const Rational& k, const std::string& label) {
    std::vector<std::vector<Rational>> m(cur_.size(), std::vector<Rational>(cur_.size(), 0));
    for (std::size_t j = 0; j < cur_.size(); ++j) m[j][j] = 1;
    m[i][i] = k;
    basis(std::move(m), label);
  }

  // v_i += k v_j
  void combine(std::size_t i, std::size_t j, const Rational& k, const std::string& label) {
    if (k == 0) return;
    std::vector<std::vector<Rational>> m(cur_.size(), std::vector<Rational>(cur_.size(), 0));
    for (std::size_t r = 0; r < cur_.size(); ++r) m[r][r] = 1;
    m[i][j] = k;
    basis(std::move(m), label);
  }

  void push(const EquivTransform& T, std::string label) {
    WitnessStep s;
    s.kind = WitnessStep::Kind::Push;
    s.label = std::move(label);
    s.transform = T;
    record(std::move(s));
  }

  void translate_x(const Rational& b0) {
    if (b0 != 0) push(EquivTransform::translation_x(Expr(b0)), "T^x_*(" + str(b0) + ")");
  }

  void scale_x(const Rational& b1) {
    if (b1 != 1) push(EquivTransform::scaling_x(Expr(b1)), "D^x_*(" + str(b1) + ")");
  }

  // Sets h of cur_[i] to the constant `target` (+1 or -1).
  void gauge(std::size_t i, int target, bool allow_numeric = false) {
    Expr h = cur_[i].h;
    if (h == Expr(target)) return;
    if (h == Expr(-target)) {
      push(reflection_u(), "I_u");
      return;
    }
    auto g = catalog_gauge(h, target);
    if (!g) {
      if (!allow_numeric) throw OutsideCatalog("h = " + to_string(h) + " is outside the gauge catalog");
      auto err = numeric_flow_check(h);
      if (!err) throw Error("numeric flow of h = " + to_string(h) + " fails to invert on [-2, 2]");
      WitnessStep s;
      s.kind = WitnessStep::Kind::NumericGauge;
      s.label = "G_*(U), U~' = h(U~) integrated numerically";
      s.target = target;
      s.error = *err;
      record(std::move(s));
      return;
    }
    push(EquivTransform::gauge(g->Ut.inverted()), "G_*(U), U~ = " + to_string(g->Ut.forward));
    if (!(cur_[i].h == Expr(g->sign)) && !is_identically_zero(cur_[i].h - Expr(g->sign))) {
      throw Error("gauge failed to normalize h = " + to_string(h));
    }
    cur_[i].h = g->sign;
    if (g->sign != target) push(reflection_u(), "I_u");
  }

  Normalization finish(const CanonicalSubalgebra& target) {
    const Basis& want = target.basis;
    bool ok = want.size() == cur_.size();
    for (std::size_t i = 0; ok && i < want.size(); ++i) ok = equivalent(cur_[i], want[i]);
    if (!ok) {
      std::string got;
      for (const auto& v : cur_) got += " [" + to_string(v) + "]";
      throw Error("normalization did not reach " + target.list_id + ":" + got);
    }
    w_.target = target;
    return {target, w_};
  }

 private:
  void record(WitnessStep s) {
    cur_ = apply_step(s, cur_);
    w_.chain.push_back(std::move(s));
  }

  Basis cur_;
  NormalizationWitness w_;
};

Expr delta_of(const E& v) { return v.h.is_zero() ? Expr(0) : Expr(1); }

E essential(E v) {
  v.a0 = 0;
  return v;
}

Rational det2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) { return a * d - b * c; }

std::vector<std::vector<Rational>> inverse2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) {
  Rational det = det2(a, b, c, d);
  return {{d / det, -b / det}, {-c / det, a / det}};
}

}  // namespace

Basis apply_step(const WitnessStep& step, const Basis& basis) {
  switch (step.kind) {
    case WitnessStep::Kind::Basis: {
      Basis out;
      for (const auto& row : step.matrix) {
        E v;
        for (std::size_t j = 0; j < row.size(); ++j) {
          if (row[j] != 0) v = v + Expr(row[j]) * basis[j];
        }
        out.push_back(v);
      }
      return out;
    }
    case WitnessStep::Kind::Push: {
      Basis out;
      for (const auto& v : basis) out.push_back(push_forward(step.transform, v));
      return out;
    }
    case WitnessStep::Kind::NumericGauge: {
      if (basis.size() != 1) throw Error("numeric gauge applies to a single element");
      Basis out = basis;
      out[0].h = step.target;
      return out;
    }
  }
  return basis;
}

bool replay(const NormalizationWitness& w, const Basis& input) {
  Basis cur;
  for (const auto& v : input) cur.push_back(essential(v));
  for (const auto& s : w.chain) cur = apply_step(s, cur);
  if (cur.size() != w.target.basis.size()) return false;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    if (!equivalent(cur[i], w.target.basis[i])) return false;
  }
  return true;
}

Normalization normalize_1d(const EquivAlgebraElement& input) {
  E v = essential(input);
  if (v.is_zero()) throw Error("normalize_1d: zero element");
  Normalizer n({v});
  if (!input.a0.is_zero()) n.trace("a0 dropped: d_t spans an ideal");
  Rational a1 = q(v.a1), a2 = q(v.a2), a3 = q(v.a3);
  bool has_h = !v.h.is_zero();
  if (a1 != 0) {
    n.trace("a1 != 0");
    n.scale(0, 1 / a1, "scale by " + str(1 / a1));
    if (has_h) n.gauge(0, -1, true);
    n.translate_x(a3 / a1);
    return n.finish(canonical("1D-1", {{"a", Expr(a2 / a1)}, {"delta", delta_of(v)}}));
  }
  if (a2 != 0) {
    n.trace("a1 = 0, a2 != 0");
    n.scale(0, 1 / a2, "scale by " + str(1 / a2));
    if (has_h) n.gauge(0, -1, true);
    if (a3 != 0) n.scale_x(a2 / a3);
    return n.finish(canonical("1D-2", {{"delta_tilde", Expr(a3 != 0 ? 1 : 0)}, {"delta", delta_of(v)}}));
  }
  if (a3 != 0) {
    n.trace("a1 = a2 = 0, a3 != 0");
    n.scale(0, 1 / a3, "scale by " + str(1 / a3));
    if (has_h) n.gauge(0, -1, true);
    return n.finish(canonical("1D-3", {{"delta", delta_of(v)}}));
  }
  n.trace("a1 = a2 = a3 = 0, h != 0");
  n.gauge(0, 1, true);
  return n.finish(canonical("1D-4"));
}

Normalization normalize_2d(const EquivAlgebraElement& in1, const EquivAlgebraElement& in2) {
  E v1 = essential(in1), v2 = essential(in2);
  if (rank({v1, v2}) != 2) throw Error("normalize_2d: the elements are linearly dependent");
  if (!in_span({v1, v2}, bracket(v1, v2))) throw NotSubalgebra("[v1, v2] = " + to_string(bracket(v1, v2)) + " leaves the span");
  Normalizer n({v1, v2});
  if (!in1.a0.is_zero() || !in2.a0.is_zero()) n.trace("a0 dropped: d_t spans an ideal");
  auto& cur = n.cur();
  auto A = [&](std::size_t i, int mu) {
    const E& v = cur[i];
    return q(mu == 1 ? v.a1 : mu == 2 ? v.a2 : v.a3);
  };
  auto rank_a = [&] {
    Rational d12 = det2(A(0, 1), A(0, 2), A(1, 1), A(1, 2));
    Rational d13 = det2(A(0, 1), A(0, 3), A(1, 1), A(1, 3));
    Rational d23 = det2(A(0, 2), A(0, 3), A(1, 2), A(1, 3));
    return std::array<Rational, 3>{d12, d13, d23};
  };
  auto constant = [](const Expr& h, const char* what) {
    if (!h.is_number()) throw Error(std::string(what) + " is not constant: " + to_string(h));
    return h.value();
  };
  auto [d12, d13, d23] = rank_a();

  if (d12 != 0 || d13 != 0 || d23 != 0) {
    n.trace("rank A123 = 2");
    if (d12 != 0) {
      n.trace("case 1(a): det A12 != 0");
      n.basis(inverse2(A(0, 1), A(0, 2), A(1, 1), A(1, 2)), "A12 -> E");
      if (!cur[1].h.is_zero()) {
        n.gauge(1, -1);
      } else if (!cur[0].h.is_zero()) {
        n.gauge(0, -1);
      }
      n.translate_x(A(0, 3));
      Rational dhat = -constant(cur[0].h, "h1");
      return n.finish(canonical("2D-1", {{"delta_hat", Expr(dhat)}, {"delta", delta_of(cur[1])}}));
    }
    if (d13 != 0) {
      n.trace("case 1(b): det A12 = 0, det A13 != 0");
      n.basis(inverse2(A(0, 1), A(0, 3), A(1, 1), A(1, 3)), "A13 -> E");
      Rational a = A(0, 2);
      if (!cur[1].h.is_zero()) {
        n.trace("h2 != 0");
        n.gauge(1, -1);
        Rational c = constant(cur[0].h - sym("u"), "h1 - u");
        n.combine(0, 1, c, "v1 + " + str(c) + " v2");
        n.translate_x(A(0, 3));
        return n.finish(canonical("2D-2", {{"a", Expr(a)}}));
      }
      n.trace("h2 = 0");
      if (!cur[0].h.is_zero()) n.gauge(0, -1);
      n.translate_x(A(0, 3));
      return n.finish(canonical("2D-3", {{"a", Expr(a)}, {"delta", delta_of(cur[0])}}));
    }
    n.trace("case 1(c): det A12 = det A13 = 0, det A23 != 0");
    n.basis(inverse2(A(0, 2), A(0, 3), A(1, 2), A(1, 3)), "A23 -> E");
    if (cur[1].h.is_zero()) {
      n.trace("h2 = 0");
      if (!cur[0].h.is_zero()) n.gauge(0, -1);
      return n.finish(canonical("2D-4", {{"delta", delta_of(cur[0])}, {"delta_tilde", Expr(0)}}));
    }
    n.trace("h2 != 0");
    n.gauge(1, -1);
    Rational c = constant(cur[0].h, "h1");
    if (c != 0 && c != -1) {
      // u~ = lambda u scales both constants by lambda
      Rational lambda = -1 / c;
      n.push(EquivTransform::gauge(UFunction::affine(Expr(lambda), 0)), "G_*(U), U = " + str(lambda) + "*u");
      n.scale(1, -c, "scale v2 by " + str(-c));
      n.scale_x(-1 / c);
    }
    return n.finish(canonical("2D-4", {{"delta", Expr(c != 0 ? 1 : 0)}, {"delta_tilde", Expr(1)}}));
  }

  n.trace("rank A123 <= 1");
  bool row1 = A(0, 1) != 0 || A(0, 2) != 0 || A(0, 3) != 0;
  bool row2 = A(1, 1) != 0 || A(1, 2) != 0 || A(1, 3) != 0;
  if (row2 && !row1) {
    n.basis({{0, 1}, {1, 0}}, "swap");
  } else if (row2) {
    int mu = A(0, 1) != 0 ? 1 : A(0, 2) != 0 ? 2 : 3;
    n.combine(1, 0, -A(1, mu) / A(0, mu), "clear a^2");
  }

  if (row1 || row2) {
    n.gauge(1, 1);
    Expr b = diff(cur[0].h, "u");
    if (!b.is_number()) throw Error("h1_u is not constant: " + to_string(b));
    Rational c = constant(cur[0].h - b * sym("u"), "h1 - b u");
    n.combine(0, 1, -c, "v1 - " + str(c) + " v2");
    if (A(0, 1) != 0) {
      n.trace("case 2(a): a1 != 0");
      n.scale(0, 1 / A(0, 1), "scale by " + str(1 / A(0, 1)));
      n.translate_x(A(0, 3));
      return n.finish(canonical("2D-5", {{"a", Expr(A(0, 2))}, {"b", diff(cur[0].h, "u")}}));
    }
    if (A(0, 2) != 0) {
      n.trace("case 2(b): a1 = 0, a2 != 0");
      n.scale(0, 1 / A(0, 2), "scale by " + str(1 / A(0, 2)));
      Rational a3 = A(0, 3);
      if (a3 != 0) n.scale_x(-1 / a3);
      return n.finish(canonical("2D-6", {{"delta", Expr(a3 != 0 ? 1 : 0)}, {"b", diff(cur[0].h, "u")}}));
    }
    n.trace("case 2(c): a1 = a2 = 0, a3 != 0");
    n.scale(0, 1 / A(0, 3), "scale by " + str(1 / A(0, 3)));
    Rational bb = q(diff(cur[0].h, "u"));
    if (bb != 0) {
      n.scale_x(-bb);
      n.scale(0, -1 / bb, "scale by " + str(-1 / bb));
    }
    return n.finish(canonical("2D-7", {{"delta", Expr(bb != 0 ? 1 : 0)}}));
  }

  n.trace("case 2(d): a1 = a2 = a3 = 0");
  // The derived algebra is spanned by [v1, v2]; bring it to G(1).
  auto c = *in_span(cur, bracket(cur[0], cur[1]));
  std::vector<Rational> other = c[1] != 0 ? std::vector<Rational>{1, 0} : std::vector<Rational>{0, 1};
  n.basis({c, other}, "derived algebra first");
  auto lambda = *in_span(cur, bracket(cur[0], cur[1]));
  n.scale(1, 1 / lambda[0], "scale v2 by " + str(1 / lambda[0]));
  n.gauge(0, 1);
  Rational shift = constant(cur[1].h - sym("u"), "h2 - u");
  n.combine(1, 0, -shift, "v2 - " + str(shift) + " v1");
  return n.finish(canonical("2D-8"));
}

}  // namespace lieprelim
