#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lieprelim/classify.hpp"
#include "lieprelim/format.hpp"
#include "lieprelim/verify.hpp"

namespace lieprelim::cli {

namespace {

using json = nlohmann::json;

// Raised for bad user input; maps to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

OracleOptions oracle(const RunConfig& cfg) {
  OracleOptions o;
  o.seed = cfg.seed;
  o.tolerance = cfg.tolerance;
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

EquationClass class_from(const std::string& path) {
  if (path.empty()) return generalized_diffusion_class();
  if (path == "diffusion") return generalized_diffusion_class();
  if (path == "linear") return linear_class();
  return parse_class(read_file(path));
}

std::string render(const Expr& e, const RunConfig& cfg) { return cfg.format == "latex" ? to_latex(e) : to_string(e); }
std::string render(const VectorField& v, const RunConfig& cfg) {
  return cfg.format == "latex" ? to_latex(v) : to_string(v);
}
std::string render(const EquivAlgebraElement& v, const RunConfig& cfg) {
  return cfg.format == "latex" ? to_latex(v) : to_string(v);
}

// D^x, D^t are accepted for Dx, Dt.
std::string element_text(std::string s) {
  for (const char* from : {"D^x", "D^t"}) {
    for (auto p = s.find(from); p != std::string::npos; p = s.find(from)) s.replace(p, 3, std::string("D") + from[2]);
  }
  return s;
}

std::string strip_ansatz(std::string s) {
  auto first = s.find_first_not_of(" \t");
  s = first == std::string::npos ? "" : s.substr(first);
  if (s.rfind("Q=", 0) == 0 || s.rfind("Q =", 0) == 0) s = s.substr(s.find('=') + 1);
  if (s.find_first_not_of(" \t") == std::string::npos) throw InputError("empty ansatz");
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);) {
    auto a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

std::string transform_text(const EquivTransform& T) {
  auto affine = [](const Expr& k, const char* v, const Expr& c) { return to_string(k * sym(v) + c); };
  return "t~ = " + affine(T.A1, "t", T.A0) + ", x~ = " + affine(T.B1, "x", T.B0) + ", u~ = " + to_string(T.U.forward);
}

// ---- derive ----

struct DeriveArgs {
  std::string class_file;
  std::string ansatz;
  bool has_ansatz = false;
};

int cmd_derive(const DeriveArgs& a, const RunConfig& cfg, Streams s) {
  EquationClass cls = class_from(a.class_file);
  if (!a.has_ansatz) {
    DeterminingSystem sys = determining_system(cls, generic_ansatz());
    if (cfg.format == "json") {
      json j{{"class", cls.name}, {"equations", json::array()}};
      for (const auto& e : sys.equations) {
        j["equations"].push_back({{"monomial", to_string(e.monomial)}, {"lhs", to_string(e.lhs)}});
      }
      s.out << j.dump(2) << "\n";
    } else if (cfg.format == "latex") {
      s.out << "\\begin{align*}\n";
      for (const auto& e : sys.equations) {
        s.out << "  " << to_latex(e.lhs) << " &= 0 && " << to_latex(e.monomial) << " \\\\\n";
      }
      s.out << "\\end{align*}\n";
    } else {
      s.out << to_string(sys);
    }
    return kPass;
  }

  VectorField q = parse_field(strip_ansatz(a.ansatz), base_coordinates(), cls.environment());
  auto residuals = symmetry_residuals(cls, q, oracle(cfg));
  if (cfg.format == "json") {
    json j{{"class", cls.name}, {"ansatz", to_string(q)}, {"symmetry", residuals.empty()}, {"residuals", json::array()}};
    for (const auto& e : residuals) {
      j["residuals"].push_back({{"monomial", to_string(e.monomial)}, {"lhs", to_string(e.lhs)}});
    }
    s.out << j.dump(2) << "\n";
  } else {
    s.out << "ansatz " << render(q, cfg) << "\n";
    if (residuals.empty()) s.out << "residual 0\n";
    for (const auto& e : residuals) s.out << render(e.monomial, cfg) << ": " << render(e.lhs, cfg) << "\n";
  }
  return residuals.empty() ? kPass : kFailure;
}

// ---- check-equiv ----

struct EquivArgs {
  std::string class_file;
  std::string field;
  std::string element;
};

int cmd_check_equiv(const EquivArgs& a, const RunConfig& cfg, Streams s) {
  EquationClass cls = class_from(a.class_file);
  if (a.field.empty() == a.element.empty()) throw InputError("give exactly one of --field and --element");
  VectorField v = a.element.empty() ? parse_field(a.field, extended_coordinates(cls), cls.environment())
                                    : parse_element(element_text(a.element)).to_field();
  InvarianceReport r = equiv_invariance_check(v, cls, oracle(cfg));
  if (cfg.format == "json") {
    json j{{"class", cls.name}, {"field", to_string(v)}, {"passed", r.passed}, {"residuals", json::array()}};
    for (const auto& [label, e] : r.residuals) j["residuals"].push_back({{"label", label}, {"residual", to_string(e)}});
    s.out << j.dump(2) << "\n";
  } else {
    s.out << (r.passed ? "PASS " : "FAIL ") << render(v, cfg) << "\n";
    for (const auto& [label, e] : r.residuals) s.out << "    " << label << ": " << render(e, cfg) << "\n";
  }
  return r.passed ? kPass : kFailure;
}

// ---- transform ----

struct TransformArgs {
  std::string f = "f", g = "g";
  std::string A0 = "0", A1 = "1", B0 = "0", B1 = "1";
  std::string U = "u", U_inverse;
};

int cmd_transform(const TransformArgs& a, const RunConfig& cfg, Streams s) {
  Environment env{{"f", {"x", "u"}}, {"g", {"x", "u"}}};
  EquivTransform T;
  T.A0 = parse(a.A0);
  T.A1 = parse(a.A1);
  T.B0 = parse(a.B0);
  T.B1 = parse(a.B1);
  Expr U = parse(a.U);
  if (a.U_inverse.empty()) {
    if (!(U == sym("u"))) throw InputError("--U needs --U-inverse");
    T.U = UFunction::identity();
  } else {
    T.U = UFunction{U, parse(a.U_inverse)};
    Bindings b;
    b.bind("u", *T.U.inverse);
    if (!is_identically_zero(substitute(U, b) - sym("u"), oracle(cfg))) throw InputError("--U-inverse does not invert --U");
  }
  auto [ft, gt] = transform_class_element(T, parse(a.f, env), parse(a.g, env));
  if (cfg.format == "json") {
    s.out << json{{"transformation", transform_text(T)}, {"f", to_string(ft)}, {"g", to_string(gt)}}.dump(2) << "\n";
  } else {
    s.out << transform_text(T) << "\n";
    s.out << "f~ = " << render(ft, cfg) << "\n";
    s.out << "g~ = " << render(gt, cfg) << "\n";
  }
  return kPass;
}

// ---- commutator ----

struct CommutatorArgs {
  std::string v, w;
  std::string coords = "t,x,u";
  std::string span;
  bool equiv = false;
};

int cmd_commutator(const CommutatorArgs& a, const RunConfig& cfg, Streams s) {
  json j;
  std::string result;
  std::optional<bool> inside;
  if (a.equiv) {
    EquivAlgebraElement v = parse_element(element_text(a.v)), w = parse_element(element_text(a.w));
    EquivAlgebraElement c = bracket(v, w);
    result = render(c, cfg);
    j["result"] = to_string(c);
    if (!a.span.empty()) {
      Basis b;
      for (const auto& e : split(a.span, ';')) b.push_back(parse_element(element_text(e)));
      inside = in_span(b, c).has_value();
    }
  } else {
    auto coords = split(a.coords, ',');
    VectorField v = parse_field(a.v, coords), w = parse_field(a.w, coords);
    VectorField c = commutator(v, w);
    result = render(c, cfg);
    j["result"] = to_string(c);
    if (!a.span.empty()) {
      std::vector<VectorField> b;
      for (const auto& e : split(a.span, ';')) b.push_back(parse_field(e, coords));
      inside = in_span(b, c).has_value();
    }
  }
  if (cfg.format == "json") {
    if (inside) j["in_span"] = *inside;
    s.out << j.dump(2) << "\n";
  } else {
    s.out << result << "\n";
    if (inside) s.out << (*inside ? "in span\n" : "not in span\n");
  }
  return kPass;
}

// ---- adjoint ----

struct AdjointArgs {
  std::string v, w;
  std::string eps = "eps";
  int order = 12;
};

int cmd_adjoint(const AdjointArgs& a, const RunConfig& cfg, Streams s) {
  EquivAlgebraElement v = parse_element(element_text(a.v)), w = parse_element(element_text(a.w));
  Expr eps = parse(a.eps);
  json j{{"v", to_string(v)}, {"w", to_string(w)}, {"eps", to_string(eps)}};
  std::string method, value;
  try {
    EquivAlgebraElement r = adjoint_closed(v, w, eps);
    method = "closed form";
    value = render(r, cfg);
    j["result"] = to_string(r);
  } catch (const OutsideCatalog&) {
    SeriesResult r = adjoint_series(v, w, eps, a.order);
    method = r.terminated ? "terminating series" : "series to order " + std::to_string(a.order);
    value = render(r.value, cfg);
    j["result"] = to_string(r.value);
    j["terminated"] = r.terminated;
  }
  j["method"] = method;
  if (cfg.format == "json") {
    s.out << j.dump(2) << "\n";
  } else {
    s.out << value << "\n(" << method << ")\n";
  }
  return kPass;
}

// ---- classify ----

struct ClassifyArgs {
  std::vector<std::string> basis;
  std::string input;
  std::string f, g;
};

json step_json(const WitnessStep& st) {
  json j{{"label", st.label}};
  switch (st.kind) {
    case WitnessStep::Kind::Basis: {
      j["kind"] = "basis";
      json m = json::array();
      for (const auto& row : st.matrix) {
        json r = json::array();
        for (const auto& q : row) r.push_back(to_string(Expr(q)));
        m.push_back(r);
      }
      j["matrix"] = m;
      break;
    }
    case WitnessStep::Kind::Push:
      j["kind"] = "push";
      j["transform"] = transform_text(st.transform);
      break;
    case WitnessStep::Kind::NumericGauge:
      j["kind"] = "numeric gauge";
      j["target"] = to_string(st.target);
      j["error"] = st.error;
      break;
  }
  return j;
}

std::string step_text(const json& j) {
  std::string out = j["kind"].get<std::string>() + " " + j["label"].get<std::string>();
  if (j.contains("matrix")) out += " " + j["matrix"].dump();
  if (j.contains("transform")) out += ": " + j["transform"].get<std::string>();
  if (j.contains("target")) out += ": h -> " + j["target"].get<std::string>();
  return out;
}

int cmd_classify(const ClassifyArgs& a, const RunConfig& cfg, Streams s) {
  std::vector<std::string> texts = a.basis;
  std::optional<std::pair<Expr, Expr>> candidate;
  std::string f = a.f, g = a.g;
  if (!a.input.empty()) {
    json in;
    try {
      in = json::parse(read_file(a.input));
      for (const auto& e : in.at("basis")) texts.push_back(e.get<std::string>());
      if (in.contains("candidate")) {
        f = in["candidate"].at("f").get<std::string>();
        g = in["candidate"].at("g").get<std::string>();
      }
    } catch (const json::exception& e) {
      throw InputError(std::string("subalgebra declaration: ") + e.what());
    }
  }
  if (texts.empty()) throw InputError("empty basis");
  if (f.empty() != g.empty()) throw InputError("a candidate needs both f and g");
  if (!f.empty()) candidate = std::make_pair(parse(f), parse(g));

  Basis basis;
  for (const auto& t : texts) basis.push_back(parse_element(element_text(t)));
  int dim = rank(basis);
  if (dim != static_cast<int>(basis.size())) throw InputError("basis elements are linearly dependent");

  json j{{"input", json::array()}};
  for (const auto& v : basis) j["input"].push_back(to_string(v));

  if (!is_closed(basis)) {
    s.err << "not a subalgebra: the span is not closed under the commutator\n";
    return kNotSubalgebra;
  }

  std::optional<Normalization> norm;
  if (dim == 1) norm = normalize_1d(basis[0]);
  if (dim == 2) norm = normalize_2d(basis[0], basis[1]);
  if (norm) {
    j["list_id"] = norm->result.list_id;
    j["parameters"] = json::object();
    for (const auto& [k, v] : norm->result.parameters) j["parameters"][k] = to_string(v);
    j["basis"] = json::array();
    for (const auto& v : norm->result.basis) j["basis"].push_back(to_string(v));
    j["trace"] = norm->witness.trace;
    j["witness"] = json::array();
    for (const auto& st : norm->witness.chain) j["witness"].push_back(step_json(st));
    j["replay"] = replay(norm->witness, basis);
  }

  AppropriatenessReport ap = appropriateness(basis, candidate);
  j["appropriateness"] = {{"passed", ap.passed()}, {"closed", ap.closed},   {"contains_Dt", ap.contains_Dt},
                          {"m", ap.m},             {"dimension", ap.dimension}, {"pure_g_intersection", ap.pure_g_intersection},
                          {"failures", ap.failures}};
  if (ap.candidate_ok) j["appropriateness"]["candidate_ok"] = *ap.candidate_ok;

  if (cfg.format == "json") {
    s.out << j.dump(2) << "\n";
  } else {
    s.out << "input:";
    for (const auto& v : basis) s.out << " {" << render(v, cfg) << "}";
    s.out << "\n";
    if (norm) {
      s.out << "list " << norm->result.list_id;
      for (const auto& [k, v] : norm->result.parameters) s.out << ", " << k << " = " << render(v, cfg);
      s.out << "\ncanonical:";
      for (const auto& v : norm->result.basis) s.out << " {" << render(v, cfg) << "}";
      s.out << "\n";
      for (const auto& t : norm->witness.trace) s.out << "trace: " << t << "\n";
      for (const auto& st : j["witness"]) s.out << "witness: " << step_text(st) << "\n";
      s.out << "replay " << (j["replay"].get<bool>() ? "PASS" : "FAIL") << "\n";
    } else {
      s.out << "dimension " << dim << ": no normal form, checking appropriateness only\n";
    }
    s.out << "appropriateness " << (ap.passed() ? "PASS" : "FAIL") << ": m_s = " << ap.m << ", dimension "
          << ap.dimension << (ap.contains_Dt ? ", contains D^t" : "") << "\n";
    for (const auto& fl : ap.failures) s.out << "    " << fl << "\n";
  }
  bool ok = ap.passed() && (!norm || j["replay"].get<bool>());
  return ok ? kPass : kFailure;
}

// ---- verify ----

struct VerifyArgs {
  std::string table = "all";
  bool uncorrected = false;
};

void print_report(const VerificationReport& r, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "json") {
    out << to_json(r) << "\n";
  } else if (cfg.format == "latex") {
    out << to_latex(r);
  } else {
    out << to_text(r);
  }
}

int cmd_verify(const VerifyArgs& a, const RunConfig& cfg, Streams s) {
  if (a.table != "1" && a.table != "2" && a.table != "3" && a.table != "all") {
    throw InputError("unknown table '" + a.table + "', expected 1, 2, 3 or all");
  }
  VerificationReport r = verify_table(a.table, a.uncorrected, oracle(cfg));
  print_report(r, cfg, s.out);
  return r.passed() ? kPass : kFailure;
}

// ---- report ----

int cmd_report(const RunConfig& cfg, Streams s) {
  EquationClass cls = generalized_diffusion_class();
  OracleOptions opts = oracle(cfg);
  DeterminingSystem sys = determining_system(cls, generic_ansatz());
  KernelConditions kc = kernel_conditions(cls);

  std::vector<std::pair<std::string, bool>> generators;
  for (const auto& v : {EquivAlgebraElement::dt(), EquivAlgebraElement::dx(), EquivAlgebraElement::Dt(),
                        EquivAlgebraElement::Dx(), EquivAlgebraElement::G(Environment{{"h", {"u"}}}.apply("h"))}) {
    generators.emplace_back(to_string(v), equiv_invariance_check(v.to_field(), cls, opts).passed);
  }
  VerificationReport tables = verify_table("all", false, opts);
  bool ok = kc.unresolved.empty() && tables.passed();
  for (const auto& [name, pass] : generators) ok = ok && pass;

  if (cfg.format == "json") {
    json j;
    j["seed"] = cfg.seed;
    j["determining_system"] = json::array();
    for (const auto& e : sys.equations) {
      j["determining_system"].push_back({{"monomial", to_string(e.monomial)}, {"lhs", to_string(e.lhs)}});
    }
    j["kernel"] = json::array();
    for (const auto& c : kc.conditions) j["kernel"].push_back(to_string(c));
    j["equivalence_generators"] = json::object();
    for (const auto& [name, pass] : generators) j["equivalence_generators"][name] = pass;
    j["tables"] = json::parse(to_json(tables));
    j["ok"] = ok;
    s.out << j.dump(2) << "\n";
  } else {
    s.out << "determining equations of " << cls.name << "\n" << to_string(sys);
    s.out << "kernel:";
    for (const auto& c : kc.conditions) s.out << " " << render(c, cfg) << " = 0";
    s.out << "\n";
    for (const auto& [name, pass] : generators) s.out << "equivalence " << (pass ? "PASS " : "FAIL ") << name << "\n";
    print_report(tables, cfg, s.out);
  }
  return ok ? kPass : kFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry analysis of u_t = f(x,u) u_x^2 + g(x,u) u_xx", "lieprelim"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "latex", "json"}));
  app.add_option("--seed", cfg.seed, "Seed for randomized oracles");
  app.add_option("--tol", cfg.tolerance, "Tolerance of the numeric oracle")->check(CLI::PositiveNumber);

  DeriveArgs derive;
  auto* c_derive = app.add_subcommand("derive", "Determining equations, or residuals of an ansatz");
  c_derive->add_option("--class", derive.class_file, "Class declaration (JSON), or diffusion/linear");
  auto* ansatz = c_derive->add_option("--ansatz", derive.ansatz, "Operator such as \"Q=2*t*dt + x*dx\"");

  EquivArgs equiv;
  auto* c_equiv = app.add_subcommand("check-equiv", "Invariance of a field on the extended space");
  c_equiv->add_option("--class", equiv.class_file, "Class declaration (JSON), or diffusion/linear");
  c_equiv->add_option("--field", equiv.field, "Field over t, x, u and the arbitrary elements");
  c_equiv->add_option("--element", equiv.element, "Element of the equivalence algebra, e.g. \"Dx + G(u^2)\"");

  TransformArgs tr;
  auto* c_transform = app.add_subcommand("transform", "Image of (f, g) under an equivalence transformation");
  c_transform->add_option("--f", tr.f);
  c_transform->add_option("--g", tr.g);
  c_transform->add_option("--A0", tr.A0);
  c_transform->add_option("--A1", tr.A1);
  c_transform->add_option("--B0", tr.B0);
  c_transform->add_option("--B1", tr.B1);
  c_transform->add_option("--U", tr.U, "u~ = U(u)");
  c_transform->add_option("--U-inverse", tr.U_inverse, "u = U^-1(u~)");

  CommutatorArgs comm;
  auto* c_comm = app.add_subcommand("commutator", "Commutator of two fields or algebra elements");
  c_comm->add_option("v", comm.v)->required();
  c_comm->add_option("w", comm.w)->required();
  c_comm->add_option("--coords", comm.coords, "Comma-separated coordinates");
  c_comm->add_option("--span", comm.span, "Semicolon-separated basis to test membership against");
  c_comm->add_flag("--equiv", comm.equiv, "Arguments are equivalence algebra elements");

  AdjointArgs adj;
  auto* c_adj = app.add_subcommand("adjoint", "Ad(exp(eps v)) w");
  c_adj->add_option("v", adj.v)->required();
  c_adj->add_option("w", adj.w)->required();
  c_adj->add_option("--eps", adj.eps);
  c_adj->add_option("--order", adj.order, "Series order outside the closed-form catalog")->check(CLI::Range(1, 64));

  ClassifyArgs cls;
  auto* c_cls = app.add_subcommand("classify", "Normal form and appropriateness of a subalgebra");
  c_cls->add_option("basis", cls.basis, "Basis elements, e.g. \"Dx + 3*Dt + 5*dx\"");
  c_cls->add_option("--input", cls.input, "JSON file {\"basis\": [...], \"candidate\": {\"f\", \"g\"}}");
  c_cls->add_option("--f", cls.f, "Candidate f for the invariant surface check");
  c_cls->add_option("--g", cls.g, "Candidate g for the invariant surface check");

  VerifyArgs ver;
  auto* c_ver = app.add_subcommand("verify", "Verify the classification tables");
  c_ver->add_option("--table", ver.table, "1, 2, 3 or all");
  c_ver->add_flag("--uncorrected", ver.uncorrected, "Rows without the final corrections");

  app.add_subcommand("report", "Full verification report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kPass : kInputError;
  }

  if (const char* env = std::getenv("LIE_PRELIM_SEED")) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: LIE_PRELIM_SEED is not an integer\n";
      return kInputError;
    }
  }
  cfg.command = app.get_subcommands().front()->get_name();
  err << "seed: " << cfg.seed << "\n";
  derive.has_ansatz = ansatz->count() > 0;

  Streams s{out, err};
  try {
    if (cfg.command == "derive") return cmd_derive(derive, cfg, s);
    if (cfg.command == "check-equiv") return cmd_check_equiv(equiv, cfg, s);
    if (cfg.command == "transform") return cmd_transform(tr, cfg, s);
    if (cfg.command == "commutator") return cmd_commutator(comm, cfg, s);
    if (cfg.command == "adjoint") return cmd_adjoint(adj, cfg, s);
    if (cfg.command == "classify") return cmd_classify(cls, cfg, s);
    if (cfg.command == "verify") return cmd_verify(ver, cfg, s);
    return cmd_report(cfg, s);
  } catch (const NotSubalgebra& e) {
    err << "not a subalgebra: " << e.what() << "\n";
    return kNotSubalgebra;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"lieprelim"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lieprelim::cli
