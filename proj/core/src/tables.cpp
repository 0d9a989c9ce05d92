#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "lieprelim/format.hpp"
#include "lieprelim/verify.hpp"

namespace lieprelim {

namespace resources {
std::string_view rows();
}

namespace {

using json = nlohmann::json;

Environment environment(const std::vector<FunctionSignature>& fns) {
  Environment env;
  for (const auto& s : fns) env.declare(s);
  return env;
}

std::map<std::string, Expr> parameters(const json& j, const Environment& env) {
  std::map<std::string, Expr> out;
  for (const auto& [k, v] : j.items()) out[k] = parse(v.get<std::string>(), env);
  return out;
}

std::vector<VectorField> operators(const json& j, const Environment& env) {
  std::vector<VectorField> out;
  for (const auto& s : j) out.push_back(parse_field(s.get<std::string>(), base_coordinates(), env));
  return out;
}

std::vector<std::string> strings(const json& j, const char* key) {
  std::vector<std::string> out;
  if (j.contains(key)) {
    for (const auto& s : j.at(key)) out.push_back(s.get<std::string>());
  }
  return out;
}

bool mode_applies(const std::string& mode, bool uncorrected) {
  return mode == "both" || mode == (uncorrected ? "uncorrected" : "corrected");
}

bool table_selected(const std::string& id, int table) { return id == "all" || id == std::to_string(table); }

Expr substituted(const Expr& e, const std::map<std::string, Expr>& values) {
  Bindings b;
  for (const auto& [k, v] : values) b.bind(k, v);
  return substitute(e, b);
}

EquationClass instance(const Expr& f, const Expr& g, const RowDatabase& db) {
  return specialize(generalized_diffusion_class(), {{"f", f}, {"g", g}}, db.functions);
}

// Appends failures of q as a symmetry of cls; returns true when it passes.
bool check_symmetry(const EquationClass& cls, const VectorField& q, const OracleOptions& opts,
                    std::vector<std::string>& residuals) {
  auto bad = symmetry_residuals(cls, q, opts);
  for (const auto& e : bad) {
    residuals.push_back("symmetry " + to_string(q) + ", " + to_string(e.monomial) + ": " + to_string(e.lhs));
  }
  return bad.empty();
}

RowReport verify_row(const ClassificationRow& row, const RowDatabase& db, const OracleOptions& opts) {
  RowReport r;
  r.table = row.table;
  r.case_label = row.case_label;
  r.adjustments = row.adjustments;

  IscResult isc = isc_check(row.subalgebra.basis, row.f, row.g, opts);
  r.isc = isc.passed;
  for (const auto& [label, e] : isc.residuals) r.residuals.push_back("isc " + label + ": " + to_string(e));

  EquationClass cls = instance(row.f, row.g, db);
  r.symmetry = true;
  for (const auto& q : row.operators) r.symmetry = check_symmetry(cls, q, opts, r.residuals) && r.symmetry;
  r.kernel = check_symmetry(cls, VectorField::base(1, 0, 0), opts, r.residuals);

  r.projection = row.operators.size() == row.subalgebra.basis.size();
  for (std::size_t i = 0; r.projection && i < row.operators.size(); ++i) {
    VectorField p = row.subalgebra.basis[i].to_field().project(base_coordinates());
    const VectorField& q = row.operators[i];
    if (!(q == p) && !(q == Expr(-1) * p)) {
      r.projection = false;
      r.residuals.push_back("operator " + to_string(q) + " is not the projection " + to_string(p));
    }
  }
  return r;
}

FindingReport check_coincidence(const Coincidence& c, const RowDatabase& db, const OracleOptions& opts) {
  FindingReport r{c.description, false, {}};
  const ClassificationRow* a = db.find(c.table, c.case_label, true);
  const ClassificationRow* b = db.find(c.with_table, c.with_case, true);
  if (!a || !b) {
    r.detail = "row missing from the database";
    return r;
  }
  Expr fa = substituted(a->f, c.substitute), ga = substituted(a->g, c.substitute);
  Expr fb = substituted(b->f, c.with_substitute), gb = substituted(b->g, c.with_substitute);
  r.detected = is_identically_zero(fa - fb, opts) && is_identically_zero(ga - gb, opts);
  r.detail = "f = " + to_string(fa) + ", g = " + to_string(ga);
  if (!r.detected) r.detail += " vs f = " + to_string(fb) + ", g = " + to_string(gb);
  return r;
}

FindingReport check_extra(const ExtraSymmetry& x, const RowDatabase& db, const OracleOptions& opts) {
  FindingReport r{x.description, true, {}};
  EquationClass cls = instance(x.f, x.g, db);
  std::vector<std::string> residuals;
  for (const auto& q : x.operators) r.detected = check_symmetry(cls, q, opts, residuals) && r.detected;
  r.detail = "f = " + to_string(x.f) + ", g = " + to_string(x.g);
  for (const auto& s : residuals) r.detail += "; " + s;
  return r;
}

std::string case_name(const RowReport& r) {
  return "Table " + std::to_string(r.table) + " Case " + r.case_label;
}

const char* status(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

const ClassificationRow* RowDatabase::find(int table, const std::string& case_label, bool uncorrected) const {
  for (const auto& r : rows) {
    if (r.table == table && r.case_label == case_label && mode_applies(r.mode, uncorrected)) return &r;
  }
  return nullptr;
}

RowDatabase parse_rows(std::string_view json_text) {
  RowDatabase db;
  try {
    json j = json::parse(json_text);
    for (const auto& [name, args] : j.at("functions").items()) {
      db.functions.push_back({name, args.get<std::vector<std::string>>()});
    }
    Environment env = environment(db.functions);
    for (const auto& r : j.at("rows")) {
      ClassificationRow row;
      row.table = r.at("table").get<int>();
      row.case_label = r.at("case").get<std::string>();
      row.mode = r.value("mode", "both");
      row.f = parse(r.at("f").get<std::string>(), env);
      row.g = parse(r.at("g").get<std::string>(), env);
      const json& s = r.at("subalgebra");
      row.subalgebra = canonical(s.at("list").get<std::string>(), parameters(s.at("parameters"), env));
      row.operators = operators(r.at("operators"), env);
      row.constraints = strings(r, "constraints");
      row.adjustments = strings(r, "adjustments");
      if (row.table < 1 || row.table > 3) throw Error("row table must be 1, 2 or 3");
      db.rows.push_back(std::move(row));
    }
    for (const auto& c : j.value("coincidences", json::array())) {
      Coincidence x;
      x.mode = c.value("mode", "both");
      x.description = c.at("description").get<std::string>();
      x.table = c.at("row").at("table").get<int>();
      x.case_label = c.at("row").at("case").get<std::string>();
      x.substitute = parameters(c.at("row").at("substitute"), env);
      x.with_table = c.at("with").at("table").get<int>();
      x.with_case = c.at("with").at("case").get<std::string>();
      x.with_substitute = parameters(c.at("with").at("substitute"), env);
      db.coincidences.push_back(std::move(x));
    }
    for (const auto& e : j.value("extra_symmetries", json::array())) {
      ExtraSymmetry x;
      x.mode = e.value("mode", "both");
      x.description = e.at("description").get<std::string>();
      x.f = parse(e.at("f").get<std::string>(), env);
      x.g = parse(e.at("g").get<std::string>(), env);
      x.tables = e.at("tables").get<std::vector<int>>();
      x.operators = operators(e.at("operators"), env);
      db.extras.push_back(std::move(x));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed row database: ") + e.what());
  }
  return db;
}

const RowDatabase& builtin_rows() {
  static const RowDatabase db = parse_rows(resources::rows());
  return db;
}

int VerificationReport::passed_rows() const {
  return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const RowReport& r) { return r.passed(); }));
}

bool VerificationReport::passed() const {
  return passed_rows() == static_cast<int>(rows.size()) &&
         std::all_of(findings.begin(), findings.end(), [](const FindingReport& f) { return f.detected; });
}

VerificationReport verify_table(const std::string& table_id, bool uncorrected, const OracleOptions& opts,
                                const RowDatabase& db) {
  if (table_id != "1" && table_id != "2" && table_id != "3" && table_id != "all") {
    throw Error("unknown table '" + table_id + "', expected 1, 2, 3 or all");
  }
  VerificationReport rep;
  rep.table_id = table_id;
  rep.uncorrected = uncorrected;
  for (const auto& row : db.rows) {
    if (table_selected(table_id, row.table) && mode_applies(row.mode, uncorrected)) {
      rep.rows.push_back(verify_row(row, db, opts));
    }
  }
  std::stable_sort(rep.rows.begin(), rep.rows.end(), [](const RowReport& a, const RowReport& b) {
    return a.table != b.table ? a.table < b.table : a.case_label < b.case_label;
  });
  for (const auto& c : db.coincidences) {
    if (mode_applies(c.mode, uncorrected) && (table_selected(table_id, c.table) || table_selected(table_id, c.with_table))) {
      rep.findings.push_back(check_coincidence(c, db, opts));
    }
  }
  for (const auto& x : db.extras) {
    bool selected = std::any_of(x.tables.begin(), x.tables.end(), [&](int t) { return table_selected(table_id, t); });
    if (mode_applies(x.mode, uncorrected) && selected) rep.findings.push_back(check_extra(x, db, opts));
  }
  return rep;
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  for (const auto& row : r.rows) {
    os << (row.passed() ? "PASS " : "FAIL ") << case_name(row) << ": isc " << status(row.isc) << ", symmetry "
       << status(row.symmetry) << ", projection " << status(row.projection) << ", kernel " << status(row.kernel);
    if (!row.adjustments.empty()) {
      os << " [";
      for (std::size_t i = 0; i < row.adjustments.size(); ++i) os << (i ? "; " : "") << row.adjustments[i];
      os << "]";
    }
    os << "\n";
    for (const auto& s : row.residuals) os << "    " << s << "\n";
  }
  for (const auto& f : r.findings) {
    os << (f.detected ? "DETECTED " : "MISSING ") << f.description << " (" << f.detail << ")\n";
  }
  os << r.passed_rows() << "/" << r.rows.size() << " rows pass\n";
  return os.str();
}

std::string to_latex(const VerificationReport& r) {
  std::ostringstream os;
  os << "\\begin{tabular}{|c|c|c|c|c|c|}\n\\hline\nTable & Case & isc & symmetry & projection & kernel \\\\\n\\hline\n";
  for (const auto& row : r.rows) {
    os << row.table << " & " << row.case_label << " & " << status(row.isc) << " & " << status(row.symmetry) << " & "
       << status(row.projection) << " & " << status(row.kernel) << " \\\\\n";
  }
  os << "\\hline\n\\end{tabular}\n";
  for (const auto& f : r.findings) os << "% " << (f.detected ? "detected: " : "missing: ") << f.description << "\n";
  return os.str();
}

std::string to_json(const VerificationReport& r) {
  json j;
  j["table"] = r.table_id;
  j["uncorrected"] = r.uncorrected;
  j["rows"] = json::array();
  for (const auto& row : r.rows) {
    j["rows"].push_back({{"table", row.table},
                         {"case", row.case_label},
                         {"isc", row.isc},
                         {"symmetry", row.symmetry},
                         {"projection", row.projection},
                         {"kernel", row.kernel},
                         {"passed", row.passed()},
                         {"residuals", row.residuals},
                         {"adjustments", row.adjustments}});
  }
  j["findings"] = json::array();
  for (const auto& f : r.findings) {
    j["findings"].push_back({{"description", f.description}, {"detected", f.detected}, {"detail", f.detail}});
  }
  j["summary"] = {{"rows", r.rows.size()}, {"passed", r.passed_rows()}, {"ok", r.passed()}};
  return j.dump(2);
}

}  // namespace lieprelim
