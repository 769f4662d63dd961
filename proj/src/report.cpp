#include "dioph/report.hpp"

#include "dioph/errors.hpp"
#include "dioph/problem.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace dioph {

using nlohmann::json;

namespace {

// JSON has no infinities; non-finite values travel as strings.
json num(long double v) {
  const double d = static_cast<double>(v);
  if (!std::isfinite(d)) return format_double(d);
  return d == 0 ? 0.0 : d;
}

long double num_from(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<long double>::infinity();
    if (s == "-inf") return -std::numeric_limits<long double>::infinity();
    if (s == "nan") return std::numeric_limits<long double>::quiet_NaN();
    throw Error(ErrorKind::InvalidInput, "bad number " + s);
  }
  return j.get<double>();
}

template <class T>
json opt(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    return num(*v);
  } else {
    return *v;
  }
}

std::optional<long double> opt_num(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return num_from(j[key]);
}

template <class T>
std::optional<T> opt_int(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<T>();
}

json nums(const std::vector<long double>& v) {
  json a = json::array();
  for (auto x : v) a.push_back(num(x));
  return a;
}

std::vector<long double> nums_from(const json& j) {
  std::vector<long double> v;
  for (const auto& x : j) v.push_back(num_from(x));
  return v;
}

std::string cell(long double v) { return format_double(static_cast<double>(v)); }

std::string cell(const std::optional<long double>& v) { return v ? cell(*v) : std::string(); }

json complex_point(const ComplexPoint& p) {
  json a = json::array();
  for (const auto& z : p) a.push_back(json::array({num(z.real()), num(z.imag())}));
  return a;
}

json cycle_json(const ZeroCycle& y) {
  json orbits = json::array();
  for (const auto& o : y.orbits) {
    json pts = json::array();
    for (const auto& p : o.points) pts.push_back(complex_point(p));
    json jo{{"degree", o.degree}, {"points", pts}};
    if (o.exact) {
      json c = json::array();
      for (const auto& q : o.exact->coords) c.push_back(q.to_string());
      jo["exact"] = {{"radicand", o.exact->radicand}, {"coords", c}};
    }
    if (o.minimal_poly) {
      json c = json::array();
      for (const auto& q : o.minimal_poly->c) c.push_back(to_string(q));
      jo["minimal_poly"] = c;
    }
    orbits.push_back(jo);
  }
  json gens = json::array();
  for (const auto& g : y.generators) gens.push_back(g.to_string());
  return {{"ambient_dim", y.ambient_dim}, {"orbits", orbits}, {"generators", gens}};
}

void header(std::ostream& os, const std::vector<std::string>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
}

}  // namespace

ReportFormat parse_format(const std::string& text) {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  throw Error(ErrorKind::InvalidInput, "unknown format " + text);
}

const char* extension(ReportFormat f) { return f == ReportFormat::Csv ? "csv" : "json"; }

json to_json(const CriterionReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"x", point_to_json(row.x)},
                    {"h_d", nums(row.h_d)},
                    {"m_d", nums(row.m_d)},
                    {"min_h", num(row.min_h)},
                    {"nearest_orbit", opt(row.nearest_orbit)},
                    {"second_proximity", opt(row.second_proximity)},
                    {"exceptional", row.exceptional}});
  }
  json tau = json::array();
  for (const auto& t : r.tau) tau.push_back(nums(t));
  const auto& in = r.integrality;
  return {{"field", field_to_json(r.field)},
          {"ambient_dim", r.ambient_dim},
          {"divisor_count", r.divisor_count},
          {"snc", {{"holds", r.snc}, {"waived", r.snc_waived}, {"failures", r.snc_failures}}},
          {"tau", {{"source", r.tau_asserted ? "asserted" : "estimated"}, {"matrix", tau}}},
          {"hypothesis_satisfied", r.hypothesis_satisfied},
          {"box", r.box},
          {"enumerated", r.enumerated},
          {"integrality",
           {{"seen", in.seen},
            {"kept", in.kept},
            {"on_divisor", in.on_divisor},
            {"max_defect", num(in.max_defect)},
            {"max_kept_defect", num(in.max_kept_defect)}}},
          {"eq2_constant", opt(r.eq2_constant)},
          {"stability_box", opt(r.stability_box)},
          {"stability_constant", opt(r.stability_constant)},
          {"bounded_min_height", r.bounded_min_height},
          {"separation", num(r.separation)},
          {"pigeonhole_constant", num(r.pigeonhole_constant)},
          {"pigeonhole_violations", r.pigeonhole_violations},
          {"min_decomposition_constant", opt(r.min_decomposition_constant)},
          {"rows", rows}};
}

CriterionReport criterion_report_from_json(const json& j) {
  try {
    CriterionReport r;
    r.field = parse_field(j.at("field"));
    r.ambient_dim = j.at("ambient_dim").get<int>();
    r.divisor_count = j.at("divisor_count").get<std::size_t>();
    const auto& snc = j.at("snc");
    r.snc = snc.at("holds").get<bool>();
    r.snc_waived = snc.at("waived").get<bool>();
    r.snc_failures = snc.at("failures").get<std::vector<std::string>>();
    r.tau_asserted = j.at("tau").at("source").get<std::string>() == "asserted";
    for (const auto& t : j.at("tau").at("matrix")) r.tau.push_back(nums_from(t));
    r.hypothesis_satisfied = j.at("hypothesis_satisfied").get<bool>();
    r.box = j.at("box").get<std::int64_t>();
    r.enumerated = j.at("enumerated").get<std::size_t>();
    const auto& in = j.at("integrality");
    r.integrality.seen = in.at("seen").get<std::size_t>();
    r.integrality.kept = in.at("kept").get<std::size_t>();
    r.integrality.on_divisor = in.at("on_divisor").get<std::size_t>();
    r.integrality.max_defect = num_from(in.at("max_defect"));
    r.integrality.max_kept_defect = num_from(in.at("max_kept_defect"));
    r.eq2_constant = opt_num(j, "eq2_constant");
    r.stability_box = opt_int<std::int64_t>(j, "stability_box");
    r.stability_constant = opt_num(j, "stability_constant");
    r.bounded_min_height = j.at("bounded_min_height").get<bool>();
    r.separation = num_from(j.at("separation"));
    r.pigeonhole_constant = num_from(j.at("pigeonhole_constant"));
    r.pigeonhole_violations = j.at("pigeonhole_violations").get<std::size_t>();
    r.min_decomposition_constant = opt_num(j, "min_decomposition_constant");
    for (const auto& jr : j.at("rows")) {
      CriterionRow row;
      row.x = point_from_json(r.field, jr.at("x"));
      row.h_d = nums_from(jr.at("h_d"));
      row.m_d = nums_from(jr.at("m_d"));
      row.min_h = num_from(jr.at("min_h"));
      row.nearest_orbit = opt_int<std::size_t>(jr, "nearest_orbit");
      row.second_proximity = opt_num(jr, "second_proximity");
      row.exceptional = jr.at("exceptional").get<bool>();
      r.rows.push_back(std::move(row));
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("criterion report: ") + e.what());
  }
}

json to_json(const TauProfile& p) {
  json rows = json::array();
  for (const auto& r : p.rows) {
    rows.push_back({{"tier", r.tier}, {"points", r.points}, {"tau_hat", opt(r.tau_hat)}, {"witness", r.witness}});
  }
  return {{"target", p.target},
          {"ambient_dim", p.ambient_dim},
          {"line_degree", p.line_degree},
          {"h_min", num(p.h_min)},
          {"height_bound", p.height_bound},
          {"exceptional", p.exceptional},
          {"estimate", "empirical lower-bound profile"},
          {"final_tau", opt(p.final_tau())},
          {"rows", rows},
          {"peel_candidates", p.peel_candidates}};
}

TauProfile tau_profile_from_json(const json& j) {
  try {
    TauProfile p;
    p.target = j.at("target").get<std::string>();
    p.ambient_dim = j.at("ambient_dim").get<int>();
    p.line_degree = j.at("line_degree").get<int>();
    p.h_min = num_from(j.at("h_min"));
    p.height_bound = j.at("height_bound").get<std::int64_t>();
    p.exceptional = j.at("exceptional").get<std::vector<std::string>>();
    for (const auto& jr : j.at("rows")) {
      TauRow r;
      r.tier = jr.at("tier").get<std::int64_t>();
      r.points = jr.at("points").get<std::size_t>();
      r.tau_hat = opt_num(jr, "tau_hat");
      r.witness = jr.at("witness").get<std::vector<std::int64_t>>();
      p.rows.push_back(std::move(r));
    }
    p.peel_candidates = j.at("peel_candidates").get<std::vector<std::string>>();
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("tau profile: ") + e.what());
  }
}

json to_json(const SectionCertificate& c) {
  const auto& p = c.params;
  json coeffs = json::array();
  for (const auto& [e, q] : c.form.terms()) coeffs.push_back({{"exponents", e}, {"coeff", to_string(q)}});
  json viol = json::array();
  for (const auto& v : c.violations) viol.push_back({{"point", v.point}, {"defect", num(v.defect)}});
  return {{"parameters",
           {{"n", p.n},
            {"d", p.d},
            {"e", p.e},
            {"eta", to_string(p.eta)},
            {"delta", to_string(p.delta)},
            {"mu", p.mu},
            {"s_total", p.s_total},
            {"ratio", to_string(p.ratio())},
            {"sections", p.sections().get_str()},
            {"conditions", p.exact_conditions().get_str()},
            {"conservative_conditions", p.conservative_conditions().get_str()}}},
          {"cycle", cycle_json(c.cycle)},
          {"monomial_order", "lex-descending"},
          {"form", {{"nvars", c.form.nvars()}, {"degree", c.form.degree()}, {"coefficients", coeffs}}},
          {"multiplicity_verified", c.multiplicity_verified},
          {"coeff_norm", to_string(c.coeff_norm)},
          {"slack", num(c.slack)},
          {"empirical_constant", opt(c.empirical_constant)},
          {"witness", c.witness},
          {"checked", c.checked},
          {"exceptional", c.exceptional},
          {"violation_count", c.violation_count},
          {"violations", viol}};
}

json to_json(const GcdPipelineReport& r) {
  json j{{"certificate", to_json(r.certificate)},
         {"certificate_rechecked", r.certificate_rechecked},
         {"criterion_applicable", r.criterion_applicable},
         {"sample_height", r.sample_height},
         {"gcd_inequality_checked", r.gcd_inequality_checked},
         {"gcd_inequality_violations", r.gcd_inequality_violations}};
  j["tau"] = r.tau ? to_json(*r.tau) : json(nullptr);
  return j;
}

json to_json(const HeightReport& r) {
  json places = json::array();
  for (const auto& [v, val] : r.per_place) places.push_back({{"place", v.to_string()}, {"value", num(val)}});
  return {{"point", point_to_json(r.point)},
          {"target", r.target},
          {"per_place", places},
          {"total", num(r.total)},
          {"proximity_S", num(r.proximity_S)},
          {"finite_part", num(r.finite_part)},
          {"finite_norm", to_string(r.finite_norm)}};
}

json points_to_json(const std::vector<ProjectivePoint>& points) {
  json a = json::array();
  for (const auto& p : points) a.push_back({{"coords", point_to_json(p)}, {"height", num(weil_height(p))}});
  return a;
}

void write_csv(std::ostream& os, const CriterionReport& r) {
  std::vector<std::string> cols;
  for (int i = 0; i <= r.ambient_dim; ++i) cols.push_back("coord_" + std::to_string(i));
  for (std::size_t j = 1; j <= r.divisor_count; ++j) cols.push_back("h_D" + std::to_string(j));
  for (std::size_t j = 1; j <= r.divisor_count; ++j) cols.push_back("m_D" + std::to_string(j));
  for (const char* c : {"min_h", "nearest_orbit", "second_proximity"}) cols.push_back(c);
  header(os, cols);
  for (const auto& row : r.rows) {
    for (const auto& c : row.x.coords()) os << c.to_string() << ',';
    for (auto v : row.h_d) os << cell(v) << ',';
    for (auto v : row.m_d) os << cell(v) << ',';
    os << cell(row.min_h) << ',';
    if (row.nearest_orbit) os << *row.nearest_orbit;
    os << ',' << cell(row.second_proximity) << '\n';
  }
}

void write_csv(std::ostream& os, const TauProfile& p) {
  std::vector<std::string> cols{"tier", "points", "tau_hat"};
  for (int i = 0; i <= p.ambient_dim; ++i) cols.push_back("witness_" + std::to_string(i));
  header(os, cols);
  for (const auto& r : p.rows) {
    os << r.tier << ',' << r.points << ',' << cell(r.tau_hat);
    for (int i = 0; i <= p.ambient_dim; ++i) {
      os << ',';
      if (i < static_cast<int>(r.witness.size())) os << r.witness[i];
    }
    os << '\n';
  }
}

void write_csv(std::ostream& os, const SectionCertificate& c) {
  std::vector<std::string> cols;
  for (int i = 0; i < c.form.nvars(); ++i) cols.push_back("e_" + std::to_string(i));
  cols.push_back("coeff");
  header(os, cols);
  for (const auto& [e, q] : c.form.terms()) {
    for (int x : e) os << x << ',';
    os << to_string(q) << '\n';
  }
}

void write_csv(std::ostream& os, const GcdPipelineReport& r) { write_csv(os, r.certificate); }

void write_csv(std::ostream& os, const HeightReport& r) {
  header(os, {"quantity", "place", "value"});
  for (const auto& [v, val] : r.per_place) os << "local," << v.to_string() << ',' << cell(val) << '\n';
  os << "total,," << cell(r.total) << '\n';
  os << "proximity_S,," << cell(r.proximity_S) << '\n';
  os << "finite_part,," << cell(r.finite_part) << '\n';
}

template <class R>
std::string render(const R& r, ReportFormat f) {
  if (f == ReportFormat::Json) return to_json(r).dump(2) + "\n";
  std::ostringstream os;
  write_csv(os, r);
  return os.str();
}

template <class R>
void emit_report(const R& r, ReportFormat f, const std::filesystem::path& path) {
  write_text_file(path, render(r, f));
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

#define DIOPH_REPORT(R)                                 \
  template std::string render<R>(const R&, ReportFormat); \
  template void emit_report<R>(const R&, ReportFormat, const std::filesystem::path&);
DIOPH_REPORT(CriterionReport)
DIOPH_REPORT(TauProfile)
DIOPH_REPORT(SectionCertificate)
DIOPH_REPORT(GcdPipelineReport)
DIOPH_REPORT(HeightReport)
#undef DIOPH_REPORT

}  // namespace dioph
