#include "dioph/problem.hpp"

#include "dioph/errors.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

namespace dioph {

using nlohmann::json;

namespace {

std::string as_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) {
    std::ostringstream os;
    os << j.dump();
    return os.str();
  }
  throw Error(ErrorKind::InvalidInput, "expected a number or rational string, got " + j.dump());
}

mpq_class parse_q(const json& j) { return parse_rational(as_text(j)); }

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j[key].is_null()) return fallback;
  try {
    return j[key].get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorKind::InvalidInput, std::string("bad value for '") + key + "'");
  }
}

std::optional<std::int64_t> opt_int(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_number()) throw Error(ErrorKind::InvalidInput, std::string("'") + key + "' must be a number");
  return static_cast<std::int64_t>(j[key].get<double>());
}

QuadNumber parse_quad(const std::string& text, long radicand) {
  const auto bar = text.find('|');
  if (bar == std::string::npos) return QuadNumber(parse_rational(text));
  const mpq_class a = parse_rational(text.substr(0, bar));
  const mpq_class b = parse_rational(text.substr(bar + 1));
  if (b == 0) return QuadNumber(a);
  if (radicand == 0) throw Error(ErrorKind::InvalidInput, "irrational coordinate without a radicand");
  return QuadNumber(a, b, radicand);
}

/// Generators of the product of the orbit ideals.
std::vector<HomogeneousForm> product_generators(const std::vector<Orbit>& orbits) {
  std::vector<HomogeneousForm> acc;
  for (const auto& o : orbits) {
    if (o.generators.empty()) return {};
    if (acc.empty()) {
      acc = o.generators;
      continue;
    }
    std::vector<HomogeneousForm> next;
    for (const auto& a : acc) {
      for (const auto& g : o.generators) next.push_back((a * g).primitive());
    }
    acc = std::move(next);
  }
  return acc;
}

ZeroCycle parse_cycle(const json& j, const ProblemFile& p) {
  if (!p.field.is_rational()) {
    throw Error(ErrorKind::Unsupported, "explicit cycles are supported over Q only");
  }
  ZeroCycle y;
  y.ambient_dim = p.ambient_dim;
  const int nv = p.ambient_dim + 1;
  for (const auto& oj : j.at("orbits")) {
    if (oj.contains("minimal_poly")) {
      if (nv != 2) throw Error(ErrorKind::InvalidInput, "minimal_poly orbits live on P^1");
      std::vector<mpq_class> c;
      for (const auto& v : oj["minimal_poly"]) c.push_back(parse_q(v));
      y.orbits.push_back(orbit_from_binary_poly(QPoly(c)));
      continue;
    }
    const long radicand = get_or<long>(oj, "radicand", 0);
    ExactPoint e;
    e.radicand = radicand;
    for (const auto& c : oj.at("coords")) e.coords.push_back(parse_quad(as_text(c), radicand));
    if (static_cast<int>(e.coords.size()) != nv) {
      throw Error(ErrorKind::DimensionMismatch, "orbit point has wrong number of coordinates");
    }
    bool irrational = false;
    for (const auto& c : e.coords) irrational = irrational || !c.is_rational();
    if (!irrational) {
      e.radicand = 0;
      std::vector<mpq_class> q;
      for (const auto& c : e.coords) q.push_back(c.a());
      y.orbits.push_back(ZeroCycle::rational_point(ProjectivePoint::from_rationals(q)).orbits[0]);
      continue;
    }
    if (nv == 2 && !e.coords[1].is_zero()) {
      // Minimal polynomial of t = x0/x1: t^2 - (r + r')t + r r'.
      const QuadNumber r = e.coords[0] / e.coords[1];
      const QuadNumber tr = r + r.conj();
      const QuadNumber nm = r * r.conj();
      y.orbits.push_back(orbit_from_binary_poly(QPoly({nm.a(), -tr.a(), mpq_class(1)})));
      continue;
    }
    y.orbits.push_back(Orbit::from_exact(e));
  }
  if (j.contains("generators")) {
    for (const auto& g : j["generators"]) y.generators.push_back(parse_form(g, nv));
  } else {
    y.generators = product_generators(y.orbits);
  }
  return y;
}

TauSpec parse_tau(const json& j) {
  TauSpec t;
  const std::string mode = get_or<std::string>(j, "mode", "none");
  if (mode == "assert") {
    t.mode = TauSpec::Mode::Asserted;
    if (j.contains("matrix")) {
      for (const auto& row : j["matrix"]) {
        std::vector<mpq_class> r;
        for (const auto& v : row) r.push_back(parse_q(v));
        t.asserted.push_back(std::move(r));
      }
    } else {
      t.asserted_all = parse_q(j.at("value"));
    }
  } else if (mode == "estimate") {
    t.mode = TauSpec::Mode::Estimate;
  } else if (mode != "none") {
    throw Error(ErrorKind::InvalidInput, "tau mode must be assert, estimate or none");
  }
  t.line_degree = get_or<int>(j, "line_degree", 1);
  if (j.contains("orbit")) t.orbit = j["orbit"].get<std::size_t>();
  if (t.line_degree < 1) throw Error(ErrorKind::InvalidInput, "line_degree must be positive");
  return t;
}

}  // namespace

FieldElement parse_field_element(const BaseField& field, const std::string& text) {
  const auto bar = text.find('|');
  if (bar == std::string::npos) return FieldElement(field, parse_rational(text));
  if (field.is_rational()) throw Error(ErrorKind::InvalidInput, "'|' coordinate over Q: " + text);
  return FieldElement(field, parse_rational(text.substr(0, bar)), parse_rational(text.substr(bar + 1)));
}

BaseField parse_field(const json& j) {
  if (j.is_null() || (j.is_string() && (j.get<std::string>() == "Q" || j.get<std::string>() == "QQ"))) {
    return BaseField::rationals();
  }
  if (j.is_object() && j.contains("imag_quadratic")) return BaseField::imag_quadratic(j["imag_quadratic"].get<int>());
  throw Error(ErrorKind::InvalidInput, "field must be \"Q\" or {\"imag_quadratic\": m}");
}

json field_to_json(const BaseField& field) {
  if (field.is_rational()) return "Q";
  return json{{"imag_quadratic", field.m()}};
}

HomogeneousForm parse_form(const json& j, int nvars) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array() || j["terms"].empty()) {
    throw Error(ErrorKind::InvalidInput, "form needs a nonempty \"terms\" array");
  }
  const auto& terms = j["terms"];
  const auto first = terms[0].at("exponents").get<Exponents>();
  const int nv = static_cast<int>(first.size());
  if (nvars >= 0 && nv != nvars) {
    throw Error(ErrorKind::DimensionMismatch, "form has " + std::to_string(nv) + " variables, expected " +
                                                  std::to_string(nvars));
  }
  HomogeneousForm f(nv, std::accumulate(first.begin(), first.end(), 0));
  for (const auto& t : terms) f.add_term(t.at("exponents").get<Exponents>(), parse_q(t.at("coeff")));
  return f;
}

json form_to_json(const HomogeneousForm& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back({{"exponents", e}, {"coeff", to_string(c)}});
  return json{{"terms", terms}};
}

ProjectivePoint parse_point(const BaseField& field, const std::string& text) {
  std::vector<FieldElement> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw Error(ErrorKind::InvalidInput, "empty coordinate in " + text);
    coords.push_back(parse_field_element(field, item));
  }
  if (coords.size() < 2) throw Error(ErrorKind::InvalidInput, "a point needs at least two coordinates");
  return ProjectivePoint(std::move(coords));
}

json point_to_json(const ProjectivePoint& p) {
  json a = json::array();
  for (const auto& c : p.coords()) a.push_back(c.to_string());
  return a;
}

ProjectivePoint point_from_json(const BaseField& field, const json& j) {
  std::vector<FieldElement> coords;
  for (const auto& c : j) coords.push_back(parse_field_element(field, as_text(c)));
  return ProjectivePoint(std::move(coords));
}

Divisor parse_divisor(const json& j, int ambient_dim) {
  std::vector<DivisorComponent> comps;
  if (j.contains("components")) {
    for (const auto& c : j["components"]) {
      comps.push_back({parse_form(c.at("form"), ambient_dim + 1), get_or<int>(c, "multiplicity", 1)});
    }
  } else {
    comps.push_back({parse_form(j, ambient_dim + 1), 1});
  }
  return Divisor(ambient_dim, std::move(comps));
}

ProblemFile parse_problem(const json& j) {
  try {
    ProblemFile p;
    p.field = parse_field(j.contains("field") ? j["field"] : json());
    p.ambient_dim = get_or<int>(j, "ambient_dim", 1);
    if (p.ambient_dim < 1) throw Error(ErrorKind::InvalidInput, "ambient_dim must be positive");
    const int nv = p.ambient_dim + 1;
    p.variety.ambient_dim = p.ambient_dim;
    if (j.contains("variety")) {
      for (const auto& f : j["variety"]) p.variety.defining_forms.push_back(parse_form(f, nv));
    }
    if (j.contains("divisors")) {
      for (const auto& d : j["divisors"]) p.divisors.push_back(parse_divisor(d, p.ambient_dim));
    }
    if (j.contains("exceptional")) {
      for (const auto& f : j["exceptional"]) p.exceptional.push_back(parse_form(f, nv));
    }
    if (j.contains("cycle")) p.cycle = parse_cycle(j["cycle"], p);
    if (j.contains("tau")) p.tau = parse_tau(j["tau"]);
    if (j.contains("enumeration")) {
      const auto& e = j["enumeration"];
      p.enumeration.height_bound = opt_int(e, "height_bound");
      p.enumeration.box = opt_int(e, "box");
      p.enumeration.patch = get_or<int>(e, "patch", 0);
      p.enumeration.stability_box = opt_int(e, "stability_box");
      if (e.contains("tiers")) p.enumeration.tiers = e["tiers"].get<std::vector<std::int64_t>>();
      p.enumeration.h_min = get_or<double>(e, "h_min", 2.0);
      if (p.enumeration.patch < 0 || p.enumeration.patch > p.ambient_dim) {
        throw Error(ErrorKind::InvalidInput, "enumeration patch out of range");
      }
    }
    if (j.contains("sweep")) {
      const auto& s = j["sweep"];
      SweepSpec sw;
      sw.ambient_dim = s.at("ambient_dim").get<int>();
      for (const auto& f : s.at("forms")) sw.forms.push_back(parse_form(f, sw.ambient_dim + 1));
      sw.patch = get_or<int>(s, "patch", 0);
      sw.projection = s.at("projection").get<std::vector<int>>();
      if (static_cast<int>(sw.projection.size()) != nv) {
        throw Error(ErrorKind::DimensionMismatch, "sweep projection must pick ambient_dim + 1 coordinates");
      }
      for (int k : sw.projection) {
        if (k < 0 || k > sw.ambient_dim) throw Error(ErrorKind::InvalidInput, "sweep projection index");
      }
      p.sweep = std::move(sw);
    }
    if (j.contains("gcd")) {
      const auto& g = j["gcd"];
      p.gcd.e = get_or<int>(g, "e", 1);
      if (g.contains("delta")) p.gcd.delta = parse_q(g["delta"]);
      p.gcd.sample_height = get_or<std::int64_t>(g, "sample_height", 100);
    }
    p.experiment = get_or<std::string>(j, "experiment", "");
    p.waive_snc = get_or<bool>(j, "waive_snc", false);
    p.defect_bound = get_or<double>(j, "defect_bound", 1e-9);
    return p;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("problem file: ") + e.what());
  }
}

EnumerationSpec parse_enumeration_spec(const json& j) {
  try {
    EnumerationSpec s;
    s.field = parse_field(j.contains("field") ? j["field"] : json());
    s.ambient_dim = get_or<int>(j, "ambient_dim", 1);
    if (s.ambient_dim < 1) throw Error(ErrorKind::InvalidInput, "ambient_dim must be positive");
    if (j.contains("height_bound") && !j["height_bound"].is_null()) {
      s.height_bound = static_cast<long double>(parse_q(j["height_bound"]).get_d());
    }
    s.box_bound = opt_int(j, "box");
    s.affine_patch = get_or<int>(j, "patch", 0);
    if (j.contains("variety")) {
      Variety v;
      v.ambient_dim = s.ambient_dim;
      for (const auto& f : j["variety"]) v.defining_forms.push_back(parse_form(f, s.ambient_dim + 1));
      s.variety = std::move(v);
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, std::string("enumeration spec: ") + e.what());
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

ProblemFile load_problem(const std::string& path) { return parse_problem(load_json(path)); }

ZeroCycle target_cycle(const ProblemFile& p) {
  if (p.cycle) return *p.cycle;
  if (p.divisors.empty()) throw Error(ErrorKind::NoTarget, "no cycle and no divisors");
  std::vector<Divisor> reduced;
  for (const auto& d : p.divisors) {
    std::vector<DivisorComponent> comps;
    for (const auto& c : d.components()) {
      bool seen = false;
      for (const auto& r : comps) seen = seen || r.form == c.form;
      if (!seen) comps.push_back({c.form, 1});
    }
    reduced.emplace_back(d.ambient_dim(), std::move(comps));
  }
  return intersect_zero_cycle(reduced);
}

}  // namespace dioph
