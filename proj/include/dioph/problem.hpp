#pragma once

// Problem files: JSON descriptions of (X, D_1..D_n), the target cycle, tau
// assumptions and enumeration bounds. Rationals are strings "p/q"; field
// elements of Q(sqrt(-m)) are "a|b" for a + b*omega.

#include "dioph/cycle.hpp"
#include "dioph/geometry.hpp"
#include "dioph/points.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dioph {

struct TauSpec {
  enum class Mode { None, Asserted, Estimate };
  Mode mode = Mode::None;
  /// asserted[i][j]: tau for orbit i against divisor j; a single value is
  /// broadcast to every pair.
  std::vector<std::vector<mpq_class>> asserted;
  std::optional<mpq_class> asserted_all;
  int line_degree = 1;
  std::optional<std::size_t> orbit;
};

struct EnumerationBounds {
  std::optional<std::int64_t> height_bound;
  std::optional<std::int64_t> box;
  int patch = 0;
  std::optional<std::int64_t> stability_box;
  std::vector<std::int64_t> tiers;
  long double h_min = 2.0L;
};

/// Integral points found on an auxiliary variety and projected to the
/// problem's ambient space (e.g. x^3 - 2y^3 = 1 inside P^2, mapped to P^1).
struct SweepSpec {
  int ambient_dim = 0;
  std::vector<HomogeneousForm> forms;
  int patch = 0;
  std::vector<int> projection;
};

struct GcdSpec {
  int e = 1;
  mpq_class delta = mpq_class(1, 2);
  std::int64_t sample_height = 100;
};

struct ProblemFile {
  BaseField field;
  int ambient_dim = 1;
  Variety variety;
  std::vector<Divisor> divisors;
  std::optional<ZeroCycle> cycle;
  std::vector<HomogeneousForm> exceptional;
  TauSpec tau;
  EnumerationBounds enumeration;
  std::optional<SweepSpec> sweep;
  GcdSpec gcd;
  std::string experiment;
  bool waive_snc = false;
  long double defect_bound = 1e-9L;
};

FieldElement parse_field_element(const BaseField& field, const std::string& text);
BaseField parse_field(const nlohmann::json& j);
nlohmann::json field_to_json(const BaseField& field);

/// {"terms": [{"exponents": [...], "coeff": "p/q"}, ...]}; nvars checked when >= 0.
HomogeneousForm parse_form(const nlohmann::json& j, int nvars = -1);
nlohmann::json form_to_json(const HomogeneousForm& f);

/// "1,-2,3" or "1|1,1" (quadratic field coordinates).
ProjectivePoint parse_point(const BaseField& field, const std::string& text);
nlohmann::json point_to_json(const ProjectivePoint& p);
ProjectivePoint point_from_json(const BaseField& field, const nlohmann::json& j);

Divisor parse_divisor(const nlohmann::json& j, int ambient_dim);

ProblemFile parse_problem(const nlohmann::json& j);
/// Throws Io if unreadable, InvalidInput on malformed JSON.
ProblemFile load_problem(const std::string& path);
nlohmann::json load_json(const std::string& path);

/// {"field", "ambient_dim", "height_bound" | "box", "patch", "variety": [forms]}.
/// A box selects affine integral points, a height bound projective points.
EnumerationSpec parse_enumeration_spec(const nlohmann::json& j);

/// The cycle the experiments target: the explicit one, else the intersection
/// of the (reduced) divisors.
ZeroCycle target_cycle(const ProblemFile& p);

}  // namespace dioph
