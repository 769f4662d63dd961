#pragma once

// Weil heights, local heights and proximity functions. The local height of a
// form F at v is deg(F)*log max_i|x_i|_v - log|F(x)|_v (normalized by d_v/[K:Q]),
// so the divisor height decomposes exactly into its local terms.

#include "dioph/cycle.hpp"
#include "dioph/geometry.hpp"
#include "dioph/numfield.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dioph {

using PlaceSet = std::vector<Place>;

/// S = {infinity} for the field of x.
PlaceSet archimedean_only(const BaseField& field);

struct HeightReport {
  ProjectivePoint point;
  std::string target;
  std::vector<std::pair<Place, long double>> per_place;
  long double total = 0;
  long double proximity_S = 0;
  long double finite_part = 0;
  /// finite_part == log(finite_norm) / [K:Q], exactly.
  mpq_class finite_norm = 1;
};

long double weil_height(const ProjectivePoint& x);

/// Local height of the single form f; throws OnDivisor when f(x) = 0.
long double form_local_height(const HomogeneousForm& f, const Place& v, const ProjectivePoint& x);

long double local_height(const Divisor& d, const Place& v, const ProjectivePoint& x);
long double divisor_height(const Divisor& d, const ProjectivePoint& x);
long double proximity(const Divisor& d, const PlaceSet& s, const ProjectivePoint& x);

/// Per-place breakdown of h(D, x) over infinity and every place where F(x) is
/// not a unit.
HeightReport divisor_height_report(const Divisor& d, const PlaceSet& s, const ProjectivePoint& x);

/// Sum over v in S of min over the generators of their raw local heights.
/// Generators vanishing at x are skipped; all vanishing means x lies on Y.
long double cycle_proximity(const ZeroCycle& y, const PlaceSet& s, const ProjectivePoint& x);

/// Same min over every place of K; finite part computed exactly.
HeightReport gcd_height_report(const ZeroCycle& y, const PlaceSet& s, const ProjectivePoint& x);
long double gcd_height(const ZeroCycle& y, const ProjectivePoint& x);

/// h(D, x) - m_inf(D, x).
long double integrality_defect(const Divisor& d, const ProjectivePoint& x);

/// Coordinates conjugated (over Q(sqrt(-m)); identity over Q).
ProjectivePoint conjugate(const ProjectivePoint& x);

}  // namespace dioph
