#pragma once

// Point enumeration: projective points by height, integral points of an
// affine patch in a box, and the D-integrality filter.

#include "dioph/geometry.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace dioph {

struct EnumerationSpec {
  int ambient_dim = 1;
  BaseField field;
  /// Multiplicative height bound H (points with H(x) <= H).
  std::optional<long double> height_bound;
  /// Per-coordinate bound B (absolute value over Q, norm over Q(sqrt(-m))).
  std::optional<std::int64_t> box_bound;
  std::optional<Variety> variety;
  int affine_patch = 0;

  /// Throws InvalidInput unless exactly one bound is set and the patch is valid.
  void validate() const;
};

/// Ordered by (height, lex); every point of height <= H exactly once.
std::vector<ProjectivePoint> enumerate_projective_points(const EnumerationSpec& spec);
void for_each_projective_point(const EnumerationSpec& spec,
                               const std::function<void(const ProjectivePoint&)>& f);

/// Integer coordinates (patch coordinate = 1) of every affine point of X in the
/// box, over Q. Solves each equation for the last free coordinate when it
/// occurs, so a box of 10^5 in two variables stays cheap.
void for_each_affine_integral_raw(const EnumerationSpec& spec,
                                  const std::function<void(std::span<const std::int64_t>)>& f);
std::vector<ProjectivePoint> enumerate_affine_integral(const EnumerationSpec& spec);

struct IntegralityReport {
  std::size_t seen = 0;
  std::size_t kept = 0;
  /// Largest defect over all points seen (points on D are counted in on_divisor).
  long double max_defect = 0;
  long double max_kept_defect = 0;
  std::size_t on_divisor = 0;
};

std::vector<ProjectivePoint> filter_D_integral(const std::vector<ProjectivePoint>& points,
                                               const Divisor& d, long double defect_bound,
                                               IntegralityReport* report = nullptr);

/// coord_0..coord_n,height
void write_points_csv(std::ostream& os, int ambient_dim, const std::vector<ProjectivePoint>& points);

}  // namespace dioph
