#pragma once

// Zero-cycles: finite Galois-stable point sets such as the intersection of the
// divisors D_1..D_n, with exact data for points of degree <= 2 and numeric
// approximations for every geometric point.

#include "dioph/geometry.hpp"
#include "dioph/upoly.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace dioph {

using ComplexPoint = std::vector<std::complex<long double>>;

/// Coordinates in Q(sqrt(radicand)); radicand 0 for a rational point.
struct ExactPoint {
  long radicand = 0;
  std::vector<QuadNumber> coords;

  ExactPoint conj() const;
  ComplexPoint to_complex() const;
};

struct Orbit {
  int degree = 0;
  std::vector<ComplexPoint> points;
  std::optional<ExactPoint> exact;
  /// For orbits on P^1: the minimal polynomial of x0/x1.
  std::optional<QPoly> minimal_poly;
  /// Forms cutting out this orbit alone; empty means "use the cycle generators".
  std::vector<HomogeneousForm> generators;

  static Orbit from_exact(const ExactPoint& p);
};

struct ZeroCycle {
  int ambient_dim = 0;
  std::vector<Orbit> orbits;
  std::vector<HomogeneousForm> generators;

  int geometric_count() const;
  bool empty() const { return orbits.empty(); }
  /// The single orbit i as a cycle, with its own generators when known.
  ZeroCycle orbit_cycle(std::size_t i) const;
  /// All geometric points, flattened in orbit order.
  std::vector<ComplexPoint> geometric_points() const;

  static ZeroCycle rational_point(const ProjectivePoint& p);
};

/// The orbit of P^1 cut out by an irreducible q(x0/x1), with exact data for
/// degree <= 2 and generator q homogenized.
Orbit orbit_from_binary_poly(const QPoly& q);

/// Linear forms p_k x_i - p_i x_k cutting out a rational point.
std::vector<HomogeneousForm> point_generators(const ProjectivePoint& p);

/// Common zeros of n reduced divisors on P^n, n in {1, 2}.
ZeroCycle intersect_zero_cycle(const std::vector<Divisor>& divisors);

struct SncReport {
  bool snc = true;
  std::vector<std::string> failures;
};

/// Each D_j smooth at every geometric point of the cycle and the n gradients
/// independent there. Throws PrecisionExhausted rather than guessing.
SncReport snc_check(const std::vector<Divisor>& divisors, const ZeroCycle& cycle);

}  // namespace dioph
