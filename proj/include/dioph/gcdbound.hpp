#pragma once

// The auxiliary-form construction behind the gcd bound on P^n with L = O(e):
// pick (mu, s), impose vanishing to order mu along a zero-cycle, take an exact
// kernel vector, certify it independently and test the resulting height
// inequality on samples.

#include "dioph/cycle.hpp"
#include "dioph/geometry.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace dioph {

struct GcdParameters {
  int n = 0;
  int d = 0;
  int e = 0;
  mpq_class eta;
  mpq_class delta;
  int s_total = 0;
  int mu = 0;

  /// dim H^0(O(s_total)) = C(n + s_total, n).
  mpz_class sections() const;
  /// d * C(n + mu - 1, n): the number of conditions actually imposed.
  mpz_class exact_conditions() const;
  /// d * C(n + mu, n): the conservative count.
  mpz_class conservative_conditions() const;
  /// s_total / (mu * e).
  mpq_class ratio() const;
};

/// Lexicographically minimal (mu, s_total) with C(n+s,n) > d*C(n+mu,n) and
/// s/(mu e) <= (d/e^n)^(1/n) + delta, compared exactly.
GcdParameters choose_parameters(int n, int d, int e, const mpq_class& delta);

/// Both invariants: sections > exact_conditions and
/// ratio < (d/eta)^(1/n) + delta, decided in exact arithmetic.
bool parameters_sound(const GcdParameters& p);

struct MultiplicitySystem {
  int nvars = 0;
  int degree = 0;
  std::vector<Exponents> basis;
  std::vector<std::vector<mpq_class>> rows;
};

/// Rows over Q: for each orbit and each affine multi-index of order <= mu-1,
/// the derivative at one representative, split over a Q-basis of its field.
/// P^1 orbits without exact data use F(t,1) mod q^mu.
MultiplicitySystem build_multiplicity_system(const ZeroCycle& cycle, int s_total, int mu);

/// Nonzero primitive integral form in the kernel, from the first free column;
/// nullopt when the system has full column rank.
std::optional<HomogeneousForm> kernel_form(const MultiplicitySystem& system);

/// Every derivative of order <= mu-1 vanishes on the cycle (exact).
bool certify_multiplicity(const HomogeneousForm& f, const ZeroCycle& cycle, int mu);

struct BoundViolation {
  std::vector<std::int64_t> point;
  long double defect = 0;
};

struct SectionCertificate {
  GcdParameters params;
  ZeroCycle cycle;
  HomogeneousForm form;
  bool multiplicity_verified = false;
  mpq_class coeff_norm;
  /// log ||F||_1 + n log(s_total + 1)
  long double slack = 0;
  /// max over checked points of mu*h(Y,x) - s_total*h(x); nullopt before any check.
  std::optional<long double> empirical_constant;
  std::vector<std::int64_t> witness;
  std::size_t checked = 0;
  std::size_t exceptional = 0;
  std::size_t violation_count = 0;
  /// First violations only (at most 100).
  std::vector<BoundViolation> violations;
};

/// choose_parameters, build_multiplicity_system, kernel_form and
/// certify_multiplicity in sequence. Throws HypothesisViolation if no kernel.
SectionCertificate build_certificate(const ZeroCycle& cycle, int e, const mpq_class& delta);

/// Points with F(x) = 0 are counted as exceptional. Throws EmptySample.
void empirical_gcd_bound_check(SectionCertificate& cert, const std::vector<ProjectivePoint>& sample);

/// Same check over every primitive point of P^n(Q) with max|x_i| <= bound,
/// on the machine-integer path.
void empirical_gcd_bound_check_box(SectionCertificate& cert, std::int64_t bound);

struct VojtaExponents {
  int n = 0;
  long double vojta_exponent = 0;
  long double homo_exponent = 0;
  /// 2 (n!)^(1/n) >= n - 1, with the sign certified by directed rounding.
  bool corollary_holds = false;
  /// Enclosure of 2 (n!)^(1/n).
  long double lhs_lo = 0;
  long double lhs_hi = 0;
  int precision_bits = 0;

  long double runge_exponent(long double d, long double vol) const;
};

VojtaExponents vojta_gcd_exponents(int n);

}  // namespace dioph
