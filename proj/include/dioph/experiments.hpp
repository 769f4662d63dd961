#pragma once

// Experiment runners: tau profiles, the main criterion sweep and the gcd
// pipeline. Verdicts are constants measured over finite samples, never proofs.

#include "dioph/gcdbound.hpp"
#include "dioph/points.hpp"
#include "dioph/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dioph {

struct RunOptions {
  std::optional<std::int64_t> height_bound;
  std::optional<std::int64_t> box;
  bool waive_snc = false;
  bool peel = false;
};

struct TauRow {
  std::int64_t tier = 0;
  std::size_t points = 0;
  /// max m_inf(Y,x) / (e h(x)) over h(x) >= h_min with H(x) <= tier.
  std::optional<long double> tau_hat;
  std::vector<std::int64_t> witness;
};

struct TauProfile {
  std::string target;
  int ambient_dim = 1;
  int line_degree = 1;
  long double h_min = 2.0L;
  std::int64_t height_bound = 0;
  std::vector<std::string> exceptional;
  std::vector<TauRow> rows;
  /// Low-degree forms through the witnesses (peel mode only).
  std::vector<std::string> peel_candidates;

  std::optional<long double> final_tau() const;
};

/// Profile for the cycle y against O(e) over P^n(Q).
TauProfile tau_profile(const ZeroCycle& y, int e, std::int64_t height_bound,
                       std::vector<std::int64_t> tiers, long double h_min,
                       const std::vector<HomogeneousForm>& exceptional, bool peel);

TauProfile run_tau_estimate(const ProblemFile& problem, const RunOptions& opts = {});

/// Chordal log-proximity -log(|x ^ p| / (|x| |p|)) of x to a geometric point.
long double chordal_proximity(const std::vector<long double>& x, const ComplexPoint& p);

/// max over pairs of geometric points of log(2 / chordal distance).
long double orbit_separation(const ZeroCycle& y);

struct CriterionRow {
  ProjectivePoint x;
  std::vector<long double> h_d;
  std::vector<long double> m_d;
  long double min_h = 0;
  std::optional<std::size_t> nearest_orbit;
  std::optional<long double> second_proximity;
  bool exceptional = false;
};

struct CriterionReport {
  BaseField field;
  int ambient_dim = 1;
  std::size_t divisor_count = 0;
  std::vector<CriterionRow> rows;

  bool snc = true;
  bool snc_waived = false;
  std::vector<std::string> snc_failures;

  bool tau_asserted = true;
  /// tau[i][j] for orbit i against divisor j, as used for the hypothesis.
  std::vector<std::vector<long double>> tau;
  bool hypothesis_satisfied = false;

  std::int64_t box = 0;
  std::size_t enumerated = 0;
  IntegralityReport integrality;

  /// max over rows off the exceptional forms of min_j h(D_j, x).
  std::optional<long double> eq2_constant;
  std::optional<std::int64_t> stability_box;
  std::optional<long double> stability_constant;
  bool bounded_min_height = false;

  long double separation = 0;
  /// Max second-largest proximity over every enumerated candidate, kept or not.
  long double pigeonhole_constant = 0;
  std::size_t pigeonhole_violations = 0;
  /// max |m_inf(Y, x) - min_j m_inf(D_j, x)| over rows; nullopt without generators.
  std::optional<long double> min_decomposition_constant;
};

/// Throws HypothesisViolation when the divisor count is wrong and NotSNC
/// when the transversality check fails without a waiver.
CriterionReport run_main_criterion(const ProblemFile& problem, const RunOptions& opts = {});

struct GcdPipelineReport {
  SectionCertificate certificate;
  bool certificate_rechecked = false;
  /// (d/e^n)^(1/n) + delta < 1.
  bool criterion_applicable = false;
  std::int64_t sample_height = 0;
  std::size_t gcd_inequality_checked = 0;
  std::size_t gcd_inequality_violations = 0;
  std::optional<TauProfile> tau;
};

GcdPipelineReport run_gcd_pipeline(const ProblemFile& problem, const RunOptions& opts = {});

}  // namespace dioph
