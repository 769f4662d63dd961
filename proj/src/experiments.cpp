#include "dioph/experiments.hpp"

#include "dioph/errors.hpp"
#include "dioph/fastq.hpp"
#include "dioph/heights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace dioph {

namespace {

std::vector<std::int64_t> default_tiers(std::int64_t h) {
  std::vector<std::int64_t> t;
  for (std::int64_t p = 10; p < h; p *= 10) t.push_back(p);
  t.push_back(h);
  return t;
}

bool on_any(const std::vector<HomogeneousForm>& forms, const ProjectivePoint& x) {
  for (const auto& f : forms) {
    if (f.evaluate(std::span<const FieldElement>(x.coords())).is_zero()) return true;
  }
  return false;
}

std::vector<std::string> peel(const std::vector<std::vector<std::int64_t>>& witnesses, int nvars) {
  std::vector<std::string> out;
  if (witnesses.size() < 2) return out;
  for (int deg = 1; deg <= 3; ++deg) {
    MultiplicitySystem sys;
    sys.nvars = nvars;
    sys.degree = deg;
    sys.basis = monomial_basis(nvars, deg);
    if (witnesses.size() < sys.basis.size()) break;
    for (const auto& w : witnesses) {
      std::vector<mpq_class> row;
      for (const auto& e : sys.basis) {
        mpz_class v = 1;
        for (int i = 0; i < nvars; ++i) {
          for (int k = 0; k < e[i]; ++k) v *= static_cast<long>(w[i]);
        }
        row.emplace_back(v);
      }
      sys.rows.push_back(std::move(row));
    }
    if (auto f = kernel_form(sys)) {
      out.push_back(f->to_string());
      break;
    }
  }
  return out;
}

/// Primitive, first nonzero coordinate positive; false for the zero vector.
bool normalize_int(std::vector<std::int64_t>& x) {
  std::int64_t g = 0;
  for (auto v : x) g = std::gcd(g, v < 0 ? -v : v);
  if (g == 0) return false;
  const auto first = std::find_if(x.begin(), x.end(), [](std::int64_t v) { return v != 0; });
  if (*first < 0) g = -g;
  for (auto& v : x) v /= g;
  return true;
}

std::vector<long double> to_ld(const std::vector<std::int64_t>& x) {
  return std::vector<long double>(x.begin(), x.end());
}

struct GeometricProximity {
  std::optional<std::size_t> nearest_orbit;
  std::optional<long double> second;
};

GeometricProximity geometric_proximity(const std::vector<long double>& x, const std::vector<ComplexPoint>& pts,
                                       const std::vector<std::size_t>& owner) {
  GeometricProximity g;
  std::optional<long double> best;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const long double v = chordal_proximity(x, pts[i]);
    if (!best || v > *best) {
      g.second = best;
      best = v;
      g.nearest_orbit = owner[i];
    } else if (!g.second || v > *g.second) {
      g.second = v;
    }
  }
  return g;
}

std::vector<std::size_t> point_owners(const ZeroCycle& y) {
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < y.orbits.size(); ++i) {
    for (std::size_t k = 0; k < y.orbits[i].points.size(); ++k) owner.push_back(i);
  }
  return owner;
}

/// Integer points the criterion examines, in problem coordinates, normalized.
void for_each_candidate(const ProblemFile& p, std::int64_t box,
                        const std::function<void(std::vector<std::int64_t>&)>& f) {
  if (p.sweep) {
    EnumerationSpec spec;
    spec.ambient_dim = p.sweep->ambient_dim;
    spec.box_bound = box;
    spec.affine_patch = p.sweep->patch;
    spec.variety = Variety{p.sweep->ambient_dim, p.sweep->forms};
    std::set<std::vector<std::int64_t>> found;
    for_each_affine_integral_raw(spec, [&](std::span<const std::int64_t> y) {
      std::vector<std::int64_t> x;
      for (int k : p.sweep->projection) x.push_back(y[k]);
      if (normalize_int(x)) found.insert(std::move(x));
    });
    for (auto x : found) f(x);
    return;
  }
  EnumerationSpec spec;
  spec.ambient_dim = p.ambient_dim;
  spec.box_bound = box;
  spec.affine_patch = p.enumeration.patch;
  if (!p.variety.defining_forms.empty()) spec.variety = p.variety;
  std::vector<std::int64_t> x(p.ambient_dim + 1);
  for_each_affine_integral_raw(spec, [&](std::span<const std::int64_t> y) {
    std::copy(y.begin(), y.end(), x.begin());
    normalize_int(x);
    f(x);
  });
}

struct CompiledComponent {
  fastq::Form form;
  int multiplicity;
};

struct SweepResult {
  std::size_t enumerated = 0;
  IntegralityReport integrality;
  std::vector<std::vector<std::int64_t>> kept;
  std::optional<long double> pigeonhole;
  std::size_t pigeonhole_violations = 0;
};

SweepResult sweep(const ProblemFile& p, std::int64_t box, const ZeroCycle& y, long double sep) {
  SweepResult r;
  std::vector<CompiledComponent> comps;
  bool fast = true;
  for (const auto& d : p.divisors) {
    for (const auto& c : d.components()) {
      auto f = fastq::Form::compile(c.form);
      if (!f) {
        fast = false;
        break;
      }
      comps.push_back({*f, c.multiplicity});
    }
  }
  // Candidates, swept or projected, have coordinates bounded by the box.
  for (const auto& c : comps) fast = fast && c.form.safe_for(box);
  const auto pts = y.geometric_points();
  const auto owner = point_owners(y);
  const bool pigeon = pts.size() >= 2;
  for_each_candidate(p, box, [&](std::vector<std::int64_t>& x) {
    ++r.enumerated;
    if (pigeon) {
      const auto g = geometric_proximity(to_ld(x), pts, owner);
      r.pigeonhole = std::max(r.pigeonhole.value_or(*g.second), *g.second);
      if (*g.second > sep + 1e-6L) ++r.pigeonhole_violations;
    }
    ++r.integrality.seen;
    long double defect = 0;
    bool on_divisor = false;
    if (fast) {
      for (const auto& c : comps) {
        const fastq::i128 v = c.form.eval(x.data());
        if (v == 0) {
          on_divisor = true;
          break;
        }
        defect += c.multiplicity * fastq::log_abs128(v);
      }
    } else {
      const ProjectivePoint pt = ProjectivePoint::from_integers(std::span<const std::int64_t>(x));
      try {
        for (const auto& d : p.divisors) defect += integrality_defect(d, pt);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::OnDivisor) throw;
        on_divisor = true;
      }
    }
    if (on_divisor) {
      ++r.integrality.on_divisor;
      return;
    }
    r.integrality.max_defect = std::max(r.integrality.max_defect, defect);
    if (defect <= p.defect_bound) {
      ++r.integrality.kept;
      r.integrality.max_kept_defect = std::max(r.integrality.max_kept_defect, defect);
      r.kept.push_back(x);
    }
  });
  return r;
}

std::optional<long double> eq2_of(const std::vector<CriterionRow>& rows) {
  std::optional<long double> c;
  for (const auto& row : rows) {
    if (row.exceptional) continue;
    c = c ? std::max(*c, row.min_h) : row.min_h;
  }
  return c;
}

CriterionRow make_row(const ProblemFile& p, const ZeroCycle& y, const std::vector<std::size_t>& owner,
                      const std::vector<std::int64_t>& xi) {
  CriterionRow row;
  row.x = ProjectivePoint::from_integers(std::span<const std::int64_t>(xi));
  const PlaceSet inf = archimedean_only(row.x.field());
  row.min_h = std::numeric_limits<long double>::infinity();
  for (const auto& d : p.divisors) {
    row.h_d.push_back(divisor_height(d, row.x));
    row.m_d.push_back(proximity(d, inf, row.x));
    row.min_h = std::min(row.min_h, row.h_d.back());
  }
  row.exceptional = on_any(p.exceptional, row.x);
  const auto g = geometric_proximity(to_ld(xi), y.geometric_points(), owner);
  row.nearest_orbit = g.nearest_orbit;
  row.second_proximity = g.second;
  return row;
}

bool below_one(const std::vector<std::vector<long double>>& tau) {
  if (tau.empty()) return false;
  for (const auto& row : tau) {
    for (auto v : row) {
      if (!(v < 1)) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<long double> TauProfile::final_tau() const {
  for (auto it = rows.rbegin(); it != rows.rend(); ++it) {
    if (it->tau_hat) return it->tau_hat;
  }
  return std::nullopt;
}

TauProfile tau_profile(const ZeroCycle& y, int e, std::int64_t height_bound, std::vector<std::int64_t> tiers,
                       long double h_min, const std::vector<HomogeneousForm>& exceptional, bool peel_mode) {
  if (y.empty()) throw Error(ErrorKind::NoTarget, "tau estimate needs a nonempty cycle");
  if (y.generators.empty()) throw Error(ErrorKind::MissingGenerators, "cycle without generators");
  if (height_bound < 1) throw Error(ErrorKind::InvalidInput, "height bound below 1");
  TauProfile prof;
  prof.ambient_dim = y.ambient_dim;
  prof.line_degree = e;
  prof.h_min = h_min;
  prof.height_bound = height_bound;
  for (const auto& g : y.generators) prof.target += (prof.target.empty() ? "" : ", ") + g.to_string();
  for (const auto& f : exceptional) prof.exceptional.push_back(f.to_string());
  if (tiers.empty()) tiers = default_tiers(height_bound);
  std::sort(tiers.begin(), tiers.end());
  tiers.erase(std::unique(tiers.begin(), tiers.end()), tiers.end());
  while (!tiers.empty() && tiers.back() > height_bound) tiers.pop_back();
  if (tiers.empty() || tiers.back() != height_bound) tiers.push_back(height_bound);

  const int n = y.ambient_dim;
  std::optional<long double> best;
  std::vector<std::int64_t> witness;
  std::size_t count = 0;
  std::size_t k = 0;
  auto close_tiers = [&](std::int64_t m) {
    while (k < tiers.size() && m > tiers[k]) {
      prof.rows.push_back({tiers[k], count, best, witness});
      ++k;
    }
  };
  auto consider = [&](long double ratio, const std::int64_t* x) {
    ++count;
    if (!best || ratio > *best) {
      best = ratio;
      witness.assign(x, x + n + 1);
    }
  };

  auto gens = fastq::GeneratorSet::compile(y.generators);
  std::vector<fastq::Form> exc;
  bool fast = gens && gens->safe_for(height_bound);
  for (const auto& f : exceptional) {
    auto c = fastq::Form::compile(f);
    if (!c || !c->safe_for(height_bound)) fast = false;
    else exc.push_back(*c);
  }
  if (fast) {
    const fastq::LogTable logs(height_bound);
    const bool small = gens->fits64(height_bound);
    fastq::for_each_projective_point(n, height_bound, [&](const std::int64_t* x, std::int64_t m) {
      close_tiers(m);
      const long double lm = logs(m);
      if (lm < h_min) return;
      for (const auto& f : exc) {
        if (f.eval(x) == 0) return;
      }
      const auto gh = small ? gens->evaluate64(x, lm, logs) : gens->evaluate(x, lm, logs);
      if (gh.on_cycle) return;
      // Cheap screen before the division; consider() makes the real comparison.
      if (best && gh.archimedean < *best * (e * lm) * (1 - 1e-12L)) {
        ++count;
        return;
      }
      consider(gh.archimedean / (e * lm), x);
    });
  } else {
    const PlaceSet inf = archimedean_only(BaseField());
    fastq::for_each_projective_point(n, height_bound, [&](const std::int64_t* x, std::int64_t m) {
      close_tiers(m);
      const ProjectivePoint p = ProjectivePoint::from_integers(std::span<const std::int64_t>(x, n + 1));
      const long double h = weil_height(p);
      if (h < h_min || on_any(exceptional, p)) return;
      long double prox = 0;
      try {
        prox = cycle_proximity(y, inf, p);
      } catch (const Error& err) {
        if (err.kind() == ErrorKind::OnCycle) return;
        throw;
      }
      consider(prox / (e * h), x);
    });
  }
  close_tiers(std::numeric_limits<std::int64_t>::max());
  if (peel_mode) {
    std::vector<std::vector<std::int64_t>> ws;
    for (const auto& r : prof.rows) {
      if (!r.witness.empty() && std::find(ws.begin(), ws.end(), r.witness) == ws.end()) ws.push_back(r.witness);
    }
    prof.peel_candidates = peel(ws, n + 1);
  }
  return prof;
}

TauProfile run_tau_estimate(const ProblemFile& problem, const RunOptions& opts) {
  if (!problem.field.is_rational()) throw Error(ErrorKind::Unsupported, "tau estimation runs over Q");
  ZeroCycle y = target_cycle(problem);
  if (y.empty()) throw Error(ErrorKind::NoTarget, "empty cycle");
  if (problem.tau.orbit) {
    if (*problem.tau.orbit >= y.orbits.size()) throw Error(ErrorKind::InvalidInput, "tau orbit index");
    y = y.orbit_cycle(*problem.tau.orbit);
  }
  const auto h = opts.height_bound ? opts.height_bound : problem.enumeration.height_bound;
  if (!h) throw Error(ErrorKind::InvalidInput, "tau estimation needs a height bound");
  return tau_profile(y, problem.tau.line_degree, *h, problem.enumeration.tiers, problem.enumeration.h_min,
                     problem.exceptional, opts.peel);
}

long double chordal_proximity(const std::vector<long double>& x, const ComplexPoint& p) {
  long double wedge = 0, nx = 0, np = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    nx += x[i] * x[i];
    np += std::norm(p[i]);
    for (std::size_t j = i + 1; j < x.size(); ++j) wedge += std::norm(x[i] * p[j] - x[j] * p[i]);
  }
  if (wedge == 0) return std::numeric_limits<long double>::infinity();
  return -0.5L * std::log(wedge / (nx * np));
}

long double orbit_separation(const ZeroCycle& y) {
  const auto pts = y.geometric_points();
  long double sep = 0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      long double wedge = 0, na = 0, nb = 0;
      for (std::size_t i = 0; i < pts[a].size(); ++i) {
        na += std::norm(pts[a][i]);
        nb += std::norm(pts[b][i]);
        for (std::size_t j = i + 1; j < pts[a].size(); ++j) {
          wedge += std::norm(pts[a][i] * pts[b][j] - pts[a][j] * pts[b][i]);
        }
      }
      const long double dist = std::sqrt(wedge / (na * nb));
      sep = std::max(sep, std::log(2.0L / dist));
    }
  }
  return sep;
}

CriterionReport run_main_criterion(const ProblemFile& p, const RunOptions& opts) {
  if (!p.field.is_rational()) throw Error(ErrorKind::Unsupported, "criterion sweeps run over Q");
  const int dim = p.variety.defining_forms.empty() ? p.ambient_dim : p.variety.dim();
  if (static_cast<int>(p.divisors.size()) != dim) {
    throw Error(ErrorKind::HypothesisViolation, "need " + std::to_string(dim) + " divisors, got " +
                                                    std::to_string(p.divisors.size()));
  }
  CriterionReport rep;
  rep.field = p.field;
  rep.ambient_dim = p.ambient_dim;
  rep.divisor_count = p.divisors.size();
  const ZeroCycle y = target_cycle(p);

  const auto snc = snc_check(p.divisors, y);
  rep.snc = snc.snc;
  rep.snc_failures = snc.failures;
  rep.snc_waived = p.waive_snc || opts.waive_snc;
  if (!rep.snc && !rep.snc_waived) throw Error(ErrorKind::NotSNC, "divisors are not SNC along the cycle");

  const std::size_t orbits = y.orbits.size();
  switch (p.tau.mode) {
    case TauSpec::Mode::Asserted:
      rep.tau_asserted = true;
      if (p.tau.asserted_all) {
        rep.tau.assign(orbits, std::vector<long double>(p.divisors.size(), p.tau.asserted_all->get_d()));
      } else {
        if (p.tau.asserted.size() != orbits) throw Error(ErrorKind::InvalidInput, "tau matrix needs one row per orbit");
        for (const auto& row : p.tau.asserted) {
          if (row.size() != p.divisors.size()) throw Error(ErrorKind::InvalidInput, "tau matrix row length");
          std::vector<long double> r;
          for (const auto& v : row) r.push_back(v.get_d());
          rep.tau.push_back(std::move(r));
        }
      }
      break;
    case TauSpec::Mode::Estimate: {
      rep.tau_asserted = false;
      const auto h = opts.height_bound ? opts.height_bound : p.enumeration.height_bound;
      if (!h) throw Error(ErrorKind::InvalidInput, "estimated tau needs a height bound");
      for (std::size_t i = 0; i < orbits; ++i) {
        std::vector<long double> r;
        for (const auto& d : p.divisors) {
          auto prof = tau_profile(y.orbit_cycle(i), d.degree(), *h, p.enumeration.tiers, p.enumeration.h_min,
                                  p.exceptional, false);
          r.push_back(prof.final_tau().value_or(std::numeric_limits<long double>::infinity()));
        }
        rep.tau.push_back(std::move(r));
      }
      break;
    }
    case TauSpec::Mode::None:
      rep.tau_asserted = false;
      break;
  }
  rep.hypothesis_satisfied = below_one(rep.tau) && (rep.snc || rep.snc_waived);

  const auto box = opts.box ? opts.box : p.enumeration.box;
  if (!box) throw Error(ErrorKind::InvalidInput, "criterion needs an enumeration box");
  rep.box = *box;
  rep.separation = orbit_separation(y);
  const auto owner = point_owners(y);
  SweepResult sw = sweep(p, *box, y, rep.separation);
  rep.enumerated = sw.enumerated;
  rep.integrality = sw.integrality;
  rep.pigeonhole_violations = sw.pigeonhole_violations;
  rep.pigeonhole_constant = sw.pigeonhole.value_or(0);
  const PlaceSet inf = archimedean_only(p.field);
  bool have_generators = !y.generators.empty();
  for (const auto& xi : sw.kept) {
    CriterionRow row = make_row(p, y, owner, xi);
    if (have_generators) {
      const long double mm = *std::min_element(row.m_d.begin(), row.m_d.end());
      const long double diff = std::fabs(cycle_proximity(y, inf, row.x) - mm);
      rep.min_decomposition_constant = std::max(rep.min_decomposition_constant.value_or(0), diff);
    }
    rep.rows.push_back(std::move(row));
  }
  rep.eq2_constant = eq2_of(rep.rows);

  const auto stab = p.enumeration.stability_box;
  if (stab && *stab > *box) {
    rep.stability_box = *stab;
    SweepResult s2 = sweep(p, *stab, y, rep.separation);
    std::vector<CriterionRow> rows2;
    for (const auto& xi : s2.kept) rows2.push_back(make_row(p, y, owner, xi));
    rep.stability_constant = eq2_of(rows2);
    const long double c1 = rep.eq2_constant.value_or(0), c2 = rep.stability_constant.value_or(0);
    rep.bounded_min_height = c2 - c1 <= 1e-3L;
  }
  return rep;
}

GcdPipelineReport run_gcd_pipeline(const ProblemFile& p, const RunOptions& opts) {
  GcdPipelineReport rep;
  const ZeroCycle y = target_cycle(p);
  rep.certificate = build_certificate(y, p.gcd.e, p.gcd.delta);
  SectionCertificate& cert = rep.certificate;
  rep.certificate_rechecked = !cert.form.is_zero() && certify_multiplicity(cert.form, y, cert.params.mu);

  const auto& pr = cert.params;
  {
    const mpq_class one_minus = 1 - pr.delta;
    mpq_class lhs = 1, vol = 1;
    for (int i = 0; i < pr.n; ++i) {
      lhs *= one_minus;
      vol *= pr.e;
    }
    rep.criterion_applicable = one_minus > 0 && lhs > mpq_class(pr.d) / vol;
  }

  rep.sample_height = opts.height_bound.value_or(p.gcd.sample_height);
  bool done = false;
  if (p.field.is_rational()) {
    try {
      empirical_gcd_bound_check_box(cert, rep.sample_height);
      done = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Unsupported) throw;
    }
  }
  EnumerationSpec spec;
  spec.ambient_dim = pr.n;
  spec.field = p.field;
  if (!done) {
    spec.height_bound = static_cast<long double>(rep.sample_height);
    empirical_gcd_bound_check(cert, enumerate_projective_points(spec));
  }

  // m_inf(Y, x) <= h(Y, x) pointwise, on a smaller exact sample.
  spec.height_bound = static_cast<long double>(std::min<std::int64_t>(rep.sample_height, pr.n == 1 ? 1000 : 30));
  spec.box_bound.reset();
  const PlaceSet inf = archimedean_only(p.field);
  for_each_projective_point(spec, [&](const ProjectivePoint& x) {
    long double m = 0, g = 0;
    try {
      m = cycle_proximity(y, inf, x);
      g = gcd_height(y, x);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::OnCycle) return;
      throw;
    }
    ++rep.gcd_inequality_checked;
    if (m > g + 1e-12L) ++rep.gcd_inequality_violations;
  });

  if (p.tau.mode == TauSpec::Mode::Estimate && (opts.height_bound || p.enumeration.height_bound)) {
    rep.tau = run_tau_estimate(p, opts);
  }
  return rep;
}

}  // namespace dioph
