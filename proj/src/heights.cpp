#include "dioph/heights.hpp"

#include "dioph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dioph {

namespace {

/// max_i normalized log|x_i|_v over nonzero coordinates.
long double log_max(const Place& v, const ProjectivePoint& x) {
  long double m = -std::numeric_limits<long double>::infinity();
  for (const auto& c : x.coords()) {
    if (!c.is_zero()) m = std::max(m, normalized_log_abs(v, c));
  }
  return m;
}

/// v_P(x) in the sense of the max: min_i v_P(x_i) over nonzero coordinates.
int min_valuation(const Place& v, const ProjectivePoint& x) {
  int k = std::numeric_limits<int>::max();
  for (const auto& c : x.coords()) {
    if (!c.is_zero()) k = std::min(k, valuation(v, c));
  }
  return k;
}

FieldElement value_at(const HomogeneousForm& f, const ProjectivePoint& x) {
  return f.evaluate(std::span<const FieldElement>(x.coords()));
}

std::vector<mpz_class> primes_of(const mpq_class& q) {
  std::vector<mpz_class> out;
  for (const auto& [p, e] : factor(q.get_num())) out.push_back(p);
  if (q.get_den() != 1) {
    for (const auto& [p, e] : factor(q.get_den())) out.push_back(p);
  }
  return out;
}

void sort_unique(std::vector<mpz_class>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool integral_coefficients(const HomogeneousForm& f) {
  return std::all_of(f.terms().begin(), f.terms().end(),
                     [](const auto& t) { return t.second.get_den() == 1; });
}

mpq_class prime_power(const mpz_class& p, long k) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::labs(k)));
  return k >= 0 ? mpq_class(r) : mpq_class(mpz_class(1), r);
}

struct Generators {
  std::vector<const HomogeneousForm*> forms;
  std::vector<FieldElement> values;
};

Generators live_generators(const ZeroCycle& y, const ProjectivePoint& x) {
  if (y.generators.empty()) throw Error(ErrorKind::MissingGenerators, "zero-cycle has no generators");
  Generators g;
  for (const auto& f : y.generators) {
    if (f.nvars() != x.size()) throw Error(ErrorKind::DimensionMismatch, "generator vs point");
    FieldElement v = value_at(f, x);
    if (v.is_zero()) continue;
    g.forms.push_back(&f);
    g.values.push_back(std::move(v));
  }
  if (g.forms.empty()) throw Error(ErrorKind::OnCycle, x.to_string() + " lies on the cycle");
  return g;
}

long double arch_min(const Generators& g, const ProjectivePoint& x) {
  const Place inf = Place::infinity(x.field());
  const long double lm = log_max(inf, x);
  long double best = std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < g.forms.size(); ++i) {
    best = std::min(best, g.forms[i]->degree() * lm - normalized_log_abs(inf, g.values[i]));
  }
  return best;
}

/// min_i of raw local heights at a finite place, in units of (f/n) log p.
long finite_min_units(const Generators& g, const Place& v, const ProjectivePoint& x) {
  const int mx = min_valuation(v, x);
  long best = std::numeric_limits<long>::max();
  for (std::size_t i = 0; i < g.forms.size(); ++i) {
    best = std::min<long>(best, valuation(v, g.values[i]) - static_cast<long>(g.forms[i]->degree()) * mx);
  }
  return best;
}

}  // namespace

PlaceSet archimedean_only(const BaseField& field) { return {Place::infinity(field)}; }

ProjectivePoint conjugate(const ProjectivePoint& x) {
  std::vector<FieldElement> c;
  for (const auto& v : x.coords()) c.push_back(v.conj());
  return ProjectivePoint(std::move(c));
}

long double weil_height(const ProjectivePoint& x) {
  // Normal form has a P-unit coordinate at every finite place, so only the
  // archimedean term survives.
  return log_max(Place::infinity(x.field()), x);
}

long double form_local_height(const HomogeneousForm& f, const Place& v, const ProjectivePoint& x) {
  const FieldElement fx = value_at(f, x);
  if (fx.is_zero()) throw Error(ErrorKind::OnDivisor, x.to_string() + " lies on " + f.to_string());
  if (v.archimedean) return f.degree() * log_max(v, x) - normalized_log_abs(v, fx);
  const long units = valuation(v, fx) - static_cast<long>(f.degree()) * min_valuation(v, x);
  return static_cast<long double>(units) * v.residue_degree * log_abs(v.p) / x.field().degree();
}

long double local_height(const Divisor& d, const Place& v, const ProjectivePoint& x) {
  long double s = 0;
  for (const auto& c : d.components()) s += c.multiplicity * form_local_height(c.form, v, x);
  return s;
}

long double divisor_height(const Divisor& d, const ProjectivePoint& x) {
  return d.degree() * weil_height(x);
}

long double proximity(const Divisor& d, const PlaceSet& s, const ProjectivePoint& x) {
  long double total = 0;
  for (const auto& v : s) total += local_height(d, v, x);
  return total;
}

HeightReport divisor_height_report(const Divisor& d, const PlaceSet& s, const ProjectivePoint& x) {
  HeightReport r;
  r.point = x;
  r.target = "divisor";
  const Place inf = Place::infinity(x.field());
  std::vector<mpz_class> primes;
  std::vector<FieldElement> values;
  for (const auto& c : d.components()) {
    FieldElement v = value_at(c.form, x);
    if (v.is_zero()) throw Error(ErrorKind::OnDivisor, x.to_string() + " lies on " + c.form.to_string());
    auto ps = primes_of(v.norm());
    primes.insert(primes.end(), ps.begin(), ps.end());
    values.push_back(std::move(v));
  }
  sort_unique(primes);
  r.per_place.emplace_back(inf, local_height(d, inf, x));
  r.finite_norm = 1;
  for (const auto& p : primes) {
    for (const auto& pl : decompose_prime(x.field(), p)) {
      long units = 0;
      const int mx = min_valuation(pl, x);
      for (std::size_t i = 0; i < values.size(); ++i) {
        const auto& c = d.components()[i];
        units += c.multiplicity * (valuation(pl, values[i]) - static_cast<long>(c.form.degree()) * mx);
      }
      if (units == 0) continue;
      r.finite_norm *= prime_power(p, units * pl.residue_degree);
      r.per_place.emplace_back(pl, static_cast<long double>(units) * pl.residue_degree * log_abs(p) /
                                       x.field().degree());
    }
  }
  for (const auto& [pl, val] : r.per_place) {
    r.total += val;
    if (!pl.archimedean) r.finite_part += val;
  }
  for (const auto& v : s) r.proximity_S += local_height(d, v, x);
  return r;
}

long double cycle_proximity(const ZeroCycle& y, const PlaceSet& s, const ProjectivePoint& x) {
  const Generators g = live_generators(y, x);
  long double total = 0;
  for (const auto& v : s) {
    if (v.archimedean) {
      total += arch_min(g, x);
    } else {
      total += static_cast<long double>(finite_min_units(g, v, x)) * v.residue_degree * log_abs(v.p) /
               x.field().degree();
    }
  }
  return total;
}

HeightReport gcd_height_report(const ZeroCycle& y, const PlaceSet& s, const ProjectivePoint& x) {
  const Generators g = live_generators(y, x);
  HeightReport r;
  r.point = x;
  r.target = "cycle";
  const Place inf = Place::infinity(x.field());
  r.per_place.emplace_back(inf, arch_min(g, x));

  // With integral generators and a primitive point every finite term is >= 0
  // and nonzero only at primes dividing all the values.
  bool integral = std::all_of(g.forms.begin(), g.forms.end(),
                              [](const HomogeneousForm* f) { return integral_coefficients(*f); });
  std::vector<mpz_class> primes;
  if (integral) {
    mpz_class common = 0;
    for (const auto& v : g.values) {
      mpz_gcd(common.get_mpz_t(), common.get_mpz_t(), v.norm().get_num_mpz_t());
    }
    if (common != 1) {
      for (const auto& [p, e] : factor(common)) primes.push_back(p);
    }
  } else {
    for (const auto& v : g.values) {
      auto ps = primes_of(v.norm());
      primes.insert(primes.end(), ps.begin(), ps.end());
    }
    sort_unique(primes);
  }
  r.finite_norm = 1;
  for (const auto& p : primes) {
    for (const auto& pl : decompose_prime(x.field(), p)) {
      const long units = finite_min_units(g, pl, x);
      if (units == 0) continue;
      r.finite_norm *= prime_power(p, units * pl.residue_degree);
      r.per_place.emplace_back(pl, static_cast<long double>(units) * pl.residue_degree * log_abs(p) /
                                       x.field().degree());
    }
  }
  r.finite_part = log_abs(r.finite_norm) / x.field().degree();
  r.total = r.per_place.front().second + r.finite_part;
  for (const auto& v : s) {
    if (v.archimedean) {
      r.proximity_S += r.per_place.front().second;
      continue;
    }
    for (const auto& [pl, val] : r.per_place) {
      if (pl == v) r.proximity_S += val;
    }
  }
  return r;
}

long double gcd_height(const ZeroCycle& y, const ProjectivePoint& x) {
  return gcd_height_report(y, {}, x).total;
}

long double integrality_defect(const Divisor& d, const ProjectivePoint& x) {
  return divisor_height(d, x) - proximity(d, archimedean_only(x.field()), x);
}

}  // namespace dioph
