#include "dioph/gcdbound.hpp"

#include "dioph/errors.hpp"
#include "dioph/fastq.hpp"
#include "dioph/heights.hpp"
#include "dioph/upoly.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace dioph {

namespace {

mpq_class qpow(const mpq_class& x, int k) {
  mpq_class r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

/// r <= c + delta where c = (target)^(1/n) >= 0, i.e. r - delta <= 0 or
/// (r - delta)^n <= target. With strict, "<" instead.
bool ratio_within(const mpq_class& r, const mpq_class& delta, const mpq_class& target, int n, bool strict) {
  const mpq_class t = r - delta;
  if (t < 0) return true;
  if (t == 0) return !strict || target > 0;
  const mpq_class lhs = qpow(t, n);
  return strict ? lhs < target : lhs <= target;
}

/// All multi-indices in k variables of total order <= max_order, by order
/// and then graded-lex.
std::vector<Exponents> multi_indices(int k, int max_order) {
  std::vector<Exponents> out;
  for (int o = 0; o <= max_order; ++o) {
    auto b = monomial_basis(k, o);
    out.insert(out.end(), b.begin(), b.end());
  }
  if (k == 0 && max_order >= 0) out = {Exponents{}};
  return out;
}

QuadNumber qpow_quad(const QuadNumber& x, int k) {
  QuadNumber r(1);
  for (int i = 0; i < k; ++i) r = r * x;
  return r;
}

mpz_class falling(int b, int a) {
  mpz_class r = 1;
  for (int i = 0; i < a; ++i) r *= (b - i);
  return r;
}

QPoly binary_to_poly(const HomogeneousForm& f) {
  std::vector<mpq_class> c(f.degree() + 1);
  for (const auto& [e, v] : f.terms()) c[e[0]] = v;
  return QPoly(std::move(c));
}

QPoly poly_pow(const QPoly& q, int k) {
  QPoly r({mpq_class(1)});
  for (int i = 0; i < k; ++i) r = r * q;
  return r;
}

void rows_for_exact_orbit(const ExactPoint& p, int nvars, const std::vector<Exponents>& basis, int mu,
                          std::vector<std::vector<mpq_class>>& rows) {
  int k = nvars - 1;
  while (p.coords[k].is_zero()) --k;
  std::vector<QuadNumber> a;
  std::vector<int> vars;
  for (int i = 0; i < nvars; ++i) {
    if (i == k) continue;
    a.push_back(p.coords[i] / p.coords[k]);
    vars.push_back(i);
  }
  const bool irrational = p.radicand != 0;
  for (const auto& alpha : multi_indices(nvars - 1, mu - 1)) {
    std::vector<mpq_class> re(basis.size()), im(basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
      QuadNumber v(1);
      bool zero = false;
      for (std::size_t j = 0; j < vars.size(); ++j) {
        const int b = basis[c][vars[j]];
        if (b < alpha[j]) {
          zero = true;
          break;
        }
        v = v * QuadNumber(mpq_class(falling(b, alpha[j]))) * qpow_quad(a[j], b - alpha[j]);
      }
      if (zero) continue;
      re[c] = v.a();
      im[c] = v.b();
    }
    rows.push_back(std::move(re));
    if (irrational) rows.push_back(std::move(im));
  }
}

void rows_for_binary_orbit(const QPoly& q, const std::vector<Exponents>& basis, int mu,
                           std::vector<std::vector<mpq_class>>& rows) {
  const QPoly qm = poly_pow(q.monic(), mu);
  const int width = qm.degree();
  std::vector<std::vector<mpq_class>> block(width, std::vector<mpq_class>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c) {
    std::vector<mpq_class> t(basis[c][0] + 1);
    t.back() = 1;
    const QPoly r = divmod(QPoly(std::move(t)), qm).second;
    for (std::size_t i = 0; i < r.c.size(); ++i) block[i][c] = r.c[i];
  }
  for (auto& row : block) rows.push_back(std::move(row));
}

}  // namespace

mpz_class GcdParameters::sections() const { return binomial(n + s_total, n); }
mpz_class GcdParameters::exact_conditions() const { return d * binomial(n + mu - 1, n); }
mpz_class GcdParameters::conservative_conditions() const { return d * binomial(n + mu, n); }
mpq_class GcdParameters::ratio() const {
  mpq_class r(s_total, static_cast<long>(mu) * e);
  r.canonicalize();
  return r;
}

GcdParameters choose_parameters(int n, int d, int e, const mpq_class& delta) {
  if (n < 1 || d < 1 || e < 1 || delta <= 0) {
    throw Error(ErrorKind::InvalidInput, "choose_parameters needs n, d, e >= 1 and delta > 0");
  }
  GcdParameters p;
  p.n = n;
  p.d = d;
  p.e = e;
  p.delta = delta;
  const mpq_class vol = qpow(mpq_class(e), n);
  p.eta = delta < 2 ? mpq_class(vol * (1 - delta / 2)) : mpq_class(vol / 2);
  const mpq_class target = mpq_class(d) / vol;
  for (int mu = 1;; ++mu) {
    const mpz_class need = d * binomial(n + mu, n);
    int s = 1;
    while (binomial(n + s, n) <= need) ++s;
    mpq_class r(s, static_cast<long>(mu) * e);
    r.canonicalize();
    if (ratio_within(r, delta, target, n, false)) {
      p.mu = mu;
      p.s_total = s;
      return p;
    }
  }
}

bool parameters_sound(const GcdParameters& p) {
  if (p.sections() <= p.exact_conditions()) return false;
  if (p.eta <= 0 || p.eta >= qpow(mpq_class(p.e), p.n)) return false;
  return ratio_within(p.ratio(), p.delta, mpq_class(p.d) / p.eta, p.n, true);
}

MultiplicitySystem build_multiplicity_system(const ZeroCycle& cycle, int s_total, int mu) {
  if (mu < 1 || s_total < 0) throw Error(ErrorKind::InvalidInput, "need mu >= 1 and s_total >= 0");
  MultiplicitySystem sys;
  sys.nvars = cycle.ambient_dim + 1;
  sys.degree = s_total;
  sys.basis = monomial_basis(sys.nvars, s_total);
  for (const auto& o : cycle.orbits) {
    if (o.exact) {
      rows_for_exact_orbit(*o.exact, sys.nvars, sys.basis, mu, sys.rows);
    } else if (o.minimal_poly && sys.nvars == 2) {
      rows_for_binary_orbit(*o.minimal_poly, sys.basis, mu, sys.rows);
    } else {
      throw Error(ErrorKind::UnsupportedOrbit,
                  "orbit of degree " + std::to_string(o.degree) + " has no exact description");
    }
  }
  for (auto& row : sys.rows) {
    if (row.size() != sys.basis.size()) row.resize(sys.basis.size());
  }
  return sys;
}

std::optional<HomogeneousForm> kernel_form(const MultiplicitySystem& system) {
  const std::size_t cols = system.basis.size();
  std::vector<std::vector<mpz_class>> a;
  for (const auto& row : system.rows) {
    mpz_class den = 1;
    for (const auto& v : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    std::vector<mpz_class> r(cols);
    bool nonzero = false;
    for (std::size_t j = 0; j < cols; ++j) {
      mpq_class t = row[j] * den;
      r[j] = t.get_num();
      nonzero = nonzero || r[j] != 0;
    }
    if (nonzero) a.push_back(std::move(r));
  }
  // Fraction-free (Bareiss) forward elimination.
  std::vector<std::size_t> pivots;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < a.size(); ++col) {
    std::size_t piv = r;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      for (std::size_t j = col + 1; j < cols; ++j) {
        a[i][j] = (a[r][col] * a[i][j] - a[i][col] * a[r][j]);
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[r][col];
    pivots.push_back(col);
    ++r;
  }
  if (pivots.size() == cols) return std::nullopt;
  std::size_t free_col = 0;
  for (std::size_t pi = 0; pi < pivots.size() && pivots[pi] == free_col; ++pi) ++free_col;
  std::vector<mpq_class> x(cols);
  x[free_col] = 1;
  for (std::size_t i = pivots.size(); i-- > 0;) {
    const std::size_t pc = pivots[i];
    mpq_class s = 0;
    for (std::size_t j = pc + 1; j < cols; ++j) {
      if (x[j] != 0 && a[i][j] != 0) s += mpq_class(a[i][j]) * x[j];
    }
    x[pc] = -s / mpq_class(a[i][pc]);
  }
  // Soundness: the original rows annihilate x.
  for (const auto& row : system.rows) {
    mpq_class s = 0;
    for (std::size_t j = 0; j < cols; ++j) s += row[j] * x[j];
    if (s != 0) throw Error(ErrorKind::PrecisionExhausted, "kernel vector failed verification");
  }
  HomogeneousForm f(system.nvars, system.degree);
  for (std::size_t j = 0; j < cols; ++j) f.add_term(system.basis[j], x[j]);
  return f.primitive();
}

bool certify_multiplicity(const HomogeneousForm& f, const ZeroCycle& cycle, int mu) {
  const int nv = cycle.ambient_dim + 1;
  if (f.nvars() != nv) throw Error(ErrorKind::DimensionMismatch, "form vs cycle");
  if (f.is_zero()) return true;
  for (const auto& o : cycle.orbits) {
    if (o.exact) {
      for (const auto& alpha : multi_indices(nv, mu - 1)) {
        const HomogeneousForm g = f.derivative(alpha);
        if (g.is_zero()) continue;
        if (!g.evaluate(std::span<const QuadNumber>(o.exact->coords)).is_zero()) return false;
      }
    } else if (o.minimal_poly && nv == 2) {
      const QPoly qm = poly_pow(o.minimal_poly->monic(), mu);
      if (!divmod(binary_to_poly(f), qm).second.is_zero()) return false;
    } else {
      throw Error(ErrorKind::UnsupportedOrbit, "cannot certify a numeric orbit exactly");
    }
  }
  return true;
}

SectionCertificate build_certificate(const ZeroCycle& cycle, int e, const mpq_class& delta) {
  if (cycle.empty()) throw Error(ErrorKind::NoTarget, "empty cycle");
  SectionCertificate cert;
  cert.cycle = cycle;
  cert.params = choose_parameters(cycle.ambient_dim, cycle.geometric_count(), e, delta);
  const auto sys = build_multiplicity_system(cycle, cert.params.s_total, cert.params.mu);
  auto f = kernel_form(sys);
  if (!f) throw Error(ErrorKind::HypothesisViolation, "multiplicity system has no kernel");
  cert.form = *f;
  cert.multiplicity_verified = certify_multiplicity(cert.form, cycle, cert.params.mu);
  cert.coeff_norm = cert.form.coeff_norm1();
  cert.slack = log_abs(cert.coeff_norm) + cert.params.n * std::log(static_cast<long double>(cert.params.s_total + 1));
  return cert;
}

namespace {

void record(SectionCertificate& cert, long double defect, std::vector<std::int64_t> point) {
  ++cert.checked;
  if (!cert.empirical_constant || defect > *cert.empirical_constant) {
    cert.empirical_constant = defect;
    cert.witness = point;
  }
  if (defect > cert.slack + 1e-9L) {
    ++cert.violation_count;
    if (cert.violations.size() < 100) cert.violations.push_back({std::move(point), defect});
  }
}

}  // namespace

void empirical_gcd_bound_check(SectionCertificate& cert, const std::vector<ProjectivePoint>& sample) {
  if (sample.empty()) throw Error(ErrorKind::EmptySample, "no sample points");
  const int mu = cert.params.mu;
  const int s = cert.params.s_total;
  for (const auto& x : sample) {
    if (cert.form.evaluate(std::span<const FieldElement>(x.coords())).is_zero()) {
      ++cert.exceptional;
      continue;
    }
    const long double defect = mu * gcd_height(cert.cycle, x) - s * weil_height(x);
    std::vector<std::int64_t> pt;
    if (x.field().is_rational()) {
      for (const auto& c : x.integer_coords()) pt.push_back(c.fits_slong_p() ? c.get_si() : 0);
    }
    record(cert, defect, std::move(pt));
  }
}

void empirical_gcd_bound_check_box(SectionCertificate& cert, std::int64_t bound) {
  if (bound < 1) throw Error(ErrorKind::EmptySample, "box bound below 1");
  auto gens = fastq::GeneratorSet::compile(cert.cycle.generators);
  auto f = fastq::Form::compile(cert.form);
  if (!gens || !f || !gens->safe_for(bound) || !f->safe_for(bound)) {
    throw Error(ErrorKind::Unsupported, "forms do not fit the machine-integer path");
  }
  const fastq::LogTable logs(std::max<std::int64_t>(bound, 1 << 16));
  const int mu = cert.params.mu;
  const int s = cert.params.s_total;
  const int n = cert.params.n;
  const bool small = gens->fits64(bound) && f->fits64(bound);
  auto visit = [&](auto eval_f, auto eval_gens) {
    fastq::for_each_projective_point(n, bound, [&](const std::int64_t* x, std::int64_t m) {
      if (eval_f(x) == 0) {
        ++cert.exceptional;
        return;
      }
      const long double lm = logs(m);
      const auto gh = eval_gens(x, lm);
      const long double defect = mu * (gh.archimedean + gh.finite) - s * lm;
      if (cert.empirical_constant && defect <= *cert.empirical_constant && defect <= cert.slack + 1e-9L) {
        ++cert.checked;
        return;
      }
      record(cert, defect, std::vector<std::int64_t>(x, x + n + 1));
    });
  };
  if (small) {
    visit([&](const std::int64_t* x) { return f->eval64(x); },
          [&](const std::int64_t* x, long double lm) { return gens->evaluate64(x, lm, logs); });
  } else {
    visit([&](const std::int64_t* x) { return f->eval(x); },
          [&](const std::int64_t* x, long double lm) { return gens->evaluate(x, lm, logs); });
  }
}

long double VojtaExponents::runge_exponent(long double d, long double vol) const {
  return std::pow(d / vol, 1.0L / n);
}

VojtaExponents vojta_gcd_exponents(int n) {
  if (n < 2) throw Error(ErrorKind::Undefined, "exponents need n >= 2");
  VojtaExponents out;
  out.n = n;
  out.vojta_exponent = 1.0L / (n - 1);
  const mpz_class fact = factorial(n);

  // Exact form of the corollary inequality: (n-1)^n <= 2^n n!.
  mpz_class lhs, two_n;
  mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(n - 1), static_cast<unsigned long>(n));
  mpz_ui_pow_ui(two_n.get_mpz_t(), 2, static_cast<unsigned long>(n));
  const bool exact_holds = lhs <= two_n * fact;

  for (mpfr_prec_t prec = 64; prec <= 4096; prec *= 2) {
    mpfr_t lo, hi, mid;
    mpfr_inits2(prec, lo, hi, mid, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_z(lo, fact.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(hi, fact.get_mpz_t(), MPFR_RNDU);
    mpfr_rootn_ui(lo, lo, static_cast<unsigned long>(n), MPFR_RNDD);
    mpfr_rootn_ui(hi, hi, static_cast<unsigned long>(n), MPFR_RNDU);
    mpfr_mul_ui(lo, lo, 2, MPFR_RNDD);
    mpfr_mul_ui(hi, hi, 2, MPFR_RNDU);
    mpfr_set_z(mid, fact.get_mpz_t(), MPFR_RNDN);
    mpfr_rootn_ui(mid, mid, static_cast<unsigned long>(n), MPFR_RNDN);
    mpfr_mul_ui(mid, mid, 2, MPFR_RNDN);
    const int lo_cmp = mpfr_cmp_ui(lo, static_cast<unsigned long>(n - 1));
    const int hi_cmp = mpfr_cmp_ui(hi, static_cast<unsigned long>(n - 1));
    out.lhs_lo = mpfr_get_ld(lo, MPFR_RNDD);
    out.lhs_hi = mpfr_get_ld(hi, MPFR_RNDU);
    out.homo_exponent = 1.0L / mpfr_get_ld(mid, MPFR_RNDN);
    out.precision_bits = static_cast<int>(prec);
    mpfr_clears(lo, hi, mid, static_cast<mpfr_ptr>(nullptr));
    if (lo_cmp >= 0 || hi_cmp < 0) {
      out.corollary_holds = lo_cmp >= 0;
      if (out.corollary_holds != exact_holds) {
        throw Error(ErrorKind::PrecisionExhausted, "interval and exact evaluations disagree");
      }
      return out;
    }
  }
  throw Error(ErrorKind::PrecisionExhausted, "could not separate 2 (n!)^(1/n) from n - 1");
}

}  // namespace dioph
