#include "dioph/cycle.hpp"

#include "dioph/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dioph {

namespace {

using C = std::complex<long double>;
using RationalMatrix = std::vector<std::vector<mpq_class>>;

ComplexPoint normalized(ComplexPoint p) {
  long double m = 0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (std::abs(p[i]) > m) {
      m = std::abs(p[i]);
      at = i;
    }
  }
  if (m == 0) return p;
  const C s = p[at];
  for (auto& v : p) v /= s;
  return p;
}

/// sqrt(q) as an exact QuadNumber.
QuadNumber sqrt_rational(const mpq_class& q) {
  if (q == 0) return QuadNumber();
  mpz_class n = q.get_num() * q.get_den();
  const int sign = n < 0 ? -1 : 1;
  n = abs(n);
  mpz_class square = 1, free = 1;
  for (const auto& [p, e] : factor(n)) {
    for (int i = 0; i < e / 2; ++i) square *= p;
    if (e % 2) free *= p;
  }
  mpq_class coef(square, q.get_den());
  coef.canonicalize();
  const long d = sign * free.get_si();
  if (d == 1) return QuadNumber(coef);
  return QuadNumber(0, coef, d);
}

/// Roots of a quadratic (low degree first coefficients) as exact numbers; the
/// "+" root first.
std::pair<QuadNumber, QuadNumber> quadratic_roots(const QPoly& q) {
  const mpq_class& c = q.c[0];
  const mpq_class& b = q.c[1];
  const mpq_class& a = q.c[2];
  QuadNumber s = sqrt_rational(b * b - 4 * a * c);
  QuadNumber two_a(mpq_class(2 * a));
  QuadNumber mb(mpq_class(-b));
  return {(mb + s) / two_a, (mb - s) / two_a};
}

HomogeneousForm homogenize_binary(const QPoly& q) {
  const int g = q.degree();
  HomogeneousForm f(2, g);
  for (int i = 0; i <= g; ++i) f.add_term({i, g - i}, q.c[i]);
  return f.primitive();
}

Orbit orbit_from_binary_factor_impl(const QPoly& q) {
  Orbit o;
  o.degree = q.degree();
  o.minimal_poly = q;
  o.generators = {homogenize_binary(q)};
  if (o.degree == 1) {
    ExactPoint p;
    p.coords = {QuadNumber(mpq_class(-q.c[0] / q.c[1])), QuadNumber(1)};
    Orbit e = Orbit::from_exact(p);
    e.minimal_poly = q;
    e.generators = o.generators;
    return e;
  }
  if (o.degree == 2) {
    auto [r, s] = quadratic_roots(q);
    ExactPoint p;
    p.radicand = r.radicand();
    p.coords = {r, QuadNumber(1)};
    Orbit e = Orbit::from_exact(p);
    e.minimal_poly = q;
    e.generators = o.generators;
    return e;
  }
  for (const auto& r : complex_roots(q)) o.points.push_back(normalized({r, C(1)}));
  return o;
}

ZeroCycle intersect_p1(const Divisor& d) {
  const HomogeneousForm f = d.product_form().primitive();
  std::vector<mpq_class> coeffs(f.degree() + 1);
  for (const auto& [e, c] : f.terms()) coeffs[e[0]] = c;
  QPoly poly(coeffs);
  ZeroCycle out;
  out.ambient_dim = 1;
  out.generators = {f};
  if (poly.degree() < f.degree()) {
    out.orbits.push_back(Orbit::from_exact(ExactPoint{0, {QuadNumber(1), QuadNumber(0)}}));
    out.orbits.back().generators = {HomogeneousForm::variable(2, 1)};
  }
  if (poly.degree() >= 1) {
    for (const auto& q : factor_squarefree(squarefree_part(poly))) {
      out.orbits.push_back(orbit_from_binary_factor_impl(q));
    }
  }
  return out;
}

mpq_class determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  mpq_class det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const mpq_class f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return det;
}

/// Res(A, B) for formal degrees deg A = a.size()-1 and deg B = b.size()-1.
mpq_class sylvester_resultant(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
  const int m = static_cast<int>(a.size()) - 1;
  const int n = static_cast<int>(b.size()) - 1;
  if (n == 0) {
    mpq_class r = 1;
    for (int i = 0; i < m; ++i) r *= b[0];
    return r;
  }
  const int size = m + n;
  RationalMatrix s(size, std::vector<mpq_class>(size));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s[i][i + k] = a[m - k];
  for (int j = 0; j < m; ++j)
    for (int k = 0; k <= n; ++k) s[n + j][j + k] = b[n - k];
  return determinant(std::move(s));
}

/// Coefficients in x0 of F(x0, u1, u2), index = power of x0.
template <class T>
std::vector<T> coefficients_in_x0(const HomogeneousForm& f, const T& u1, const T& u2, int formal) {
  std::vector<T> out(formal + 1);
  for (const auto& [e, c] : f.terms()) {
    T t = T(c);
    for (int k = 0; k < e[1]; ++k) t = t * u1;
    for (int k = 0; k < e[2]; ++k) t = t * u2;
    out[e[0]] = out[e[0]] + t;
  }
  return out;
}

std::vector<C> complex_coefficients_in_x0(const HomogeneousForm& f, C u1, C u2) {
  std::vector<C> out(f.degree() + 1);
  for (const auto& [e, c] : f.terms()) {
    out[e[0]] += C(c.get_d(), 0) * std::pow(u1, e[1]) * std::pow(u2, e[2]);
  }
  return out;
}

int degree_in_x0(const HomogeneousForm& f) {
  int d = 0;
  for (const auto& [e, c] : f.terms()) d = std::max(d, e[0]);
  return d;
}

QuadPoly squarefree_quad(const QuadPoly& g) {
  if (g.degree() <= 0) return g;
  QuadPoly h = gcd(g, g.derivative());
  return divmod(g, h).first.monic();
}

struct LiftContext {
  HomogeneousForm f, g;  // transformed forms, f has a pure x0^deg term
  RationalMatrix m;      // x = m y
  std::vector<Orbit>* out;
};

ExactPoint map_exact(const RationalMatrix& m, const std::vector<QuadNumber>& y) {
  ExactPoint p;
  for (const auto& row : m) {
    QuadNumber acc;
    for (std::size_t j = 0; j < row.size(); ++j) acc += QuadNumber(row[j]) * y[j];
    p.coords.push_back(acc);
  }
  for (const auto& c : p.coords) {
    if (!c.is_rational()) p.radicand = c.radicand();
  }
  return p;
}

ComplexPoint map_numeric(const RationalMatrix& m, const ComplexPoint& y) {
  ComplexPoint x;
  for (const auto& row : m) {
    C acc = 0;
    for (std::size_t j = 0; j < row.size(); ++j) acc += C(row[j].get_d(), 0) * y[j];
    x.push_back(acc);
  }
  return normalized(x);
}

void add_exact_orbit(const LiftContext& ctx, const std::vector<QuadNumber>& y) {
  ExactPoint p = map_exact(ctx.m, y);
  Orbit o = Orbit::from_exact(p);
  if (p.radicand == 0) {
    std::vector<mpq_class> q;
    for (const auto& c : p.coords) q.push_back(c.a());
    o.generators = point_generators(ProjectivePoint::from_rationals(q));
  }
  ctx.out->push_back(std::move(o));
}

void lift_exact(const LiftContext& ctx, const QuadNumber& u1, const QuadNumber& u2) {
  const int df = ctx.f.degree();
  const int dg = degree_in_x0(ctx.g);
  QuadPoly fu(coefficients_in_x0<QuadNumber>(ctx.f, u1, u2, df));
  QuadPoly gu(coefficients_in_x0<QuadNumber>(ctx.g, u1, u2, dg));
  QuadPoly common = gu.is_zero() ? fu.monic() : gcd(fu, gu);
  common = squarefree_quad(common);
  if (common.degree() < 1) return;
  const bool rational_projection = u1.is_rational() && u2.is_rational();
  if (rational_projection) {
    std::vector<mpq_class> qc;
    for (const auto& v : common.c) qc.push_back(v.a());
    for (const auto& q : factor_squarefree(QPoly(qc))) {
      if (q.degree() == 1) {
        add_exact_orbit(ctx, {QuadNumber(mpq_class(-q.c[0] / q.c[1])), u1, u2});
      } else if (q.degree() == 2) {
        auto [r, s] = quadratic_roots(q);
        add_exact_orbit(ctx, {r, u1, u2});
      } else {
        Orbit o;
        for (const auto& r : complex_roots(q)) {
          o.points.push_back(map_numeric(ctx.m, {r, u1.to_complex(), u2.to_complex()}));
        }
        o.degree = static_cast<int>(o.points.size());
        ctx.out->push_back(std::move(o));
      }
    }
    return;
  }
  if (common.degree() == 1) {
    add_exact_orbit(ctx, {-common.c[0] / common.c[1], u1, u2});
    return;
  }
  Orbit o;
  std::vector<C> cc, cb;
  for (const auto& v : common.c) {
    cc.push_back(v.to_complex());
    cb.push_back(v.conj().to_complex());
  }
  for (const auto& r : complex_roots_c(cc)) {
    o.points.push_back(map_numeric(ctx.m, {r, u1.to_complex(), u2.to_complex()}));
  }
  for (const auto& r : complex_roots_c(cb)) {
    o.points.push_back(map_numeric(ctx.m, {r, u1.conj().to_complex(), u2.conj().to_complex()}));
  }
  o.degree = static_cast<int>(o.points.size());
  ctx.out->push_back(std::move(o));
}

void lift_numeric(const LiftContext& ctx, const QPoly& projection_factor) {
  Orbit o;
  for (const auto& t : complex_roots(projection_factor)) {
    auto fc = complex_coefficients_in_x0(ctx.f, t, C(1));
    auto gc = complex_coefficients_in_x0(ctx.g, t, C(1));
    for (const auto& r : complex_roots_c(fc)) {
      C val = 0;
      long double scale = 0;
      for (auto it = gc.rbegin(); it != gc.rend(); ++it) val = val * r + *it;
      for (std::size_t k = 0; k < gc.size(); ++k) {
        scale += std::abs(gc[k]) * std::pow(std::max(1.0L, std::abs(r)), static_cast<long double>(k));
      }
      if (std::abs(val) <= 1e-8L * std::max(scale, 1.0L)) {
        o.points.push_back(map_numeric(ctx.m, {r, t, C(1)}));
      }
    }
  }
  o.degree = static_cast<int>(o.points.size());
  if (o.degree > 0) ctx.out->push_back(std::move(o));
}

ZeroCycle intersect_p2(const Divisor& d1, const Divisor& d2) {
  const HomogeneousForm f0 = d1.product_form().primitive();
  const HomogeneousForm g0 = d2.product_form().primitive();
  ZeroCycle out;
  out.ambient_dim = 2;
  out.generators = {f0, g0};

  // Find a coordinate change x = M y after which f has a pure y0^deg term:
  // the coefficient of y0^deg in f(My) is f(first column of M).
  RationalMatrix m;
  bool found = false;
  for (int c = 0; c <= 6 && !found; ++c) {
    for (int c1 = -c; c1 <= c && !found; ++c1) {
      for (int c2 = -c; c2 <= c && !found; ++c2) {
        if (std::max(std::abs(c1), std::abs(c2)) != c) continue;
        std::vector<mpq_class> v = {1, c1, c2};
        if (f0.evaluate(std::span<const mpq_class>(v)) != 0) {
          m = {{1, 0, 0}, {c1, 1, 0}, {c2, 0, 1}};
          found = true;
        }
      }
    }
  }
  if (!found) throw Error(ErrorKind::Unsupported, "no coordinate change found for elimination");
  LiftContext ctx{f0.substitute_linear(m), g0.substitute_linear(m), m, &out.orbits};

  const int df = ctx.f.degree();
  const int dg = degree_in_x0(ctx.g);
  const int total = df * g0.degree();
  std::vector<mpq_class> ts, vals;
  for (int k = 0; k <= total; ++k) {
    mpq_class t = k;
    auto a = coefficients_in_x0<mpq_class>(ctx.f, t, mpq_class(1), df);
    auto b = coefficients_in_x0<mpq_class>(ctx.g, t, mpq_class(1), dg);
    ts.push_back(t);
    vals.push_back(sylvester_resultant(a, b));
  }
  // Newton interpolation.
  std::vector<mpq_class> dd = vals;
  for (int j = 1; j <= total; ++j)
    for (int i = total; i >= j; --i) dd[i] = (dd[i] - dd[i - 1]) / (ts[i] - ts[i - j]);
  QPoly r({dd[total]});
  for (int i = total - 1; i >= 0; --i) r = r * QPoly({-ts[i], mpq_class(1)}) + QPoly({dd[i]});
  if (r.is_zero()) {
    throw Error(ErrorKind::NotZeroDimensional, "the divisors share a common component");
  }
  if (r.degree() < total) lift_exact(ctx, QuadNumber(1), QuadNumber(0));
  if (r.degree() >= 1) {
    for (const auto& q : factor_squarefree(squarefree_part(r))) {
      if (q.degree() == 1) {
        lift_exact(ctx, QuadNumber(mpq_class(-q.c[0] / q.c[1])), QuadNumber(1));
      } else if (q.degree() == 2) {
        auto [u, v] = quadratic_roots(q);
        lift_exact(ctx, u, QuadNumber(1));
      } else {
        lift_numeric(ctx, q);
      }
    }
  }
  return out;
}

/// Rank of a matrix of exact quadratic numbers.
int exact_rank(std::vector<std::vector<QuadNumber>> m) {
  int rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows); ++col) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][col].is_zero()) continue;
      QuadNumber f = m[r][col] / m[rank][col];
      for (std::size_t k = col; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

/// Numeric rank with a relative pivot threshold; nullopt when inconclusive.
std::optional<int> numeric_rank(std::vector<std::vector<C>> m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  long double scale = 0;
  for (const auto& r : m)
    for (const auto& v : r) scale = std::max(scale, std::abs(v));
  const long double tiny = 1e-14L * std::max(scale, 1e-300L);
  const long double clear = 1e-7L * std::max(scale, 1e-300L);
  int rank = 0;
  for (std::size_t col = 0; col < cols && rank < static_cast<int>(rows); ++col) {
    std::size_t piv = rank;
    for (std::size_t r = rank; r < rows; ++r) {
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    }
    const long double p = std::abs(m[piv][col]);
    if (p <= tiny) continue;
    if (p < clear) return std::nullopt;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      C f = m[r][col] / m[rank][col];
      for (std::size_t k = col; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::string describe(const ComplexPoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ":";
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.6Lg%+.6Lgi", p[i].real(), p[i].imag());
    s += buf;
  }
  return s + ")";
}

}  // namespace

Orbit orbit_from_binary_poly(const QPoly& q) { return orbit_from_binary_factor_impl(q); }

ExactPoint ExactPoint::conj() const {
  ExactPoint p = *this;
  for (auto& c : p.coords) c = c.conj();
  return p;
}

ComplexPoint ExactPoint::to_complex() const {
  ComplexPoint p;
  for (const auto& c : coords) p.push_back(c.to_complex());
  return p;
}

Orbit Orbit::from_exact(const ExactPoint& p) {
  Orbit o;
  o.exact = p;
  o.points.push_back(normalized(p.to_complex()));
  if (p.radicand != 0) {
    o.points.push_back(normalized(p.conj().to_complex()));
    o.degree = 2;
  } else {
    o.degree = 1;
  }
  return o;
}

int ZeroCycle::geometric_count() const {
  int n = 0;
  for (const auto& o : orbits) n += o.degree;
  return n;
}

ZeroCycle ZeroCycle::orbit_cycle(std::size_t i) const {
  ZeroCycle out;
  out.ambient_dim = ambient_dim;
  out.orbits = {orbits.at(i)};
  out.generators = orbits[i].generators.empty() ? generators : orbits[i].generators;
  return out;
}

std::vector<ComplexPoint> ZeroCycle::geometric_points() const {
  std::vector<ComplexPoint> out;
  for (const auto& o : orbits) out.insert(out.end(), o.points.begin(), o.points.end());
  return out;
}

std::vector<HomogeneousForm> point_generators(const ProjectivePoint& p) {
  const int nv = p.size();
  int k = nv - 1;
  while (p[k].is_zero()) --k;
  std::vector<HomogeneousForm> out;
  for (int i = 0; i < nv; ++i) {
    if (i == k) continue;
    HomogeneousForm l(nv, 1);
    Exponents ei(nv, 0), ek(nv, 0);
    ei[i] = 1;
    ek[k] = 1;
    l.add_term(ei, p[k].a());
    l.add_term(ek, -p[i].a());
    out.push_back(l.primitive());
  }
  return out;
}

ZeroCycle ZeroCycle::rational_point(const ProjectivePoint& p) {
  if (!p.field().is_rational()) throw Error(ErrorKind::Unsupported, "rational_point over " + p.field().name());
  ExactPoint e;
  for (const auto& c : p.coords()) e.coords.emplace_back(c.a());
  ZeroCycle out;
  out.ambient_dim = p.ambient_dim();
  out.orbits.push_back(Orbit::from_exact(e));
  out.generators = point_generators(p);
  out.orbits.back().generators = out.generators;
  return out;
}

ZeroCycle intersect_zero_cycle(const std::vector<Divisor>& divisors) {
  if (divisors.empty()) throw Error(ErrorKind::InvalidInput, "no divisors");
  const int n = divisors[0].ambient_dim();
  for (const auto& d : divisors) {
    if (d.ambient_dim() != n) throw Error(ErrorKind::DimensionMismatch, "divisors on different spaces");
    if (!d.reduced()) throw Error(ErrorKind::InvalidInput, "divisors must be reduced");
  }
  if (n > 2) {
    throw Error(ErrorKind::Unsupported, "intersection in P^" + std::to_string(n) +
                                            "; supply the cycle explicitly");
  }
  if (static_cast<int>(divisors.size()) != n) {
    throw Error(ErrorKind::DimensionMismatch, "need exactly n divisors on P^n");
  }
  if (n == 1) return intersect_p1(divisors[0]);
  return intersect_p2(divisors[0], divisors[1]);
}

SncReport snc_check(const std::vector<Divisor>& divisors, const ZeroCycle& cycle) {
  SncReport report;
  const int nv = cycle.ambient_dim + 1;
  std::vector<HomogeneousForm> forms;
  std::vector<std::vector<HomogeneousForm>> grads;
  for (const auto& d : divisors) {
    forms.push_back(d.product_form());
    std::vector<HomogeneousForm> g;
    for (int i = 0; i < nv; ++i) {
      Exponents a(nv, 0);
      a[i] = 1;
      g.push_back(forms.back().derivative(a));
    }
    grads.push_back(std::move(g));
  }
  const int want = static_cast<int>(divisors.size());
  for (const auto& orbit : cycle.orbits) {
    if (orbit.exact) {
      std::vector<std::vector<QuadNumber>> jac;
      bool smooth = true;
      for (const auto& g : grads) {
        std::vector<QuadNumber> row;
        for (const auto& gi : g) {
          row.push_back(gi.is_zero() ? QuadNumber()
                                     : gi.evaluate(std::span<const QuadNumber>(orbit.exact->coords)));
        }
        if (std::all_of(row.begin(), row.end(), [](const QuadNumber& v) { return v.is_zero(); })) {
          smooth = false;
        }
        jac.push_back(std::move(row));
      }
      if (!smooth || exact_rank(jac) < want) {
        report.snc = false;
        for (const auto& p : orbit.points) report.failures.push_back(describe(p));
      }
      continue;
    }
    if (orbit.minimal_poly && cycle.ambient_dim == 1 && divisors.size() == 1) {
      std::vector<mpq_class> coeffs(forms[0].degree() + 1);
      for (const auto& [e, c] : forms[0].terms()) coeffs[e[0]] = c;
      QPoly f(coeffs);
      if (gcd(*orbit.minimal_poly, f.derivative()).degree() > 0) {
        report.snc = false;
        for (const auto& p : orbit.points) report.failures.push_back(describe(p));
      }
      continue;
    }
    for (const auto& p : orbit.points) {
      std::vector<std::vector<C>> jac;
      for (const auto& g : grads) {
        std::vector<C> row;
        for (const auto& gi : g) row.push_back(gi.evaluate(std::span<const C>(p)));
        jac.push_back(std::move(row));
      }
      auto rank = numeric_rank(jac);
      if (!rank) throw Error(ErrorKind::PrecisionExhausted, "transversality at " + describe(p));
      if (*rank < want) {
        report.snc = false;
        report.failures.push_back(describe(p));
      }
    }
  }
  return report;
}

}  // namespace dioph
