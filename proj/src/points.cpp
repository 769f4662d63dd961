#include "dioph/points.hpp"

#include "dioph/errors.hpp"
#include "dioph/fastq.hpp"
#include "dioph/heights.hpp"
#include "dioph/upoly.hpp"

#include <algorithm>
#include <cmath>

namespace dioph {

namespace {

bool on_variety(const EnumerationSpec& spec, const ProjectivePoint& p) {
  return !spec.variety || spec.variety->contains(p);
}

/// Ring-of-integers elements of norm <= bound, sorted by (norm, lex).
std::vector<FieldElement> elements_up_to_norm(const BaseField& field, std::int64_t bound) {
  std::vector<FieldElement> out;
  const long m = field.m();
  const long bmax = static_cast<long>(std::sqrt(4.0L * bound / m)) + 1;
  const long amax = static_cast<long>(std::sqrt(static_cast<long double>(bound))) + bmax + 1;
  for (long b = -bmax; b <= bmax; ++b) {
    for (long a = -amax; a <= amax; ++a) {
      FieldElement x(field, a, b);
      if (x.norm() <= bound) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end(), [](const FieldElement& x, const FieldElement& y) {
    const mpq_class nx = x.norm(), ny = y.norm();
    return nx < ny || (nx == ny && lex_less(x, y));
  });
  return out;
}

bool primitive_tuple(const std::vector<FieldElement>& xs) {
  mpz_class g = 0;
  for (const auto& c : xs) {
    if (!c.is_zero()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.norm().get_num_mpz_t());
  }
  if (g == 1) return true;
  for (const auto& [p, e] : factor(g)) {
    for (const auto& pl : decompose_prime(xs[0].field(), p)) {
      bool all = true;
      for (const auto& c : xs) {
        if (!c.is_zero() && valuation(pl, c) == 0) {
          all = false;
          break;
        }
      }
      if (all) return false;
    }
  }
  return true;
}

std::vector<ProjectivePoint> quadratic_projective(const EnumerationSpec& spec, long double h) {
  const std::int64_t nmax = static_cast<std::int64_t>(std::floor(h * h + 1e-9L));
  const auto elems = elements_up_to_norm(spec.field, nmax);
  const int nv = spec.ambient_dim + 1;
  struct Item {
    mpq_class max_norm;
    ProjectivePoint p;
  };
  std::vector<Item> items;
  std::vector<std::size_t> idx(nv, 0);
  std::vector<FieldElement> xs(nv);
  while (true) {
    for (int i = 0; i < nv; ++i) xs[i] = elems[idx[i]];
    auto first = std::find_if(xs.begin(), xs.end(), [](const FieldElement& c) { return !c.is_zero(); });
    if (first != xs.end() && *first == canonical_associate(*first) && primitive_tuple(xs)) {
      mpq_class mn = 0;
      for (const auto& c : xs) mn = std::max(mn, c.norm());
      ProjectivePoint p(xs);
      if (on_variety(spec, p)) items.push_back({mn, std::move(p)});
    }
    int k = nv - 1;
    while (k >= 0 && ++idx[k] == elems.size()) idx[k--] = 0;
    if (k < 0) break;
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.max_norm < b.max_norm || (a.max_norm == b.max_norm && lex_less(a.p, b.p));
  });
  std::vector<ProjectivePoint> out;
  out.reserve(items.size());
  for (auto& it : items) out.push_back(std::move(it.p));
  return out;
}

/// Univariate coefficients in x_last of f with the other coordinates fixed.
QPoly restrict_to_last(const HomogeneousForm& f, const std::vector<mpz_class>& x, int last) {
  std::vector<mpq_class> c(f.degree() + 1);
  for (const auto& [e, coef] : f.terms()) {
    mpz_class t = coef.get_num();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (static_cast<int>(i) == last || e[i] == 0) continue;
      mpz_class pw;
      mpz_pow_ui(pw.get_mpz_t(), x[i].get_mpz_t(), static_cast<unsigned long>(e[i]));
      t *= pw;
    }
    c[e[last]] += mpq_class(t, coef.get_den());
  }
  return QPoly(std::move(c));
}

}  // namespace

void EnumerationSpec::validate() const {
  if (height_bound.has_value() == box_bound.has_value()) {
    throw Error(ErrorKind::InvalidInput, "set exactly one of height_bound and box_bound");
  }
  if (ambient_dim < 1) throw Error(ErrorKind::InvalidInput, "ambient_dim must be positive");
  if (affine_patch < 0 || affine_patch > ambient_dim) {
    throw Error(ErrorKind::InvalidInput, "affine patch out of range");
  }
  if (box_bound && *box_bound < 0) throw Error(ErrorKind::InvalidInput, "negative box bound");
  if (variety) {
    for (const auto& f : variety->defining_forms) {
      if (f.nvars() != ambient_dim + 1) throw Error(ErrorKind::DimensionMismatch, "variety form");
    }
  }
}

void for_each_projective_point(const EnumerationSpec& spec,
                               const std::function<void(const ProjectivePoint&)>& f) {
  spec.validate();
  if (!spec.height_bound) throw Error(ErrorKind::InvalidInput, "projective enumeration needs a height bound");
  const long double h = *spec.height_bound;
  if (h < 1) return;
  if (!spec.field.is_rational()) {
    for (const auto& p : quadratic_projective(spec, h)) f(p);
    return;
  }
  const auto bound = static_cast<std::int64_t>(std::floor(h + 1e-12L));
  fastq::for_each_projective_point(spec.ambient_dim, bound, [&](const std::int64_t* x, std::int64_t) {
    ProjectivePoint p = ProjectivePoint::from_integers(std::span<const std::int64_t>(x, spec.ambient_dim + 1));
    if (on_variety(spec, p)) f(p);
  });
}

std::vector<ProjectivePoint> enumerate_projective_points(const EnumerationSpec& spec) {
  std::vector<ProjectivePoint> out;
  for_each_projective_point(spec, [&](const ProjectivePoint& p) { out.push_back(p); });
  return out;
}

void for_each_affine_integral_raw(const EnumerationSpec& spec,
                                  const std::function<void(std::span<const std::int64_t>)>& f) {
  spec.validate();
  if (!spec.field.is_rational()) throw Error(ErrorKind::Unsupported, "raw affine scan is over Q only");
  if (!spec.box_bound) throw Error(ErrorKind::InvalidInput, "affine enumeration needs a box bound");
  const std::int64_t b = *spec.box_bound;
  const int nv = spec.ambient_dim + 1;
  std::vector<int> free_vars;
  for (int i = 0; i < nv; ++i) {
    if (i != spec.affine_patch) free_vars.push_back(i);
  }
  const int last = free_vars.back();
  std::vector<HomogeneousForm> eqs;
  if (spec.variety) eqs = spec.variety->defining_forms;

  std::vector<std::int64_t> x(nv, 0);
  x[spec.affine_patch] = 1;
  std::vector<mpz_class> xz(nv);
  auto satisfies = [&](const std::vector<mpz_class>& pt) {
    for (const auto& e : eqs) {
      if (e.evaluate(std::span<const mpz_class>(pt)) != 0) return false;
    }
    return true;
  };
  auto scan_last = [&]() {
    if (eqs.empty()) {
      for (std::int64_t v = -b; v <= b; ++v) {
        x[last] = v;
        f(x);
      }
      return;
    }
    for (int i = 0; i < nv; ++i) xz[i] = static_cast<long>(x[i]);
    for (const auto& e : eqs) {
      QPoly u = restrict_to_last(e, xz, last);
      if (u.is_zero()) continue;
      for (const auto& r : integer_roots(u, mpz_class(static_cast<long>(-b)), mpz_class(static_cast<long>(b)))) {
        xz[last] = r;
        if (satisfies(xz)) {
          x[last] = r.get_si();
          f(x);
        }
      }
      return;
    }
    // Every equation is independent of the last coordinate here.
    for (std::int64_t v = -b; v <= b; ++v) {
      xz[last] = static_cast<long>(v);
      if (satisfies(xz)) {
        x[last] = v;
        f(x);
      }
    }
  };
  const std::size_t outer = free_vars.size() - 1;
  if (outer == 0) {
    scan_last();
    return;
  }
  for (std::size_t k = 0; k < outer; ++k) x[free_vars[k]] = -b;
  while (true) {
    scan_last();
    std::size_t k = outer;
    while (k > 0) {
      --k;
      if (x[free_vars[k]] < b) {
        ++x[free_vars[k]];
        break;
      }
      x[free_vars[k]] = -b;
      if (k == 0) return;
    }
  }
}

std::vector<ProjectivePoint> enumerate_affine_integral(const EnumerationSpec& spec) {
  std::vector<ProjectivePoint> out;
  if (spec.field.is_rational()) {
    for_each_affine_integral_raw(spec, [&](std::span<const std::int64_t> x) {
      out.push_back(ProjectivePoint::from_integers(x));
    });
    return out;
  }
  spec.validate();
  if (!spec.box_bound) throw Error(ErrorKind::InvalidInput, "affine enumeration needs a box bound");
  const auto elems = elements_up_to_norm(spec.field, *spec.box_bound);
  const int nv = spec.ambient_dim + 1;
  std::vector<std::size_t> idx(spec.ambient_dim, 0);
  std::vector<FieldElement> xs(nv);
  while (true) {
    int j = 0;
    for (int i = 0; i < nv; ++i) {
      xs[i] = (i == spec.affine_patch) ? FieldElement(spec.field, 1) : elems[idx[j++]];
    }
    bool ok = true;
    if (spec.variety) {
      for (const auto& e : spec.variety->defining_forms) {
        if (!e.evaluate(std::span<const FieldElement>(xs)).is_zero()) ok = false;
      }
    }
    if (ok) out.emplace_back(xs);
    int k = spec.ambient_dim - 1;
    while (k >= 0 && ++idx[k] == elems.size()) idx[k--] = 0;
    if (k < 0) break;
  }
  return out;
}

std::vector<ProjectivePoint> filter_D_integral(const std::vector<ProjectivePoint>& points,
                                               const Divisor& d, long double defect_bound,
                                               IntegralityReport* report) {
  IntegralityReport rep;
  std::vector<ProjectivePoint> out;
  for (const auto& p : points) {
    ++rep.seen;
    long double defect = 0;
    try {
      defect = integrality_defect(d, p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::OnDivisor) throw;
      ++rep.on_divisor;
      continue;
    }
    rep.max_defect = std::max(rep.max_defect, defect);
    if (defect <= defect_bound) {
      ++rep.kept;
      rep.max_kept_defect = std::max(rep.max_kept_defect, defect);
      out.push_back(p);
    }
  }
  if (report) *report = rep;
  return out;
}

void write_points_csv(std::ostream& os, int ambient_dim, const std::vector<ProjectivePoint>& points) {
  const int nv = ambient_dim + 1;
  for (int i = 0; i < nv; ++i) os << "coord_" << i << ",";
  os << "height\n";
  for (const auto& p : points) {
    for (const auto& c : p.coords()) os << c.to_string() << ",";
    os << format_double(static_cast<double>(weil_height(p))) << "\n";
  }
}

}  // namespace dioph
