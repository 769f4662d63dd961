#include "dioph/geometry.hpp"

#include "dioph/errors.hpp"

#include <algorithm>
#include <functional>

namespace dioph {

ProjectivePoint::ProjectivePoint(std::vector<FieldElement> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(ErrorKind::InvalidInput, "point with no coordinates");
  field_ = coords_[0].field();
  for (const auto& c : coords_) {
    if (!(c.field() == field_)) throw Error(ErrorKind::InvalidInput, "coordinates in mixed fields");
  }
  if (std::all_of(coords_.begin(), coords_.end(), [](const FieldElement& c) { return c.is_zero(); })) {
    throw Error(ErrorKind::InvalidInput, "all coordinates are zero");
  }
  normalize();
}

ProjectivePoint ProjectivePoint::from_integers(std::span<const std::int64_t> coords) {
  std::vector<FieldElement> v;
  v.reserve(coords.size());
  for (auto c : coords) v.emplace_back(BaseField(), mpq_class(mpz_class(static_cast<long>(c))));
  return ProjectivePoint(std::move(v));
}

ProjectivePoint ProjectivePoint::from_integers(std::initializer_list<std::int64_t> coords) {
  return from_integers(std::span<const std::int64_t>(coords.begin(), coords.size()));
}

ProjectivePoint ProjectivePoint::from_rationals(std::span<const mpq_class> coords) {
  std::vector<FieldElement> v;
  for (const auto& c : coords) v.emplace_back(BaseField(), c);
  return ProjectivePoint(std::move(v));
}

void ProjectivePoint::normalize() {
  mpz_class den = 1;
  for (const auto& c : coords_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.denominator().get_mpz_t());
  if (den != 1) {
    const FieldElement d(field_, mpq_class(den));
    for (auto& c : coords_) c *= d;
  }
  if (field_.is_rational()) {
    mpz_class g = 0;
    for (const auto& c : coords_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.a().get_num_mpz_t());
    const auto first = std::find_if(coords_.begin(), coords_.end(),
                                     [](const FieldElement& c) { return !c.is_zero(); });
    mpq_class scale(1, g);
    if (first->a() < 0) scale = -scale;
    const FieldElement s(field_, scale);
    for (auto& c : coords_) c *= s;
    return;
  }
  mpz_class g = 0;
  for (const auto& c : coords_) {
    if (!c.is_zero()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.norm().get_num_mpz_t());
  }
  if (g > 1) {
    for (const auto& [p, e] : factor(g)) {
      for (const auto& pl : decompose_prime(field_, p)) {
        int k = -1;
        for (const auto& c : coords_) {
          if (c.is_zero()) continue;
          const int v = valuation(pl, c);
          k = (k < 0) ? v : std::min(k, v);
        }
        if (k <= 0) continue;
        FieldElement inv = pl.generator.inverse();
        for (int i = 0; i < k; ++i) {
          for (auto& c : coords_) c *= inv;
        }
      }
    }
  }
  const auto first = std::find_if(coords_.begin(), coords_.end(),
                                  [](const FieldElement& c) { return !c.is_zero(); });
  const FieldElement target = canonical_associate(*first);
  const FieldElement u = target / *first;
  for (auto& c : coords_) c *= u;
}

std::vector<mpz_class> ProjectivePoint::integer_coords() const {
  if (!field_.is_rational()) throw Error(ErrorKind::InvalidInput, "integer_coords over " + field_.name());
  std::vector<mpz_class> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.a().get_num());
  return out;
}

std::vector<std::complex<long double>> ProjectivePoint::complex_coords() const {
  std::vector<std::complex<long double>> out;
  for (const auto& c : coords_) out.push_back(c.to_complex());
  return out;
}

std::string ProjectivePoint::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ":";
    s += coords_[i].to_string();
  }
  return s + ")";
}

std::size_t ProjectivePoint::hash() const {
  std::size_t h = static_cast<std::size_t>(field_.m());
  for (const auto& c : coords_) {
    h = h * 1000003u ^ std::hash<long>()(mpz_get_si(c.a().get_num_mpz_t()));
    h = h * 1000003u ^ std::hash<long>()(mpz_get_si(c.b().get_num_mpz_t()));
  }
  return h;
}

bool lex_less(const ProjectivePoint& x, const ProjectivePoint& y) {
  return std::lexicographical_compare(
      x.coords().begin(), x.coords().end(), y.coords().begin(), y.coords().end(),
      [](const FieldElement& a, const FieldElement& b) { return lex_less(a, b); });
}

Divisor::Divisor(int ambient_dim, std::vector<DivisorComponent> components)
    : ambient_dim_(ambient_dim), components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorKind::InvalidInput, "divisor without components");
  for (auto& c : components_) {
    if (c.form.nvars() != ambient_dim_ + 1) {
      throw Error(ErrorKind::DimensionMismatch, "divisor form has wrong number of variables");
    }
    if (c.form.is_zero() || c.form.degree() < 1) {
      throw Error(ErrorKind::InvalidInput, "divisor component must be a nonconstant form");
    }
    if (c.multiplicity < 1) throw Error(ErrorKind::InvalidInput, "multiplicity must be positive");
    c.form = c.form.primitive();
  }
}

Divisor Divisor::from_form(const HomogeneousForm& f) {
  return Divisor(f.nvars() - 1, {DivisorComponent{f, 1}});
}

bool Divisor::reduced() const {
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (components_[i].multiplicity != 1) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (components_[i].form == components_[j].form) return false;
    }
  }
  return true;
}

int Divisor::degree() const {
  int d = 0;
  for (const auto& c : components_) d += c.multiplicity * c.form.degree();
  return d;
}

HomogeneousForm Divisor::product_form() const {
  HomogeneousForm out = HomogeneousForm::constant(ambient_dim_ + 1, 1);
  for (const auto& c : components_) out = out * c.form.pow(c.multiplicity);
  return out;
}

bool Variety::contains(const ProjectivePoint& x) const {
  for (const auto& f : defining_forms) {
    if (!f.evaluate(std::span<const FieldElement>(x.coords())).is_zero()) return false;
  }
  return true;
}

}  // namespace dioph
