#include "dioph/numfield.hpp"

#include "dioph/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace dioph {

namespace {

constexpr std::array<int, 9> kClassNumberOne = {1, 2, 3, 7, 11, 19, 43, 67, 163};

}  // namespace

BaseField BaseField::imag_quadratic(int m) {
  if (std::find(kClassNumberOne.begin(), kClassNumberOne.end(), m) == kClassNumberOne.end()) {
    throw Error(ErrorKind::UnsupportedField,
                "Q(sqrt(-" + std::to_string(m) + ")) is not a class-number-one field");
  }
  return BaseField(m);
}

long BaseField::discriminant() const {
  if (m_ == 0) return 1;
  return half_omega() ? -m_ : -4L * m_;
}

std::string BaseField::name() const {
  if (m_ == 0) return "Q";
  return "Q(sqrt(-" + std::to_string(m_) + "))";
}

FieldElement::FieldElement(BaseField field, mpq_class a, mpq_class b)
    : field_(field), a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
  if (field_.is_rational() && b_ != 0) {
    throw Error(ErrorKind::InvalidInput, "omega-coefficient given for an element of Q");
  }
}

FieldElement FieldElement::omega(BaseField field) {
  if (field.is_rational()) throw Error(ErrorKind::InvalidInput, "Q has no omega");
  return FieldElement(field, 0, 1);
}

void FieldElement::check_field(const FieldElement& o) const {
  if (!(field_ == o.field_)) {
    throw Error(ErrorKind::InvalidInput,
                "mixed fields " + field_.name() + " and " + o.field_.name());
  }
}

mpq_class FieldElement::norm() const {
  if (field_.is_rational()) return a_;
  const mpq_class m = field_.m();
  if (!field_.half_omega()) return a_ * a_ + m * b_ * b_;
  return a_ * a_ + a_ * b_ + b_ * b_ * (1 + m) / 4;
}

mpq_class FieldElement::trace() const {
  if (field_.is_rational()) return a_;
  if (!field_.half_omega()) return 2 * a_;
  return 2 * a_ + b_;
}

FieldElement FieldElement::conj() const {
  if (field_.is_rational()) return *this;
  if (!field_.half_omega()) return FieldElement(field_, a_, -b_);
  return FieldElement(field_, a_ + b_, -b_);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorKind::InvalidInput, "inverse of zero");
  if (field_.is_rational()) return FieldElement(field_, 1 / a_);
  const mpq_class n = norm();
  FieldElement c = conj();
  return FieldElement(field_, c.a_ / n, c.b_ / n);
}

mpz_class FieldElement::denominator() const {
  mpz_class d;
  mpz_lcm(d.get_mpz_t(), a_.get_den_mpz_t(), b_.get_den_mpz_t());
  return d;
}

std::complex<long double> FieldElement::to_complex() const {
  const long double a = a_.get_d();
  const long double b = b_.get_d();
  if (field_.is_rational()) return {a, 0.0L};
  const long double r = std::sqrt(static_cast<long double>(field_.m()));
  if (!field_.half_omega()) return {a, b * r};
  return {a + b / 2, b * r / 2};
}

std::string FieldElement::to_string() const {
  if (field_.is_rational()) return dioph::to_string(a_);
  return dioph::to_string(a_) + "|" + dioph::to_string(b_);
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_field(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_field(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_field(o);
  if (field_.is_rational()) {
    a_ *= o.a_;
    return *this;
  }
  const mpq_class m = field_.m();
  const mpq_class bb = b_ * o.b_;
  const mpq_class cross = a_ * o.b_ + o.a_ * b_;
  if (!field_.half_omega()) {
    a_ = a_ * o.a_ - m * bb;
    b_ = cross;
  } else {
    a_ = a_ * o.a_ - bb * (1 + m) / 4;
    b_ = cross + bb;
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  check_field(o);
  return *this *= o.inverse();
}

std::vector<FieldElement> units(const BaseField& field) {
  std::vector<FieldElement> out = {FieldElement(field, 1), FieldElement(field, -1)};
  if (field.m() == 1) {
    out.push_back(FieldElement(field, 0, 1));
    out.push_back(FieldElement(field, 0, -1));
  } else if (field.m() == 3) {
    FieldElement w = FieldElement::omega(field);
    FieldElement w2 = w * w;
    out.push_back(w);
    out.push_back(-w);
    out.push_back(w2);
    out.push_back(-w2);
  }
  return out;
}

FieldElement canonical_associate(const FieldElement& x) {
  FieldElement best = x;
  for (const auto& u : units(x.field())) {
    FieldElement y = u * x;
    if (lex_less(best, y)) best = y;
  }
  return best;
}

Place Place::infinity(const BaseField& field) {
  Place pl;
  pl.field = field;
  pl.archimedean = true;
  return pl;
}

std::string Place::to_string() const {
  if (archimedean) return "inf";
  if (field.is_rational()) return p.get_str();
  return p.get_str() + ":" + generator.to_string();
}

namespace {

// Element of the ring of integers of norm exactly p, by direct search over the
// norm form. Used for ramified primes and p = 2 where p is tiny.
FieldElement search_norm(const BaseField& field, const mpz_class& p) {
  const long pp = p.get_si();
  const long m = field.m();
  // 4N = (2a + b*t)^2 + m*b^2 with t = 1 for the half basis, 0 otherwise.
  for (long b = 0; m * b * b <= 4 * pp; ++b) {
    for (long a = -2 * pp - 2; a <= 2 * pp + 2; ++a) {
      FieldElement x(field, a, b);
      if (x.norm() == p) return x;
    }
  }
  throw Error(ErrorKind::InvalidInput, "no element of norm " + p.get_str());
}

// Modified Cornacchia: solves x^2 + |D| y^2 = 4p for an odd prime p not dividing D.
FieldElement cornacchia(const BaseField& field, const mpz_class& p) {
  const long disc = field.discriminant();
  const mpz_class absd = -disc;
  mpz_class x0 = sqrt_mod_prime(mpz_class(disc), p);
  if ((x0 % 2 != 0) != (absd % 2 != 0)) x0 = p - x0;
  mpz_class a = 2 * p, b = x0;
  mpz_class limit = sqrt(4 * p);
  while (b > limit) {
    mpz_class r = a % b;
    a = b;
    b = r;
  }
  mpz_class rest = 4 * p - b * b;
  mpz_class y;
  if (rest % absd != 0 || !is_square(rest / absd, &y)) {
    throw Error(ErrorKind::InvalidInput, "Cornacchia failed for p = " + p.get_str());
  }
  // x = 2a + b*t in terms of the basis coefficients.
  if (!field.half_omega()) return FieldElement(field, mpq_class(b / 2), mpq_class(y));
  return FieldElement(field, mpq_class((b - y) / 2), mpq_class(y));
}

}  // namespace

std::vector<Place> decompose_prime(const BaseField& field, const mpz_class& p) {
  if (p < 2 || !is_probable_prime(p)) {
    throw Error(ErrorKind::InvalidInput, p.get_str() + " is not prime");
  }
  Place pl;
  pl.field = field;
  pl.archimedean = false;
  pl.p = p;
  if (field.is_rational()) {
    pl.generator = FieldElement(field, mpq_class(p));
    return {pl};
  }
  const int k = kronecker(mpz_class(field.discriminant()), p);
  if (k == -1) {
    pl.splitting = Splitting::Inert;
    pl.residue_degree = 2;
    pl.generator = FieldElement(field, mpq_class(p));
    return {pl};
  }
  FieldElement pi = (k == 0 || p == 2) ? search_norm(field, p) : cornacchia(field, p);
  pi = canonical_associate(pi);
  if (k == 0) {
    pl.splitting = Splitting::Ramified;
    pl.ramification = 2;
    pl.generator = pi;
    return {pl};
  }
  FieldElement pib = canonical_associate(pi.conj());
  if (lex_less(pi, pib)) std::swap(pi, pib);
  pl.splitting = Splitting::Split;
  Place other = pl;
  pl.generator = pi;
  other.generator = pib;
  return {pl, other};
}

int valuation(const Place& place, const FieldElement& x) {
  if (place.archimedean) throw Error(ErrorKind::InvalidInput, "valuation at an archimedean place");
  if (x.is_zero()) throw Error(ErrorKind::InfiniteValuation, "valuation of zero");
  const mpz_class& p = place.p;
  if (x.field().is_rational()) {
    const int num = valuation_p(x.a().get_num(), p);
    const int den = valuation_p(x.a().get_den(), p);
    return num - den;
  }
  const mpz_class d = x.denominator();
  const int vd = mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()) ? valuation_p(d, p) : 0;
  FieldElement y = x * FieldElement(x.field(), mpq_class(d));
  const mpz_class ny = y.norm().get_num();
  const int vn = valuation_p(ny, p);
  int vy = 0;
  switch (place.splitting) {
    case Splitting::Inert: vy = vn / 2; break;
    case Splitting::Ramified: vy = vn; break;
    case Splitting::Split: {
      const FieldElement step = place.generator.conj() * FieldElement(x.field(), 1 / mpq_class(p));
      while (vy < vn) {
        FieldElement z = y * step;
        if (!z.is_integral()) break;
        y = std::move(z);
        ++vy;
      }
      break;
    }
  }
  return vy - place.ramification * vd;
}

long double normalized_log_abs(const Place& place, const FieldElement& x) {
  if (x.is_zero()) throw Error(ErrorKind::InfiniteValuation, "log|0|");
  const int n = x.field().degree();
  if (place.archimedean) {
    // (d_v/n) log|x|_v = (1/n) log|N(x)| for both Q and imaginary quadratic fields.
    return log_abs(x.norm()) / n;
  }
  const int v = valuation(place, x);
  if (v == 0) return 0.0L;
  return -static_cast<long double>(place.residue_degree) * v * log_abs(place.p) / n;
}

std::vector<Place> support_places(const FieldElement& x) {
  if (x.is_zero()) throw Error(ErrorKind::InfiniteValuation, "support of zero");
  const mpq_class nm = x.norm();
  std::vector<mpz_class> primes;
  for (const auto& [p, e] : factor(nm.get_num())) primes.push_back(p);
  for (const auto& [p, e] : factor(nm.get_den())) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<Place> out;
  for (const auto& p : primes) {
    for (auto& pl : decompose_prime(x.field(), p)) {
      if (valuation(pl, x) != 0) out.push_back(std::move(pl));
    }
  }
  return out;
}

long double product_formula_defect(const FieldElement& x) {
  long double total = normalized_log_abs(Place::infinity(x.field()), x);
  for (const auto& pl : support_places(x)) total += normalized_log_abs(pl, x);
  return total;
}

}  // namespace dioph
