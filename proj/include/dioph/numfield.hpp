#pragma once

// Exact arithmetic over Q and the nine class-number-one imaginary quadratic
// fields Q(sqrt(-m)), together with their places and normalized absolute
// values. Every height in the library is a sum of normalized_log_abs terms.

#include "dioph/arith.hpp"

#include <complex>
#include <compare>
#include <string>
#include <vector>

namespace dioph {

class BaseField {
 public:
  BaseField() = default;

  static BaseField rationals() { return BaseField(); }
  /// Throws UnsupportedField unless m is one of 1,2,3,7,11,19,43,67,163.
  static BaseField imag_quadratic(int m);

  bool is_rational() const { return m_ == 0; }
  int m() const { return m_; }
  int degree() const { return m_ == 0 ? 1 : 2; }
  /// True when the integral basis is {1, (1+sqrt(-m))/2}.
  bool half_omega() const { return m_ % 4 == 3; }
  /// Discriminant of the field; 1 for Q.
  long discriminant() const;
  std::string name() const;

  friend bool operator==(const BaseField&, const BaseField&) = default;
  friend auto operator<=>(const BaseField&, const BaseField&) = default;

 private:
  explicit BaseField(int m) : m_(m) {}
  int m_ = 0;
};

/// a + b*omega with omega = sqrt(-m) or (1+sqrt(-m))/2.
class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(BaseField field, mpq_class a = 0, mpq_class b = 0);
  FieldElement(BaseField field, long a) : FieldElement(field, mpq_class(a)) {}

  static FieldElement omega(BaseField field);

  const BaseField& field() const { return field_; }
  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_integral() const { return a_.get_den() == 1 && b_.get_den() == 1; }
  bool is_rational() const { return b_ == 0; }

  mpq_class norm() const;
  mpq_class trace() const;
  FieldElement conj() const;
  FieldElement inverse() const;
  /// Least positive integer D with D*x integral.
  mpz_class denominator() const;

  std::complex<long double> to_complex() const;
  std::string to_string() const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement x, const FieldElement& y) { return x += y; }
  friend FieldElement operator-(FieldElement x, const FieldElement& y) { return x -= y; }
  friend FieldElement operator*(FieldElement x, const FieldElement& y) { return x *= y; }
  friend FieldElement operator/(FieldElement x, const FieldElement& y) { return x /= y; }
  FieldElement operator-() const { return FieldElement(field_, -a_, -b_); }

  friend bool operator==(const FieldElement& x, const FieldElement& y) {
    return x.field_ == y.field_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  /// Lexicographic on (a, b); used for canonical associates and sorting.
  friend bool lex_less(const FieldElement& x, const FieldElement& y) {
    return x.a_ < y.a_ || (x.a_ == y.a_ && x.b_ < y.b_);
  }

 private:
  void check_field(const FieldElement& o) const;

  BaseField field_;
  mpq_class a_, b_;
};

/// Units of the ring of integers.
std::vector<FieldElement> units(const BaseField& field);

/// The associate u*x (u a unit) with lexicographically largest (a, b).
FieldElement canonical_associate(const FieldElement& x);

enum class Splitting { Split, Inert, Ramified };

struct Place {
  BaseField field;
  bool archimedean = true;
  mpz_class p = 0;
  Splitting splitting = Splitting::Split;
  FieldElement generator;
  int residue_degree = 1;
  int ramification = 1;

  static Place infinity(const BaseField& field);
  int local_degree() const {
    if (archimedean) return field.degree();
    return residue_degree * ramification;
  }
  std::string to_string() const;

  friend bool operator==(const Place& x, const Place& y) {
    return x.field == y.field && x.archimedean == y.archimedean && x.p == y.p &&
           x.generator == y.generator;
  }
};

/// All places above the rational prime p, ordered by canonical generator.
std::vector<Place> decompose_prime(const BaseField& field, const mpz_class& p);

/// v_P(x) at a finite place; throws InfiniteValuation for x = 0.
int valuation(const Place& place, const FieldElement& x);

/// (d_v/[K:Q]) * log |x|_v; throws InfiniteValuation for x = 0.
long double normalized_log_abs(const Place& place, const FieldElement& x);

/// Finite places at which x is not a unit.
std::vector<Place> support_places(const FieldElement& x);

/// Sum over all places of normalized_log_abs; zero up to rounding.
long double product_formula_defect(const FieldElement& x);

}  // namespace dioph
