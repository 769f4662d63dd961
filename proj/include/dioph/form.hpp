#pragma once

// Sparse homogeneous forms with exact rational coefficients.

#include "dioph/arith.hpp"
#include "dioph/numfield.hpp"
#include "dioph/quad.hpp"

#include <complex>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dioph {

using Exponents = std::vector<int>;
/// Lexicographically larger exponent vectors first: x0^3, x0^2 x1, ..., x_n^d.
using MonomialOrder = std::greater<Exponents>;

/// All monomials of the given degree in nvars variables, in graded-lex order.
std::vector<Exponents> monomial_basis(int nvars, int degree);

class HomogeneousForm {
 public:
  using Terms = std::map<Exponents, mpq_class, MonomialOrder>;

  HomogeneousForm() = default;
  HomogeneousForm(int nvars, int degree) : nvars_(nvars), degree_(degree) {}
  /// Throws InvalidInput when an exponent vector has the wrong length or degree.
  HomogeneousForm(int nvars, int degree, Terms terms);

  static HomogeneousForm monomial(const Exponents& e, mpq_class coeff = 1);
  static HomogeneousForm variable(int nvars, int index);
  static HomogeneousForm constant(int nvars, mpq_class c);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  mpq_class coeff(const Exponents& e) const;
  void add_term(const Exponents& e, const mpq_class& c);

  /// Scaled to coprime integer coefficients with positive leading coefficient.
  HomogeneousForm primitive() const;
  /// Sum of absolute values of coefficients.
  mpq_class coeff_norm1() const;

  FieldElement evaluate(std::span<const FieldElement> x) const;
  mpq_class evaluate(std::span<const mpq_class> x) const;
  mpz_class evaluate(std::span<const mpz_class> x) const;
  QuadNumber evaluate(std::span<const QuadNumber> x) const;
  std::complex<long double> evaluate(std::span<const std::complex<long double>> x) const;

  /// Iterated partial derivative d^alpha; may be the zero form.
  HomogeneousForm derivative(const Exponents& alpha) const;
  /// Substitutes x_i -> sum_j m[i][j] y_j.
  HomogeneousForm substitute_linear(const std::vector<std::vector<mpq_class>>& m) const;

  HomogeneousForm& operator+=(const HomogeneousForm& o);
  HomogeneousForm& operator-=(const HomogeneousForm& o);
  HomogeneousForm& operator*=(const mpq_class& c);
  friend HomogeneousForm operator+(HomogeneousForm x, const HomogeneousForm& y) { return x += y; }
  friend HomogeneousForm operator-(HomogeneousForm x, const HomogeneousForm& y) { return x -= y; }
  friend HomogeneousForm operator*(const HomogeneousForm& x, const HomogeneousForm& y);
  HomogeneousForm pow(int k) const;

  friend bool operator==(const HomogeneousForm& x, const HomogeneousForm& y) {
    return x.nvars_ == y.nvars_ && (x.is_zero() ? y.is_zero() : x.degree_ == y.degree_) &&
           x.terms_ == y.terms_;
  }

  std::string to_string() const;

 private:
  template <class T, class FromQ>
  T evaluate_impl(std::span<const T> x, FromQ from_q, T zero) const;

  int nvars_ = 0;
  int degree_ = 0;
  Terms terms_;
};

}  // namespace dioph
