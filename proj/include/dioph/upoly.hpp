#pragma once

// Dense univariate polynomials over an exact field (mpq_class or QuadNumber),
// with the factorization and root machinery used for zero-cycles.

#include "dioph/arith.hpp"
#include "dioph/quad.hpp"

#include <complex>
#include <type_traits>
#include <utility>
#include <vector>

namespace dioph {

template <class T>
struct UPoly {
  std::vector<T> c;  // c[i] is the coefficient of t^i

  UPoly() = default;
  explicit UPoly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }

  static bool zero_coeff(const T& v) {
    if constexpr (std::is_same_v<T, QuadNumber>) return v.is_zero();
    else return v == 0;
  }

  void trim() {
    while (!c.empty() && zero_coeff(c.back())) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const T& lead() const { return c.back(); }

  T eval(const T& x) const {
    T acc = T();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UPoly derivative() const {
    std::vector<T> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * T(static_cast<long>(i)));
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    UPoly out = *this;
    T l = lead();
    for (auto& v : out.c) v = v / l;
    return out;
  }

  friend UPoly operator+(const UPoly& x, const UPoly& y) {
    std::vector<T> r(std::max(x.c.size(), y.c.size()));
    for (std::size_t i = 0; i < x.c.size(); ++i) r[i] = r[i] + x.c[i];
    for (std::size_t i = 0; i < y.c.size(); ++i) r[i] = r[i] + y.c[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& x, const UPoly& y) {
    std::vector<T> r(std::max(x.c.size(), y.c.size()));
    for (std::size_t i = 0; i < x.c.size(); ++i) r[i] = r[i] + x.c[i];
    for (std::size_t i = 0; i < y.c.size(); ++i) r[i] = r[i] - y.c[i];
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& x, const UPoly& y) {
    if (x.is_zero() || y.is_zero()) return UPoly();
    std::vector<T> r(x.c.size() + y.c.size() - 1);
    for (std::size_t i = 0; i < x.c.size(); ++i)
      for (std::size_t j = 0; j < y.c.size(); ++j) r[i + j] = r[i + j] + x.c[i] * y.c[j];
    return UPoly(std::move(r));
  }
  friend bool operator==(const UPoly& x, const UPoly& y) { return x.c == y.c; }
};

/// Quotient and remainder; divisor must be nonzero.
template <class T>
std::pair<UPoly<T>, UPoly<T>> divmod(const UPoly<T>& num, const UPoly<T>& den) {
  UPoly<T> r = num;
  if (r.degree() < den.degree()) return {UPoly<T>(), r};
  std::vector<T> q(r.c.size() - den.c.size() + 1);
  while (!r.is_zero() && r.degree() >= den.degree()) {
    const int shift = r.degree() - den.degree();
    T f = r.lead() / den.lead();
    q[shift] = f;
    for (std::size_t i = 0; i < den.c.size(); ++i) r.c[i + shift] = r.c[i + shift] - f * den.c[i];
    r.c.pop_back();
    r.trim();
  }
  return {UPoly<T>(std::move(q)), r};
}

/// Monic gcd; gcd(0, 0) = 0.
template <class T>
UPoly<T> gcd(UPoly<T> a, UPoly<T> b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

using QPoly = UPoly<mpq_class>;
using QuadPoly = UPoly<QuadNumber>;

/// Monic squarefree part.
QPoly squarefree_part(const QPoly& f);

/// Primitive integer multiple with positive leading coefficient.
QPoly primitive_part(const QPoly& f);

/// All complex roots (with multiplicity), polished by Newton iteration.
std::vector<std::complex<long double>> complex_roots(const QPoly& f);
/// Same for complex coefficients, low degree first; leading coefficient nonzero.
std::vector<std::complex<long double>> complex_roots_c(
    std::vector<std::complex<long double>> coeffs);

/// Irreducible factors over Q of a squarefree polynomial, each primitive.
/// Splitting is found from subsets of numeric roots and confirmed by exact
/// division; a factor that cannot be split this way is returned whole (it is
/// still Galois stable).
std::vector<QPoly> factor_squarefree(const QPoly& f);

/// Distinct real roots that are integers in [lo, hi].
std::vector<mpz_class> integer_roots(const QPoly& f, const mpz_class& lo, const mpz_class& hi);

}  // namespace dioph
