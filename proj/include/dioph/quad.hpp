#pragma once

// Exact numbers a + b*sqrt(D) for a squarefree integer D (real or imaginary).
// These carry the exact coordinates of degree-2 points of zero-cycles, which
// need not live in the base field (e.g. the orbit (+-sqrt 2 : 1) over Q).

#include "dioph/arith.hpp"

#include <complex>
#include <string>

namespace dioph {

class QuadNumber {
 public:
  QuadNumber() = default;
  QuadNumber(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QuadNumber(mpq_class a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  QuadNumber(mpq_class a, mpq_class b, long d);

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  /// Radicand; 0 when the number is known to be rational.
  long radicand() const { return d_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  QuadNumber conj() const { return QuadNumber(a_, -b_, d_); }
  mpq_class norm() const { return a_ * a_ - mpq_class(d_) * b_ * b_; }

  std::complex<long double> to_complex() const;
  std::string to_string() const;

  QuadNumber& operator+=(const QuadNumber& o);
  QuadNumber& operator-=(const QuadNumber& o);
  QuadNumber& operator*=(const QuadNumber& o);
  QuadNumber& operator/=(const QuadNumber& o);
  friend QuadNumber operator+(QuadNumber x, const QuadNumber& y) { return x += y; }
  friend QuadNumber operator-(QuadNumber x, const QuadNumber& y) { return x -= y; }
  friend QuadNumber operator*(QuadNumber x, const QuadNumber& y) { return x *= y; }
  friend QuadNumber operator/(QuadNumber x, const QuadNumber& y) { return x /= y; }
  QuadNumber operator-() const { return QuadNumber(-a_, -b_, d_); }
  friend bool operator==(const QuadNumber& x, const QuadNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.d_ == y.d_);
  }

 private:
  long join(const QuadNumber& o) const;

  mpq_class a_, b_;
  long d_ = 0;
};

}  // namespace dioph
