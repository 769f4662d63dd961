#include "dioph/quad.hpp"

#include "dioph/errors.hpp"

#include <cmath>

namespace dioph {

QuadNumber::QuadNumber(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  a_.canonicalize();
  b_.canonicalize();
  if (b_ != 0 && (d_ == 0 || d_ == 1)) {
    throw Error(ErrorKind::InvalidInput, "sqrt coefficient with trivial radicand");
  }
}

long QuadNumber::join(const QuadNumber& o) const {
  if (b_ == 0) return o.d_;
  if (o.b_ == 0 || d_ == o.d_) return d_;
  throw Error(ErrorKind::InvalidInput, "mixed radicands " + std::to_string(d_) + " and " +
                                           std::to_string(o.d_));
}

std::complex<long double> QuadNumber::to_complex() const {
  const long double a = a_.get_d();
  if (b_ == 0) return {a, 0.0L};
  const long double b = b_.get_d();
  const long double r = std::sqrt(static_cast<long double>(std::labs(d_)));
  if (d_ > 0) return {a + b * r, 0.0L};
  return {a, b * r};
}

std::string QuadNumber::to_string() const {
  if (b_ == 0) return dioph::to_string(a_);
  return dioph::to_string(a_) + (b_ < 0 ? "-" : "+") + dioph::to_string(abs(b_)) + "*sqrt(" +
         std::to_string(d_) + ")";
}

QuadNumber& QuadNumber::operator+=(const QuadNumber& o) {
  d_ = join(o);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QuadNumber& QuadNumber::operator-=(const QuadNumber& o) {
  d_ = join(o);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QuadNumber& QuadNumber::operator*=(const QuadNumber& o) {
  const long d = join(o);
  mpq_class a = a_ * o.a_ + mpq_class(d) * b_ * o.b_;
  mpq_class b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  d_ = d;
  return *this;
}

QuadNumber& QuadNumber::operator/=(const QuadNumber& o) {
  if (o.is_zero()) throw Error(ErrorKind::InvalidInput, "division by zero");
  const long d = join(o);
  QuadNumber c = o.conj();
  c.d_ = d;
  const mpq_class n = o.norm();
  *this *= c;
  a_ /= n;
  b_ /= n;
  return *this;
}

}  // namespace dioph
