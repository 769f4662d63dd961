#include "dioph/form.hpp"

#include "dioph/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dioph {

namespace {

void basis_rec(int nvars, int idx, int remaining, Exponents& cur, std::vector<Exponents>& out) {
  if (idx == nvars - 1) {
    cur[idx] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[idx] = e;
    basis_rec(nvars, idx + 1, remaining - e, cur, out);
  }
}

}  // namespace

std::vector<Exponents> monomial_basis(int nvars, int degree) {
  std::vector<Exponents> out;
  if (nvars <= 0 || degree < 0) return out;
  Exponents cur(nvars, 0);
  basis_rec(nvars, 0, degree, cur, out);
  return out;
}

HomogeneousForm::HomogeneousForm(int nvars, int degree, Terms terms)
    : nvars_(nvars), degree_(degree) {
  for (auto& [e, c] : terms) add_term(e, c);
}

HomogeneousForm HomogeneousForm::monomial(const Exponents& e, mpq_class coeff) {
  HomogeneousForm f(static_cast<int>(e.size()), std::accumulate(e.begin(), e.end(), 0));
  f.add_term(e, coeff);
  return f;
}

HomogeneousForm HomogeneousForm::variable(int nvars, int index) {
  Exponents e(nvars, 0);
  e.at(index) = 1;
  return monomial(e);
}

HomogeneousForm HomogeneousForm::constant(int nvars, mpq_class c) {
  return monomial(Exponents(nvars, 0), std::move(c));
}

mpq_class HomogeneousForm::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void HomogeneousForm::add_term(const Exponents& e, const mpq_class& c) {
  if (static_cast<int>(e.size()) != nvars_) {
    throw Error(ErrorKind::DimensionMismatch, "exponent vector length");
  }
  int sum = 0;
  for (int v : e) {
    if (v < 0) throw Error(ErrorKind::InvalidInput, "negative exponent");
    sum += v;
  }
  if (sum != degree_) throw Error(ErrorKind::InvalidInput, "term degree differs from form degree");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

HomogeneousForm HomogeneousForm::primitive() const {
  if (is_zero()) return *this;
  mpz_class den = 1, num = 0;
  for (const auto& [e, c] : terms_) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  mpq_class scale(den, num);
  scale.canonicalize();
  if (terms_.begin()->second < 0) scale = -scale;
  HomogeneousForm out = *this;
  for (auto& [e, c] : out.terms_) c *= scale;
  return out;
}

mpq_class HomogeneousForm::coeff_norm1() const {
  mpq_class s = 0;
  for (const auto& [e, c] : terms_) s += abs(c);
  return s;
}

template <class T, class FromQ>
T HomogeneousForm::evaluate_impl(std::span<const T> x, FromQ from_q, T zero) const {
  if (static_cast<int>(x.size()) != nvars_) {
    throw Error(ErrorKind::DimensionMismatch, "point has " + std::to_string(x.size()) +
                                                  " coordinates, form has " +
                                                  std::to_string(nvars_) + " variables");
  }
  if (terms_.empty()) return zero;
  // powers[i][k] = x_i^k
  std::vector<std::vector<T>> powers(nvars_);
  for (int i = 0; i < nvars_; ++i) {
    powers[i].reserve(degree_ + 1);
    powers[i].push_back(from_q(mpq_class(1)));
    for (int k = 1; k <= degree_; ++k) powers[i].push_back(powers[i].back() * x[i]);
  }
  T acc = zero;
  for (const auto& [e, c] : terms_) {
    T t = from_q(c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] > 0) t = t * powers[i][e[i]];
    }
    acc = acc + t;
  }
  return acc;
}

FieldElement HomogeneousForm::evaluate(std::span<const FieldElement> x) const {
  const BaseField field = x.empty() ? BaseField() : x[0].field();
  return evaluate_impl<FieldElement>(
      x, [&](const mpq_class& q) { return FieldElement(field, q); }, FieldElement(field));
}

mpq_class HomogeneousForm::evaluate(std::span<const mpq_class> x) const {
  return evaluate_impl<mpq_class>(x, [](const mpq_class& q) { return q; }, mpq_class(0));
}

mpz_class HomogeneousForm::evaluate(std::span<const mpz_class> x) const {
  std::vector<mpq_class> q(x.begin(), x.end());
  mpq_class v = evaluate(std::span<const mpq_class>(q));
  if (v.get_den() != 1) throw Error(ErrorKind::InvalidInput, "non-integral value of integer form");
  return v.get_num();
}

QuadNumber HomogeneousForm::evaluate(std::span<const QuadNumber> x) const {
  return evaluate_impl<QuadNumber>(x, [](const mpq_class& q) { return QuadNumber(q); },
                                   QuadNumber());
}

std::complex<long double> HomogeneousForm::evaluate(
    std::span<const std::complex<long double>> x) const {
  using C = std::complex<long double>;
  return evaluate_impl<C>(x, [](const mpq_class& q) { return C(q.get_d(), 0.0L); }, C());
}

HomogeneousForm HomogeneousForm::derivative(const Exponents& alpha) const {
  if (static_cast<int>(alpha.size()) != nvars_) {
    throw Error(ErrorKind::DimensionMismatch, "derivative multi-index length");
  }
  const int order = std::accumulate(alpha.begin(), alpha.end(), 0);
  HomogeneousForm out(nvars_, std::max(degree_ - order, 0));
  if (order > degree_) return out;
  for (const auto& [e, c] : terms_) {
    mpq_class coef = c;
    Exponents ne = e;
    bool zero = false;
    for (int i = 0; i < nvars_ && !zero; ++i) {
      if (e[i] < alpha[i]) {
        zero = true;
        break;
      }
      for (int k = 0; k < alpha[i]; ++k) coef *= (e[i] - k);
      ne[i] -= alpha[i];
    }
    if (!zero) out.add_term(ne, coef);
  }
  return out;
}

HomogeneousForm operator*(const HomogeneousForm& x, const HomogeneousForm& y) {
  if (x.nvars_ != y.nvars_) throw Error(ErrorKind::DimensionMismatch, "form product");
  HomogeneousForm out(x.nvars_, x.degree_ + y.degree_);
  for (const auto& [ex, cx] : x.terms_) {
    for (const auto& [ey, cy] : y.terms_) {
      Exponents e(ex.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ex[i] + ey[i];
      out.add_term(e, cx * cy);
    }
  }
  return out;
}

HomogeneousForm HomogeneousForm::pow(int k) const {
  HomogeneousForm out = constant(nvars_, 1);
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

HomogeneousForm& HomogeneousForm::operator+=(const HomogeneousForm& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    nvars_ = o.nvars_;
    degree_ = o.degree_;
  }
  if (nvars_ != o.nvars_ || degree_ != o.degree_) {
    throw Error(ErrorKind::DimensionMismatch, "sum of forms of different shape");
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

HomogeneousForm& HomogeneousForm::operator-=(const HomogeneousForm& o) {
  HomogeneousForm neg = o;
  neg *= mpq_class(-1);
  return *this += neg;
}

HomogeneousForm& HomogeneousForm::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

HomogeneousForm HomogeneousForm::substitute_linear(
    const std::vector<std::vector<mpq_class>>& m) const {
  if (static_cast<int>(m.size()) != nvars_) throw Error(ErrorKind::DimensionMismatch, "substitution");
  const int ny = m.empty() ? 0 : static_cast<int>(m[0].size());
  std::vector<HomogeneousForm> lin;
  for (int i = 0; i < nvars_; ++i) {
    HomogeneousForm l(ny, 1);
    for (int j = 0; j < ny; ++j) l.add_term(monomial_basis(ny, 1)[j], m[i][j]);
    lin.push_back(l);
  }
  HomogeneousForm out(ny, degree_);
  for (const auto& [e, c] : terms_) {
    HomogeneousForm t = constant(ny, c);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] > 0) t = t * lin[i].pow(e[i]);
    }
    if (!t.is_zero()) out += t;
  }
  return out;
}

std::string HomogeneousForm::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    mpq_class a = abs(c);
    bool is_const = std::all_of(e.begin(), e.end(), [](int v) { return v == 0; });
    if (a != 1 || is_const) os << a.get_str();
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      os << "x" << i;
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace dioph
