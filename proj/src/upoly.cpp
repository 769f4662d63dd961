#include "dioph/upoly.hpp"

#include "dioph/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dioph {

QPoly squarefree_part(const QPoly& f) {
  if (f.degree() <= 0) return f.monic();
  QPoly g = gcd(f, f.derivative());
  return divmod(f, g).first.monic();
}

QPoly primitive_part(const QPoly& f) {
  if (f.is_zero()) return f;
  mpz_class den = 1, num = 0;
  for (const auto& v : f.c) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_num_mpz_t());
  }
  mpq_class scale(den, num);
  scale.canonicalize();
  if (f.lead() < 0) scale = -scale;
  QPoly out = f;
  for (auto& v : out.c) v *= scale;
  return out;
}

std::vector<std::complex<long double>> complex_roots(const QPoly& f) {
  using C = std::complex<long double>;
  if (f.degree() <= 0) return {};
  std::vector<C> a;
  const mpq_class lead = f.lead();
  for (const auto& v : f.c) a.emplace_back(mpq_class(v / lead).get_d(), 0.0L);
  return complex_roots_c(std::move(a));
}

std::vector<std::complex<long double>> complex_roots_c(std::vector<std::complex<long double>> a) {
  using C = std::complex<long double>;
  while (!a.empty() && a.back() == C(0)) a.pop_back();
  const int n = static_cast<int>(a.size()) - 1;
  if (n <= 0) return {};
  const C lead = a[n];
  for (auto& v : a) v /= lead;
  if (n == 1) return {-a[0]};

  auto eval = [&](C z, C& deriv) {
    C p = a[n];
    C d = 0;
    for (int i = n - 1; i >= 0; --i) {
      d = d * z + p;
      p = p * z + a[i];
    }
    deriv = d;
    return p;
  };

  // Cauchy bound for the initial circle.
  long double radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(a[i]));
  radius = 1 + radius;
  std::vector<C> z(n);
  for (int k = 0; k < n; ++k) {
    const long double ang = 2 * std::numbers::pi_v<long double> * (k + 0.25L) / n + 0.4L;
    z[k] = std::polar(radius * 0.5L, ang);
  }
  // Aberth-Ehrlich iteration.
  for (int iter = 0; iter < 800; ++iter) {
    long double max_step = 0;
    for (int k = 0; k < n; ++k) {
      C d;
      C p = eval(z[k], d);
      if (p == C(0)) continue;
      C ratio = p / d;
      C sum = 0;
      for (int j = 0; j < n; ++j) {
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      }
      C w = ratio / (1.0L - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[k] -= w;
      max_step = std::max(max_step, std::abs(w) / std::max(1.0L, std::abs(z[k])));
    }
    if (max_step < 1e-18L) break;
  }
  // Newton polish.
  for (auto& r : z) {
    for (int it = 0; it < 4; ++it) {
      C d;
      C p = eval(r, d);
      if (d == C(0)) break;
      C step = p / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      r -= step;
    }
  }
  std::sort(z.begin(), z.end(), [](const C& x, const C& y) {
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  });
  return z;
}

namespace {

constexpr long double kRoundLimit = 9.0e18L;

bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<QPoly> factor_squarefree(const QPoly& f_in) {
  using C = std::complex<long double>;
  QPoly f = primitive_part(f_in);
  std::vector<QPoly> out;
  if (f.degree() <= 1 || f.degree() > 16) {
    if (f.degree() >= 1) out.push_back(f);
    return out;
  }
  std::vector<C> roots = complex_roots(f);
  bool progress = true;
  while (progress && f.degree() > 1) {
    progress = false;
    const int n = static_cast<int>(roots.size());
    const long double lead = f.lead().get_d();
    for (int k = 1; 2 * k <= n && !progress; ++k) {
      std::vector<int> idx(k);
      for (int i = 0; i < k; ++i) idx[i] = i;
      do {
        std::vector<C> prod = {C(lead, 0)};
        for (int i : idx) {
          std::vector<C> next(prod.size() + 1);
          for (std::size_t j = 0; j < prod.size(); ++j) {
            next[j + 1] += prod[j];
            next[j] -= prod[j] * roots[i];
          }
          prod = std::move(next);
        }
        std::vector<mpq_class> coeffs;
        bool ok = true;
        for (const C& v : prod) {
          const long double scale = std::max(1.0L, std::abs(v));
          if (std::abs(v.imag()) > 1e-6L * scale || std::abs(v.real()) > kRoundLimit) {
            ok = false;
            break;
          }
          const long double rounded = std::round(v.real());
          if (std::abs(rounded - v.real()) > 1e-4L * scale) {
            ok = false;
            break;
          }
          coeffs.emplace_back(static_cast<long>(rounded));
        }
        if (!ok) continue;
        QPoly g = primitive_part(QPoly(coeffs));
        if (g.degree() != k) continue;
        auto [q, r] = divmod(f, g);
        if (!r.is_zero()) continue;
        out.push_back(g);
        f = primitive_part(q);
        std::vector<C> rest;
        for (int i = 0; i < n; ++i) {
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(roots[i]);
        }
        roots = std::move(rest);
        progress = true;
        break;
      } while (next_combination(idx, n));
    }
  }
  if (f.degree() >= 1) out.push_back(f);
  std::sort(out.begin(), out.end(), [](const QPoly& x, const QPoly& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    for (int i = x.degree(); i >= 0; --i) {
      if (x.c[i] != y.c[i]) return x.c[i] < y.c[i];
    }
    return false;
  });
  return out;
}

std::vector<mpz_class> integer_roots(const QPoly& f, const mpz_class& lo, const mpz_class& hi) {
  std::vector<mpz_class> out;
  if (f.degree() <= 0) return out;
  for (const auto& r : complex_roots(f)) {
    const long double slack = 2.0L + 1e-9L * std::abs(r.real());
    if (std::abs(r.imag()) > slack) continue;
    const long double base = std::floor(r.real());
    if (!std::isfinite(base) || std::abs(base) > kRoundLimit) continue;
    const long b = static_cast<long>(base);
    for (long c = b - 2; c <= b + 3; ++c) {
      mpz_class z = c;
      if (z < lo || z > hi) continue;
      if (f.eval(mpq_class(z)) == 0) out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace dioph
