#include "dioph/arith.hpp"

#include "dioph/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>

namespace dioph {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::InfiniteValuation: return "InfiniteValuation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotZeroDimensional: return "NotZeroDimensional";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::OnDivisor: return "OnDivisor";
    case ErrorKind::OnCycle: return "OnCycle";
    case ErrorKind::MissingGenerators: return "MissingGenerators";
    case ErrorKind::UnsupportedOrbit: return "UnsupportedOrbit";
    case ErrorKind::EmptySample: return "EmptySample";
    case ErrorKind::Undefined: return "Undefined";
    case ErrorKind::NoTarget: return "NoTarget";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::NotSNC: return "NotSNC";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

int valuation_p(const mpz_class& n, const mpz_class& p) {
  if (n == 0) throw Error(ErrorKind::InfiniteValuation, "valuation of zero");
  mpz_class m = abs(n);
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

bool is_probable_prime(const mpz_class& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

namespace {

mpz_class pollard_brent(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto step = [&](mpz_class& v) {
      v = (v * v + c) % n;
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          step(y);
          q = (q * abs(x - y)) % n;
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        step(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(const mpz_class& n, std::map<mpz_class, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  mpz_class d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

Factorization factor(const mpz_class& n) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "factor of zero");
  mpz_class m = abs(n);
  std::map<mpz_class, int> primes;
  for (unsigned long p = 2; p < 2000 && m > 1; p += (p == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++primes[mpz_class(p)];
    }
  }
  factor_into(m, primes);
  return {primes.begin(), primes.end()};
}

int kronecker(const mpz_class& d, const mpz_class& n) {
  return mpz_kronecker(d.get_mpz_t(), n.get_mpz_t());
}

mpz_class sqrt_mod_prime(const mpz_class& a_in, const mpz_class& p) {
  mpz_class a = a_in % p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  if (p == 2) return a;
  // Tonelli-Shanks.
  mpz_class q = p - 1;
  unsigned long s = 0;
  while (mpz_even_p(q.get_mpz_t())) {
    q /= 2;
    ++s;
  }
  mpz_class z = 2;
  while (kronecker(z, p) != -1) ++z;
  mpz_class m = s, c, t, r, e;
  mpz_powm(c.get_mpz_t(), z.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  mpz_powm(t.get_mpz_t(), a.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
  e = (q + 1) / 2;
  mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
  unsigned long mm = s;
  while (t != 1) {
    unsigned long i = 0;
    mpz_class tt = t;
    while (tt != 1) {
      tt = (tt * tt) % p;
      ++i;
      if (i == mm) throw Error(ErrorKind::InvalidInput, "not a quadratic residue");
    }
    mpz_class b = c;
    for (unsigned long j = 0; j + 1 < mm - i; ++j) b = (b * b) % p;
    mm = i;
    c = (b * b) % p;
    t = (t * c) % p;
    r = (r * b) % p;
  }
  return r;
}

bool is_square(const mpz_class& n, mpz_class* root) {
  if (n < 0) return false;
  if (!mpz_perfect_square_p(n.get_mpz_t())) return false;
  if (root) *root = sqrt(n);
  return true;
}

long double log_abs(const mpz_class& n) {
  if (n == 0) throw Error(ErrorKind::InfiniteValuation, "log of zero");
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 63) {
    return std::log(static_cast<long double>(std::abs(n.get_si())));
  }
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(std::fabs(static_cast<long double>(mant))) +
         static_cast<long double>(exp) * std::numbers::ln2_v<long double>;
}

long double log_abs(const mpq_class& q) {
  return log_abs(q.get_num()) - log_abs(q.get_den());
}

mpq_class parse_rational(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }),
          s.end());
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty rational");
  auto dot = s.find('.');
  mpq_class q;
  try {
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t frac = s.size() - dot - 1;
      if (digits == "-" || digits == "+" || digits.empty()) throw std::invalid_argument(s);
      mpz_class num(digits[0] == '+' ? digits.substr(1) : digits, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
      q = mpq_class(num, den);
    } else {
      q = mpq_class(s[0] == '+' ? s.substr(1) : s, 10);
    }
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::InvalidInput, "malformed rational '" + text + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const mpq_class& q) { return q.get_str(10); }

mpz_class binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

mpz_class factorial(long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0) v = 0;  // no "-0"
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace dioph
