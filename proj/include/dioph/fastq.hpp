#pragma once

// Machine-integer fast path over Q for the large sweeps: forms compiled to
// int64 coefficients, __int128 evaluation, table-driven logs and gcds, and a
// streaming enumerator of primitive integer points by (height, lex).
// Results agree with the exact path; tests cross-check the two.

#include "dioph/form.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <numeric>
#include <optional>
#include <vector>

namespace dioph::fastq {

using i128 = __int128;

class Form {
 public:
  /// nullopt when a coefficient is not an integer fitting in int64, or for
  /// more than 8 variables.
  static std::optional<Form> compile(const HomogeneousForm& f);

  int nvars() const { return nvars_; }
  int degree() const { return degree_; }
  /// True when |F(x)| < 2^120 is guaranteed for max|x_i| <= bound.
  bool safe_for(std::int64_t bound) const;

  /// True when every partial sum stays below 2^62 for max|x_i| <= bound.
  bool fits64(std::int64_t bound) const;

  template <class T>
  T eval_as(const std::int64_t* x) const {
    T acc = 0;
    const std::uint8_t* var = vars_.data();
    for (const auto c : coeffs_) {
      T v = c;
      for (int k = 0; k < degree_; ++k) v *= x[*var++];
      acc += v;
    }
    return acc;
  }
  i128 eval(const std::int64_t* x) const { return eval_as<i128>(x); }
  /// Only after fits64(bound) for the coordinates passed.
  std::int64_t eval64(const std::int64_t* x) const { return eval_as<std::int64_t>(x); }

 private:
  int nvars_ = 0;
  int degree_ = 0;
  long double norm1_ = 0;
  std::vector<std::int64_t> coeffs_;
  /// degree_ variable indices per term, so a term is a plain product.
  std::vector<std::uint8_t> vars_;
};

inline long double log_abs128(i128 v) {
  if (v < 0) v = -v;
  if (v <= (i128(1) << 62)) return std::log(static_cast<long double>(static_cast<std::int64_t>(v)));
  return std::log(static_cast<long double>(v));
}

/// Binary gcd of nonnegative 64-bit values.
inline std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) {
  if (a == 0) return b;
  if (b == 0) return a;
  const int shift = __builtin_ctzll(a | b);
  a >>= __builtin_ctzll(a);
  do {
    b >>= __builtin_ctzll(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

inline i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  constexpr i128 lim = static_cast<i128>(std::numeric_limits<std::uint64_t>::max());
  if (a <= lim && b <= lim) return gcd64(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  while (b != 0) {
    i128 r = a % b;
    a = b;
    b = r;
  }
  return a;
}

/// log n for 0 < n <= limit from a table, falling back to std::log.
class LogTable {
 public:
  explicit LogTable(std::int64_t limit);
  long double operator()(i128 v) const {
    if (v < 0) v = -v;
    if (v < static_cast<i128>(table_.size())) return table_[static_cast<std::size_t>(v)];
    return log_abs128(v);
  }
  long double operator()(std::int64_t v) const {
    if (v < 0) v = -v;
    if (static_cast<std::uint64_t>(v) < table_.size()) return table_[static_cast<std::size_t>(v)];
    // Double log is several times faster than logl; relative error ~1e-16.
    return std::log(static_cast<double>(v));
  }

 private:
  std::vector<long double> table_;
};

/// gcd(a, b) for |a|, |b| <= limit from a table.
class GcdTable {
 public:
  explicit GcdTable(std::int64_t limit);
  std::int64_t operator()(std::int64_t a, std::int64_t b) const {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    if (a <= limit_ && b <= limit_) return table_[static_cast<std::size_t>(a * (limit_ + 1) + b)];
    return std::gcd(a, b);
  }

 private:
  std::int64_t limit_;
  std::vector<std::uint16_t> table_;
};

/// Raw-min generator heights of a primitive point over Q.
struct GeneratorHeights {
  bool on_cycle = false;
  long double archimedean = 0;
  /// gcd of the nonzero generator values; finite part = log(finite_gcd).
  i128 finite_gcd = 0;
  long double finite = 0;
};

class GeneratorSet {
 public:
  /// nullopt if some generator does not compile.
  static std::optional<GeneratorSet> compile(const std::vector<HomogeneousForm>& gens);
  bool safe_for(std::int64_t bound) const;
  bool fits64(std::int64_t bound) const;
  GeneratorHeights evaluate(const std::int64_t* x, long double log_max, const LogTable& logs) const;
  /// Same values on machine words; only after fits64(bound).
  GeneratorHeights evaluate64(const std::int64_t* x, long double log_max, const LogTable& logs) const;

 private:
  std::vector<Form> forms_;
};

namespace detail {

template <class F>
void shell_rec(int idx, int nv, std::int64_t m, std::int64_t* x, bool reached, bool all_zero,
               std::int64_t g, F& f) {
  if (idx == nv - 1) {
    auto emit = [&](std::int64_t v) {
      if (g != 1 && gcd64(g, v < 0 ? -v : v) != 1) return;
      x[idx] = v;
      f(static_cast<const std::int64_t*>(x), m);
    };
    if (all_zero) {
      emit(m);
      return;
    }
    if (!reached) {
      emit(-m);
      emit(m);
      return;
    }
    for (std::int64_t v = -m; v <= m; ++v) emit(v);
    return;
  }
  const std::int64_t lo = all_zero ? 0 : -m;
  for (std::int64_t v = lo; v <= m; ++v) {
    x[idx] = v;
    const std::int64_t av = v < 0 ? -v : v;
    shell_rec(idx + 1, nv, m, x, reached || av == m, all_zero && v == 0,
              g == 1 ? 1 : static_cast<std::int64_t>(gcd64(g, av)), f);
  }
}

}  // namespace detail

/// Calls f(x, M) for every primitive integer point of P^n with
/// M = max|x_i| in [1, max_height], in normal form (first nonzero coordinate
/// positive), ordered by M and then lexicographically.
template <class F>
void for_each_projective_point(int n, std::int64_t max_height, F&& f) {
  std::vector<std::int64_t> x(n + 1, 0);
  for (std::int64_t m = 1; m <= max_height; ++m) {
    detail::shell_rec(0, n + 1, m, x.data(), false, true, 0, f);
  }
}

/// Only the shell max|x_i| = m.
template <class F>
void for_each_in_shell(int n, std::int64_t m, F&& f) {
  std::vector<std::int64_t> x(n + 1, 0);
  detail::shell_rec(0, n + 1, m, x.data(), false, true, 0, f);
}

}  // namespace dioph::fastq
