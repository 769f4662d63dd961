#pragma once

// Seeded generators for the property tests.

#include "dioph/form.hpp"
#include "dioph/geometry.hpp"
#include "dioph/numfield.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace testgen {

using namespace dioph;

inline const std::vector<int>& class_number_one() {
  static const std::vector<int> ms{1, 2, 3, 7, 11, 19, 43, 67, 163};
  return ms;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  std::int64_t nonzero(std::int64_t lim) {
    std::int64_t v = 0;
    while (v == 0) v = range(-lim, lim);
    return v;
  }

  mpq_class rational(std::int64_t lim) {
    mpq_class q(static_cast<long>(range(-lim, lim)), static_cast<unsigned long>(range(1, lim)));
    q.canonicalize();
    return q;
  }

  FieldElement element(const BaseField& f, std::int64_t lim) {
    for (;;) {
      FieldElement x(f, rational(lim), f.is_rational() ? mpq_class(0) : rational(lim));
      if (!x.is_zero()) return x;
    }
  }

  HomogeneousForm form(int nvars, int degree, std::int64_t lim) {
    HomogeneousForm f(nvars, degree);
    while (f.is_zero()) {
      for (const auto& e : monomial_basis(nvars, degree)) {
        if (range(0, 2) == 0) continue;
        f.add_term(e, mpq_class(static_cast<long>(range(-lim, lim))));
      }
    }
    return f;
  }

  std::vector<std::int64_t> coords(int nvars, std::int64_t lim) {
    std::vector<std::int64_t> x(nvars, 0);
    while (std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; })) {
      for (auto& v : x) v = range(-lim, lim);
    }
    return x;
  }

  ProjectivePoint point(int nvars, std::int64_t lim) {
    const auto x = coords(nvars, lim);
    return ProjectivePoint::from_integers(std::span<const std::int64_t>(x));
  }

  ProjectivePoint point(const BaseField& f, int nvars, std::int64_t lim) {
    std::vector<FieldElement> x;
    for (;;) {
      x.clear();
      bool any = false;
      for (int i = 0; i < nvars; ++i) {
        FieldElement c(f, mpq_class(static_cast<long>(range(-lim, lim))),
                       f.is_rational() ? mpq_class(0) : mpq_class(static_cast<long>(range(-lim, lim))));
        any = any || !c.is_zero();
        x.push_back(c);
      }
      if (any) return ProjectivePoint(x);
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testgen
