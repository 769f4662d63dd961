#include "dioph/errors.hpp"
#include "dioph/heights.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace dioph;

namespace {

const BaseField Q;
const long double LOG2 = std::log(2.0L);

HomogeneousForm mono(std::initializer_list<int> e, long c = 1) { return HomogeneousForm::monomial(Exponents(e), c); }

Divisor div(const HomogeneousForm& f) { return Divisor::from_form(f); }

ProjectivePoint pt(std::initializer_list<std::int64_t> xs) { return ProjectivePoint::from_integers(xs); }

Place prime(long p) { return decompose_prime(Q, p)[0]; }

ZeroCycle origin_plane() { return ZeroCycle::rational_point(pt({0, 0, 1})); }

// Every place where a local height of D at the primitive integral point x can be nonzero.
PlaceSet relevant_places(const Divisor& d, const ProjectivePoint& x) {
  PlaceSet s{Place::infinity(x.field())};
  mpz_class prod = 1;
  for (const auto& c : d.components()) {
    const FieldElement v = c.form.evaluate(std::span<const FieldElement>(x.coords()));
    prod *= v.norm().get_num() * v.norm().get_den();
  }
  for (const auto& [p, e] : factor(prod)) {
    for (const auto& v : decompose_prime(x.field(), p)) s.push_back(v);
  }
  return s;
}

}  // namespace

TEST_CASE("weil_height examples") {
  CHECK(weil_height(pt({1, 1})) == 0);
  CHECK(weil_height(pt({3, 4})) == doctest::Approx(std::log(4.0)));
  const BaseField qi = BaseField::imag_quadratic(1);
  const ProjectivePoint x({FieldElement(qi, 1, 1), FieldElement(qi, 1)});
  CHECK(weil_height(x) == doctest::Approx(0.5 * std::log(2.0)));
}

TEST_CASE("local_height examples") {
  CHECK(local_height(div(mono({0, 1})), Place::infinity(Q), pt({3, 1})) == doctest::Approx(std::log(3.0)));
  CHECK(local_height(div(mono({0, 1})), prime(2), pt({1, 8})) == doctest::Approx(3 * std::log(2.0)));
  CHECK(local_height(div(mono({1, 0}) - mono({0, 1})), Place::infinity(Q), pt({101, 100})) ==
        doctest::Approx(std::log(101.0)));
  CHECK_THROWS_AS(local_height(div(mono({0, 1})), Place::infinity(Q), pt({1, 0})), Error);
}

TEST_CASE("divisor_height examples") {
  CHECK(divisor_height(div(mono({1, 1})), pt({3, 4})) == doctest::Approx(2 * std::log(4.0)));
  CHECK(divisor_height(div(mono({1, 0})), pt({1, 1})) == 0);
  const Divisor thue = div(mono({3, 0}) - mono({0, 3}, 2));
  const ProjectivePoint x = pt({5, 4});
  long double sum = 0;
  for (const auto& v : relevant_places(thue, x)) sum += local_height(thue, v, x);
  CHECK(divisor_height(thue, x) == doctest::Approx(3 * std::log(5.0)));
  CHECK(std::fabs(static_cast<double>(sum - 3 * std::log(5.0L))) < 1e-12);
  // on the divisor is allowed
  CHECK(divisor_height(div(mono({1, 0})), pt({0, 1})) == 0);
}

TEST_CASE("proximity examples") {
  const PlaceSet inf = archimedean_only(Q);
  for (std::int64_t n = 1; n <= 50; ++n) {
    CHECK(proximity(div(mono({0, 1})), inf, pt({n, 1})) == doctest::Approx(std::log(static_cast<double>(n))));
  }
  CHECK(proximity(div(mono({1, 0}) - mono({0, 1})), inf, pt({1, 0})) == 0);
  const PlaceSet s{Place::infinity(Q), prime(2)};
  CHECK(proximity(div(mono({0, 1})), s, pt({1, 8})) == doctest::Approx(3 * std::log(2.0)));
}

TEST_CASE("cycle_proximity examples") {
  const PlaceSet inf = archimedean_only(Q);
  const ZeroCycle y = origin_plane();
  CHECK(cycle_proximity(y, inf, pt({6, 10, 1})) == doctest::Approx(0.0));
  CHECK(cycle_proximity(y, inf, pt({1, 1, 100})) == doctest::Approx(std::log(100.0)));
  CHECK_THROWS_AS(cycle_proximity(y, inf, pt({0, 0, 1})), Error);
  ZeroCycle bare = y;
  bare.generators.clear();
  CHECK_THROWS_AS(cycle_proximity(bare, inf, pt({1, 1, 1})), Error);
}

TEST_CASE("gcd_height examples") {
  const ZeroCycle y = origin_plane();
  CHECK(gcd_height(y, pt({6, 10, 1})) == doctest::Approx(std::log(2.0)));
  // Not of the form (a:b:1): the finite part is log gcd(1,1) = 0, but the
  // archimedean place sees (1/5, 1/5) close to the origin.
  const auto rep = gcd_height_report(y, archimedean_only(Q), pt({1, 1, 5}));
  CHECK(rep.finite_part == 0);
  CHECK(rep.total == doctest::Approx(std::log(5.0)));
  CHECK(gcd_height(y, pt({4, 6, 1})) == doctest::Approx(std::log(2.0)));
  CHECK_THROWS_AS(gcd_height(y, pt({0, 0, 7})), Error);
}

TEST_CASE("integrality_defect examples") {
  for (std::int64_t n = -20; n <= 20; ++n) CHECK(integrality_defect(div(mono({1, 0})), pt({1, n})) == 0);
  CHECK(integrality_defect(div(mono({1, 0})), pt({2, 1})) == doctest::Approx(std::log(2.0)));
  CHECK(integrality_defect(div(mono({0, 1})), pt({1, 1})) == 0);
}

TEST_CASE("gcd oracle: finite part of h((a:b:1), (0:0:1)) is log gcd(a, b)") {
  const ZeroCycle y = origin_plane();
  const PlaceSet inf = archimedean_only(Q);
  for (std::int64_t a = 1; a <= 200; a += 7) {
    for (std::int64_t b = 1; b <= 200; ++b) {
      const auto rep = gcd_height_report(y, inf, pt({a, b, 1}));
      REQUIRE(rep.finite_norm == mpq_class(std::gcd(a, b)));
    }
  }
}

TEST_CASE("height reports add up") {
  testgen::Gen g(31);
  const ZeroCycle y = origin_plane();
  for (int i = 0; i < 200; ++i) {
    const ProjectivePoint x = g.point(3, 60);
    const Divisor d = div(g.form(3, static_cast<int>(g.range(1, 3)), 5).primitive());
    const PlaceSet inf = archimedean_only(Q);
    if (d.components()[0].form.evaluate(std::span<const FieldElement>(x.coords())).is_zero()) continue;
    const auto rep = divisor_height_report(d, inf, x);
    long double sum = 0, in_s = 0;
    for (const auto& [v, val] : rep.per_place) {
      sum += val;
      if (v.archimedean) in_s += val;
    }
    CHECK(std::fabs(static_cast<double>(rep.total - sum)) < 1e-9);
    CHECK(rep.proximity_S == in_s);
    if (x[0].is_zero() && x[1].is_zero()) continue;
    const auto gr = gcd_height_report(y, inf, x);
    long double gsum = 0;
    for (const auto& [v, val] : gr.per_place) gsum += val;
    CHECK(std::fabs(static_cast<double>(gr.total - gsum)) < 1e-9);
    CHECK(std::fabs(static_cast<double>(gr.finite_part - log_abs(gr.finite_norm))) < 1e-12);
  }
}

TEST_CASE("decomposition: h(D, x) is the sum of local heights") {
  testgen::Gen g(32);
  int checked = 0;
  while (checked < 500) {
    const int nv = static_cast<int>(g.range(2, 3));
    const Divisor d = div(g.form(nv, static_cast<int>(g.range(1, 4)), 9).primitive());
    const ProjectivePoint x = g.point(nv, 300);
    if (d.product_form().evaluate(std::span<const FieldElement>(x.coords())).is_zero()) continue;
    long double sum = 0;
    for (const auto& v : relevant_places(d, x)) sum += local_height(d, v, x);
    REQUIRE(std::fabs(static_cast<double>(divisor_height(d, x) - sum)) <= 1e-9);
    ++checked;
  }
}

TEST_CASE("local height bounds for primitive integral forms") {
  testgen::Gen g(33);
  for (int i = 0; i < 300; ++i) {
    const HomogeneousForm f = g.form(3, static_cast<int>(g.range(1, 4)), 9).primitive();
    const ProjectivePoint x = g.point(3, 200);
    if (f.evaluate(std::span<const FieldElement>(x.coords())).is_zero()) continue;
    const Divisor d = div(f);
    const auto places = relevant_places(d, x);
    for (const auto& v : places) {
      const long double l = local_height(d, v, x);
      if (v.archimedean) {
        CHECK(l >= -log_abs(f.coeff_norm1()) - 1e-12L);
      } else {
        CHECK(l >= 0);
      }
    }
  }
}

TEST_CASE("scaling invariance") {
  testgen::Gen g(34);
  const ZeroCycle y = origin_plane();
  for (int i = 0; i < 100; ++i) {
    const auto c = g.coords(3, 50);
    if (c[0] == 0 && c[1] == 0) continue;
    mpq_class lambda = 0;
    while (lambda == 0) lambda = g.rational(40);
    std::vector<mpq_class> a, b;
    for (auto v : c) {
      a.emplace_back(static_cast<long>(v));
      b.push_back(lambda * static_cast<long>(v));
    }
    const auto x = ProjectivePoint::from_rationals(a), lx = ProjectivePoint::from_rationals(b);
    const Divisor d = div(mono({1, 0, 1}) - mono({0, 2, 0}, 3) + mono({0, 0, 2}));
    CHECK(weil_height(x) == weil_height(lx));
    CHECK(divisor_height(d, x) == divisor_height(d, lx));
    CHECK(gcd_height(y, x) == gcd_height(y, lx));
    CHECK(cycle_proximity(y, archimedean_only(Q), x) == cycle_proximity(y, archimedean_only(Q), lx));
  }
}

TEST_CASE("heights of Galois-conjugate points over Q(i) agree") {
  testgen::Gen g(35);
  const BaseField qi = BaseField::imag_quadratic(1);
  const Divisor d = div(mono({2, 0}) + mono({1, 1}, 3) - mono({0, 2}, 5));
  for (int i = 0; i < 200; ++i) {
    const ProjectivePoint x = g.point(qi, 2, 30);
    const ProjectivePoint xc = conjugate(x);
    CHECK(weil_height(x) == doctest::Approx(weil_height(xc)).epsilon(1e-15));
    CHECK(divisor_height(d, x) == doctest::Approx(divisor_height(d, xc)).epsilon(1e-15));
    if (d.product_form().evaluate(std::span<const FieldElement>(x.coords())).is_zero()) continue;
    const PlaceSet inf = archimedean_only(qi);
    CHECK(proximity(d, inf, x) == doctest::Approx(proximity(d, inf, xc)).epsilon(1e-12));
  }
}

TEST_CASE("min decomposition along an SNC pair with other generators") {
  // D1 = {x0 + x1}, D2 = {x0 - x1} meet transversally at (0:0:1), cut out by
  // x0, x1. With M = max|x_i| the difference is log((|a| + |b|) / max(|a|, |b|)),
  // so the constant can never exceed log 2.
  const ZeroCycle y = origin_plane();
  const Divisor d1 = div(mono({1, 0, 0}) + mono({0, 1, 0}));
  const Divisor d2 = div(mono({1, 0, 0}) - mono({0, 1, 0}));
  const PlaceSet inf = archimedean_only(Q);
  long double constant = 0;
  for (std::int64_t a = -30; a <= 30; ++a) {
    for (std::int64_t b = -30; b <= 30; ++b) {
      for (std::int64_t c : {1, 7, 1000}) {
        if (std::abs(a) == std::abs(b)) continue;
        const ProjectivePoint x = pt({a, b, c});
        const long double m = std::min(proximity(d1, inf, x), proximity(d2, inf, x));
        constant = std::max(constant, std::fabs(cycle_proximity(y, inf, x) - m));
      }
    }
  }
  MESSAGE("min-decomposition constant " << static_cast<double>(constant));
  CHECK(constant <= LOG2 + 1e-12L);
  CHECK(constant > 0.6L);
}
