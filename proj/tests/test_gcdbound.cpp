#include "dioph/cycle.hpp"
#include "dioph/errors.hpp"
#include "dioph/gcdbound.hpp"
#include "dioph/heights.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>

using namespace dioph;

namespace {

HomogeneousForm mono(std::initializer_list<int> e, long c = 1) { return HomogeneousForm::monomial(Exponents(e), c); }

mpz_class choose(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

mpq_class power(const mpq_class& x, int k) {
  mpq_class r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// (r - delta)^n compared with the target, i.e. r against target^(1/n) + delta.
bool ratio_ok(const mpq_class& r, const mpq_class& delta, const mpq_class& target, int n, bool strict) {
  const mpq_class t = r - delta;
  if (t <= 0) return true;
  return strict ? power(t, n) < target : power(t, n) <= target;
}

// Brute-force search in the same (mu, s) order as the library.
std::pair<int, int> search_oracle(int n, int d, int e, const mpq_class& delta) {
  const mpq_class target = mpq_class(d) / power(mpq_class(e), n);
  for (int mu = 1; mu < 1000; ++mu) {
    for (int s = 1; s < 4000; ++s) {
      if (choose(n + s, n) <= d * choose(n + mu, n)) continue;
      if (ratio_ok(mpq_class(s, mu * e), delta, target, n, false)) return {mu, s};
      break;
    }
  }
  return {-1, -1};
}

// Rank over Q by plain Gaussian elimination.
std::size_t rank_oracle(std::vector<std::vector<mpq_class>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const mpq_class f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

void check_in_kernel(const MultiplicitySystem& sys, const HomogeneousForm& f) {
  mpz_class g = 0;
  for (const auto& [e, c] : f.terms()) {
    CHECK(c.get_den() == 1);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
  }
  CHECK(g == 1);
  for (const auto& row : sys.rows) {
    mpq_class acc = 0;
    for (std::size_t j = 0; j < sys.basis.size(); ++j) acc += row[j] * f.coeff(sys.basis[j]);
    CHECK(acc == 0);
  }
}

ZeroCycle origin_cycle() { return ZeroCycle::rational_point(ProjectivePoint::from_integers({0, 0, 1})); }

ZeroCycle sqrt2_cycle() {
  ZeroCycle y;
  y.ambient_dim = 1;
  y.orbits.push_back(orbit_from_binary_poly(QPoly({mpq_class(-2), mpq_class(0), mpq_class(1)})));
  y.generators = {mono({2, 0}) - mono({0, 2}, 2)};
  return y;
}

SectionCertificate manual_certificate() {
  SectionCertificate cert;
  cert.params.n = 2;
  cert.params.d = 1;
  cert.params.e = 1;
  cert.params.mu = 2;
  cert.params.s_total = 3;
  cert.cycle = origin_cycle();
  cert.form = mono({2, 0, 1});
  cert.multiplicity_verified = true;
  cert.coeff_norm = 1;
  cert.slack = 2 * std::log(4.0L);
  return cert;
}

}  // namespace

TEST_CASE("choose_parameters examples") {
  const auto a = choose_parameters(2, 1, 1, mpq_class(1, 2));
  CHECK(a.mu == 2);
  CHECK(a.s_total == 3);
  CHECK(a.sections() == 10);
  CHECK(a.ratio() == mpq_class(3, 2));

  const auto b = choose_parameters(1, 1, 1, mpq_class(1, 100));
  CHECK(b.s_total == b.mu + 1);
  CHECK(b.mu >= 100);
  CHECK(b.ratio() < mpq_class(101, 100) + mpq_class(1, 1000000));

  const auto c = choose_parameters(2, 4, 1, mpq_class(1, 4));
  CHECK(c.ratio() <= mpq_class(9, 4));
  CHECK(choose(2 + c.s_total, 2) > 4 * choose(2 + c.mu - 1, 2));
  CHECK(parameters_sound(c));

  CHECK_THROWS_AS(choose_parameters(0, 1, 1, mpq_class(1, 2)), Error);
  CHECK_THROWS_AS(choose_parameters(2, 1, 1, mpq_class(0)), Error);
}

TEST_CASE("choose_parameters is sound and minimal on random inputs") {
  testgen::Gen g(31);
  for (int i = 0; i < 200; ++i) {
    const int n = static_cast<int>(g.range(1, 3));
    const int d = static_cast<int>(g.range(1, 9));
    const int e = static_cast<int>(g.range(1, 3));
    const mpq_class delta(static_cast<long>(g.range(1, 20)), 20);
    const auto p = choose_parameters(n, d, e, delta);
    CAPTURE(n);
    CAPTURE(d);
    CAPTURE(e);
    CAPTURE(delta.get_str());
    // Both invariants, recomputed here.
    CHECK(choose(n + p.s_total, n) > d * choose(n + p.mu - 1, n));
    const mpq_class vol = power(mpq_class(e), n);
    REQUIRE(p.eta > 0);
    REQUIRE(p.eta < vol);
    CHECK(ratio_ok(mpq_class(p.s_total, p.mu * e), delta, mpq_class(d) / p.eta, n, true));
    CHECK(parameters_sound(p));
    const auto [mu, s] = search_oracle(n, d, e, delta);
    CHECK(p.mu == mu);
    CHECK(p.s_total == s);
  }
}

TEST_CASE("build_multiplicity_system sizes") {
  const auto sys = build_multiplicity_system(origin_cycle(), 3, 2);
  CHECK(sys.basis.size() == 10);
  CHECK(sys.rows.size() == 3);

  const auto r2 = build_multiplicity_system(sqrt2_cycle(), 2, 1);
  CHECK(r2.rows.size() == 2);
  CHECK(r2.basis.size() == 3);

  // Rows per orbit are g * C(n + mu - 1, n).
  const Divisor conic = Divisor::from_form(mono({2, 0, 0}) + mono({0, 2, 0}) - mono({0, 0, 2}, 3));
  const Divisor line = Divisor::from_form(mono({1, 0, 0}));
  const auto y = intersect_zero_cycle({conic, line});
  for (int mu = 1; mu <= 3; ++mu) {
    int expected = 0;
    for (const auto& o : y.orbits) expected += o.degree * static_cast<int>(choose(2 + mu - 1, 2).get_si());
    CHECK(build_multiplicity_system(y, 4, mu).rows.size() == static_cast<std::size_t>(expected));
  }
}

TEST_CASE("kernel_form examples") {
  SUBCASE("vanishing to order two at (0:0:1)") {
    const auto sys = build_multiplicity_system(origin_cycle(), 3, 2);
    CHECK(sys.basis.size() - rank_oracle(sys.rows) == 7);
    const auto f = kernel_form(sys);
    REQUIRE(f);
    CHECK(f->coeff(Exponents{0, 0, 3}) == 0);
    CHECK(f->coeff(Exponents{1, 0, 2}) == 0);
    CHECK(f->coeff(Exponents{0, 1, 2}) == 0);
    check_in_kernel(sys, *f);
  }
  SUBCASE("no rows gives the first basis monomial") {
    MultiplicitySystem sys;
    sys.nvars = 3;
    sys.degree = 2;
    sys.basis = monomial_basis(3, 2);
    const auto f = kernel_form(sys);
    REQUIRE(f);
    CHECK(*f == HomogeneousForm::monomial(sys.basis[0]));
  }
  SUBCASE("square nonsingular systems have no kernel") {
    testgen::Gen g(32);
    int tried = 0;
    while (tried < 20) {
      MultiplicitySystem sys;
      sys.nvars = 2;
      sys.degree = 3;
      sys.basis = monomial_basis(2, 3);
      for (std::size_t i = 0; i < sys.basis.size(); ++i) {
        std::vector<mpq_class> row;
        for (std::size_t j = 0; j < sys.basis.size(); ++j) row.push_back(g.rational(9));
        sys.rows.push_back(row);
      }
      if (rank_oracle(sys.rows) != sys.basis.size()) continue;
      ++tried;
      CHECK_FALSE(kernel_form(sys));
    }
  }
}

TEST_CASE("kernel vectors annihilate random systems") {
  testgen::Gen g(33);
  for (int i = 0; i < 60; ++i) {
    MultiplicitySystem sys;
    sys.nvars = static_cast<int>(g.range(2, 3));
    sys.degree = static_cast<int>(g.range(1, 3));
    sys.basis = monomial_basis(sys.nvars, sys.degree);
    const auto nrows = static_cast<std::size_t>(g.range(0, static_cast<std::int64_t>(sys.basis.size())));
    for (std::size_t r = 0; r < nrows; ++r) {
      std::vector<mpq_class> row;
      for (std::size_t j = 0; j < sys.basis.size(); ++j) row.push_back(g.range(0, 2) == 0 ? mpq_class(0) : g.rational(7));
      sys.rows.push_back(row);
    }
    const auto f = kernel_form(sys);
    CHECK(static_cast<bool>(f) == (rank_oracle(sys.rows) < sys.basis.size()));
    if (f) {
      CHECK_FALSE(f->is_zero());
      check_in_kernel(sys, *f);
    }
  }
}

TEST_CASE("certify_multiplicity examples") {
  CHECK(certify_multiplicity(mono({2, 0, 1}), origin_cycle(), 2));
  CHECK_FALSE(certify_multiplicity(mono({0, 0, 3}), origin_cycle(), 1));
  CHECK(certify_multiplicity(mono({2, 0}) - mono({0, 2}, 2), sqrt2_cycle(), 1));
  CHECK_FALSE(certify_multiplicity(mono({2, 0}) - mono({0, 2}, 2), sqrt2_cycle(), 2));
  CHECK(certify_multiplicity((mono({2, 0}) - mono({0, 2}, 2)) * (mono({2, 0}) - mono({0, 2}, 2)), sqrt2_cycle(), 2));
  // x0 x2 - x1^2 is singular nowhere, so order one only at (0:0:1).
  CHECK(certify_multiplicity(mono({1, 0, 1}) - mono({0, 2, 0}), origin_cycle(), 1));
  CHECK_FALSE(certify_multiplicity(mono({1, 0, 1}) - mono({0, 2, 0}), origin_cycle(), 2));
}

TEST_CASE("certificates from the pipeline re-certify") {
  SUBCASE("a rational point in the plane") {
    const auto cert = build_certificate(origin_cycle(), 1, mpq_class(1, 2));
    CHECK(cert.params.mu == 2);
    CHECK(cert.params.s_total == 3);
    CHECK(cert.multiplicity_verified);
    CHECK_FALSE(cert.form.is_zero());
    // F(x0, x1, 1) must have no constant or linear part.
    CHECK(cert.form.coeff(Exponents{0, 0, 3}) == 0);
    CHECK(cert.form.coeff(Exponents{1, 0, 2}) == 0);
    CHECK(cert.form.coeff(Exponents{0, 1, 2}) == 0);
    CHECK(cert.coeff_norm == cert.form.coeff_norm1());
    CHECK(cert.slack == doctest::Approx(static_cast<double>(std::log(cert.coeff_norm.get_d()) + 2 * std::log(4.0))));
  }
  SUBCASE("a conjugate pair on P^1") {
    const auto cert = build_certificate(sqrt2_cycle(), 1, mpq_class(1, 2));
    CHECK(cert.multiplicity_verified);
    CHECK(certify_multiplicity(cert.form, sqrt2_cycle(), cert.params.mu));
    CHECK_FALSE(certify_multiplicity(cert.form + mono({cert.params.s_total, 0}), sqrt2_cycle(), cert.params.mu));
  }
  SUBCASE("a conic meeting a line") {
    const auto y = intersect_zero_cycle({Divisor::from_form(mono({2, 0, 0}) + mono({0, 2, 0}) - mono({0, 0, 2}, 3)),
                                         Divisor::from_form(mono({1, 0, 0}))});
    const auto cert = build_certificate(y, 1, mpq_class(1, 2));
    CHECK(cert.multiplicity_verified);
    CHECK(certify_multiplicity(cert.form, y, cert.params.mu));
    CHECK(parameters_sound(cert.params));
  }
}

TEST_CASE("empirical_gcd_bound_check examples") {
  SUBCASE("points (a:b:1) in a box") {
    auto cert = manual_certificate();
    std::vector<ProjectivePoint> sample;
    long double oracle = -1e9L;
    for (long a = 1; a <= 100; ++a) {
      for (long b = 1; b <= 100; ++b) {
        sample.push_back(ProjectivePoint::from_integers({a, b, 1}));
        const long double d = 2 * std::log(static_cast<long double>(std::gcd(a, b))) -
                              3 * std::log(static_cast<long double>(std::max(a, b)));
        oracle = std::max(oracle, d);
      }
    }
    empirical_gcd_bound_check(cert, sample);
    CHECK(cert.checked == 10000);
    CHECK(cert.exceptional == 0);
    CHECK(cert.violation_count == 0);
    REQUIRE(cert.empirical_constant);
    CHECK(static_cast<double>(*cert.empirical_constant) == doctest::Approx(static_cast<double>(oracle)));
    CHECK(*cert.empirical_constant <= 1e-12L);
  }
  SUBCASE("points (g:g:1)") {
    for (long gv : {2L, 6L, 35L, 1000L}) {
      auto cert = manual_certificate();
      empirical_gcd_bound_check(cert, {ProjectivePoint::from_integers({gv, gv, 1})});
      REQUIRE(cert.empirical_constant);
      CHECK(static_cast<double>(*cert.empirical_constant) == doctest::Approx(-std::log(static_cast<double>(gv))));
    }
  }
  SUBCASE("points on div(F) are exceptional") {
    auto cert = manual_certificate();
    empirical_gcd_bound_check(cert, {ProjectivePoint::from_integers({1, 0, 0})});
    CHECK(cert.exceptional == 1);
    CHECK(cert.checked == 0);
    CHECK_FALSE(cert.empirical_constant);
  }
  SUBCASE("empty sample") {
    auto cert = manual_certificate();
    try {
      empirical_gcd_bound_check(cert, {});
      FAIL("expected EmptySample");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EmptySample);
    }
  }
}

TEST_CASE("box check agrees with the generic check on every primitive point") {
  const std::int64_t bound = 12;
  const auto base = build_certificate(origin_cycle(), 1, mpq_class(1, 2));
  std::vector<ProjectivePoint> sample;
  for (std::int64_t a = -bound; a <= bound; ++a) {
    for (std::int64_t b = -bound; b <= bound; ++b) {
      for (std::int64_t c = -bound; c <= bound; ++c) {
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        // First nonzero coordinate positive: one representative per point.
        const std::int64_t lead = a != 0 ? a : (b != 0 ? b : c);
        if (lead < 0) continue;
        sample.push_back(ProjectivePoint::from_integers({a, b, c}));
      }
    }
  }
  auto generic = base;
  empirical_gcd_bound_check(generic, sample);
  auto box = base;
  empirical_gcd_bound_check_box(box, bound);
  CHECK(box.checked + box.exceptional == sample.size());
  CHECK(box.checked == generic.checked);
  CHECK(box.exceptional == generic.exceptional);
  CHECK(box.violation_count == generic.violation_count);
  REQUIRE(box.empirical_constant);
  REQUIRE(generic.empirical_constant);
  CHECK(static_cast<double>(*box.empirical_constant) ==
        doctest::Approx(static_cast<double>(*generic.empirical_constant)).epsilon(1e-12));
}

TEST_CASE("vojta_gcd_exponents") {
  const auto v2 = vojta_gcd_exponents(2);
  CHECK(v2.vojta_exponent == 1);
  CHECK(static_cast<double>(v2.homo_exponent) == doctest::Approx(1 / (2 * std::sqrt(2.0))));
  CHECK(v2.corollary_holds);
  CHECK(static_cast<double>(v2.runge_exponent(4, 1)) == doctest::Approx(2.0));

  const auto v10 = vojta_gcd_exponents(10);
  CHECK(v10.corollary_holds);
  CHECK(static_cast<double>(v10.lhs_lo) == doctest::Approx(9.0577).epsilon(1e-4));
  CHECK(v10.lhs_lo > 9);

  const auto v11 = vojta_gcd_exponents(11);
  CHECK_FALSE(v11.corollary_holds);
  CHECK(v11.lhs_hi < 10);
  CHECK(static_cast<double>(v11.lhs_hi) == doctest::Approx(9.8185).epsilon(1e-4));

  for (int n : {1, 0, -3}) CHECK_THROWS_AS(vojta_gcd_exponents(n), Error);
}

TEST_CASE("homogeneous exponent is strictly decreasing and the enclosure is tight") {
  long double prev = 1e9L;
  for (int n = 2; n <= 30; ++n) {
    const auto v = vojta_gcd_exponents(n);
    CHECK(v.homo_exponent < prev);
    prev = v.homo_exponent;
    const double direct = 2 * std::exp(std::lgamma(n + 1.0) / n);
    CHECK(static_cast<double>(v.lhs_lo) <= direct * (1 + 1e-12));
    CHECK(static_cast<double>(v.lhs_hi) >= direct * (1 - 1e-12));
    CHECK(v.lhs_lo <= v.lhs_hi);
    CHECK(v.corollary_holds == (direct >= n - 1));
    CHECK(v.corollary_holds == (n <= 10));
  }
}
