#include "dioph/errors.hpp"
#include "dioph/heights.hpp"
#include "dioph/points.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

using namespace dioph;

namespace {

HomogeneousForm mono(std::initializer_list<int> e, long c = 1) { return HomogeneousForm::monomial(Exponents(e), c); }

EnumerationSpec p1_by_height(long double h) {
  EnumerationSpec s;
  s.ambient_dim = 1;
  s.height_bound = h;
  return s;
}

EnumerationSpec affine(int dim, std::vector<HomogeneousForm> forms, std::int64_t box) {
  EnumerationSpec s;
  s.ambient_dim = dim;
  s.box_bound = box;
  s.variety = Variety{dim, std::move(forms)};
  return s;
}

std::set<std::string> names(const std::vector<ProjectivePoint>& pts) {
  std::set<std::string> out;
  for (const auto& p : pts) out.insert(p.to_string());
  return out;
}

std::set<std::string> names(std::initializer_list<std::initializer_list<std::int64_t>> pts) {
  std::set<std::string> out;
  for (const auto& p : pts) out.insert(ProjectivePoint::from_integers(p).to_string());
  return out;
}

// Points of P^1(Q) with H <= h: coprime pairs up to sign.
std::size_t coprime_oracle(long h) {
  std::size_t count = 0;
  for (long a = -h; a <= h; ++a) {
    for (long b = -h; b <= h; ++b) {
      if (std::gcd(a, b) == 1) ++count;
    }
  }
  return count / 2;
}

mpz_class max_abs(const ProjectivePoint& p) {
  mpz_class m = 0;
  for (const auto& c : p.integer_coords()) m = std::max(m, mpz_class(abs(c)));
  return m;
}

}  // namespace

TEST_CASE("enumerate_projective_points examples") {
  CHECK(names(enumerate_projective_points(p1_by_height(1))) == names({{0, 1}, {1, 0}, {1, 1}, {-1, 1}}));
  CHECK(enumerate_projective_points(p1_by_height(1)).size() == 4);
  const auto two = enumerate_projective_points(p1_by_height(2));
  CHECK(two.size() == 8);
  CHECK(names(two) == names({{0, 1}, {1, 0}, {1, 1}, {-1, 1}, {2, 1}, {-2, 1}, {1, 2}, {-1, 2}}));
  CHECK(enumerate_projective_points(p1_by_height(0.5L)).empty());
}

TEST_CASE("P^1(Q) counts match coprime pairs for H = 1..50") {
  for (long h = 1; h <= 50; ++h) {
    CHECK_MESSAGE(enumerate_projective_points(p1_by_height(h)).size() == coprime_oracle(h), "H=" << h);
  }
}

TEST_CASE("P^2(Q) enumeration is complete, unique and ordered") {
  EnumerationSpec s;
  s.ambient_dim = 2;
  s.height_bound = 9;
  const auto pts = enumerate_projective_points(s);
  std::size_t oracle = 0;
  for (long a = -9; a <= 9; ++a) {
    for (long b = -9; b <= 9; ++b) {
      for (long c = -9; c <= 9; ++c) {
        if (std::gcd(std::gcd(a, b), c) == 1) ++oracle;
      }
    }
  }
  CHECK(pts.size() == oracle / 2);
  std::unordered_set<ProjectivePoint, ProjectivePointHash> seen;
  for (const auto& p : pts) CHECK(seen.insert(p).second);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const mpz_class h0 = max_abs(pts[i - 1]), h1 = max_abs(pts[i]);
    CHECK(h0 <= h1);
    if (h0 == h1) CHECK(lex_less(pts[i - 1], pts[i]));
  }
}

TEST_CASE("enumeration is deterministic") {
  EnumerationSpec s;
  s.ambient_dim = 2;
  s.height_bound = 6;
  const auto a = enumerate_projective_points(s);
  const auto b = enumerate_projective_points(s);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("enumeration over Q(i) agrees with a disc scan") {
  const BaseField qi = BaseField::imag_quadratic(1);
  for (long double h : {1.0L, 2.0L, 3.0L}) {
    EnumerationSpec s;
    s.ambient_dim = 1;
    s.field = qi;
    s.height_bound = h;
    const auto pts = enumerate_projective_points(s);
    std::set<std::string> oracle;
    const long r = static_cast<long>(h);
    std::vector<FieldElement> ints;
    for (long a = -r; a <= r; ++a) {
      for (long b = -r; b <= r; ++b) {
        if (a * a + b * b <= r * r) ints.emplace_back(qi, a, b);
      }
    }
    for (const auto& x : ints) {
      for (const auto& y : ints) {
        if (x.is_zero() && y.is_zero()) continue;
        const ProjectivePoint p({x, y});
        if (weil_height(p) <= std::log(h) + 1e-12L) oracle.insert(p.to_string());
      }
    }
    CHECK(names(pts) == oracle);
    CHECK(names(pts).size() == pts.size());
    if (h == 1.0L) CHECK(pts.size() == 6);
  }
}

TEST_CASE("EnumerationSpec validation") {
  EnumerationSpec s;
  s.ambient_dim = 1;
  CHECK_THROWS_AS(s.validate(), Error);
  s.height_bound = 3;
  s.box_bound = 3;
  CHECK_THROWS_AS(s.validate(), Error);
  s.box_bound.reset();
  s.affine_patch = 2;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("enumerate_affine_integral examples") {
  SUBCASE("conic x0 x2 = x1^2 with B = 3") {
    const auto pts = enumerate_affine_integral(affine(2, {mono({1, 0, 1}) - mono({0, 2, 0})}, 3));
    CHECK(names(pts) == names({{1, -1, 1}, {1, 0, 0}, {1, 1, 1}}));
  }
  SUBCASE("x^3 - 2 y^3 = 1 with B = 100") {
    const auto thue = mono({0, 3, 0}) - mono({0, 0, 3}, 2) - mono({3, 0, 0});
    const auto pts = enumerate_affine_integral(affine(2, {thue}, 100));
    std::set<std::string> oracle;
    for (long x = -100; x <= 100; ++x) {
      for (long y = -100; y <= 100; ++y) {
        if (x * x * x - 2 * y * y * y == 1) oracle.insert(ProjectivePoint::from_integers({1, x, y}).to_string());
      }
    }
    CHECK(names(pts) == oracle);
    CHECK(names(pts) == names({{1, 1, 0}, {1, -1, -1}}));
  }
  SUBCASE("no equations in one variable") {
    const auto pts = enumerate_affine_integral(affine(1, {}, 1));
    CHECK(names(pts) == names({{1, -1}, {1, 0}, {1, 1}}));
  }
  SUBCASE("another patch") {
    auto s = affine(2, {mono({1, 0, 1}) - mono({0, 2, 0})}, 4);
    s.affine_patch = 2;
    for (const auto& p : enumerate_affine_integral(s)) {
      const auto c = p.integer_coords();
      CHECK(c[0] * c[2] == c[1] * c[1]);
      CHECK(c[2] != 0);
    }
  }
}

TEST_CASE("affine box scan matches brute force on random plane curves") {
  testgen::Gen g(41);
  for (int i = 0; i < 25; ++i) {
    const int deg = static_cast<int>(g.range(1, 3));
    const HomogeneousForm f = g.form(3, deg, 4);
    const std::int64_t box = 15;
    std::set<std::string> oracle;
    for (long x = -box; x <= box; ++x) {
      for (long y = -box; y <= box; ++y) {
        const std::vector<mpq_class> v{1, x, y};
        if (f.evaluate(std::span<const mpq_class>(v)) == 0) {
          oracle.insert(ProjectivePoint::from_integers({1, x, y}).to_string());
        }
      }
    }
    CHECK(names(enumerate_affine_integral(affine(2, {f}, box))) == oracle);
  }
}

TEST_CASE("filter_D_integral examples") {
  const Divisor d = Divisor::from_form(HomogeneousForm::variable(2, 0));
  std::vector<ProjectivePoint> stream;
  for (long n = -20; n <= 20; ++n) stream.push_back(ProjectivePoint::from_integers({1, n}));
  IntegralityReport rep;
  CHECK(filter_D_integral(stream, d, 0.1L, &rep).size() == stream.size());
  CHECK(rep.seen == stream.size());
  CHECK(rep.max_defect <= 1e-12L);

  IntegralityReport r2;
  CHECK(filter_D_integral({ProjectivePoint::from_integers({2, 1})}, d, 0.1L, &r2).empty());
  CHECK(static_cast<double>(r2.max_defect) == doctest::Approx(std::log(2.0)));

  CHECK(filter_D_integral({}, d, 0.1L).empty());
}

TEST_CASE("affine integral points are integral for the hyperplane at infinity") {
  const Divisor infinity = Divisor::from_form(HomogeneousForm::variable(3, 0));
  const std::vector<HomogeneousForm> curves{
      mono({1, 0, 1}) - mono({0, 2, 0}),
      mono({0, 3, 0}) - mono({0, 0, 3}, 2) - mono({3, 0, 0}),
      mono({0, 2, 0}) - mono({0, 0, 2}, 2) - mono({2, 0, 0}),
  };
  for (const auto& f : curves) {
    const auto pts = enumerate_affine_integral(affine(2, {f}, 200));
    REQUIRE_FALSE(pts.empty());
    IntegralityReport rep;
    CHECK(filter_D_integral(pts, infinity, 1e-9L, &rep).size() == pts.size());
    CHECK(rep.on_divisor == 0);
  }
}

TEST_CASE("points CSV") {
  std::ostringstream os;
  write_points_csv(os, 1, enumerate_projective_points(p1_by_height(1)));
  const std::string s = os.str();
  CHECK(s.rfind("coord_0,coord_1,height\n", 0) == 0);
  CHECK(std::count(s.begin(), s.end(), '\n') == 5);

  std::ostringstream empty;
  write_points_csv(empty, 2, {});
  CHECK(empty.str() == "coord_0,coord_1,coord_2,height\n");
}
