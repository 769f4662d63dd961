#include "dioph/errors.hpp"
#include "dioph/experiments.hpp"
#include "dioph/heights.hpp"
#include "dioph/report.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

using namespace dioph;
using nlohmann::json;

namespace {

json linear(int nvars, int i) {
  std::vector<int> e(nvars, 0);
  e[i] = 1;
  return {{"terms", {{{"exponents", e}, {"coeff", "1"}}}}};
}

json term(std::vector<int> e, const std::string& c) { return {{"exponents", e}, {"coeff", c}}; }

ProblemFile thue_problem(std::int64_t box, std::int64_t stability) {
  return parse_problem({
      {"field", "Q"},
      {"ambient_dim", 1},
      {"divisors", {{{"terms", {term({3, 0}, "1"), term({0, 3}, "-2")}}}}},
      {"tau", {{"mode", "assert"}, {"value", "2/3"}}},
      {"enumeration", {{"box", box}, {"stability_box", stability}}},
      {"sweep",
       {{"ambient_dim", 2},
        {"forms", {{{"terms", {term({0, 3, 0}, "1"), term({0, 0, 3}, "-2"), term({3, 0, 0}, "-1")}}}}},
        {"patch", 0},
        {"projection", {1, 2}}}},
  });
}

ProblemFile sharpness_problem(std::int64_t box) {
  return parse_problem({
      {"field", "Q"},
      {"ambient_dim", 1},
      {"divisors", {linear(2, 0)}},
      {"tau", {{"mode", "assert"}, {"value", "1"}}},
      {"enumeration", {{"box", box}, {"patch", 0}}},
  });
}

ProblemFile pigeonhole_problem(std::int64_t box) {
  return parse_problem({
      {"field", "Q"},
      {"ambient_dim", 2},
      {"divisors", {linear(3, 0), {{"terms", {term({0, 2, 0}, "1"), term({0, 0, 2}, "-2")}}}}},
      {"tau", {{"mode", "none"}}},
      {"enumeration", {{"box", box}, {"patch", 0}}},
  });
}

ProblemFile units_problem(std::int64_t box, std::int64_t stability) {
  return parse_problem({
      {"field", "Q"},
      {"ambient_dim", 2},
      {"divisors", {linear(3, 0), linear(3, 1)}},
      {"tau", {{"mode", "none"}}},
      {"enumeration", {{"box", box}, {"patch", 2}, {"stability_box", stability}}},
  });
}

ProblemFile tau_problem(const json& orbit, int e, std::int64_t h) {
  return parse_problem({
      {"field", "Q"},
      {"ambient_dim", 1},
      {"cycle", {{"orbits", {orbit}}}},
      {"tau", {{"mode", "estimate"}, {"line_degree", e}}},
      {"enumeration", {{"height_bound", h}}},
  });
}

ProblemFile gcd_problem(int dim, std::int64_t sample) {
  std::vector<std::string> coords(dim + 1, "0");
  coords.back() = "1";
  return parse_problem({
      {"field", "Q"},
      {"ambient_dim", dim},
      {"cycle", {{"orbits", {{{"coords", coords}}}}}},
      {"gcd", {{"e", 1}, {"delta", "1/2"}, {"sample_height", sample}}},
  });
}

std::set<std::string> row_points(const CriterionReport& r) {
  std::set<std::string> out;
  for (const auto& row : r.rows) out.insert(row.x.to_string());
  return out;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Io;
}

long double reevaluate(const ZeroCycle& y, int e, const std::vector<std::int64_t>& w) {
  const auto x = ProjectivePoint::from_integers(std::span<const std::int64_t>(w));
  return cycle_proximity(y, archimedean_only(BaseField()), x) / (e * weil_height(x));
}

}  // namespace

TEST_CASE("tau profile for a rational point") {
  const auto p = tau_problem({{"coords", {"1", "1"}}}, 1, 1000);
  const auto prof = run_tau_estimate(p);
  REQUIRE(prof.final_tau());
  CHECK(*prof.final_tau() >= 0.95L);
  CHECK(*prof.final_tau() <= 1.0L + 1e-12L);
  const auto& last = prof.rows.back();
  REQUIRE(last.witness.size() == 2);
  // (q+1 : q) up to sign.
  CHECK(std::llabs(std::llabs(last.witness[0]) - std::llabs(last.witness[1])) == 1);
  CHECK(static_cast<double>(reevaluate(target_cycle(p), 1, last.witness)) ==
        doctest::Approx(static_cast<double>(*last.tau_hat)).epsilon(1e-12));
}

TEST_CASE("tau profile for the sqrt 2 orbit") {
  const json orbit{{"minimal_poly", {"-2", "0", "1"}}};
  const auto p = tau_problem(orbit, 1, 1000);
  const auto prof = run_tau_estimate(p);
  REQUIRE(prof.final_tau());
  CHECK(*prof.final_tau() >= 1.8L);
  CHECK(*prof.final_tau() <= 2.05L);

  // Witnesses are convergents p/q of sqrt 2, with p^2 - 2 q^2 = +-1.
  std::set<std::pair<std::int64_t, std::int64_t>> convergents;
  for (std::int64_t a = 1, b = 1; a <= 100000; std::tie(a, b) = std::pair(a + 2 * b, a + b)) convergents.insert({a, b});
  const auto y = target_cycle(p);
  std::size_t checked = 0;
  for (const auto& row : prof.rows) {
    if (!row.tau_hat) continue;
    CHECK(static_cast<double>(reevaluate(y, 1, row.witness)) ==
          doctest::Approx(static_cast<double>(*row.tau_hat)).epsilon(1e-12));
    if (*row.tau_hat > 1.8L) {
      CHECK(convergents.count({std::llabs(row.witness[0]), std::llabs(row.witness[1])}) == 1);
      ++checked;
    }
  }
  CHECK(checked > 0);

  const auto p3 = tau_problem(orbit, 3, 1000);
  const auto prof3 = run_tau_estimate(p3);
  REQUIRE(prof3.final_tau());
  CHECK(static_cast<double>(*prof3.final_tau()) == doctest::Approx(static_cast<double>(*prof.final_tau() / 3)));
  CHECK(*prof3.final_tau() < 1);
}

TEST_CASE("tau profile bookkeeping") {
  const auto prof = run_tau_estimate(tau_problem({{"coords", {"1", "1"}}}, 1, 2000));
  REQUIRE(prof.rows.size() > 1);
  for (std::size_t i = 1; i < prof.rows.size(); ++i) {
    CHECK(prof.rows[i - 1].tier < prof.rows[i].tier);
    CHECK(prof.rows[i - 1].points <= prof.rows[i].points);
    if (prof.rows[i - 1].tau_hat) {
      REQUIRE(prof.rows[i].tau_hat);
      CHECK(*prof.rows[i - 1].tau_hat <= *prof.rows[i].tau_hat);
    }
  }
  CHECK(prof.rows.back().tier == 2000);

  ProblemFile empty = tau_problem({{"coords", {"1", "1"}}}, 1, 10);
  empty.cycle = ZeroCycle{1, {}, {}};
  CHECK(kind_of([&] { run_tau_estimate(empty); }) == ErrorKind::NoTarget);
}

TEST_CASE("criterion on the Thue instance") {
  const auto r = run_main_criterion(thue_problem(1000, 10000));
  CHECK(r.hypothesis_satisfied);
  CHECK(r.tau_asserted);
  CHECK(r.snc);
  CHECK(row_points(r) ==
        std::set<std::string>{ProjectivePoint::from_integers({1, 0}).to_string(),
                              ProjectivePoint::from_integers({-1, -1}).to_string()});
  REQUIRE(r.eq2_constant);
  CHECK(*r.eq2_constant <= std::log(2.0L) + 1e-12L);
  REQUIRE(r.stability_constant);
  CHECK(std::fabs(static_cast<double>(*r.stability_constant - *r.eq2_constant)) < 1e-3);
  CHECK(r.bounded_min_height);
  // The reported constant is the max over the rows.
  long double m = -1;
  for (const auto& row : r.rows) m = std::max(m, row.exceptional ? m : row.min_h);
  CHECK(m == *r.eq2_constant);
}

TEST_CASE("criterion on units of Z") {
  const auto r = run_main_criterion(units_problem(30, 300));
  CHECK(r.rows.size() == 4);
  REQUIRE(r.eq2_constant);
  CHECK(*r.eq2_constant == doctest::Approx(0.0));
  CHECK(r.bounded_min_height);
  for (const auto& row : r.rows) {
    for (const auto& c : row.x.integer_coords()) CHECK(abs(c) == 1);
  }
  // No tau is asserted, so the hypothesis is not met.
  CHECK_FALSE(r.hypothesis_satisfied);
}

TEST_CASE("criterion sharpness with tau = 1") {
  const std::int64_t box = 1000;
  const auto r = run_main_criterion(sharpness_problem(box));
  CHECK_FALSE(r.hypothesis_satisfied);
  REQUIRE(r.eq2_constant);
  CHECK(*r.eq2_constant >= 0.9L * std::log(static_cast<long double>(box)));
  CHECK_FALSE(r.bounded_min_height);
}

TEST_CASE("pigeonhole constant stays below the separation") {
  const auto r = run_main_criterion(pigeonhole_problem(100));
  CHECK(static_cast<double>(r.separation) == doctest::Approx(std::log(3 / std::sqrt(2.0))));
  CHECK(r.pigeonhole_violations == 0);
  CHECK(r.pigeonhole_constant <= r.separation + 1e-6L);
  long double m = 0;
  for (const auto& row : r.rows) {
    if (row.second_proximity) {
      CHECK(*row.second_proximity <= r.separation + 1e-6L);
      m = std::max(m, *row.second_proximity);
    }
  }
  // The constant covers every enumerated candidate, the rows only the integral ones.
  CHECK(m <= r.pigeonhole_constant);
  CHECK(r.enumerated > r.rows.size());
  REQUIRE(r.min_decomposition_constant);
  CHECK(*r.min_decomposition_constant >= 0);
}

TEST_CASE("criterion errors") {
  SUBCASE("divisor count differs from the dimension") {
    auto p = pigeonhole_problem(10);
    p.divisors.pop_back();
    CHECK(kind_of([&] { run_main_criterion(p); }) == ErrorKind::HypothesisViolation);
  }
  SUBCASE("tangent divisors") {
    auto p = parse_problem({
        {"field", "Q"},
        {"ambient_dim", 2},
        {"divisors",
         {{{"terms", {term({1, 1, 0}, "1"), term({0, 0, 2}, "-1")}}},
          {{"terms", {term({1, 1, 0}, "1"), term({0, 0, 2}, "-4")}}}}},
        {"tau", {{"mode", "assert"}, {"value", "1/2"}}},
        {"enumeration", {{"box", 5}, {"patch", 2}}},
    });
    CHECK(kind_of([&] { run_main_criterion(p); }) == ErrorKind::NotSNC);
    RunOptions waive;
    waive.waive_snc = true;
    const auto r = run_main_criterion(p, waive);
    CHECK_FALSE(r.snc);
    CHECK(r.snc_waived);
    CHECK(r.snc_failures.size() == 2);
  }
}

TEST_CASE("gcd pipeline") {
  SUBCASE("a point in the plane") {
    RunOptions o;
    o.height_bound = 40;
    const auto r = run_gcd_pipeline(gcd_problem(2, 500), o);
    const auto& c = r.certificate;
    CHECK(r.certificate_rechecked);
    CHECK(c.multiplicity_verified);
    CHECK(c.params.ratio() <= mpq_class(3, 2));
    CHECK(c.form.coeff(Exponents{0, 0, 3}) == 0);
    CHECK(c.form.coeff(Exponents{1, 0, 2}) == 0);
    CHECK(c.form.coeff(Exponents{0, 1, 2}) == 0);
    CHECK(c.violation_count == 0);
    CHECK(c.checked > 0);
    CHECK(r.sample_height == 40);
    CHECK(r.gcd_inequality_checked > 0);
    CHECK(r.gcd_inequality_violations == 0);
  }
  SUBCASE("m_inf against the gcd height at (6:10:1)") {
    const auto y = ZeroCycle::rational_point(ProjectivePoint::from_integers({0, 0, 1}));
    const auto x = ProjectivePoint::from_integers({6, 10, 1});
    CHECK(cycle_proximity(y, archimedean_only(BaseField()), x) == doctest::Approx(0.0));
    CHECK(static_cast<double>(gcd_height(y, x)) == doctest::Approx(std::log(2.0)));
  }
  SUBCASE("d = 1 on P^1 cannot feed the criterion") {
    RunOptions o;
    o.height_bound = 200;
    const auto r = run_gcd_pipeline(gcd_problem(1, 1000), o);
    CHECK_FALSE(r.criterion_applicable);
    CHECK(r.certificate_rechecked);
    CHECK(r.certificate.violation_count == 0);
  }
}

TEST_CASE("report emission") {
  SUBCASE("empty report is header only") {
    const CriterionReport empty;
    const std::string csv = render(empty, ReportFormat::Csv);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
    CHECK(csv.rfind("coord_0,", 0) == 0);
  }
  const auto r = run_main_criterion(thue_problem(1000, 10000));
  SUBCASE("Thue run has two data rows") {
    const std::string csv = render(r, ReportFormat::Csv);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    CHECK(csv.rfind("coord_0,coord_1,h_D1,m_D1,min_h,nearest_orbit,second_proximity\n", 0) == 0);
  }
  SUBCASE("JSON round trip") {
    const json j = to_json(r);
    CHECK(to_json(criterion_report_from_json(j)) == j);
    CHECK(to_json(criterion_report_from_json(json::parse(j.dump()))) == j);
    const auto prof = run_tau_estimate(tau_problem({{"coords", {"1", "1"}}}, 1, 300));
    CHECK(to_json(tau_profile_from_json(to_json(prof))) == to_json(prof));
  }
  SUBCASE("identical inputs give identical bytes") {
    const auto r2 = run_main_criterion(thue_problem(1000, 10000));
    CHECK(render(r, ReportFormat::Csv) == render(r2, ReportFormat::Csv));
    CHECK(render(r, ReportFormat::Json) == render(r2, ReportFormat::Json));
  }
  SUBCASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "dioph_report_test";
    std::filesystem::remove_all(dir);
    emit_report(r, ReportFormat::Json, dir / "nested" / "criterion.json");
    std::ifstream in(dir / "nested" / "criterion.json");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == render(r, ReportFormat::Json));

    // A regular file where a directory is expected.
    std::ofstream(dir / "blocker") << "x";
    CHECK(kind_of([&] { emit_report(r, ReportFormat::Csv, dir / "blocker" / "out.csv"); }) == ErrorKind::Io);
    std::filesystem::remove_all(dir);
  }
  SUBCASE("unknown format") {
    CHECK_THROWS_AS(parse_format("xml"), Error);
  }
}
