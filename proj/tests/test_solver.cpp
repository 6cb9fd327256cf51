#include <doctest.h>

#include <cmath>

#include "speq/equivalence.hpp"
#include "speq/error.hpp"
#include "speq/solver.hpp"
#include "test_support.hpp"

using namespace speq;
using speq::test::pt;
using speq::test::q;

namespace {

// Independent root bracketing of f0 on (0,1) for 2-good economies; the
// solver never sees this path.
double bisect_equilibrium(const EconomySpec& econ) {
  auto f0 = [&](double p0) {
    auto p = normalize_prices(std::vector<double>{p0, 1.0 - p0});
    return evaluate(econ, p).values[0];
  };
  double lo = 1e-9, hi = 1.0 - 1e-9;
  REQUIRE(f0(lo) > 0.0);
  REQUIRE(f0(hi) < 0.0);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (f0(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double max_norm_gap(const std::vector<double>& a, const BarycentricPoint& b) {
  double gap = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    gap = std::max(gap, std::fabs(a[i] - to_double(b.coords[i])));
  return gap;
}

}  // namespace

TEST_CASE("symmetric economy converges to (1/2, 1/2) immediately") {
  SolverConfig cfg;
  auto report = solve(builtin_economy("symmetric-2good"), cfg);
  CHECK(report.converged);
  CHECK(report.prices == pt({q(1, 2), q(1, 2)}));
  CHECK(report.residual == 0.0);
  CHECK(report.walras <= 1e-12);
  CHECK(report.tail_diameter <= to_double(mesh_diameter(subdivide(1, report.trace.back().m))));
}

TEST_CASE("skewed economies match closed-form equilibria") {
  // For consumers A: alpha=(a,1-a), w=(1,0) and B: alpha=(b,1-b), w=(0,1),
  // solving f0(p) = a + b(1-p0)/p0 - 1 = 0 gives p0* = b / (1 - a + b).
  struct Case {
    const char* name;
    Rational expected;
  };
  for (const auto& c : {Case{"skew-b", q(1, 3)}, Case{"skew-c", q(2, 5)},
                        Case{"skew-d", q(1, 4)}}) {
    auto econ = builtin_economy(c.name);
    SolverConfig cfg;
    cfg.m_max = std::int64_t{1} << 21;
    auto report = solve(econ, cfg);
    CHECK(report.converged);
    double p0 = to_double(report.prices.coords[0]);
    CHECK(std::fabs(p0 - to_double(c.expected)) <= 1e-6);
    CHECK(std::fabs(p0 - bisect_equilibrium(econ)) <= 2e-6);
    CHECK(report.residual <= cfg.tol);
    CHECK(report.walras <= 1e-12);
    CHECK(report.residual <= report.trace.front().residual);
    // fixed-point gap at tolerance scale
    auto phi = price_map_real(econ, report.prices);
    CHECK(max_norm_gap(phi, report.prices) <= cfg.tol * econ.goods);
  }
}

TEST_CASE("a three-good economy converges at loose tolerance") {
  SolverConfig cfg;
  cfg.tol = 1e-3;
  auto econ = builtin_economy("cobb-3good");
  auto report = solve(econ, cfg);
  CHECK(report.converged);
  CHECK(report.residual <= cfg.tol);
  CHECK(report.walras <= 1e-12);
  for (const auto& c : report.prices.coords) CHECK(c > 0);
  auto phi = price_map_real(econ, report.prices);
  CHECK(max_norm_gap(phi, report.prices) <= cfg.tol * econ.goods);
}

TEST_CASE("induced economies solve on the exact pathway") {
  Labeling lab;
  lab.sub = subdivide(1, 2);
  lab.labels[{2, 0}] = 0;
  lab.labels[{1, 1}] = 0;
  lab.labels[{0, 2}] = 1;
  auto econ = make_induced_economy(induced_excess_demand(build_map(lab)));

  SolverConfig cfg;
  cfg.mode = Mode::rational;
  cfg.tol = 1e-9;
  auto report = solve(econ, cfg);
  CHECK(report.converged);
  REQUIRE(report.residual_exact.has_value());
  CHECK(*report.residual_exact <= Rational(1, 1000000000));
  // the computed point lies in a fully labeled cell of the original grid
  auto cell = locate_cell(lab.sub, report.prices);
  CHECK(is_fully_labeled(cell, lab));
  // exact Walras law for the induced system at the returned point
  CHECK(walras_residual_exact(econ, report.prices) == 0);
}

TEST_CASE("cauchy_extract") {
  auto a = pt({q(1, 2), q(1, 2)});
  auto b = pt({q(1, 4), q(3, 4)});
  SUBCASE("constant trace") {
    auto [limit, tail] = cauchy_extract({a, a, a, a});
    CHECK(limit == a);
    CHECK(tail == 0);
  }
  SUBCASE("single entry") {
    auto [limit, tail] = cauchy_extract({b});
    CHECK(limit == b);
    CHECK(tail == 0);
  }
  SUBCASE("only the last three candidates matter") {
    auto far = pt({q(1), q(0)});
    auto [limit, tail] = cauchy_extract({far, b, a, a, a});
    CHECK(limit == a);
    CHECK(tail == 0);
    auto [limit2, tail2] = cauchy_extract({far, a, b});
    CHECK(limit2 == b);
    CHECK(tail2 == q(3, 4));  // max-norm distance between far and b
  }
}

TEST_CASE("refinement schedule follows m_start and growth") {
  SolverConfig cfg;
  cfg.m_start = 3;
  cfg.growth = 3;
  cfg.m_max = 100;
  cfg.tol = 1e-12;  // unreachable on this schedule
  auto report = solve(builtin_economy("skew-b"), cfg);
  CHECK_FALSE(report.converged);
  REQUIRE(report.trace.size() == 4);
  CHECK(report.trace[0].m == 3);
  CHECK(report.trace[1].m == 9);
  CHECK(report.trace[2].m == 27);
  CHECK(report.trace[3].m == 81);

  cfg.growth = 1;
  CHECK_THROWS_AS(solve(builtin_economy("skew-b"), cfg), Error);
}

TEST_CASE("rational-mode reports round-trip through JSON") {
  Labeling lab;
  lab.sub = subdivide(1, 2);
  lab.labels[{2, 0}] = 0;
  lab.labels[{1, 1}] = 0;
  lab.labels[{0, 2}] = 1;
  auto econ = make_induced_economy(induced_excess_demand(build_map(lab)));
  SolverConfig cfg;
  cfg.mode = Mode::rational;
  cfg.tol = 1e-9;
  auto report = solve(econ, cfg);
  auto parsed = report_from_json(report_to_json(report));
  CHECK(parsed.mode == Mode::rational);
  CHECK(parsed.converged == report.converged);
  CHECK(parsed.prices == report.prices);
  CHECK(parsed.trace.size() == report.trace.size());
}

TEST_CASE("non-convergence reports the full trace") {
  SolverConfig cfg;
  cfg.m_max = 2;
  auto report = solve(builtin_economy("skew-b"), cfg);
  CHECK_FALSE(report.converged);
  CHECK(report.trace.size() == 2);  // m = 1 and m = 2
  CHECK(report.trace[0].m == 1);
  CHECK(report.trace[1].m == 2);
  CHECK(report.residual > cfg.tol);
}

TEST_CASE("solve is reproducible") {
  SolverConfig cfg;
  cfg.m_max = 4096;
  auto a = solve(builtin_economy("skew-c"), cfg);
  auto b = solve(builtin_economy("skew-c"), cfg);
  CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("reports round-trip through JSON and CSV has one row per level") {
  SolverConfig cfg;
  cfg.m_max = 64;
  auto report = solve(builtin_economy("skew-b"), cfg);
  auto parsed = report_from_json(report_to_json(report));
  CHECK(parsed.converged == report.converged);
  CHECK(parsed.prices == report.prices);
  CHECK(parsed.residual == report.residual);
  CHECK(parsed.trace.size() == report.trace.size());
  for (std::size_t i = 0; i < parsed.trace.size(); ++i) {
    CHECK(parsed.trace[i].m == report.trace[i].m);
    CHECK(parsed.trace[i].cell == report.trace[i].cell);
    CHECK(parsed.trace[i].candidate == report.trace[i].candidate);
  }
  auto csv = report_to_csv(report);
  std::size_t rows = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
  CHECK(rows == report.trace.size() + 1);
}

TEST_CASE("slnc diagnostic separates point equilibria from continua") {
  SUBCASE("symmetric economy: one cluster, diameters halve with eta") {
    SolverConfig cfg;
    cfg.slnc_eta = 0.05;
    cfg.slnc_epsilon = q(1, 5);
    auto report = slnc_diagnostic(builtin_economy("symmetric-2good"), cfg);
    REQUIRE(report.clusters.size() == 1);
    CHECK_FALSE(report.any_flagged);
    const auto& diam = report.clusters[0].diameters;
    for (std::size_t k = 0; k + 1 < diam.size(); ++k) {
      CHECK(diam[k + 1] <= diam[k]);
      CHECK(diam[k + 1] >= 0.25 * diam[k]);
    }
    CHECK(diam.back() <= 0.26 * diam.front());
  }
  SUBCASE("no-trade economy: every point is an equilibrium, all cells flagged") {
    SolverConfig cfg;
    cfg.slnc_eta = 0.05;
    cfg.slnc_epsilon = q(1, 5);
    auto report = slnc_diagnostic(builtin_economy("no-trade-table"), cfg);
    CHECK(report.any_flagged);
    REQUIRE(!report.clusters.empty());
    for (const auto& cluster : report.clusters) CHECK(cluster.flagged);
  }
  SUBCASE("diagnostic reports round-trip through JSON") {
    SolverConfig cfg;
    cfg.slnc_epsilon = q(1, 5);
    auto report = slnc_diagnostic(builtin_economy("symmetric-2good"), cfg);
    auto parsed = slnc_report_from_json(slnc_report_to_json(report));
    CHECK(parsed.epsilon == report.epsilon);
    CHECK(parsed.cover_m == report.cover_m);
    CHECK(parsed.sample_m == report.sample_m);
    CHECK(parsed.etas == report.etas);
    REQUIRE(parsed.clusters.size() == report.clusters.size());
    for (std::size_t i = 0; i < parsed.clusters.size(); ++i) {
      CHECK(parsed.clusters[i].cell == report.clusters[i].cell);
      CHECK(parsed.clusters[i].counts == report.clusters[i].counts);
      CHECK(parsed.clusters[i].diameters == report.clusters[i].diameters);
      CHECK(parsed.clusters[i].flagged == report.clusters[i].flagged);
    }
    CHECK(parsed.any_flagged == report.any_flagged);
  }

  SUBCASE("two isolated equilibria in distinct cover cells: no flag") {
    SolverConfig cfg;
    cfg.slnc_eta = 0.02;
    cfg.slnc_epsilon = q(1, 5);
    auto report = slnc_diagnostic(two_equilibria_table_economy(), cfg);
    CHECK_FALSE(report.any_flagged);
    // clusters around 3/10 and 7/10 sit in different cover cells and shrink
    int shrinking = 0;
    for (const auto& cluster : report.clusters) {
      CHECK_FALSE(cluster.flagged);
      if (cluster.counts.front() > 0 &&
          cluster.diameters.back() <= 0.5 * cluster.diameters.front())
        ++shrinking;
    }
    CHECK(shrinking >= 2);
  }
}
