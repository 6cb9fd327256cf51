#include <doctest.h>

#include <algorithm>
#include <random>

#include "speq/equivalence.hpp"
#include "speq/error.hpp"
#include "speq/sperner_search.hpp"
#include "test_support.hpp"

using namespace speq;
using speq::test::pt;
using speq::test::q;

namespace {

Labeling pinned_1d() {
  Labeling lab;
  lab.sub = subdivide(1, 2);
  lab.labels[{2, 0}] = 0;
  lab.labels[{1, 1}] = 0;
  lab.labels[{0, 2}] = 1;
  return lab;
}

}  // namespace

TEST_CASE("choose_tau") {
  CHECK(choose_tau(pinned_1d()) == q(1, 4));

  Labeling rule1;
  rule1.sub = subdivide(2, 1);
  rule1.labels[{1, 0, 0}] = 0;
  rule1.labels[{0, 1, 0}] = 1;
  rule1.labels[{0, 0, 1}] = 2;
  CHECK(choose_tau(rule1) == q(1, 2));

  std::mt19937_64 seeds(8);
  for (int trial = 0; trial < 10; ++trial) {
    std::int64_t m = 1 + static_cast<std::int64_t>(seeds() % 5);
    auto lab = random_proper_labeling(subdivide(2, m), seeds());
    CHECK(choose_tau(lab) >= Rational(BigInt(1), BigInt(2 * m)));
  }
}

TEST_CASE("vertex images move the labeled coordinate down by tau") {
  auto lab = random_proper_labeling(subdivide(2, 3), 5);
  auto map = build_map(lab);
  for (const auto& [vertex, label] : lab.labels) {
    const auto& image = map.vertex_images.at(vertex);
    Rational sum = 0;
    for (std::size_t i = 0; i < image.coords.size(); ++i) {
      Rational coord = Rational(BigInt(vertex[i]), BigInt(lab.sub.m));
      if (static_cast<int>(i) == label) {
        CHECK(image.coords[i] == coord - map.tau);
      } else {
        CHECK(image.coords[i] == coord + map.tau / lab.sub.n);
      }
      sum += image.coords[i];
    }
    CHECK(sum == 1);
  }
}

TEST_CASE("fully labeled barycenters are exact fixed points") {
  std::mt19937_64 seeds(21);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 1 + static_cast<int>(seeds() % 2);
    std::int64_t m = 1 + static_cast<std::int64_t>(seeds() % 4);
    auto lab = random_proper_labeling(subdivide(n, m), seeds());
    auto map = build_map(lab);
    for (const auto& cell : enumerate_fully_labeled(lab).cells) {
      auto barycenter = cell_barycenter(cell, lab.sub);
      CHECK(map(barycenter) == barycenter);
    }
  }
}

TEST_CASE("cells missing a label keep an exact coordinate gap of tau/n") {
  std::mt19937_64 seeds(34);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 1 + static_cast<int>(seeds() % 2);
    std::int64_t m = 1 + static_cast<std::int64_t>(seeds() % 4);
    auto lab = random_proper_labeling(subdivide(n, m), seeds());
    auto map = build_map(lab);
    Rational gap = map.tau / n;
    for (const auto& cell : grid_cells(lab.sub)) {
      std::set<int> labels;
      for (const auto& v : cell_vertex_coords(cell, lab.sub))
        labels.insert(lab.label_at(v));
      for (int i = 0; i <= n; ++i) {
        if (labels.count(i)) continue;
        auto r = cell_barycenter(cell, lab.sub);
        auto image = map(r);
        CHECK(image.coords[static_cast<std::size_t>(i)] -
                  r.coords[static_cast<std::size_t>(i)] ==
              gap);
      }
    }
  }
}

TEST_CASE("boundary grid points are repelled along their zero coordinates") {
  auto lab = random_proper_labeling(subdivide(2, 4), 55);
  auto map = build_map(lab);
  for (const auto& [vertex, label] : lab.labels) {
    auto p = vertex_point(vertex, lab.sub);
    auto image = map(p);
    for (std::size_t i = 0; i < vertex.size(); ++i)
      if (vertex[i] == 0) CHECK(image.coords[i] > p.coords[i]);
  }
}

TEST_CASE("induced excess demand") {
  auto lab = pinned_1d();
  auto map = build_map(lab);
  auto demand = induced_excess_demand(map);

  SUBCASE("hand-computed value at the barycenter of the unlabeled cell") {
    auto r = cell_barycenter(GridCell{{1, 1}, {1}}, lab.sub);
    CHECK(r == pt({q(3, 4), q(1, 4)}));
    CHECK(demand.evaluate(r) == std::vector<Rational>{q(-1, 10), q(3, 10)});
  }

  SUBCASE("mu is 1 and g vanishes at fixed points") {
    auto star = cell_barycenter(GridCell{{0, 2}, {1}}, lab.sub);
    CHECK(map(star) == star);
    CHECK(demand.mu(star) == 1);
    CHECK(demand.evaluate(star) == std::vector<Rational>{q(0), q(0)});
  }

  SUBCASE("exact Walras law at random rational points") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 100; ++trial) {
      auto p = speq::test::random_rational_point(1, 24, rng);
      auto g = demand.evaluate(p);
      Rational dot = 0;
      for (std::size_t i = 0; i < g.size(); ++i) dot += p.coords[i] * g[i];
      CHECK(dot == 0);
    }
    auto lab2 = random_proper_labeling(subdivide(2, 3), 3);
    auto demand2 = induced_excess_demand(build_map(lab2));
    for (int trial = 0; trial < 100; ++trial) {
      auto p = speq::test::random_rational_point(2, 12, rng);
      auto g = demand2.evaluate(p);
      Rational dot = 0;
      for (std::size_t i = 0; i < g.size(); ++i) dot += p.coords[i] * g[i];
      CHECK(dot == 0);
    }
  }
}

TEST_CASE("sperner_via_equilibrium certifies fully labeled cells") {
  SolverConfig cfg;

  SUBCASE("pinned 1-D instance matches enumeration") {
    auto lab = pinned_1d();
    auto cert = sperner_via_equilibrium(lab, cfg);
    auto all = enumerate_fully_labeled(lab);
    REQUIRE(all.cells.size() == 1);
    CHECK(cert.cell == all.cells[0]);
    CHECK(cert.tau == q(1, 4));
    CHECK(cert.residual < cert.bound);
    CHECK(is_fully_labeled(cert.cell, lab));
  }

  SUBCASE("rule-1 labeling of the whole simplex") {
    Labeling rule1;
    rule1.sub = subdivide(2, 1);
    rule1.labels[{1, 0, 0}] = 0;
    rule1.labels[{0, 1, 0}] = 1;
    rule1.labels[{0, 0, 1}] = 2;
    auto cert = sperner_via_equilibrium(rule1, cfg);
    CHECK(cert.cell == grid_cells(rule1.sub).front());
    CHECK(cert.residual == 0);
  }

  SUBCASE("randomized cross-check against enumeration") {
    std::mt19937_64 seeds(13);
    for (int trial = 0; trial < 10; ++trial) {
      int n = 1 + static_cast<int>(seeds() % 2);
      std::int64_t m = 1 + static_cast<std::int64_t>(seeds() % 5);
      auto lab = random_proper_labeling(subdivide(n, m), seeds());
      auto cert = sperner_via_equilibrium(lab, cfg);
      auto all = enumerate_fully_labeled(lab);
      CHECK(std::find(all.cells.begin(), all.cells.end(), cert.cell) != all.cells.end());
      CHECK(cert.residual < cert.bound);
    }
  }

  SUBCASE("improper labelings are rejected") {
    Labeling bad;
    bad.sub = subdivide(1, 2);
    bad.labels[{2, 0}] = 1;
    bad.labels[{1, 1}] = 0;
    bad.labels[{0, 2}] = 1;
    CHECK_THROWS_AS(sperner_via_equilibrium(bad, cfg), Error);
  }
}

TEST_CASE("certificates round-trip through JSON") {
  auto cert = sperner_via_equilibrium(pinned_1d(), SolverConfig{});
  auto parsed = certificate_from_json(certificate_to_json(cert));
  CHECK(parsed.cell == cert.cell);
  CHECK(parsed.equilibrium == cert.equilibrium);
  CHECK(parsed.tau == cert.tau);
  CHECK(parsed.residual == cert.residual);
  CHECK(parsed.bound == cert.bound);
}
