#include <doctest.h>

#include <algorithm>
#include <random>

#include "speq/error.hpp"
#include "speq/sperner_search.hpp"

using namespace speq;

namespace {

Labeling labeling_1d(std::int64_t m, const std::vector<int>& per_vertex) {
  // per_vertex[k] labels the vertex with p0 = (m-k)/m, i.e. listed from
  // (1,0) down to (0,1).
  Labeling lab;
  lab.sub = subdivide(1, m);
  for (std::int64_t k = 0; k <= m; ++k)
    lab.labels[{m - k, k}] = per_vertex[static_cast<std::size_t>(k)];
  return lab;
}

}  // namespace

TEST_CASE("enumeration on pinned 1-D instances") {
  auto lab = labeling_1d(2, {0, 0, 1});
  auto result = enumerate_fully_labeled(lab);
  REQUIRE(result.cells.size() == 1);
  CHECK(result.cells[0] == GridCell{{0, 2}, {1}});
  CHECK(result.visited == 2);

  auto alternating = labeling_1d(3, {0, 1, 0, 1});
  CHECK(enumerate_fully_labeled(alternating).cells.size() == 3);
}

TEST_CASE("enumeration on a pinned 2-D instance") {
  Labeling lab;
  lab.sub = subdivide(2, 2);
  lab.labels[{2, 0, 0}] = 0;
  lab.labels[{0, 2, 0}] = 1;
  lab.labels[{0, 0, 2}] = 2;
  lab.labels[{1, 1, 0}] = 0;
  lab.labels[{1, 0, 1}] = 2;
  lab.labels[{0, 1, 1}] = 1;
  auto result = enumerate_fully_labeled(lab);
  // only the middle triangle carries {0,1,2}
  REQUIRE(result.cells.size() == 1);
  CHECK(result.cells[0] == GridCell{{0, 1, 1}, {1, 2}});
}

TEST_CASE("path_follow lands in the enumeration set") {
  auto alternating = labeling_1d(3, {0, 1, 0, 1});
  auto all = enumerate_fully_labeled(alternating);
  auto one = path_follow(alternating);
  REQUIRE(one.cells.size() == 1);
  CHECK(std::find(all.cells.begin(), all.cells.end(), one.cells[0]) != all.cells.end());
}

TEST_CASE("randomized existence, parity, and agreement") {
  std::mt19937_64 seeds(2024);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int n = 1 + static_cast<int>(seeds() % 2);
    std::int64_t m = 1 + static_cast<std::int64_t>(seeds() % 8);
    auto lab = random_proper_labeling(subdivide(n, m), seeds());
    auto all = enumerate_fully_labeled(lab);
    CHECK(all.cells.size() >= 1);
    CHECK(all.cells.size() % 2 == 1);
    CHECK(std::is_sorted(all.cells.begin(), all.cells.end()));
    auto one = path_follow(lab);
    CHECK(std::find(all.cells.begin(), all.cells.end(), one.cells[0]) != all.cells.end());
    ++checked;
  }
  for (int trial = 0; trial < 25; ++trial) {
    std::int64_t m = 1 + static_cast<std::int64_t>(seeds() % 8);
    auto lab = random_proper_labeling(subdivide(3, m), seeds());
    auto all = enumerate_fully_labeled(lab);
    CHECK(all.cells.size() % 2 == 1);
    auto one = path_follow(lab);
    CHECK(std::find(all.cells.begin(), all.cells.end(), one.cells[0]) != all.cells.end());
    ++checked;
  }
  CHECK(checked == 125);
}

TEST_CASE("search is deterministic including visit counts") {
  auto lab = random_proper_labeling(subdivide(2, 5), 99);
  auto a = enumerate_fully_labeled(lab);
  auto b = enumerate_fully_labeled(lab);
  CHECK(a.cells == b.cells);
  CHECK(a.visited == b.visited);
  auto c = path_follow(lab);
  auto d = path_follow(lab);
  CHECK(c.cells == d.cells);
  CHECK(c.visited == d.visited);
}

TEST_CASE("improper labelings are rejected") {
  auto bad = labeling_1d(2, {1, 0, 1});
  CHECK_THROWS_AS(enumerate_fully_labeled(bad), Error);
  CHECK_THROWS_AS(path_follow(bad), Error);
  try {
    path_follow(bad);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::improper_labeling);
  }
}

TEST_CASE("search results round-trip through JSON") {
  auto lab = random_proper_labeling(subdivide(2, 4), 123);
  auto result = enumerate_fully_labeled(lab);
  auto parsed = search_result_from_json(search_result_to_json(result));
  CHECK(parsed.strategy == result.strategy);
  CHECK(parsed.visited == result.visited);
  CHECK(parsed.cells == result.cells);
}
