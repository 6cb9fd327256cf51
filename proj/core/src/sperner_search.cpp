#include "speq/sperner_search.hpp"

#include <algorithm>
#include <set>

#include "json_util.hpp"
#include "speq/error.hpp"
#include "speq/parallel.hpp"

namespace speq {

namespace {

void require_proper(const Labeling& lab) {
  auto violations = validate_proper(lab);
  if (!violations.empty()) {
    const auto& v = violations.front();
    std::string where;
    for (std::int64_t k : v.vertex) where += std::to_string(k) + ",";
    raise(Errc::improper_labeling,
          std::to_string(violations.size()) + " violation(s); first at vertex (" +
              where + ") rule " + std::to_string(v.rule) + ": " + v.detail);
  }
}

// Canonical key of a facet: its vertex coordinates, sorted and flattened.
std::vector<std::int64_t> facet_key(std::vector<GridVertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  std::vector<std::int64_t> key;
  key.reserve(vertices.size() * vertices.front().size());
  for (const auto& v : vertices)
    key.insert(key.end(), v.begin(), v.end());
  return key;
}

std::vector<std::int64_t> facet_key_dropping(const std::vector<GridVertex>& cell_vertices,
                                             int dropped) {
  std::vector<GridVertex> rest;
  rest.reserve(cell_vertices.size() - 1);
  for (std::size_t i = 0; i < cell_vertices.size(); ++i)
    if (static_cast<int>(i) != dropped) rest.push_back(cell_vertices[i]);
  return facet_key(std::move(rest));
}

}  // namespace

SearchResult enumerate_fully_labeled(const Subdivision& sub, const LabelFn& labels) {
  auto bases = grid_vertices(sub);

  std::vector<std::vector<GridCell>> found(bases.size());
  parallel_chunks(static_cast<std::int64_t>(bases.size()),
                  [&](std::int64_t begin, std::int64_t end) {
                    GridCell cell;
                    for (std::int64_t b = begin; b < end; ++b) {
                      cell.base = bases[static_cast<std::size_t>(b)];
                      cell.perm.resize(static_cast<std::size_t>(sub.n));
                      std::iota(cell.perm.begin(), cell.perm.end(), 1);
                      do {
                        if (!cell_valid(cell, sub)) continue;
                        if (is_fully_labeled(cell, sub, labels))
                          found[static_cast<std::size_t>(b)].push_back(cell);
                      } while (std::next_permutation(cell.perm.begin(), cell.perm.end()));
                    }
                  });

  SearchResult result;
  result.strategy = SearchStrategy::enumerate;
  result.visited = sub.cell_count();
  for (auto& per_base : found)
    for (auto& cell : per_base) result.cells.push_back(std::move(cell));
  return result;
}

SearchResult enumerate_fully_labeled(const Labeling& lab) {
  require_proper(lab);
  return enumerate_fully_labeled(lab.sub, label_fn(lab));
}

SearchResult path_follow(const Subdivision& sub, const LabelFn& labels) {
  const int n = sub.n;
  SearchResult result;
  result.strategy = SearchStrategy::path_follow;

  std::set<std::vector<std::int64_t>> used_doors;
  std::optional<GridCell> answer;

  for_each_face_cell(sub, n - 1, [&](const GridCell& face) {
    if (answer) return;

    // A starting door carries exactly the labels {0..n-1}.
    auto face_vertices = cell_vertex_coords(face, sub);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (const auto& v : face_vertices) {
      int label = labels(v);
      if (label < 0 || label >= n || seen[static_cast<std::size_t>(label)]) return;
      seen[static_cast<std::size_t>(label)] = true;
    }
    auto door = facet_key(face_vertices);
    if (!used_doors.insert(door).second) return;

    // The unique incident full cell: prepend the move that raises the last
    // coordinate off the bottom face.
    GridCell cell;
    cell.base = face.base;
    --cell.base[static_cast<std::size_t>(n) - 1];
    ++cell.base[static_cast<std::size_t>(n)];
    cell.perm.reserve(static_cast<std::size_t>(n));
    cell.perm.push_back(n);
    cell.perm.insert(cell.perm.end(), face.perm.begin(), face.perm.end());

    auto entry = door;
    while (true) {
      ++result.visited;
      auto vertices = cell_vertex_coords(cell, sub);
      std::vector<int> cell_labels(vertices.size());
      for (std::size_t i = 0; i < vertices.size(); ++i)
        cell_labels[i] = labels(vertices[i]);

      std::vector<bool> present(static_cast<std::size_t>(n) + 1, false);
      for (int label : cell_labels) {
        if (label < 0 || label > n)
          raise(Errc::improper_labeling, "label outside {0..n} on the walk");
        present[static_cast<std::size_t>(label)] = true;
      }
      if (std::all_of(present.begin(), present.end(), [](bool b) { return b; })) {
        answer = cell;
        return;
      }

      // Not fully labeled: labels are {0..n-1} with one duplicate; the two
      // doors drop the duplicated vertices. Exit through the one we did not
      // enter by (lowest dropped index first).
      int duplicated = -1;
      {
        std::vector<int> count(static_cast<std::size_t>(n) + 1, 0);
        for (int label : cell_labels) ++count[static_cast<std::size_t>(label)];
        for (int l = 0; l <= n; ++l)
          if (count[static_cast<std::size_t>(l)] > 1) duplicated = l;
      }
      if (duplicated < 0) raise(Errc::improper_labeling, "walk entered a doorless cell");

      bool moved = false;
      for (std::size_t i = 0; i < cell_labels.size() && !moved; ++i) {
        if (cell_labels[i] != duplicated) continue;
        auto exit_door = facet_key_dropping(vertices, static_cast<int>(i));
        if (exit_door == entry) continue;
        auto next = neighbor(cell, static_cast<int>(i), sub);
        if (!next) {
          used_doors.insert(exit_door);  // path returned to the bottom face
          return;
        }
        cell = *next;
        entry = std::move(exit_door);
        moved = true;
      }
      if (!moved) raise(Errc::labeling_failed, "walk has no exit door");
    }
  });

  if (!answer)
    raise(Errc::labeling_failed, "no fully labeled cell reachable from the bottom face");
  result.cells.push_back(*answer);
  return result;
}

SearchResult path_follow(const Labeling& lab) {
  require_proper(lab);
  return path_follow(lab.sub, label_fn(lab));
}

std::string search_result_to_json(const SearchResult& r) {
  detail::json j;
  j["strategy"] =
      r.strategy == SearchStrategy::enumerate ? "enumerate" : "path_follow";
  j["visited"] = r.visited;
  auto cells = detail::json::array();
  for (const auto& cell : r.cells) cells.push_back(detail::cell_to_json(cell));
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

SearchResult search_result_from_json(const std::string& text) {
  auto j = detail::parse_document(text);
  detail::require_keys(j, {"strategy", "visited", "cells"}, "search result");
  SearchResult r;
  std::string strategy = j.at("strategy").get<std::string>();
  if (strategy == "enumerate") {
    r.strategy = SearchStrategy::enumerate;
  } else if (strategy == "path_follow") {
    r.strategy = SearchStrategy::path_follow;
  } else {
    raise(Errc::invalid_config, "unknown strategy: " + strategy);
  }
  r.visited = j.at("visited").get<std::int64_t>();
  for (const auto& c : j.at("cells"))
    r.cells.push_back(detail::cell_from_json(c, "search result cell"));
  return r;
}

}  // namespace speq
