#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "speq/labeling.hpp"

namespace speq {

enum class SearchStrategy { enumerate, path_follow };

struct SearchResult {
  SearchStrategy strategy = SearchStrategy::enumerate;
  std::int64_t visited = 0;
  std::vector<GridCell> cells;  // fully labeled, lexicographic order
};

// Ground-truth oracle: scans every cell (in parallel, deterministic
// merge). The Labeling overloads validate properness first
// (ImproperLabeling); the LabelFn overloads trust the source.
SearchResult enumerate_fully_labeled(const Labeling& lab);
SearchResult enumerate_fully_labeled(const Subdivision& sub,
                                     const LabelFn& labels);

// Door-to-door walk. Doors are facets carrying exactly the labels
// {0..n-1}; they occur only on the face spanned by e_0..e_{n-1}, which is
// scanned in lexicographic order for starting doors. Each door is used at
// most once, so every cell is visited at most once per door. Returns one
// fully labeled cell; visited counts cells entered.
SearchResult path_follow(const Labeling& lab);
SearchResult path_follow(const Subdivision& sub, const LabelFn& labels);

std::string search_result_to_json(const SearchResult& r);
SearchResult search_result_from_json(const std::string& text);

}  // namespace speq
