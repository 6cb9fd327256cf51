#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "speq/simplex_grid.hpp"

namespace speq {

// Total map from grid vertices to labels in {0..n}.
struct Labeling {
  Subdivision sub;
  std::map<GridVertex, int> labels;

  int label_at(const GridVertex& v) const;  // MissingLabel when absent
};

// Vertex -> label oracle. Must be total on the grid; enumeration may call
// it concurrently, so sources must be pure or internally synchronized.
using LabelFn = std::function<int(const GridVertex&)>;

LabelFn label_fn(const Labeling& lab);

// Smallest index i with p_i > 0 and phi_i <= p_i. Such an index always
// exists: both vectors are nonnegative and sum to one. The image is
// validated first (MapLeavesSimplex).
int induced_label(const BarycentricPoint& p, const std::vector<Rational>& phi);

// Same selection over doubles; sum_tol bounds |sum(phi) - 1|. Falls back
// to the admissible index minimizing phi_i - p_i when rounding leaves no
// index satisfying the predicate exactly.
int induced_label_real(const std::vector<double>& p,
                       const std::vector<double>& phi, double sum_tol = 1e-9);

// Labels every grid vertex with induced_label over phi (evaluated in
// parallel with a deterministic merge).
Labeling induce_labeling(
    const Subdivision& sub,
    const std::function<BarycentricPoint(const BarycentricPoint&)>& phi);

struct RuleViolation {
  GridVertex vertex;
  int label = -1;
  int rule = 0;  // 1: unit vertex mislabeled, 2: label outside carrier face
  std::string detail;
};

// Empty iff lab is a proper labeling (unit vertices carry their own index;
// a vertex may carry label i only where coordinate i is positive).
std::vector<RuleViolation> validate_proper(const Labeling& lab);

bool is_fully_labeled(const GridCell& cell, const Labeling& lab);
bool is_fully_labeled(const GridCell& cell, const Subdivision& sub,
                      const LabelFn& labels);

// Uniform choice among the admissible labels of each vertex (indices with
// positive coordinate); proper by construction. Deterministic in the seed.
Labeling random_proper_labeling(const Subdivision& sub, std::uint64_t seed);

// File format: {"n": int, "m": int, "labels": [{"vertex": [...],
// "label": int}]}. Unknown fields rejected; geometry is reconstructed,
// never trusted from the file.
std::string labeling_to_json(const Labeling& lab);
Labeling labeling_from_json(const std::string& text);

}  // namespace speq
