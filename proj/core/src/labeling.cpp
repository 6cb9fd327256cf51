#include "speq/labeling.hpp"

#include <algorithm>
#include <random>

#include "json_util.hpp"
#include "speq/error.hpp"
#include "speq/parallel.hpp"

namespace speq {

int Labeling::label_at(const GridVertex& v) const {
  auto it = labels.find(v);
  if (it == labels.end()) raise(Errc::missing_label, "vertex has no label");
  return it->second;
}

LabelFn label_fn(const Labeling& lab) {
  const Labeling* ptr = &lab;
  return [ptr](const GridVertex& v) { return ptr->label_at(v); };
}

int induced_label(const BarycentricPoint& p, const std::vector<Rational>& phi) {
  if (phi.size() != p.coords.size())
    raise(Errc::map_leaves_simplex, "image dimension mismatch");
  Rational sum = 0;
  for (const auto& c : phi) {
    if (c < 0) raise(Errc::map_leaves_simplex, "image coordinate below zero");
    sum += c;
  }
  if (sum != 1) raise(Errc::map_leaves_simplex, "image does not sum to 1");
  for (std::size_t i = 0; i < p.coords.size(); ++i)
    if (p.coords[i] > 0 && phi[i] <= p.coords[i]) return static_cast<int>(i);
  raise(Errc::map_leaves_simplex, "no admissible index");  // unreachable
}

int induced_label_real(const std::vector<double>& p,
                       const std::vector<double>& phi, double sum_tol) {
  if (phi.size() != p.size())
    raise(Errc::map_leaves_simplex, "image dimension mismatch");
  double sum = 0.0;
  for (double c : phi) {
    if (c < 0.0) raise(Errc::map_leaves_simplex, "image coordinate below zero");
    sum += c;
  }
  if (sum < 1.0 - sum_tol || sum > 1.0 + sum_tol)
    raise(Errc::map_leaves_simplex, "image does not sum to 1");
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0 && phi[i] <= p[i]) return static_cast<int>(i);
  // Rounding can leave every admissible gap marginally positive; take the
  // smallest one.
  int best = -1;
  double best_gap = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    double gap = phi[i] - p[i];
    if (best < 0 || gap < best_gap) {
      best = static_cast<int>(i);
      best_gap = gap;
    }
  }
  if (best < 0) raise(Errc::map_leaves_simplex, "no admissible index");
  return best;
}

Labeling induce_labeling(
    const Subdivision& sub,
    const std::function<BarycentricPoint(const BarycentricPoint&)>& phi) {
  auto vertices = grid_vertices(sub);
  std::vector<int> labels(vertices.size(), -1);
  parallel_chunks(static_cast<std::int64_t>(vertices.size()),
                  [&](std::int64_t begin, std::int64_t end) {
                    for (std::int64_t i = begin; i < end; ++i) {
                      auto p = vertex_point(vertices[static_cast<std::size_t>(i)], sub);
                      auto image = phi(p);
                      labels[static_cast<std::size_t>(i)] =
                          induced_label(p, image.coords);
                    }
                  });
  Labeling lab;
  lab.sub = sub;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    lab.labels.emplace(vertices[i], labels[i]);
  return lab;
}

std::vector<RuleViolation> validate_proper(const Labeling& lab) {
  std::vector<RuleViolation> violations;
  auto vertices = grid_vertices(lab.sub);
  for (const auto& v : vertices) {
    auto it = lab.labels.find(v);
    if (it == lab.labels.end())
      raise(Errc::missing_label, "labeling is not total");
    int label = it->second;
    if (label < 0 || label > lab.sub.n) {
      violations.push_back({v, label, 2, "label outside {0..n}"});
      continue;
    }
    bool unit = std::count(v.begin(), v.end(), std::int64_t{0}) == lab.sub.n;
    if (unit) {
      auto k = std::find(v.begin(), v.end(), lab.sub.m) - v.begin();
      if (label != k)
        violations.push_back({v, label, 1, "unit vertex must carry its own index"});
      continue;
    }
    if (v[static_cast<std::size_t>(label)] == 0)
      violations.push_back({v, label, 2, "label names a zero coordinate"});
  }
  return violations;
}

bool is_fully_labeled(const GridCell& cell, const Subdivision& sub,
                      const LabelFn& labels) {
  auto vertices = cell_vertex_coords(cell, sub);
  std::vector<bool> seen(vertices.size(), false);
  for (const auto& v : vertices) {
    int label = labels(v);
    if (label < 0 || label >= static_cast<int>(vertices.size())) return false;
    if (seen[static_cast<std::size_t>(label)]) return false;
    seen[static_cast<std::size_t>(label)] = true;
  }
  return true;
}

bool is_fully_labeled(const GridCell& cell, const Labeling& lab) {
  return is_fully_labeled(cell, lab.sub, label_fn(lab));
}

Labeling random_proper_labeling(const Subdivision& sub, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Labeling lab;
  lab.sub = sub;
  for (const auto& v : grid_vertices(sub)) {
    std::vector<int> admissible;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] > 0) admissible.push_back(static_cast<int>(i));
    int label = admissible[static_cast<std::size_t>(rng() % admissible.size())];
    lab.labels.emplace(v, label);
  }
  return lab;
}

std::string labeling_to_json(const Labeling& lab) {
  detail::json j;
  j["n"] = lab.sub.n;
  j["m"] = lab.sub.m;
  auto entries = detail::json::array();
  for (const auto& [vertex, label] : lab.labels) {
    detail::json e;
    e["vertex"] = vertex;
    e["label"] = label;
    entries.push_back(std::move(e));
  }
  j["labels"] = std::move(entries);
  return j.dump(2) + "\n";
}

Labeling labeling_from_json(const std::string& text) {
  auto j = detail::parse_document(text);
  detail::require_keys(j, {"n", "m", "labels"}, "labeling");
  Labeling lab;
  lab.sub = subdivide(j.at("n").get<int>(), j.at("m").get<std::int64_t>());
  if (!j.at("labels").is_array())
    raise(Errc::invalid_config, "labeling: \"labels\" must be an array");
  for (const auto& e : j.at("labels")) {
    detail::require_keys(e, {"vertex", "label"}, "labeling entry");
    GridVertex v = e.at("vertex").get<GridVertex>();
    int label = e.at("label").get<int>();
    if (static_cast<int>(v.size()) != lab.sub.n + 1)
      raise(Errc::invalid_config, "labeling entry: wrong vertex length");
    std::int64_t sum = 0;
    for (std::int64_t k : v) {
      if (k < 0) raise(Errc::invalid_config, "labeling entry: negative coordinate");
      sum += k;
    }
    if (sum != lab.sub.m)
      raise(Errc::invalid_config, "labeling entry: vertex coordinates must sum to m");
    if (label < 0 || label > lab.sub.n)
      raise(Errc::invalid_config, "labeling entry: label outside {0..n}");
    if (!lab.labels.emplace(std::move(v), label).second)
      raise(Errc::invalid_config, "labeling entry: duplicate vertex");
  }
  if (static_cast<std::int64_t>(lab.labels.size()) != lab.sub.vertex_count())
    raise(Errc::missing_label, "labeling does not cover every grid vertex");
  return lab;
}

}  // namespace speq
