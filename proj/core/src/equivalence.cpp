#include "speq/equivalence.hpp"

#include <algorithm>
#include <memory>
#include <unordered_map>

#include "json_util.hpp"
#include "speq/error.hpp"

namespace speq {

namespace {

void require_proper(const Labeling& lab) {
  if (!validate_proper(lab).empty())
    raise(Errc::improper_labeling, "labeling violates the labeling rules");
}

}  // namespace

Rational choose_tau(const Labeling& lab) {
  require_proper(lab);
  Rational smallest = 1;
  for (const auto& [vertex, label] : lab.labels) {
    Rational coord = Rational(BigInt(vertex[static_cast<std::size_t>(label)]),
                              BigInt(lab.sub.m));
    if (coord < smallest) smallest = coord;
  }
  return smallest / 2;
}

BarycentricPoint LabelInducedMap::operator()(const BarycentricPoint& p) const {
  auto cell = locate_cell(lab.sub, p);
  auto weights = barycentric_weights(cell, p, lab.sub);
  auto vertices = cell_vertex_coords(cell, lab.sub);
  std::vector<Rational> image(p.coords.size(), Rational(0));
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    const auto& vertex_image = vertex_images.at(vertices[j]);
    for (std::size_t i = 0; i < image.size(); ++i)
      image[i] += (*weights)[j] * vertex_image.coords[i];
  }
  return BarycentricPoint{std::move(image)};
}

LabelInducedMap build_map(const Labeling& lab) {
  LabelInducedMap map;
  map.lab = lab;
  map.tau = choose_tau(lab);
  const int n = lab.sub.n;
  Rational bump = map.tau / n;
  for (const auto& [vertex, label] : lab.labels) {
    std::vector<Rational> image(vertex.size());
    for (std::size_t i = 0; i < vertex.size(); ++i) {
      Rational coord = Rational(BigInt(vertex[i]), BigInt(lab.sub.m));
      image[i] = static_cast<int>(i) == label ? Rational(coord - map.tau)
                                              : Rational(coord + bump);
    }
    map.vertex_images.emplace(vertex, make_point(std::move(image)));
  }
  return map;
}

std::vector<Rational> InducedExcessDemand::evaluate(const BarycentricPoint& p) const {
  auto phi = map(p);
  Rational dot = 0;
  Rational norm = 0;
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    dot += p.coords[i] * phi.coords[i];
    norm += p.coords[i] * p.coords[i];
  }
  Rational scale = dot / norm;  // norm >= 1/(n+1) on the simplex
  std::vector<Rational> g(p.coords.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = phi.coords[i] - p.coords[i] * scale;
  return g;
}

Rational InducedExcessDemand::mu(const BarycentricPoint& p) const {
  auto phi = map(p);
  Rational dot = 0;
  Rational norm = 0;
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    dot += p.coords[i] * phi.coords[i];
    norm += p.coords[i] * p.coords[i];
  }
  return dot / norm;
}

InducedExcessDemand induced_excess_demand(const LabelInducedMap& map) {
  return InducedExcessDemand{map};
}

EconomySpec make_induced_economy(const InducedExcessDemand& demand) {
  EconomySpec econ;
  econ.goods = demand.map.lab.sub.n + 1;
  econ.kind = EconomyKind::induced;
  auto shared = std::make_shared<InducedExcessDemand>(demand);
  econ.exact_fn = [shared](const BarycentricPoint& p) {
    return shared->evaluate(p);
  };
  return econ;
}

namespace {

struct VertexHash {
  std::size_t operator()(const GridVertex& v) const {
    std::size_t h = 1469598103934665603ull;
    for (std::int64_t k : v) {
      h ^= static_cast<std::size_t>(k) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

EquivalenceCertificate sperner_via_equilibrium(const Labeling& lab,
                                               const SolverConfig& cfg) {
  require_proper(lab);
  auto map = build_map(lab);
  auto demand = induced_excess_demand(map);
  auto econ = make_induced_economy(demand);

  const int n = lab.sub.n;
  Rational bound = map.tau * Rational(BigInt(n + 1), BigInt(2 * n));

  std::int64_t cap = std::max(cfg.m_max, lab.sub.m);
  for (std::int64_t m = lab.sub.m; m <= cap; m *= cfg.growth) {
    auto sub = subdivide(n, m);
    std::unordered_map<GridVertex, int, VertexHash> memo;
    LabelFn labels = [&](const GridVertex& v) {
      auto it = memo.find(v);
      if (it != memo.end()) return it->second;
      int label = economy_label(econ, sub, v, Mode::rational);
      memo.emplace(v, label);
      return label;
    };
    auto search = path_follow(sub, labels);
    auto candidate = cell_barycenter(search.cells.front(), sub);
    Rational residual = equilibrium_residual_exact(econ, candidate);
    if (residual < bound) {
      auto coarse = locate_cell(lab.sub, candidate);
      if (is_fully_labeled(coarse, lab)) {
        EquivalenceCertificate cert;
        cert.cell = coarse;
        cert.equilibrium = candidate;
        cert.tau = map.tau;
        cert.residual = residual;
        cert.bound = bound;
        cert.final_m = m;
        return cert;
      }
    }
  }
  raise(Errc::not_fully_labeled,
        "refinement exhausted without certifying a fully labeled cell");
}

std::string certificate_to_json(const EquivalenceCertificate& cert) {
  detail::json j;
  j["fully_labeled_cell"] = detail::cell_to_json(cert.cell);
  auto eq = detail::json::array();
  for (const auto& c : cert.equilibrium.coords) eq.push_back(format_rational(c));
  j["equilibrium"] = std::move(eq);
  j["tau"] = format_rational(cert.tau);
  detail::json inner;
  inner["residual"] = format_rational(cert.residual);
  inner["bound"] = format_rational(cert.bound);
  j["certificate"] = std::move(inner);
  return j.dump(2) + "\n";
}

EquivalenceCertificate certificate_from_json(const std::string& text) {
  auto j = detail::parse_document(text);
  detail::require_keys(j, {"fully_labeled_cell", "equilibrium", "tau", "certificate"},
                       "certificate");
  EquivalenceCertificate cert;
  cert.cell = detail::cell_from_json(j.at("fully_labeled_cell"), "certificate cell");
  std::vector<Rational> coords;
  for (const auto& c : j.at("equilibrium"))
    coords.push_back(detail::rational_from_json(c, "equilibrium"));
  cert.equilibrium = BarycentricPoint{std::move(coords)};
  cert.tau = detail::rational_from_json(j.at("tau"), "tau");
  detail::require_keys(j.at("certificate"), {"residual", "bound"}, "certificate body");
  cert.residual = detail::rational_from_json(j.at("certificate").at("residual"), "residual");
  cert.bound = detail::rational_from_json(j.at("certificate").at("bound"), "bound");
  return cert;
}

}  // namespace speq
