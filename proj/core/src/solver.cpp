#include "speq/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "json_util.hpp"
#include "speq/error.hpp"

namespace speq {

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

void check_config(const SolverConfig& cfg) {
  if (cfg.m_start < 1) raise(Errc::invalid_config, "m_start must be at least 1");
  if (cfg.m_max < cfg.m_start) raise(Errc::invalid_config, "m_max below m_start");
  if (cfg.growth < 2) raise(Errc::invalid_config, "growth must be at least 2");
  if (!(cfg.tol > 0)) raise(Errc::invalid_config, "tol must be positive");
}

std::vector<double> cobb_douglas_excess(const EconomySpec& econ,
                                        const std::vector<double>& price) {
  std::vector<double> f(price.size(), 0.0);
  for (const auto& consumer : econ.consumers) {
    double income = 0.0;
    for (std::size_t i = 0; i < price.size(); ++i)
      income += price[i] * to_double(consumer.endowment[i]);
    for (std::size_t i = 0; i < price.size(); ++i)
      f[i] += to_double(consumer.alpha[i]) * income / price[i] -
              to_double(consumer.endowment[i]);
  }
  return f;
}

int label_real(const EconomySpec& econ, const Subdivision& sub,
               const GridVertex& v) {
  std::size_t width = v.size();
  std::vector<double> p(width);
  for (std::size_t i = 0; i < width; ++i)
    p[i] = static_cast<double>(v[i]) / static_cast<double>(sub.m);

  bool on_boundary = std::any_of(v.begin(), v.end(),
                                 [](std::int64_t k) { return k == 0; });
  bool shift = on_boundary && econ.singular_at_boundary();

  std::vector<double> q = p;
  if (shift) {
    double theta = std::min(1.0, (sub.n + 1) / (2.0 * static_cast<double>(sub.m)));
    for (std::size_t i = 0; i < width; ++i)
      q[i] = (1.0 - theta) * p[i] + theta / static_cast<double>(width);
  }

  std::vector<double> phi;
  if (econ.kind == EconomyKind::cobb_douglas) {
    auto f = cobb_douglas_excess(econ, q);
    phi.resize(width);
    double sum = 0.0;
    for (std::size_t i = 0; i < width; ++i) {
      phi[i] = q[i] + std::max(f[i], 0.0);
      sum += phi[i];
    }
    for (auto& c : phi) c /= sum;
  } else {
    phi = price_map_real(econ, vertex_point(v, sub));
  }

  // Smallest admissible index (true coordinate positive) whose mapped
  // price does not rise; properness of the labeling is structural.
  for (std::size_t i = 0; i < width; ++i)
    if (v[i] > 0 && phi[i] <= q[i]) return static_cast<int>(i);
  int best = -1;
  double best_gap = 0.0;
  for (std::size_t i = 0; i < width; ++i) {
    if (v[i] == 0) continue;
    double gap = phi[i] - q[i];
    if (best < 0 || gap < best_gap) {
      best = static_cast<int>(i);
      best_gap = gap;
    }
  }
  return best;
}

int label_exact(const EconomySpec& econ, const Subdivision& sub,
                const GridVertex& v) {
  auto p = vertex_point(v, sub);
  bool on_boundary = std::any_of(v.begin(), v.end(),
                                 [](std::int64_t k) { return k == 0; });
  BarycentricPoint q = p;
  if (on_boundary && econ.singular_at_boundary()) {
    Rational theta(BigInt(sub.n + 1), BigInt(2 * sub.m));
    if (theta > 1) theta = 1;
    Rational uniform(BigInt(1), BigInt(sub.n + 1));
    std::vector<Rational> coords(p.coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i)
      coords[i] = (Rational(1) - theta) * p.coords[i] + theta * uniform;
    q = BarycentricPoint{std::move(coords)};
  }
  auto phi = price_map(econ, q);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] > 0 && phi.coords[i] <= q.coords[i]) return static_cast<int>(i);
  int best = -1;
  Rational best_gap = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    Rational gap = phi.coords[i] - q.coords[i];
    if (best < 0 || gap < best_gap) {
      best = static_cast<int>(i);
      best_gap = gap;
    }
  }
  return best;
}

}  // namespace

int economy_label(const EconomySpec& econ, const Subdivision& sub,
                  const GridVertex& v, Mode mode) {
  return mode == Mode::rational ? label_exact(econ, sub, v)
                                : label_real(econ, sub, v);
}

std::pair<BarycentricPoint, Rational> cauchy_extract(
    const std::vector<BarycentricPoint>& candidates) {
  if (candidates.empty()) raise(Errc::invalid_config, "empty trace");
  std::size_t first = candidates.size() > 3 ? candidates.size() - 3 : 0;
  Rational diameter = 0;
  for (std::size_t a = first; a < candidates.size(); ++a) {
    for (std::size_t b = a + 1; b < candidates.size(); ++b) {
      for (std::size_t i = 0; i < candidates[a].coords.size(); ++i) {
        Rational d = candidates[a].coords[i] - candidates[b].coords[i];
        if (d < 0) d = -d;
        if (d > diameter) diameter = d;
      }
    }
  }
  return {candidates.back(), diameter};
}

EquilibriumReport solve(const EconomySpec& econ, const SolverConfig& cfg) {
  check_config(cfg);
  const int n = econ.goods - 1;

  EquilibriumReport report;
  report.mode = cfg.mode;

  for (std::int64_t m = cfg.m_start; m <= cfg.m_max; m *= cfg.growth) {
    auto sub = subdivide(n, m);

    std::unordered_map<GridVertex, int, VertexHash> memo;
    LabelFn labels = [&](const GridVertex& v) {
      auto it = memo.find(v);
      if (it != memo.end()) return it->second;
      int label = economy_label(econ, sub, v, cfg.mode);
      memo.emplace(v, label);
      return label;
    };

    auto search = path_follow(sub, labels);
    const GridCell& cell = search.cells.front();

    TraceEntry entry;
    entry.m = m;
    entry.cell = cell;
    entry.candidate = cell_barycenter(cell, sub);
    if (cfg.mode == Mode::rational) {
      entry.residual_exact = equilibrium_residual_exact(econ, entry.candidate);
      entry.walras_exact = walras_residual_exact(econ, entry.candidate);
      entry.residual = to_double(*entry.residual_exact);
      entry.walras = to_double(*entry.walras_exact);
    } else {
      entry.residual = equilibrium_residual(econ, entry.candidate);
      entry.walras = walras_residual(econ, entry.candidate);
    }
    report.trace.push_back(entry);

    if (entry.residual <= cfg.tol) {
      report.converged = true;
      break;
    }
  }

  if (report.trace.empty())
    raise(Errc::invalid_config, "refinement schedule is empty");

  std::vector<BarycentricPoint> candidates;
  candidates.reserve(report.trace.size());
  for (const auto& entry : report.trace) candidates.push_back(entry.candidate);
  auto [limit, tail] = cauchy_extract(candidates);

  const TraceEntry& last = report.trace.back();
  report.prices = limit;
  report.residual = last.residual;
  report.walras = last.walras;
  report.residual_exact = last.residual_exact;
  report.tail_diameter = to_double(tail);
  return report;
}

namespace {

struct ClusterStats {
  std::vector<std::int64_t> counts;
  std::vector<std::vector<double>> lo;  // per eta, per coordinate
  std::vector<std::vector<double>> hi;
};

double stats_diameter(const ClusterStats& s, std::size_t level) {
  if (s.counts[level] == 0) return 0.0;
  double d = 0.0;
  for (std::size_t i = 0; i < s.lo[level].size(); ++i)
    d = std::max(d, s.hi[level][i] - s.lo[level][i]);
  return d;
}

}  // namespace

SlncReport slnc_diagnostic(const EconomySpec& econ, const SolverConfig& cfg) {
  if (!(cfg.slnc_epsilon > 0)) raise(Errc::invalid_config, "epsilon must be positive");
  if (!(cfg.slnc_eta > 0)) raise(Errc::invalid_config, "eta must be positive");
  const int n = econ.goods - 1;

  SlncReport report;
  report.epsilon = cfg.slnc_epsilon;
  std::int64_t cover_m =
      ceil_rational(Rational(1) / cfg.slnc_epsilon).template convert_to<std::int64_t>();
  cover_m = std::max<std::int64_t>(cover_m, 1);
  report.cover_m = cover_m;
  auto cover_sub = subdivide(n, cover_m);

  // Sample on the finest multiple of the cover grid within budget, so every
  // sample point lands in a well-defined cover cell.
  const std::int64_t budget = 500000;
  std::int64_t k = std::max<std::int64_t>(1, cfg.m_max / cover_m);
  while (k > 1 && subdivide(n, k * cover_m).vertex_count() > budget) --k;
  auto sample_sub = subdivide(n, k * cover_m);
  report.sample_m = sample_sub.m;

  int levels = cfg.slnc_halvings + 1;
  report.etas.resize(static_cast<std::size_t>(levels));
  for (int j = 0; j < levels; ++j)
    report.etas[static_cast<std::size_t>(j)] = cfg.slnc_eta / std::pow(2.0, j);

  std::map<GridCell, ClusterStats> clusters;
  for (const auto& v : grid_vertices(sample_sub)) {
    bool boundary = std::any_of(v.begin(), v.end(),
                                [](std::int64_t c) { return c == 0; });
    if (boundary && econ.singular_at_boundary()) continue;
    auto p = vertex_point(v, sample_sub);
    double residual = equilibrium_residual(econ, p);
    if (residual >= report.etas.front()) continue;

    auto cover_cell = locate_cell(cover_sub, p);
    auto [it, fresh] = clusters.try_emplace(cover_cell);
    ClusterStats& stats = it->second;
    if (fresh) {
      stats.counts.assign(static_cast<std::size_t>(levels), 0);
      stats.lo.assign(static_cast<std::size_t>(levels),
                      std::vector<double>(v.size(), 0.0));
      stats.hi = stats.lo;
    }
    for (int j = 0; j < levels; ++j) {
      if (residual >= report.etas[static_cast<std::size_t>(j)]) break;
      auto level = static_cast<std::size_t>(j);
      for (std::size_t i = 0; i < v.size(); ++i) {
        double c = to_double(p.coords[i]);
        if (stats.counts[level] == 0) {
          stats.lo[level][i] = c;
          stats.hi[level][i] = c;
        } else {
          stats.lo[level][i] = std::min(stats.lo[level][i], c);
          stats.hi[level][i] = std::max(stats.hi[level][i], c);
        }
      }
      ++stats.counts[level];
    }
  }

  double spacing = 1.0 / static_cast<double>(sample_sub.m);
  for (const auto& [cell, stats] : clusters) {
    SlncCluster cluster;
    cluster.cell = cell;
    cluster.counts = stats.counts;
    for (int j = 0; j < levels; ++j)
      cluster.diameters.push_back(stats_diameter(stats, static_cast<std::size_t>(j)));
    double first = cluster.diameters.front();
    double final = cluster.diameters.back();
    // Non-shrinking cluster: the final-eta diameter stayed near the initial
    // one and is resolvable at the sampling resolution.
    cluster.flagged = final > 2.0 * spacing && final > 0.6 * first;
    report.any_flagged = report.any_flagged || cluster.flagged;
    report.clusters.push_back(std::move(cluster));
  }
  return report;
}

namespace {

using detail::json;

json number_json(double value, const std::optional<Rational>& exact, Mode mode) {
  if (mode == Mode::rational && exact) return format_rational(*exact);
  return format_double(value);
}

json point_json(const BarycentricPoint& p, Mode mode) {
  auto arr = json::array();
  for (const auto& c : p.coords)
    arr.push_back(mode == Mode::rational ? format_rational(c)
                                         : format_double(to_double(c)));
  return arr;
}

BarycentricPoint point_from_json(const json& arr, const std::string& context) {
  std::vector<Rational> coords;
  for (const auto& c : arr)
    coords.push_back(detail::rational_from_json(c, context));
  return BarycentricPoint{std::move(coords)};
}

}  // namespace

std::string report_to_json(const EquilibriumReport& report) {
  json j;
  j["mode"] = report.mode == Mode::rational ? "rational" : "float";
  j["converged"] = report.converged;
  j["prices"] = point_json(report.prices, report.mode);
  j["residual"] = number_json(report.residual, report.residual_exact, report.mode);
  j["walras"] = number_json(report.walras, std::nullopt, report.mode);
  j["tail_diameter"] = format_double(report.tail_diameter);
  auto trace = json::array();
  for (const auto& entry : report.trace) {
    json e;
    e["m"] = entry.m;
    e["cell"] = detail::cell_to_json(entry.cell);
    e["candidate"] = point_json(entry.candidate, report.mode);
    e["residual"] = number_json(entry.residual, entry.residual_exact, report.mode);
    e["walras"] = number_json(entry.walras, entry.walras_exact, report.mode);
    trace.push_back(std::move(e));
  }
  j["trace"] = std::move(trace);
  return j.dump(2) + "\n";
}

EquilibriumReport report_from_json(const std::string& text) {
  auto j = detail::parse_document(text);
  detail::require_keys(
      j, {"mode", "converged", "prices", "residual", "walras", "tail_diameter", "trace"},
      "report");
  EquilibriumReport report;
  report.mode =
      j.at("mode").get<std::string>() == "rational" ? Mode::rational : Mode::floating;
  report.converged = j.at("converged").get<bool>();
  report.prices = point_from_json(j.at("prices"), "prices");
  report.residual = to_double(detail::rational_from_json(j.at("residual"), "residual"));
  report.walras = to_double(detail::rational_from_json(j.at("walras"), "walras"));
  report.tail_diameter =
      to_double(detail::rational_from_json(j.at("tail_diameter"), "tail_diameter"));
  for (const auto& e : j.at("trace")) {
    detail::require_keys(e, {"m", "cell", "candidate", "residual", "walras"},
                         "trace entry");
    TraceEntry entry;
    entry.m = e.at("m").get<std::int64_t>();
    entry.cell = detail::cell_from_json(e.at("cell"), "trace cell");
    entry.candidate = point_from_json(e.at("candidate"), "candidate");
    entry.residual = to_double(detail::rational_from_json(e.at("residual"), "residual"));
    entry.walras = to_double(detail::rational_from_json(e.at("walras"), "walras"));
    report.trace.push_back(std::move(entry));
  }
  return report;
}

std::string report_to_csv(const EquilibriumReport& report) {
  std::string out = "m,residual,walras,tail_diameter\n";
  std::vector<BarycentricPoint> prefix;
  for (const auto& entry : report.trace) {
    prefix.push_back(entry.candidate);
    auto [limit, tail] = cauchy_extract(prefix);
    (void)limit;
    out += std::to_string(entry.m) + "," + format_double(entry.residual) + "," +
           format_double(entry.walras) + "," + format_double(to_double(tail)) + "\n";
  }
  return out;
}

std::string slnc_report_to_json(const SlncReport& report) {
  json j;
  j["epsilon"] = format_rational(report.epsilon);
  j["cover_m"] = report.cover_m;
  j["sample_m"] = report.sample_m;
  auto etas = json::array();
  for (double eta : report.etas) etas.push_back(format_double(eta));
  j["eta"] = std::move(etas);
  auto clusters = json::array();
  for (const auto& cluster : report.clusters) {
    json c;
    c["cell"] = detail::cell_to_json(cluster.cell);
    c["count"] = cluster.counts;
    auto diam = json::array();
    for (double d : cluster.diameters) diam.push_back(format_double(d));
    c["diameter"] = std::move(diam);
    c["flagged"] = cluster.flagged;
    clusters.push_back(std::move(c));
  }
  j["clusters"] = std::move(clusters);
  j["any_flagged"] = report.any_flagged;
  j["no_evidence_against_slnc"] = !report.any_flagged;
  return j.dump(2) + "\n";
}

SlncReport slnc_report_from_json(const std::string& text) {
  auto j = detail::parse_document(text);
  detail::require_keys(j,
                       {"epsilon", "cover_m", "sample_m", "eta", "clusters",
                        "any_flagged", "no_evidence_against_slnc"},
                       "slnc report");
  SlncReport report;
  report.epsilon = detail::rational_from_json(j.at("epsilon"), "epsilon");
  report.cover_m = j.at("cover_m").get<std::int64_t>();
  report.sample_m = j.at("sample_m").get<std::int64_t>();
  for (const auto& eta : j.at("eta"))
    report.etas.push_back(to_double(detail::rational_from_json(eta, "eta")));
  for (const auto& c : j.at("clusters")) {
    detail::require_keys(c, {"cell", "count", "diameter", "flagged"}, "cluster");
    SlncCluster cluster;
    cluster.cell = detail::cell_from_json(c.at("cell"), "cluster cell");
    cluster.counts = c.at("count").get<std::vector<std::int64_t>>();
    for (const auto& d : c.at("diameter"))
      cluster.diameters.push_back(to_double(detail::rational_from_json(d, "diameter")));
    cluster.flagged = c.at("flagged").get<bool>();
    report.clusters.push_back(std::move(cluster));
  }
  report.any_flagged = j.at("any_flagged").get<bool>();
  return report;
}

}  // namespace speq
