#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "speq/economy.hpp"
#include "speq/sperner_search.hpp"

namespace speq {

struct SolverConfig {
  std::int64_t m_start = 1;
  std::int64_t m_max = 4096;
  std::int64_t growth = 2;
  double tol = 1e-6;
  double slnc_eta = 0.05;
  Rational slnc_epsilon = Rational(1, 5);
  Mode mode = Mode::floating;
  int slnc_halvings = 4;
};

struct TraceEntry {
  std::int64_t m = 0;
  GridCell cell;
  BarycentricPoint candidate;
  double residual = 0.0;
  double walras = 0.0;
  std::optional<Rational> residual_exact;
  std::optional<Rational> walras_exact;
};

struct EquilibriumReport {
  BarycentricPoint prices;
  double residual = 0.0;
  double walras = 0.0;
  std::vector<TraceEntry> trace;
  bool converged = false;
  double tail_diameter = 0.0;
  Mode mode = Mode::floating;
  std::optional<Rational> residual_exact;
};

// Label a grid vertex for an economy: the induced label of the price map.
// Vertices on the boundary of singular economies are evaluated at the
// inward shift (1-t)p + t*barycenter with t = min(1, (n+1)/(2m)), and the
// label choice is restricted to indices whose true coordinate is positive,
// so the resulting labeling is proper by construction.
int economy_label(const EconomySpec& econ, const Subdivision& sub,
                  const GridVertex& v, Mode mode);

// Refine m_start, m_start*growth, ... <= m_max; at each level path-follow
// the induced labeling of the price map to a fully labeled cell and take
// its barycenter as the candidate; stop once equilibrium_residual <= tol.
EquilibriumReport solve(const EconomySpec& econ, const SolverConfig& cfg);

// Last candidate plus the max pairwise max-norm distance among the last
// three candidates (0 for traces shorter than two).
std::pair<BarycentricPoint, Rational> cauchy_extract(
    const std::vector<BarycentricPoint>& candidates);

struct SlncCluster {
  GridCell cell;  // cover cell (the H_i)
  std::vector<std::int64_t> counts;  // accepted sample points per eta
  std::vector<double> diameters;     // max-norm cluster diameter per eta
  bool flagged = false;
};

struct SlncReport {
  Rational epsilon;
  std::vector<double> etas;  // eta, eta/2, ..., eta/2^halvings
  std::int64_t cover_m = 0;
  std::int64_t sample_m = 0;
  std::vector<SlncCluster> clusters;  // nonempty clusters, cell order
  bool any_flagged = false;
};

// Covers the simplex by grid cells of diameter <= slnc_epsilon, sweeps a
// fine sample grid, and collects per-cover-cell clusters of points with
// equilibrium_residual < eta across a halving ladder. A cell is flagged
// when its cluster diameter fails to shrink (final diameter > 0.6x the
// initial one and above sampling resolution): empirical evidence against
// sequentially locally non-constant excess demand. The diagnostic can only
// refute, never confirm.
SlncReport slnc_diagnostic(const EconomySpec& econ, const SolverConfig& cfg);

std::string report_to_json(const EquilibriumReport& report);
EquilibriumReport report_from_json(const std::string& text);
std::string report_to_csv(const EquilibriumReport& report);

std::string slnc_report_to_json(const SlncReport& report);
SlncReport slnc_report_from_json(const std::string& text);

}  // namespace speq
