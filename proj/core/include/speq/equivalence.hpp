#pragma once

#include <map>
#include <string>

#include "speq/solver.hpp"

namespace speq {

// Piecewise-linear self-map induced by a proper labeling: the image of a
// grid vertex lowers its labeled coordinate by tau and raises every other
// coordinate by tau/n; values extend to cell interiors by barycentric
// combination. All arithmetic exact.
struct LabelInducedMap {
  Labeling lab;
  Rational tau;
  std::map<GridVertex, BarycentricPoint> vertex_images;

  BarycentricPoint operator()(const BarycentricPoint& p) const;
};

// tau = half the minimum labeled coordinate over all grid vertices;
// strictly positive for proper labelings (>= 1/(2m)).
Rational choose_tau(const Labeling& lab);

LabelInducedMap build_map(const Labeling& lab);

// Excess demand g_i(p) = phi_i(p) - p_i * mu(p) with
// mu(p) = sum(p_i phi_i) / sum(p_i^2); satisfies p.g(p) = 0 identically.
struct InducedExcessDemand {
  LabelInducedMap map;

  std::vector<Rational> evaluate(const BarycentricPoint& p) const;
  Rational mu(const BarycentricPoint& p) const;
};

InducedExcessDemand induced_excess_demand(const LabelInducedMap& map);

// Wraps the induced excess demand as an EconomySpec (kind = induced) for
// the solver's exact pathway.
EconomySpec make_induced_economy(const InducedExcessDemand& demand);

struct EquivalenceCertificate {
  GridCell cell;                 // fully labeled cell of the original grid
  BarycentricPoint equilibrium;  // computed equilibrium of the induced economy
  Rational tau;
  Rational residual;  // exact equilibrium residual at the returned point
  Rational bound;     // (1 + 1/n) * tau / 2
  std::int64_t final_m = 0;
};

// Builds the induced economy of a proper labeling, solves it on the
// labeling's own grid refined by integer multiples, locates the
// equilibrium's cell in the original subdivision and certifies that it is
// fully labeled. NotFullyLabeled only when refinement is exhausted.
EquivalenceCertificate sperner_via_equilibrium(const Labeling& lab,
                                               const SolverConfig& cfg);

std::string certificate_to_json(const EquivalenceCertificate& cert);
EquivalenceCertificate certificate_from_json(const std::string& text);

}  // namespace speq
