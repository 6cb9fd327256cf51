#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "speq/simplex_grid.hpp"

namespace speq {

enum class Mode { floating, rational };

enum class EconomyKind { cobb_douglas, table, induced };

struct Consumer {
  std::vector<Rational> alpha;      // budget shares, sum to exactly 1
  std::vector<Rational> endowment;  // >= 0
};

struct DemandVector {
  std::vector<double> values;
};

// An excess-demand system over n+1 goods. Cobb-Douglas economies are given
// by consumer share/endowment tables; table economies sample demand at the
// vertices of a grid and interpolate linearly; induced economies wrap an
// exact rational evaluator supplied by the caller.
struct EconomySpec {
  int goods = 2;
  EconomyKind kind = EconomyKind::cobb_douglas;

  std::vector<Consumer> consumers;  // cobb_douglas

  Subdivision table_sub;                      // table
  std::vector<std::vector<Rational>> values;  // table, by vertex rank

  std::function<std::vector<Rational>(const BarycentricPoint&)> exact_fn;  // induced

  // Demand is unbounded as any price -> 0 (Cobb-Douglas).
  bool singular_at_boundary() const { return kind == EconomyKind::cobb_douglas; }
};

// raw / sum(raw), exact. AllZeroPrices when the sum vanishes.
BarycentricPoint normalize_prices(const std::vector<Rational>& raw);
BarycentricPoint normalize_prices(const std::vector<double>& raw);

// Exact channel; defined for every kind (Cobb-Douglas only at interior p,
// ZeroPriceSingular otherwise).
std::vector<Rational> evaluate_exact(const EconomySpec& econ,
                                     const BarycentricPoint& p);

DemandVector evaluate(const EconomySpec& econ, const BarycentricPoint& p);

double walras_residual(const EconomySpec& econ, const BarycentricPoint& p);
Rational walras_residual_exact(const EconomySpec& econ,
                               const BarycentricPoint& p);

// phi_i = (p_i + max(f_i,0)) / (1 + sum_j max(f_j,0)); fixed points of phi
// are exactly the equilibria.
BarycentricPoint price_map(const EconomySpec& econ, const BarycentricPoint& p);
std::vector<double> price_map_real(const EconomySpec& econ,
                                   const BarycentricPoint& p);

// max_i max(f_i, 0); zero iff p is an exact equilibrium.
double equilibrium_residual(const EconomySpec& econ, const BarycentricPoint& p);
Rational equilibrium_residual_exact(const EconomySpec& econ,
                                    const BarycentricPoint& p);

// Config format:
//   {"goods": int, "type": "cobb_douglas",
//    "consumers": [{"alpha": [...], "endowment": [...]}]}
//   {"type": "table", "m": int, "goods": int, "values": [[...], ...]}
// Numbers may be given as integers, decimal strings, or ratios "a/b".
// Table values are listed in lexicographic vertex order and are validated
// for the Walras law at every sample vertex (exactly in rational mode,
// |p.f| <= 1e-12 otherwise); violations reject the file.
EconomySpec economy_from_json(const std::string& text,
                              Mode mode = Mode::floating);
std::string economy_to_json(const EconomySpec& econ);

// Named example economies used by tests and benchmarks. Every economy on
// this list satisfies the Walras law at every interior point it can be
// evaluated at.
std::vector<std::string> builtin_economy_names();
EconomySpec builtin_economy(const std::string& name);

// Diagnostic fixture: a sampled 2-good system with isolated equilibria at
// p0 = 3/10 and p0 = 7/10. Linear interpolation keeps the Walras law only
// at its sample vertices, so it is not part of the built-in list.
EconomySpec two_equilibria_table_economy();

}  // namespace speq
