#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "speq/rational.hpp"

namespace speq {

// Integer grid point of a subdivision at resolution m: n+1 nonnegative
// coordinates summing to m. The simplex point it names is coords / m.
using GridVertex = std::vector<std::int64_t>;

// A point of the standard n-simplex: exact rational coordinates, >= 0,
// summing to exactly 1. Construct through make_point.
struct BarycentricPoint {
  std::vector<Rational> coords;

  int dimension() const { return static_cast<int>(coords.size()) - 1; }
  bool operator==(const BarycentricPoint&) const = default;
};

BarycentricPoint make_point(std::vector<Rational> coords);

// Uniform subdivision of the standard n-simplex with m segments per edge.
// Cells form the Freudenthal/Kuhn triangulation of the grid: m^n cells.
struct Subdivision {
  int n = 1;
  std::int64_t m = 1;

  std::int64_t vertex_count() const;  // C(m+n, n)
  std::int64_t cell_count() const;    // m^n
  bool operator==(const Subdivision&) const = default;
};

Subdivision subdivide(int n, std::int64_t m);

// One small simplex, stored implicitly: vertex chain
//   v^0 = base,  v^j = v^{j-1} + e_{perm[j]-1} - e_{perm[j]},
// where perm is a permutation of {1..d}. Full-dimensional cells have
// d = n; cells of the face spanned by e_0..e_d have d < n and zero base
// coordinates above index d. Every chain vertex must stay nonnegative.
struct GridCell {
  GridVertex base;
  std::vector<int> perm;

  int dim() const { return static_cast<int>(perm.size()); }
  auto operator<=>(const GridCell&) const = default;
};

// True iff the cell's chain is well formed and stays inside the grid.
bool cell_valid(const GridCell& cell, const Subdivision& sub);

// The d+1 chain vertices as integer grid points. CellOutOfRange when the
// cell does not belong to the subdivision.
std::vector<GridVertex> cell_vertex_coords(const GridCell& cell,
                                           const Subdivision& sub);

std::vector<BarycentricPoint> cell_vertices(const GridCell& cell,
                                            const Subdivision& sub);

BarycentricPoint vertex_point(const GridVertex& v, const Subdivision& sub);

BarycentricPoint cell_barycenter(const GridCell& cell, const Subdivision& sub);

// The unique other cell sharing the facet opposite the indexed vertex, or
// nullopt when that facet lies in a face of the simplex.
std::optional<GridCell> neighbor(const GridCell& cell,
                                 int opposite_vertex_index,
                                 const Subdivision& sub);

// Upper bound on the max-norm diameter of every cell; exactly 1/m (each
// coordinate moves by at most one grid step across a cell).
Rational mesh_diameter(const Subdivision& sub);

// All grid vertices in lexicographic coordinate order.
std::vector<GridVertex> grid_vertices(const Subdivision& sub);

// Full-dimensional cells in lexicographic (base, perm) order.
void for_each_cell(const Subdivision& sub,
                   const std::function<void(const GridCell&)>& fn);
std::vector<GridCell> grid_cells(const Subdivision& sub);

// Cells of the d-dimensional face spanned by e_0..e_d, lexicographic order.
void for_each_face_cell(const Subdivision& sub, int d,
                        const std::function<void(const GridCell&)>& fn);

// Barycentric weights of p inside the cell (lambda >= 0, sum 1, exact),
// or nullopt when p lies outside.
std::optional<std::vector<Rational>> barycentric_weights(
    const GridCell& cell, const BarycentricPoint& p, const Subdivision& sub);

// A cell containing p; ties on shared facets broken by lexicographically
// smallest (base, perm).
GridCell locate_cell(const Subdivision& sub, const BarycentricPoint& p);

}  // namespace speq
