#include "speq/simplex_grid.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "speq/error.hpp"

namespace speq {

BarycentricPoint make_point(std::vector<Rational> coords) {
  if (coords.empty()) raise(Errc::invalid_config, "point needs coordinates");
  Rational sum = 0;
  for (const auto& c : coords) {
    if (c < 0) raise(Errc::negative_coordinate, "coordinate below zero");
    sum += c;
  }
  if (sum != 1) raise(Errc::not_normalized, "coordinates sum to " + format_rational(sum));
  return BarycentricPoint{std::move(coords)};
}

std::int64_t Subdivision::vertex_count() const {
  // C(m+n, n), n small
  std::int64_t result = 1;
  for (int i = 1; i <= n; ++i) {
    result = result * (m + i) / i;  // exact: product of i consecutive integers
  }
  return result;
}

std::int64_t Subdivision::cell_count() const {
  std::int64_t result = 1;
  for (int i = 0; i < n; ++i) {
    if (result > std::numeric_limits<std::int64_t>::max() / m)
      raise(Errc::invalid_config, "cell count overflows");
    result *= m;
  }
  return result;
}

Subdivision subdivide(int n, std::int64_t m) {
  if (m < 1) raise(Errc::resolution_zero, "resolution must be at least 1");
  if (n < 1) raise(Errc::invalid_config, "dimension must be at least 1");
  return Subdivision{n, m};
}

namespace {

bool is_permutation_of_prefix(const std::vector<int>& perm) {
  int d = static_cast<int>(perm.size());
  std::vector<bool> seen(static_cast<std::size_t>(d) + 1, false);
  for (int a : perm) {
    if (a < 1 || a > d || seen[static_cast<std::size_t>(a)]) return false;
    seen[static_cast<std::size_t>(a)] = true;
  }
  return true;
}

bool vertex_in_grid(const GridVertex& v, const Subdivision& sub) {
  if (static_cast<int>(v.size()) != sub.n + 1) return false;
  std::int64_t sum = 0;
  for (std::int64_t k : v) {
    if (k < 0 || k > sub.m) return false;
    sum += k;
  }
  return sum == sub.m;
}

// Walks the chain; false when any vertex leaves the grid.
bool walk_chain(const GridCell& cell, const Subdivision& sub,
                std::vector<GridVertex>* out) {
  if (!vertex_in_grid(cell.base, sub)) return false;
  if (cell.dim() > sub.n || !is_permutation_of_prefix(cell.perm)) return false;
  GridVertex v = cell.base;
  if (out) {
    out->clear();
    out->push_back(v);
  }
  for (int a : cell.perm) {
    if (v[static_cast<std::size_t>(a)] < 1) return false;
    --v[static_cast<std::size_t>(a)];
    ++v[static_cast<std::size_t>(a) - 1];
    if (out) out->push_back(v);
  }
  return true;
}

}  // namespace

bool cell_valid(const GridCell& cell, const Subdivision& sub) {
  return walk_chain(cell, sub, nullptr);
}

std::vector<GridVertex> cell_vertex_coords(const GridCell& cell,
                                           const Subdivision& sub) {
  std::vector<GridVertex> vertices;
  if (!walk_chain(cell, sub, &vertices))
    raise(Errc::cell_out_of_range, "cell does not belong to the subdivision");
  return vertices;
}

BarycentricPoint vertex_point(const GridVertex& v, const Subdivision& sub) {
  if (!vertex_in_grid(v, sub))
    raise(Errc::cell_out_of_range, "vertex outside the grid");
  std::vector<Rational> coords;
  coords.reserve(v.size());
  for (std::int64_t k : v) coords.emplace_back(BigInt(k), BigInt(sub.m));
  return BarycentricPoint{std::move(coords)};
}

std::vector<BarycentricPoint> cell_vertices(const GridCell& cell,
                                            const Subdivision& sub) {
  std::vector<BarycentricPoint> points;
  for (const auto& v : cell_vertex_coords(cell, sub))
    points.push_back(vertex_point(v, sub));
  return points;
}

BarycentricPoint cell_barycenter(const GridCell& cell, const Subdivision& sub) {
  auto vertices = cell_vertex_coords(cell, sub);
  std::size_t width = vertices.front().size();
  std::vector<Rational> coords(width, Rational(0));
  BigInt den = BigInt(sub.m) * BigInt(static_cast<std::int64_t>(vertices.size()));
  for (std::size_t i = 0; i < width; ++i) {
    BigInt num = 0;
    for (const auto& v : vertices) num += v[i];
    coords[i] = Rational(num, den);
  }
  return BarycentricPoint{std::move(coords)};
}

std::optional<GridCell> neighbor(const GridCell& cell, int opposite_vertex_index,
                                 const Subdivision& sub) {
  int d = cell.dim();
  if (!cell_valid(cell, sub))
    raise(Errc::cell_out_of_range, "cell does not belong to the subdivision");
  if (opposite_vertex_index < 0 || opposite_vertex_index > d)
    raise(Errc::cell_out_of_range, "vertex index outside the chain");
  if (d == 0) return std::nullopt;

  GridCell other = cell;
  if (opposite_vertex_index == 0) {
    // Base moves one step along the chain; the dropped move reattaches at
    // the end.
    int a = cell.perm.front();
    --other.base[static_cast<std::size_t>(a)];
    ++other.base[static_cast<std::size_t>(a) - 1];
    std::rotate(other.perm.begin(), other.perm.begin() + 1, other.perm.end());
  } else if (opposite_vertex_index == d) {
    int a = cell.perm.back();
    ++other.base[static_cast<std::size_t>(a)];
    --other.base[static_cast<std::size_t>(a) - 1];
    if (other.base[static_cast<std::size_t>(a) - 1] < 0) return std::nullopt;
    std::rotate(other.perm.begin(), other.perm.end() - 1, other.perm.end());
  } else {
    std::swap(other.perm[static_cast<std::size_t>(opposite_vertex_index) - 1],
              other.perm[static_cast<std::size_t>(opposite_vertex_index)]);
  }
  if (!cell_valid(other, sub)) return std::nullopt;
  return other;
}

Rational mesh_diameter(const Subdivision& sub) {
  return Rational(BigInt(1), BigInt(sub.m));
}

namespace {

void compositions(std::int64_t total, int parts, GridVertex& prefix,
                  const std::function<void(const GridVertex&)>& fn) {
  if (parts == 1) {
    prefix.push_back(total);
    fn(prefix);
    prefix.pop_back();
    return;
  }
  for (std::int64_t k = 0; k <= total; ++k) {
    prefix.push_back(k);
    compositions(total - k, parts - 1, prefix, fn);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<GridVertex> grid_vertices(const Subdivision& sub) {
  std::vector<GridVertex> vertices;
  vertices.reserve(static_cast<std::size_t>(sub.vertex_count()));
  GridVertex prefix;
  compositions(sub.m, sub.n + 1, prefix,
               [&vertices](const GridVertex& v) { vertices.push_back(v); });
  return vertices;
}

void for_each_face_cell(const Subdivision& sub, int d,
                        const std::function<void(const GridCell&)>& fn) {
  if (d < 0 || d > sub.n) raise(Errc::invalid_config, "face dimension out of range");
  GridVertex prefix;
  compositions(sub.m, d + 1, prefix, [&](const GridVertex& head) {
    GridCell cell;
    cell.base = head;
    cell.base.resize(static_cast<std::size_t>(sub.n) + 1, 0);
    cell.perm.resize(static_cast<std::size_t>(d));
    std::iota(cell.perm.begin(), cell.perm.end(), 1);
    if (d == 0) {
      fn(cell);
      return;
    }
    do {
      if (cell_valid(cell, sub)) fn(cell);
    } while (std::next_permutation(cell.perm.begin(), cell.perm.end()));
  });
}

void for_each_cell(const Subdivision& sub,
                   const std::function<void(const GridCell&)>& fn) {
  for_each_face_cell(sub, sub.n, fn);
}

std::vector<GridCell> grid_cells(const Subdivision& sub) {
  std::vector<GridCell> cells;
  for_each_cell(sub, [&cells](const GridCell& c) { cells.push_back(c); });
  return cells;
}

namespace {

// Cumulative coordinates X_a = sum_{i >= a} v_i, a = 1..d, of an integer
// grid point; each chain move decrements exactly one of them.
std::vector<std::int64_t> cumulative(const GridVertex& v, int d) {
  std::vector<std::int64_t> x(static_cast<std::size_t>(d));
  std::int64_t tail = 0;
  for (int a = static_cast<int>(v.size()) - 1; a >= 1; --a) {
    tail += v[static_cast<std::size_t>(a)];
    if (a <= d) x[static_cast<std::size_t>(a) - 1] = tail;
  }
  return x;
}

std::vector<Rational> cumulative_point(const BarycentricPoint& p,
                                       const Subdivision& sub) {
  std::vector<Rational> x(static_cast<std::size_t>(sub.n));
  Rational tail = 0;
  for (int a = sub.n; a >= 1; --a) {
    tail += p.coords[static_cast<std::size_t>(a)];
    x[static_cast<std::size_t>(a) - 1] = tail * sub.m;
  }
  return x;
}

}  // namespace

std::optional<std::vector<Rational>> barycentric_weights(
    const GridCell& cell, const BarycentricPoint& p, const Subdivision& sub) {
  if (p.dimension() != sub.n)
    raise(Errc::invalid_config, "point dimension mismatch");
  int d = cell.dim();
  if (d != sub.n || !cell_valid(cell, sub))
    raise(Errc::cell_out_of_range, "weights need a full-dimensional cell");

  auto base_x = cumulative(cell.base, d);
  auto point_x = cumulative_point(p, sub);

  // Deficits of p below the cell's top chain vertex; containment means the
  // deficits sorted by the chain order descend through [0, 1].
  std::vector<Rational> deficit(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a)
    deficit[static_cast<std::size_t>(a)] =
        Rational(base_x[static_cast<std::size_t>(a)]) - point_x[static_cast<std::size_t>(a)];

  Rational prev = 1;
  for (int j = 0; j < d; ++j) {
    const Rational& s = deficit[static_cast<std::size_t>(cell.perm[static_cast<std::size_t>(j)]) - 1];
    if (s > prev || s < 0) return std::nullopt;
    prev = s;
  }

  std::vector<Rational> lambda(static_cast<std::size_t>(d) + 1);
  Rational first = deficit[static_cast<std::size_t>(cell.perm.front()) - 1];
  lambda[0] = Rational(1) - first;
  for (int j = 1; j < d; ++j) {
    lambda[static_cast<std::size_t>(j)] =
        deficit[static_cast<std::size_t>(cell.perm[static_cast<std::size_t>(j) - 1]) - 1] -
        deficit[static_cast<std::size_t>(cell.perm[static_cast<std::size_t>(j)]) - 1];
  }
  lambda[static_cast<std::size_t>(d)] =
      deficit[static_cast<std::size_t>(cell.perm.back()) - 1];
  return lambda;
}

GridCell locate_cell(const Subdivision& sub, const BarycentricPoint& p) {
  if (p.dimension() != sub.n)
    raise(Errc::invalid_config, "point dimension mismatch");
  int d = sub.n;
  auto x = cumulative_point(p, sub);

  // Candidate top corners: ceil(x_a), plus x_a + 1 where x_a is integral
  // (points on shared facets belong to several cells).
  std::vector<std::vector<std::int64_t>> choices(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) {
    BigInt c = ceil_rational(x[static_cast<std::size_t>(a)]);
    std::int64_t ci = c.template convert_to<std::int64_t>();
    choices[static_cast<std::size_t>(a)].push_back(ci);
    if (Rational(c) == x[static_cast<std::size_t>(a)] && ci + 1 <= sub.m)
      choices[static_cast<std::size_t>(a)].push_back(ci + 1);
  }

  std::optional<GridCell> best;
  std::vector<std::size_t> pick(static_cast<std::size_t>(d), 0);
  std::vector<int> perm(static_cast<std::size_t>(d));
  while (true) {
    std::vector<std::int64_t> top(static_cast<std::size_t>(d));
    bool ok = true;
    for (int a = 0; a < d; ++a) {
      top[static_cast<std::size_t>(a)] =
          choices[static_cast<std::size_t>(a)][pick[static_cast<std::size_t>(a)]];
      if (top[static_cast<std::size_t>(a)] < 0 || top[static_cast<std::size_t>(a)] > sub.m)
        ok = false;
    }
    if (ok) {
      GridCell cand;
      cand.base.resize(static_cast<std::size_t>(d) + 1);
      cand.base[0] = sub.m - top[0];
      for (int a = 1; a < d; ++a)
        cand.base[static_cast<std::size_t>(a)] =
            top[static_cast<std::size_t>(a) - 1] - top[static_cast<std::size_t>(a)];
      cand.base[static_cast<std::size_t>(d)] = top[static_cast<std::size_t>(d) - 1];

      std::iota(perm.begin(), perm.end(), 1);
      do {
        cand.perm.assign(perm.begin(), perm.end());
        if (best && !(cand < *best)) continue;
        if (!cell_valid(cand, sub)) continue;
        if (barycentric_weights(cand, p, sub)) best = cand;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    // advance the mixed-radix picker
    int a = 0;
    for (; a < d; ++a) {
      if (++pick[static_cast<std::size_t>(a)] < choices[static_cast<std::size_t>(a)].size()) break;
      pick[static_cast<std::size_t>(a)] = 0;
    }
    if (a == d) break;
  }
  if (!best) raise(Errc::invalid_config, "point not covered by any cell");
  return *best;
}

}  // namespace speq
