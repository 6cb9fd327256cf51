#include "speq/economy.hpp"

#include <algorithm>
#include <cmath>

#include "json_util.hpp"
#include "speq/error.hpp"

namespace speq {

BarycentricPoint normalize_prices(const std::vector<Rational>& raw) {
  if (raw.empty()) raise(Errc::invalid_config, "no prices");
  Rational sum = 0;
  for (const auto& r : raw) {
    if (r < 0) raise(Errc::negative_coordinate, "negative raw price");
    sum += r;
  }
  if (sum == 0) raise(Errc::all_zero_prices, "raw prices sum to zero");
  std::vector<Rational> coords;
  coords.reserve(raw.size());
  for (const auto& r : raw) coords.push_back(r / sum);
  return BarycentricPoint{std::move(coords)};
}

BarycentricPoint normalize_prices(const std::vector<double>& raw) {
  std::vector<Rational> exact;
  exact.reserve(raw.size());
  for (double r : raw) {
    if (!std::isfinite(r)) raise(Errc::invalid_config, "non-finite raw price");
    exact.emplace_back(r);
  }
  return normalize_prices(exact);
}

namespace {

void check_goods(const EconomySpec& econ, const BarycentricPoint& p) {
  if (p.dimension() + 1 != econ.goods)
    raise(Errc::invalid_config, "price dimension does not match goods");
}

std::vector<Rational> evaluate_cobb_douglas_exact(const EconomySpec& econ,
                                                  const BarycentricPoint& p) {
  for (const auto& c : p.coords)
    if (c == 0)
      raise(Errc::zero_price_singular,
            "Cobb-Douglas demand is unbounded at zero prices");
  std::size_t goods = p.coords.size();
  std::vector<Rational> f(goods, Rational(0));
  for (const auto& consumer : econ.consumers) {
    Rational income = 0;
    for (std::size_t i = 0; i < goods; ++i)
      income += p.coords[i] * consumer.endowment[i];
    for (std::size_t i = 0; i < goods; ++i)
      f[i] += consumer.alpha[i] * income / p.coords[i] - consumer.endowment[i];
  }
  return f;
}

std::vector<Rational> evaluate_table_exact(const EconomySpec& econ,
                                           const BarycentricPoint& p) {
  auto cell = locate_cell(econ.table_sub, p);
  auto weights = barycentric_weights(cell, p, econ.table_sub);
  auto vertices = cell_vertex_coords(cell, econ.table_sub);
  auto ranks = grid_vertices(econ.table_sub);

  std::vector<Rational> f(static_cast<std::size_t>(econ.goods), Rational(0));
  for (std::size_t j = 0; j < vertices.size(); ++j) {
    auto it = std::lower_bound(ranks.begin(), ranks.end(), vertices[j]);
    std::size_t rank = static_cast<std::size_t>(it - ranks.begin());
    const auto& row = econ.values[rank];
    for (std::size_t i = 0; i < f.size(); ++i)
      f[i] += (*weights)[j] * row[i];
  }
  return f;
}

}  // namespace

std::vector<Rational> evaluate_exact(const EconomySpec& econ,
                                     const BarycentricPoint& p) {
  check_goods(econ, p);
  switch (econ.kind) {
    case EconomyKind::cobb_douglas: return evaluate_cobb_douglas_exact(econ, p);
    case EconomyKind::table: return evaluate_table_exact(econ, p);
    case EconomyKind::induced: return econ.exact_fn(p);
  }
  raise(Errc::invalid_config, "unknown economy kind");
}

DemandVector evaluate(const EconomySpec& econ, const BarycentricPoint& p) {
  check_goods(econ, p);
  if (econ.kind == EconomyKind::cobb_douglas) {
    std::size_t goods = p.coords.size();
    std::vector<double> price(goods);
    for (std::size_t i = 0; i < goods; ++i) {
      if (p.coords[i] == 0)
        raise(Errc::zero_price_singular,
              "Cobb-Douglas demand is unbounded at zero prices");
      price[i] = to_double(p.coords[i]);
    }
    std::vector<double> f(goods, 0.0);
    for (const auto& consumer : econ.consumers) {
      double income = 0.0;
      for (std::size_t i = 0; i < goods; ++i)
        income += price[i] * to_double(consumer.endowment[i]);
      for (std::size_t i = 0; i < goods; ++i)
        f[i] += to_double(consumer.alpha[i]) * income / price[i] -
                to_double(consumer.endowment[i]);
    }
    return DemandVector{std::move(f)};
  }
  auto exact = evaluate_exact(econ, p);
  std::vector<double> f(exact.size());
  for (std::size_t i = 0; i < exact.size(); ++i) f[i] = to_double(exact[i]);
  return DemandVector{std::move(f)};
}

Rational walras_residual_exact(const EconomySpec& econ, const BarycentricPoint& p) {
  auto f = evaluate_exact(econ, p);
  Rational dot = 0;
  for (std::size_t i = 0; i < f.size(); ++i) dot += p.coords[i] * f[i];
  return dot < 0 ? Rational(-dot) : dot;
}

double walras_residual(const EconomySpec& econ, const BarycentricPoint& p) {
  auto f = evaluate(econ, p);
  double dot = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i)
    dot += to_double(p.coords[i]) * f.values[i];
  return std::fabs(dot);
}

BarycentricPoint price_map(const EconomySpec& econ, const BarycentricPoint& p) {
  auto f = evaluate_exact(econ, p);
  std::vector<Rational> v(p.coords.size());
  Rational sum = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational plus = f[i] > 0 ? f[i] : Rational(0);
    v[i] = p.coords[i] + plus;
    sum += v[i];
  }
  for (auto& c : v) c /= sum;
  return BarycentricPoint{std::move(v)};
}

std::vector<double> price_map_real(const EconomySpec& econ,
                                   const BarycentricPoint& p) {
  auto f = evaluate(econ, p);
  std::vector<double> v(f.values.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = to_double(p.coords[i]) + std::max(f.values[i], 0.0);
    sum += v[i];
  }
  for (auto& c : v) c /= sum;
  return v;
}

double equilibrium_residual(const EconomySpec& econ, const BarycentricPoint& p) {
  auto f = evaluate(econ, p);
  double worst = 0.0;
  for (double fi : f.values) worst = std::max(worst, fi);
  return worst;
}

Rational equilibrium_residual_exact(const EconomySpec& econ,
                                    const BarycentricPoint& p) {
  auto f = evaluate_exact(econ, p);
  Rational worst = 0;
  for (const auto& fi : f)
    if (fi > worst) worst = fi;
  return worst;
}

namespace {

void validate_cobb_douglas(const EconomySpec& econ) {
  if (econ.consumers.empty())
    raise(Errc::invalid_config, "cobb_douglas economy needs consumers");
  std::vector<Rational> supply(static_cast<std::size_t>(econ.goods), Rational(0));
  for (const auto& consumer : econ.consumers) {
    if (static_cast<int>(consumer.alpha.size()) != econ.goods ||
        static_cast<int>(consumer.endowment.size()) != econ.goods)
      raise(Errc::invalid_config, "consumer vectors must have one entry per good");
    Rational share = 0;
    for (const auto& a : consumer.alpha) {
      if (a < 0) raise(Errc::invalid_config, "negative consumption share");
      share += a;
    }
    if (share != 1) raise(Errc::invalid_config, "consumption shares must sum to 1");
    for (std::size_t i = 0; i < consumer.endowment.size(); ++i) {
      if (consumer.endowment[i] < 0)
        raise(Errc::invalid_config, "negative endowment");
      supply[i] += consumer.endowment[i];
    }
  }
  for (const auto& s : supply)
    if (s == 0) raise(Errc::invalid_config, "every good needs a positive endowment");
}

void validate_table(const EconomySpec& econ, Mode mode) {
  auto vertices = grid_vertices(econ.table_sub);
  if (econ.values.size() != vertices.size())
    raise(Errc::invalid_config,
          "table needs one row per grid vertex (" +
              std::to_string(vertices.size()) + ")");
  const Rational tol(BigInt(1), BigInt(1000000000000LL));
  for (std::size_t r = 0; r < vertices.size(); ++r) {
    if (static_cast<int>(econ.values[r].size()) != econ.goods)
      raise(Errc::invalid_config, "table row width must equal goods");
    Rational dot = 0;
    for (std::size_t i = 0; i < econ.values[r].size(); ++i)
      dot += Rational(BigInt(vertices[r][i]), BigInt(econ.table_sub.m)) *
             econ.values[r][i];
    Rational mag = dot < 0 ? Rational(-dot) : dot;
    bool bad = mode == Mode::rational ? (mag != 0) : (mag > tol);
    if (bad)
      raise(Errc::walras_violation,
            "table row " + std::to_string(r) + " violates the Walras law");
  }
}

}  // namespace

EconomySpec economy_from_json(const std::string& text, Mode mode) {
  auto j = detail::parse_document(text);
  if (!j.is_object() || !j.contains("type"))
    raise(Errc::invalid_config, "economy: missing \"type\"");
  std::string type = j.at("type").get<std::string>();

  EconomySpec econ;
  if (type == "cobb_douglas") {
    detail::require_keys(j, {"goods", "type", "consumers"}, "economy");
    econ.kind = EconomyKind::cobb_douglas;
    econ.goods = j.at("goods").get<int>();
    if (econ.goods < 2) raise(Errc::invalid_config, "need at least two goods");
    for (const auto& c : j.at("consumers")) {
      detail::require_keys(c, {"alpha", "endowment"}, "consumer");
      Consumer consumer;
      for (const auto& a : c.at("alpha"))
        consumer.alpha.push_back(detail::rational_from_json(a, "alpha"));
      for (const auto& w : c.at("endowment"))
        consumer.endowment.push_back(detail::rational_from_json(w, "endowment"));
      econ.consumers.push_back(std::move(consumer));
    }
    validate_cobb_douglas(econ);
    return econ;
  }
  if (type == "table") {
    detail::require_keys(j, {"type", "m", "goods", "values"}, "economy");
    econ.kind = EconomyKind::table;
    econ.goods = j.at("goods").get<int>();
    if (econ.goods < 2) raise(Errc::invalid_config, "need at least two goods");
    econ.table_sub = subdivide(econ.goods - 1, j.at("m").get<std::int64_t>());
    for (const auto& row : j.at("values")) {
      std::vector<Rational> values;
      for (const auto& v : row)
        values.push_back(detail::rational_from_json(v, "table value"));
      econ.values.push_back(std::move(values));
    }
    validate_table(econ, mode);
    return econ;
  }
  raise(Errc::invalid_config, "unknown economy type: " + type);
}

std::string economy_to_json(const EconomySpec& econ) {
  detail::json j;
  if (econ.kind == EconomyKind::cobb_douglas) {
    j["goods"] = econ.goods;
    j["type"] = "cobb_douglas";
    auto consumers = detail::json::array();
    for (const auto& c : econ.consumers) {
      detail::json e;
      auto alpha = detail::json::array();
      for (const auto& a : c.alpha) alpha.push_back(format_rational(a));
      auto endowment = detail::json::array();
      for (const auto& w : c.endowment) endowment.push_back(format_rational(w));
      e["alpha"] = std::move(alpha);
      e["endowment"] = std::move(endowment);
      consumers.push_back(std::move(e));
    }
    j["consumers"] = std::move(consumers);
    return j.dump(2) + "\n";
  }
  if (econ.kind == EconomyKind::table) {
    j["type"] = "table";
    j["m"] = econ.table_sub.m;
    j["goods"] = econ.goods;
    auto rows = detail::json::array();
    for (const auto& row : econ.values) {
      auto r = detail::json::array();
      for (const auto& v : row) r.push_back(format_rational(v));
      rows.push_back(std::move(r));
    }
    j["values"] = std::move(rows);
    return j.dump(2) + "\n";
  }
  raise(Errc::invalid_config, "induced economies have no file form");
}

namespace {

EconomySpec two_good(const Rational& a0, const Rational& b0) {
  EconomySpec econ;
  econ.goods = 2;
  econ.kind = EconomyKind::cobb_douglas;
  econ.consumers = {
      {{a0, Rational(1) - a0}, {Rational(1), Rational(0)}},
      {{b0, Rational(1) - b0}, {Rational(0), Rational(1)}},
  };
  return econ;
}

}  // namespace

EconomySpec two_equilibria_table_economy() {
  // f0(k/10) = (k-3)(k-7)/100 and f1 chosen to satisfy the Walras law at
  // every vertex; the last vertex carries (0, 1) so neither corner is an
  // equilibrium.
  EconomySpec econ;
  econ.goods = 2;
  econ.kind = EconomyKind::table;
  econ.table_sub = subdivide(1, 10);
  for (std::int64_t k0 = 0; k0 <= 10; ++k0) {
    // grid_vertices order: k0 ascending
    if (k0 == 10) {
      econ.values.push_back({Rational(0), Rational(1)});
      continue;
    }
    Rational f0(BigInt((k0 - 3) * (k0 - 7)), BigInt(100));
    Rational f1 = -Rational(BigInt(k0), BigInt(10)) * f0 /
                  Rational(BigInt(10 - k0), BigInt(10));
    econ.values.push_back({f0, f1});
  }
  return econ;
}

std::vector<std::string> builtin_economy_names() {
  return {"symmetric-2good", "skew-a", "skew-b",        "skew-c",
          "skew-d",          "cobb-3good", "no-trade-table"};
}

EconomySpec builtin_economy(const std::string& name) {
  if (name == "symmetric-2good") return two_good(make_ratio(1, 2), make_ratio(1, 2));
  if (name == "skew-a") return two_good(make_ratio(3, 4), make_ratio(1, 4));
  if (name == "skew-b") return two_good(make_ratio(3, 5), make_ratio(1, 5));
  if (name == "skew-c") return two_good(make_ratio(1, 2), make_ratio(1, 3));
  if (name == "skew-d") return two_good(make_ratio(7, 10), make_ratio(1, 10));
  if (name == "cobb-3good") {
    EconomySpec econ;
    econ.goods = 3;
    econ.kind = EconomyKind::cobb_douglas;
    econ.consumers = {
        {{make_ratio(1, 2), make_ratio(1, 4), make_ratio(1, 4)},
         {Rational(1), Rational(0), Rational(0)}},
        {{make_ratio(1, 5), make_ratio(2, 5), make_ratio(2, 5)},
         {Rational(0), Rational(1), Rational(1)}},
    };
    return econ;
  }
  if (name == "no-trade-table") {
    EconomySpec econ;
    econ.goods = 2;
    econ.kind = EconomyKind::table;
    econ.table_sub = subdivide(1, 4);
    for (int i = 0; i < 5; ++i) econ.values.push_back({Rational(0), Rational(0)});
    return econ;
  }
  raise(Errc::invalid_config, "unknown builtin economy: " + name);
}

}  // namespace speq
