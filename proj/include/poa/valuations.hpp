#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <variant>
#include <vector>

#include "poa/errors.hpp"
#include "poa/itemset.hpp"
#include "poa/money.hpp"

namespace poa {

// ---------------------------------------------------------------------------
// Grid universe helpers: items are points of [n]^d, indexed little-endian
// (digit k of item j is (j / n^k) % n). A "slice" fixes one coordinate; a
// "column" fixes all coordinates except one.
// ---------------------------------------------------------------------------
struct GridGeometry {
  int n = 0;
  int d = 0;

  GridGeometry() = default;
  GridGeometry(int n_, int d_) : n(n_), d(d_) {
    if (n < 2 || d < 1) throw ContractError("GridGeometry: need n >= 2, d >= 1");
    double cnt = std::pow(static_cast<double>(n), d);
    if (cnt > 4096.0 + 0.5) throw CapacityError("GridGeometry: n^d exceeds 4096 items");
  }

  int items() const {
    int c = 1;
    for (int k = 0; k < d; ++k) c *= n;
    return c;
  }

  int digit(int j, int k) const {
    for (int t = 0; t < k; ++t) j /= n;
    return j % n;
  }

  // Index of the column of item j in direction dir (the item's coordinates
  // with coordinate dir removed, little-endian).
  int column_id(int j, int dir) const {
    int cid = 0, mul = 1;
    for (int k = 0; k < d; ++k) {
      int dg = digit(j, k);
      if (k == dir) continue;
      cid += dg * mul;
      mul *= n;
    }
    return cid;
  }

  int columns_per_direction() const { return items() / n; }

  // slice ell in direction dir: all items with digit(dir) == ell.
  std::vector<std::vector<int>> slices(int dir) const {
    std::vector<std::vector<int>> out(n);
    for (int j = 0; j < items(); ++j) out[digit(j, dir)].push_back(j);
    return out;
  }

  std::vector<std::vector<int>> columns(int dir) const {
    std::vector<std::vector<int>> out(columns_per_direction());
    for (int j = 0; j < items(); ++j) out[column_id(j, dir)].push_back(j);
    return out;
  }
};

// ---------------------------------------------------------------------------
// Valuation variants
// ---------------------------------------------------------------------------
struct Additive {
  std::vector<Money> per_item;
};

struct UnitDemand {
  std::vector<Money> per_item;
};

// max over clauses of the clause's additive value on the set.
struct Xos {
  std::vector<std::vector<Money>> clauses;
};

// scale * |projection of S along `direction`| on the [n]^d grid.
struct GridProjection {
  GridGeometry grid;
  int direction = 0;
  Money scale = 1.0;
};

// Dense table over all 2^m subsets (bit j of the index = item j).
struct Tabulated {
  int m = 0;
  std::vector<Money> table;
};

// v for winning at least one item, zero otherwise.
struct SubadditiveLBPlayer1 {
  int m = 0;
  Money v = 0.0;
};

// big for winning at least one item, 2*big for winning all m.
struct SubadditiveLBPlayer2 {
  int m = 0;
  Money big = 1.0;
};

// Multi-unit: value depends only on the number of units won; by_count[k] = v(k).
struct MultiUnit {
  std::vector<Money> by_count;
};

using Valuation = std::variant<Additive, UnitDemand, Xos, GridProjection, Tabulated,
                               SubadditiveLBPlayer1, SubadditiveLBPlayer2, MultiUnit>;

inline int universe_size(const Valuation& v) {
  return std::visit(
      [](const auto& w) -> int {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, Additive> || std::is_same_v<T, UnitDemand>)
          return static_cast<int>(w.per_item.size());
        else if constexpr (std::is_same_v<T, Xos>) {
          if (w.clauses.empty()) throw ContractError("Xos: needs at least one clause");
          return static_cast<int>(w.clauses[0].size());
        } else if constexpr (std::is_same_v<T, GridProjection>)
          return w.grid.items();
        else if constexpr (std::is_same_v<T, Tabulated>)
          return w.m;
        else if constexpr (std::is_same_v<T, SubadditiveLBPlayer1> ||
                           std::is_same_v<T, SubadditiveLBPlayer2>)
          return w.m;
        else
          return static_cast<int>(w.by_count.size()) - 1;
      },
      v);
}

inline void validate_valuation(const Valuation& v) {
  std::visit(
      [](const auto& w) {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, Additive> || std::is_same_v<T, UnitDemand>) {
          for (Money x : w.per_item)
            if (x < 0) throw ContractError("valuation: negative per-item value");
        } else if constexpr (std::is_same_v<T, Xos>) {
          if (w.clauses.empty()) throw ContractError("Xos: needs at least one clause");
          size_t m = w.clauses[0].size();
          for (const auto& c : w.clauses) {
            if (c.size() != m) throw ContractError("Xos: ragged clauses");
            for (Money x : c)
              if (x < 0) throw ContractError("Xos: negative clause value");
          }
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          if (w.m < 0 || w.m > 20) throw CapacityError("Tabulated: m must be in [0, 20]");
          if (w.table.size() != (size_t{1} << w.m))
            throw ContractError("Tabulated: table size must be 2^m");
          if (std::abs(w.table[0]) > 1e-12)
            throw ContractError("Tabulated: v(empty) must be 0");
          for (uint32_t s = 0; s < w.table.size(); ++s)
            for (int j = 0; j < w.m; ++j)
              if (!(s & (1u << j)) && w.table[s | (1u << j)] < w.table[s] - 1e-12)
                throw ContractError("Tabulated: table not monotone");
        } else if constexpr (std::is_same_v<T, SubadditiveLBPlayer1>) {
          if (w.m < 1 || w.v < 0) throw ContractError("SubadditiveLBPlayer1: bad parameters");
        } else if constexpr (std::is_same_v<T, SubadditiveLBPlayer2>) {
          if (w.m < 2 || w.big <= 0) throw ContractError("SubadditiveLBPlayer2: bad parameters");
        } else if constexpr (std::is_same_v<T, MultiUnit>) {
          if (w.by_count.empty() || std::abs(w.by_count[0]) > 1e-12)
            throw ContractError("MultiUnit: by_count must start with v(0)=0");
          for (size_t k = 1; k < w.by_count.size(); ++k)
            if (w.by_count[k] < w.by_count[k - 1] - 1e-12)
              throw ContractError("MultiUnit: by_count not monotone");
        }
      },
      v);
}

inline Money value(const Valuation& v, const ItemSet& s) {
  return std::visit(
      [&](const auto& w) -> Money {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, Additive>) {
          Money tot = 0;
          for (int j = 0; j < s.universe(); ++j)
            if (s.contains(j)) tot += w.per_item.at(j);
          return tot;
        } else if constexpr (std::is_same_v<T, UnitDemand>) {
          Money best = 0;
          for (int j = 0; j < s.universe(); ++j)
            if (s.contains(j)) best = std::max(best, w.per_item.at(j));
          return best;
        } else if constexpr (std::is_same_v<T, Xos>) {
          Money best = 0;
          for (const auto& c : w.clauses) {
            Money tot = 0;
            for (int j = 0; j < s.universe(); ++j)
              if (s.contains(j)) tot += c.at(j);
            best = std::max(best, tot);
          }
          return best;
        } else if constexpr (std::is_same_v<T, GridProjection>) {
          std::vector<char> seen(w.grid.columns_per_direction(), 0);
          int distinct = 0;
          for (int j = 0; j < s.universe(); ++j)
            if (s.contains(j)) {
              int cid = w.grid.column_id(j, w.direction);
              if (!seen[cid]) {
                seen[cid] = 1;
                ++distinct;
              }
            }
          return w.scale * distinct;
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          return w.table.at(static_cast<size_t>(s.mask()));
        } else if constexpr (std::is_same_v<T, SubadditiveLBPlayer1>) {
          return s.empty() ? 0.0 : w.v;
        } else if constexpr (std::is_same_v<T, SubadditiveLBPlayer2>) {
          int c = s.count();
          return w.big * ((c >= 1 ? 1 : 0) + (c == w.m ? 1 : 0));
        } else {
          return w.by_count.at(s.count());
        }
      },
      v);
}

// Multi-unit convenience: value of winning `units` units.
inline Money value_units(const Valuation& v, int units) {
  if (const auto* mu = std::get_if<MultiUnit>(&v)) return mu->by_count.at(units);
  if (const auto* p1 = std::get_if<SubadditiveLBPlayer1>(&v)) return units >= 1 ? p1->v : 0.0;
  if (const auto* p2 = std::get_if<SubadditiveLBPlayer2>(&v))
    return p2->big * ((units >= 1 ? 1 : 0) + (units == p2->m ? 1 : 0));
  throw UnsupportedError("value_units: valuation is not unit-based");
}

// ---------------------------------------------------------------------------
// Class checks (full enumeration; m <= 12)
// ---------------------------------------------------------------------------
enum class ValuationClass { Additive, Oxs, Submodular, Xos, Subadditive };

inline const char* to_string(ValuationClass c) {
  switch (c) {
    case ValuationClass::Additive: return "additive";
    case ValuationClass::Oxs: return "oxs";
    case ValuationClass::Submodular: return "submodular";
    case ValuationClass::Xos: return "xos";
    case ValuationClass::Subadditive: return "subadditive";
  }
  return "?";
}

struct XosWitness {
  std::vector<std::vector<Money>> clauses;
};

struct OxsWitness {
  std::vector<std::vector<Money>> unit_demands;
};

struct ClassCheckResult {
  bool holds = false;
  std::string counterexample;  // empty when holds
};

// Dense table of v over all subsets of [0, m); m <= 20.
inline std::vector<Money> materialize(const Valuation& v) {
  int m = universe_size(v);
  if (m > 20) throw CapacityError("materialize: universe exceeds 20 items");
  std::vector<Money> table(size_t{1} << m);
  for (uint32_t mask = 0; mask < table.size(); ++mask)
    table[mask] = value(v, ItemSet::from_mask(m, mask));
  return table;
}

inline Money xos_value(const XosWitness& w, int m, uint32_t mask) {
  Money best = 0;
  for (const auto& c : w.clauses) {
    Money tot = 0;
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) tot += c.at(j);
    best = std::max(best, tot);
  }
  return best;
}

namespace detail {

// Min-cost perfect assignment on a square matrix (potentials method, O(k^3)).
// Returns the optimal total cost.
inline double assignment_cost(const std::vector<std::vector<double>>& a) {
  int k = static_cast<int>(a.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(k + 1, 0), v(k + 1, 0);
  std::vector<int> p(k + 1, 0), way(k + 1, 0);
  for (int i = 1; i <= k; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(k + 1, inf);
    std::vector<char> used(k + 1, 0);
    do {
      used[j0] = 1;
      int i0 = p[j0], j1 = -1;
      double delta = inf;
      for (int j = 1; j <= k; ++j)
        if (!used[j]) {
          double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
          if (minv[j] < delta) {
            delta = minv[j];
            j1 = j;
          }
        }
      for (int j = 0; j <= k; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  double cost = 0;
  for (int j = 1; j <= k; ++j)
    if (p[j] > 0) cost += a[p[j] - 1][j - 1];
  return cost;
}

}  // namespace detail

// Max-weight matching between the items of `mask` and the witness's
// unit-demand components (each component used at most once).
inline Money oxs_value(const OxsWitness& w, int m, uint32_t mask) {
  std::vector<int> items;
  for (int j = 0; j < m; ++j)
    if (mask & (1u << j)) items.push_back(j);
  int L = static_cast<int>(items.size());
  int R = static_cast<int>(w.unit_demands.size());
  if (L == 0 || R == 0) return 0;
  int k = std::max(L, R);
  std::vector<std::vector<double>> cost(k, std::vector<double>(k, 0.0));
  for (int l = 0; l < L; ++l)
    for (int r = 0; r < R; ++r) cost[l][r] = -w.unit_demands[r].at(items[l]);
  return -detail::assignment_cost(cost);
}

inline ClassCheckResult check_class(const Valuation& v, ValuationClass cls,
                                    const XosWitness* xw = nullptr,
                                    const OxsWitness* ow = nullptr, double tol = kMoneyTol) {
  // Unit-based valuations: classes are defined on counts.
  if (std::holds_alternative<MultiUnit>(v)) {
    const auto& by = std::get<MultiUnit>(v).by_count;
    int m = static_cast<int>(by.size()) - 1;
    switch (cls) {
      case ValuationClass::Additive:
        for (int s2 = 0; s2 <= m; ++s2)
          if (!approx_eq(by[s2], s2 * by[1], tol))
            return {false, "v(" + std::to_string(s2) + ") != k*v(1)"};
        return {true, {}};
      case ValuationClass::Submodular:
        for (int s2 = 2; s2 <= m; ++s2)
          if (by[s2] - by[s2 - 1] > by[s2 - 1] - by[s2 - 2] + tol)
            return {false, "increment rises at " + std::to_string(s2)};
        return {true, {}};
      case ValuationClass::Subadditive:
        for (int s2 = 1; s2 <= m; ++s2)
          for (int t = 1; s2 + t <= m; ++t)
            if (by[s2 + t] > by[s2] + by[t] + tol)
              return {false, "v(s+t) > v(s)+v(t) at s=" + std::to_string(s2) +
                                 ", t=" + std::to_string(t)};
        return {true, {}};
      default:
        throw UnsupportedError("check_class: witness classes undefined for MultiUnit");
    }
  }

  int m = universe_size(v);
  if (m > 12) throw CapacityError("check_class: full enumeration capped at m = 12");
  std::vector<Money> tab = materialize(v);
  auto name = [m](uint32_t mask) {
    std::string s = "{";
    bool first = true;
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) {
        if (!first) s += ",";
        s += std::to_string(j);
        first = false;
      }
    return s + "}";
  };

  switch (cls) {
    case ValuationClass::Additive: {
      for (uint32_t s = 0; s < tab.size(); ++s) {
        Money sum = 0;
        for (int j = 0; j < m; ++j)
          if (s & (1u << j)) sum += tab[1u << j];
        if (!approx_eq(tab[s], sum, tol)) return {false, "not additive on " + name(s)};
      }
      return {true, {}};
    }
    case ValuationClass::Submodular: {
      for (uint32_t s = 0; s < tab.size(); ++s)
        for (int i = 0; i < m; ++i) {
          if (s & (1u << i)) continue;
          for (int j = i + 1; j < m; ++j) {
            if (s & (1u << j)) continue;
            Money lhs = tab[s | (1u << i)] + tab[s | (1u << j)];
            Money rhs = tab[s | (1u << i) | (1u << j)] + tab[s];
            if (lhs < rhs - tol)
              return {false, "marginals increase: S=" + name(s) + " i=" + std::to_string(i) +
                                 " j=" + std::to_string(j)};
          }
        }
      return {true, {}};
    }
    case ValuationClass::Subadditive: {
      uint32_t all = static_cast<uint32_t>(tab.size() - 1);
      for (uint32_t s = 1; s < tab.size(); ++s) {
        uint32_t comp = all & ~s;
        for (uint32_t t = comp; t; t = (t - 1) & comp)
          if (tab[s | t] > tab[s] + tab[t] + tol)
            return {false, "v(S|T) > v(S)+v(T): S=" + name(s) + " T=" + name(t)};
      }
      return {true, {}};
    }
    case ValuationClass::Xos: {
      if (!xw) throw ContractError("check_class: XOS check needs a witness");
      for (uint32_t s = 0; s < tab.size(); ++s)
        if (!approx_eq(tab[s], xos_value(*xw, m, s), tol))
          return {false, "witness mismatch on " + name(s)};
      return {true, {}};
    }
    case ValuationClass::Oxs: {
      if (!ow) throw ContractError("check_class: OXS check needs a witness");
      for (uint32_t s = 0; s < tab.size(); ++s)
        if (!approx_eq(tab[s], oxs_value(*ow, m, s), tol))
          return {false, "witness mismatch on " + name(s)};
      return {true, {}};
    }
  }
  return {false, "unknown class"};
}

// Unit-demand decomposition of a grid projection valuation: one clause per
// column in the player's direction, paying `scale` for any item of that column.
inline OxsWitness grid_oxs_witness(const GridProjection& g) {
  OxsWitness w;
  int m = g.grid.items();
  w.unit_demands.assign(g.grid.columns_per_direction(), std::vector<Money>(m, 0.0));
  for (int j = 0; j < m; ++j) w.unit_demands[g.grid.column_id(j, g.direction)][j] = g.scale;
  return w;
}

}  // namespace poa
