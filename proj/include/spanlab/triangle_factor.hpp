#pragma once

// Two-index spectrum of triangle factors. A shared edge of (G1, G2) is type 1
// when the triangles containing it in G1 and G2 differ, type 2 when they span
// the same vertex set; f_{l,s} counts ordered pairs with l type-1 and s type-2
// shared edges (s is always a multiple of 3).

#include <bit>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "spanlab/bigint.hpp"
#include "spanlab/enumerate.hpp"
#include "spanlab/errors.hpp"
#include "spanlab/families.hpp"

namespace spanlab {

inline constexpr std::int64_t kTriangleFactorEnumerationMaxMembers = 2'000'000;
inline constexpr int kTriangleFactorEnumerationMaxN = 15;
inline constexpr int kTriangleFactorDpMaxN = 90;

struct TriangleFactorSpectrum {
  int n = 0;
  // (type-1 edge count, type-2 edge count) -> number of ordered pairs
  std::map<std::pair<int, int>, BigInt> table;

  BigInt at(int type1, int type2_edges) const {
    auto it = table.find({type1, type2_edges});
    return it == table.end() ? BigInt(0) : it->second;
  }

  // f_{l,3t}: l type-1 edges and t shared triangles.
  BigInt shared(int type1, int triangles) const { return at(type1, 3 * triangles); }

  // f_j = sum_k f_{j-3k,3k}
  std::vector<BigInt> one_index() const {
    std::vector<BigInt> f(static_cast<std::size_t>(n + 1), 0);
    for (const auto& [key, value] : table) f[key.first + key.second] += value;
    return f;
  }

  BigInt total() const {
    BigInt s = 0;
    for (const auto& [key, value] : table) s += value;
    return s;
  }
};

namespace detail {

// Third vertex of the triangle through edge {u,v} in a triangle factor.
inline int apex(std::span<const Row> rows, int u, int v) {
  return std::countr_zero(rows[u] & rows[v]);
}

}  // namespace detail

// Fixed-representative enumeration over all |S_6(n)| factors, classifying
// each shared edge directly from the two factors.
inline TriangleFactorSpectrum triangle_factor_spectrum(int n, std::int64_t representative = 0) {
  const auto spec = FamilySpec::triangle_factor(n);
  const BigInt size = *cardinality(spec).exact;
  if (size > kTriangleFactorEnumerationMaxMembers)
    throw CapabilityError("triangle factor enumeration",
                          "|S| <= " + std::to_string(kTriangleFactorEnumerationMaxMembers));
  if (representative < 0 || representative >= size)
    throw DomainError("representative index outside 0..|S|-1");
  std::vector<Row> rep;
  std::int64_t index = 0;
  for_each_triangle_factor(n, [&](std::span<const Row> rows) {
    if (index++ == representative) rep.assign(rows.begin(), rows.end());
  });
  std::map<std::pair<int, int>, std::uint64_t> counts;
  for_each_triangle_factor(n, [&](std::span<const Row> rows) {
    int type1 = 0, type2 = 0;
    for (int u = 0; u < n; ++u) {
      for_each_bit(rows[u] & rep[u] & ~low_mask(u + 1), [&](int v) {
        if (detail::apex(rows, u, v) == detail::apex(rep, u, v)) ++type2;
        else ++type1;
      });
    }
    ++counts[{type1, type2}];
  });
  TriangleFactorSpectrum ts{n, {}};
  for (const auto& [key, c] : counts) ts.table[key] = size * c;
  return ts;
}

namespace detail {

// Counts factors of the uncovered vertices by (type-1 edges, shared triangles)
// relative to a representative whose triangles are "blocks". The state is
// how many blocks have 3, 2 and 1 uncovered vertices; by symmetry the
// completion count depends on nothing else.
class BlockStateCounter {
 public:
  explicit BlockStateCounter(int blocks) : k_(blocks), width_(blocks + 1) {}

  using Poly = std::vector<BigInt>;  // index type1 * width + triangles

  Poly count() { return ways(k_, 0, 0); }
  int width() const { return width_; }

 private:
  using State = std::tuple<int, int, int>;

  void add_shifted(Poly& acc, const Poly& sub, const BigInt& mult, int dl, int dt) const {
    if (mult == 0) return;
    for (int l = 0; l + dl < width_; ++l)
      for (int t = 0; t + dt < width_; ++t) {
        const BigInt& v = sub[static_cast<std::size_t>(l * width_ + t)];
        if (v != 0) acc[static_cast<std::size_t>((l + dl) * width_ + t + dt)] += mult * v;
      }
  }

  Poly ways(int c3, int c2, int c1) {
    Poly result(static_cast<std::size_t>(width_ * width_), 0);
    if (c3 + c2 + c1 == 0) {
      result[0] = 1;
      return result;
    }
    const State key{c3, c2, c1};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    // pivot: one uncovered vertex from a block with the fewest uncovered vertices
    const int k = c1 > 0 ? 1 : (c2 > 0 ? 2 : 3);
    std::array<int, 4> c{0, c1, c2, c3};
    --c[k];  // pivot block leaves the pool of "other" blocks
    const int own_rest = k - 1;

    // applies deltas to class counts; `own_after` uncovered remain in the pivot block
    auto next = [&](std::array<int, 4> cc, int own_after) {
      if (own_after > 0) ++cc[own_after];
      return ways(cc[3], cc[2], cc[1]);
    };

    // both partners from the pivot block: the block itself, a shared triangle
    if (own_rest == 2) add_shifted(result, next(c, 0), 1, 0, 1);

    for (int a = 1; a <= 3; ++a) {
      if (c[a] == 0) continue;
      // one partner in the pivot block, one in another block: one type-1 edge
      if (own_rest >= 1) {
        auto cc = c;
        --cc[a];
        if (a - 1 > 0) ++cc[a - 1];
        add_shifted(result, next(cc, own_rest - 1), BigInt(own_rest) * c[a] * a, 1, 0);
      }
      // both partners in the same other block: the edge between them is type 1
      if (a >= 2) {
        auto cc = c;
        --cc[a];
        if (a - 2 > 0) ++cc[a - 2];
        add_shifted(result, next(cc, own_rest), BigInt(c[a]) * (a * (a - 1) / 2), 1, 0);
      }
      // partners in two different other blocks: no shared edge
      for (int b = a; b <= 3; ++b) {
        BigInt mult;
        auto cc = c;
        if (a == b) {
          if (c[a] < 2) continue;
          mult = BigInt(c[a]) * (c[a] - 1) / 2 * a * a;
          cc[a] -= 2;
          if (a - 1 > 0) cc[a - 1] += 2;
        } else {
          if (c[b] == 0) continue;
          mult = BigInt(c[a]) * c[b] * a * b;
          --cc[a];
          --cc[b];
          if (a - 1 > 0) ++cc[a - 1];
          if (b - 1 > 0) ++cc[b - 1];
        }
        add_shifted(result, next(cc, own_rest), mult, 0, 0);
      }
    }
    memo_.emplace(key, result);
    return result;
  }

  int k_;
  int width_;
  std::map<State, Poly> memo_;
};

}  // namespace detail

// Same table as triangle_factor_spectrum, by block-state dynamic programming;
// polynomial in n, so it reaches sizes where enumeration cannot.
inline TriangleFactorSpectrum triangle_factor_spectrum_dp(int n) {
  const auto spec = FamilySpec::triangle_factor(n);
  if (n > kTriangleFactorDpMaxN)
    throw CapabilityError("triangle factor block-state table",
                          "n <= " + std::to_string(kTriangleFactorDpMaxN));
  const BigInt size = *cardinality(spec).exact;
  detail::BlockStateCounter counter(n / 3);
  const auto poly = counter.count();
  const int w = counter.width();
  TriangleFactorSpectrum ts{n, {}};
  for (int l = 0; l < w; ++l)
    for (int t = 0; t < w; ++t) {
      const BigInt& v = poly[static_cast<std::size_t>(l * w + t)];
      if (v != 0) ts.table[{l, 3 * t}] = size * v;
    }
  return ts;
}

// One switching-bound audit: lower <= f(numerator cell) / f(denominator cell) <= upper.
struct BoundCheck {
  int type1 = 0;
  int triangles = 0;
  bool in_window = false;  // the lemma's validity window holds
  bool evaluated = false;  // in window and the denominator cell is nonzero
  Rational lower;
  Rational upper;
  std::optional<Rational> ratio;
  bool holds = true;
};

inline Rational single_lower_bound(int n, int l, int t) {
  const BigInt a = n - 4 * l - 3 * t - 1, b = n - 3 * l - 3 * t;
  return Rational(2 * a * a, BigInt(l) * b * b);
}

inline Rational single_upper_bound(int n, int l, int t) {
  const BigInt a = n - 4 * l - 3 * t + 4, b = n - 3 * l - 3 * t - 12;
  return Rational(2 * a * a, BigInt(l) * b * b);
}

inline Rational triple_lower_bound(int n, int l, int t) {
  const BigInt a = n - 4 * l - 3 * t - 6, b = n - 3 * l - 3 * t;
  return Rational(32 * a * a * a, 3 * b * b * b * b);
}

inline Rational triple_upper_bound(int n, int l, int t) {
  const BigInt a = n - 4 * l - 3 * t + 4, b = n - 3 * l - 3 * t - 21;
  return Rational(32 * a * a * a, 3 * b * b * b * b);
}

namespace detail {

inline BoundCheck finish_check(BoundCheck c, const BigInt& num, const BigInt& den) {
  if (!c.in_window || den == 0) return c;
  c.evaluated = true;
  c.ratio = Rational(num, den);
  c.holds = c.lower <= *c.ratio && *c.ratio <= c.upper;
  return c;
}

}  // namespace detail

// f_{l,3t} / f_{l-1,3t} against the single-edge switching sandwich.
inline BoundCheck check_single_bound(const TriangleFactorSpectrum& ts, int l, int t) {
  if (l < 1 || t < 0) throw DomainError("single bound needs l >= 1 and t >= 0");
  const int n = ts.n;
  BoundCheck c;
  c.type1 = l;
  c.triangles = t;
  c.in_window = n - 4 * l - 3 * t - 1 > 0 && n - 3 * l - 3 * t - 12 > 0;
  if (!c.in_window) return c;
  c.lower = single_lower_bound(n, l, t);
  c.upper = single_upper_bound(n, l, t);
  return detail::finish_check(c, ts.shared(l, t), ts.shared(l - 1, t));
}

// f_{l,3t} / f_{l,3(t-1)} against the shared-triangle switching sandwich.
inline BoundCheck check_triple_bound(const TriangleFactorSpectrum& ts, int l, int t) {
  if (l < 0 || t < 1) throw DomainError("triple bound needs l >= 0 and t >= 1");
  const int n = ts.n;
  BoundCheck c;
  c.type1 = l;
  c.triangles = t;
  c.in_window = n - 3 * l - 3 * t - 21 > 0;
  if (!c.in_window) return c;
  c.lower = triple_lower_bound(n, l, t);
  c.upper = triple_upper_bound(n, l, t);
  return detail::finish_check(c, ts.shared(l, t), ts.shared(l, t - 1));
}

struct BoundAudit {
  std::vector<BoundCheck> single;
  std::vector<BoundCheck> triple;

  std::size_t evaluated() const {
    std::size_t k = 0;
    for (const auto& c : single) k += c.evaluated;
    for (const auto& c : triple) k += c.evaluated;
    return k;
  }
  bool holds() const {
    for (const auto& c : single)
      if (!c.holds) return false;
    for (const auto& c : triple)
      if (!c.holds) return false;
    return true;
  }
};

// Every (l, t) with 3l + 3t <= n, both lemmas.
inline BoundAudit audit_triangle_factor_bounds(const TriangleFactorSpectrum& ts) {
  BoundAudit audit;
  const int k = ts.n / 3;
  for (int l = 0; l <= k; ++l)
    for (int t = 0; l + t <= k; ++t) {
      if (l >= 1) audit.single.push_back(check_single_bound(ts, l, t));
      if (t >= 1) audit.triple.push_back(check_triple_bound(ts, l, t));
    }
  return audit;
}

// f_{j-3k-3,3k+3} / f_{j-3k,3k} next to its leading-order value 4 [j-3k-1]_3 / (3n).
struct TripleCompositionRow {
  int j = 0;
  int k = 0;
  std::optional<Rational> ratio;
  double predicted = 0.0;
};

inline std::vector<TripleCompositionRow> triple_composition_report(const TriangleFactorSpectrum& ts,
                                                                   int max_j) {
  std::vector<TripleCompositionRow> rows;
  for (int j = 3; j <= max_j; ++j)
    for (int k = 0; j - 3 * k - 3 >= 0; ++k) {
      TripleCompositionRow row;
      row.j = j;
      row.k = k;
      const BigInt den = ts.at(j - 3 * k, 3 * k);
      if (den != 0) row.ratio = Rational(ts.at(j - 3 * k - 3, 3 * k + 3), den);
      const double x = j - 3 * k - 1;
      row.predicted = 4 * x * (x - 1) * (x - 2) / (3.0 * ts.n);
      rows.push_back(row);
    }
  return rows;
}

}  // namespace spanlab
