#pragma once

// Random generators and brute-force reference implementations. The
// references work on plain std::set / std::string data and do not call the
// library routine they are compared against.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gapforge/gapforge.hpp"

namespace gapforge::testing {

using NatSet = std::set<std::size_t>;

inline NatSet to_nat_set(const FinSet& s) {
  const auto m = s.members();
  return {m.begin(), m.end()};
}

inline FinSet random_finset(Rng& rng, std::size_t universe, std::uint64_t num = 1, std::uint64_t den = 2) {
  FinSet s;
  for (std::size_t k = 0; k < universe; ++k) {
    if (chance(rng, num, den)) s.insert(k);
  }
  return s;
}

inline FinSet mask_set(std::uint64_t mask) {
  FinSet s;
  for (std::size_t k = 0; k < 64; ++k) {
    if ((mask >> k) & 1U) s.insert(k);
  }
  return s;
}

// Least k with every member of a∖b below k, found by scanning k upward.
inline std::size_t ref_excess(const NatSet& a, const NatSet& b) {
  for (std::size_t k = 0;; ++k) {
    bool ok = true;
    for (std::size_t x : a) {
      if (x >= k && !b.contains(x)) ok = false;
    }
    if (ok) return k;
  }
}

inline std::size_t ref_excess(const FinSet& a, const FinSet& b) {
  return ref_excess(to_nat_set(a), to_nat_set(b));
}

// <_I written out case by case.
inline bool ref_index_less(Ordinal x, int sx, Ordinal y, int sy) {
  if (sx == 0 && sy == 0) return x < y;
  if (sx == 1 && sy == 1) return y < x;
  return sx == 0 && sy == 1;
}

// A P-condition as literal bit strings.
struct RefP {
  std::size_t height = 0;
  std::map<Ordinal, std::pair<std::string, std::string>> words;
};

inline RefP to_ref(const PCondition& p) {
  RefP out{p.height(), {}};
  for (const auto& [alpha, w] : p.entries()) {
    out.words[alpha] = {w.lower.to_bits(p.height()), w.upper.to_bits(p.height())};
  }
  return out;
}

inline const std::string& ref_word(const RefP& p, Ordinal alpha, int side) {
  const auto& w = p.words.at(alpha);
  return side == 0 ? w.first : w.second;
}

// dom(p) ⊆ dom(q), prefixes, and [q(i)]∖[p(i)] ⊆ [q(j)] for i <_I j in dom(p).
inline bool ref_p_leq(const RefP& p, const RefP& q) {
  if (p.height > q.height) return false;
  for (const auto& [alpha, w] : p.words) {
    if (!q.words.contains(alpha)) return false;
    for (int side = 0; side < 2; ++side) {
      if (ref_word(q, alpha, side).substr(0, p.height) != ref_word(p, alpha, side)) return false;
    }
  }
  for (const auto& [x, wx] : p.words) {
    for (int sx = 0; sx < 2; ++sx) {
      for (const auto& [y, wy] : p.words) {
        for (int sy = 0; sy < 2; ++sy) {
          if (!ref_index_less(x, sx, y, sy)) continue;
          const std::string& qi = ref_word(q, x, sx);
          const std::string& pi = ref_word(p, x, sx);
          const std::string& qj = ref_word(q, y, sy);
          for (std::size_t k = 0; k < q.height; ++k) {
            const bool in_p = k < pi.size() && pi[k] == '1';
            if (qi[k] == '1' && !in_p && qj[k] != '1') return false;
          }
        }
      }
    }
  }
  return true;
}

inline bool ref_p_leq(const PCondition& p, const PCondition& q) { return ref_p_leq(to_ref(p), to_ref(q)); }

// Every valid condition with domain ⊆ ordinals and height ≤ max_height.
inline std::vector<PCondition> all_p_conditions(const std::vector<Ordinal>& ordinals, std::size_t max_height) {
  std::vector<PCondition> out;
  for (std::size_t h = 0; h <= max_height; ++h) {
    for (std::uint64_t dom = 0; dom < (std::uint64_t{1} << ordinals.size()); ++dom) {
      std::vector<Ordinal> chosen;
      for (std::size_t x = 0; x < ordinals.size(); ++x) {
        if ((dom >> x) & 1U) chosen.push_back(ordinals[x]);
      }
      // Each chosen ordinal picks (lower, upper) with lower ⊆ upper.
      std::vector<std::pair<FinSet, FinSet>> pairs;
      for (std::uint64_t lo = 0; lo < (std::uint64_t{1} << h); ++lo) {
        for (std::uint64_t hi = 0; hi < (std::uint64_t{1} << h); ++hi) {
          if ((lo & ~hi) == 0) pairs.emplace_back(mask_set(lo), mask_set(hi));
        }
      }
      std::vector<std::size_t> pick(chosen.size(), 0);
      while (true) {
        std::map<Ordinal, PWords> entries;
        for (std::size_t x = 0; x < chosen.size(); ++x) {
          entries.emplace(chosen[x], PWords{pairs[pick[x]].first, pairs[pick[x]].second});
        }
        out.emplace_back(h, std::move(entries));
        std::size_t x = 0;
        while (x < pick.size() && ++pick[x] == pairs.size()) pick[x++] = 0;
        if (x == pick.size()) break;
      }
    }
  }
  return out;
}

inline PCondition random_p_condition(Rng& rng, const std::vector<Ordinal>& pool, std::size_t height,
                                     std::uint64_t dom_num = 1, std::uint64_t dom_den = 2) {
  std::map<Ordinal, PWords> entries;
  for (const Ordinal& alpha : pool) {
    if (!chance(rng, dom_num, dom_den)) continue;
    FinSet upper = random_finset(rng, height);
    FinSet lower = upper & random_finset(rng, height);
    entries.emplace(alpha, PWords{lower, upper});
  }
  return PCondition(height, std::move(entries));
}

// A random extension of p: new ordinals from the pool, higher height, and
// random extra bits that keep clause 2 by construction.
inline PCondition random_extension(Rng& rng, const PCondition& p, const std::vector<Ordinal>& pool,
                                   std::size_t extra_height) {
  OrdinalSet fresh;
  for (const Ordinal& alpha : pool) {
    if (!p.contains(alpha) && chance(rng, 1, 3)) fresh.insert(alpha);
  }
  OrdinalSet dom = p.domain();
  dom.insert(fresh.begin(), fresh.end());
  const auto indices = paired_indices(dom);
  std::set<ForcedBit> forced;
  const std::size_t target = p.height() + extra_height;
  for (std::size_t pos = p.height(); pos < target && !indices.empty(); ++pos) {
    if (chance(rng, 1, 2)) {
      forced.insert({indices[uniform_below(rng, indices.size())], pos});
    }
  }
  return p_extend(p, target, fresh, forced);
}

// Literal clause-b order: c_delta is scanned with Ladder::at.
inline std::size_t ref_count_below(const Ladder& ladder, Ordinal delta, Ordinal j) {
  std::size_t n = 0;
  while (ladder.at(delta, n) < j) ++n;
  return n;
}

inline bool ref_q_leq(const QContext& ctx, const QCondition& p, const QCondition& q) {
  for (const Ordinal& x : p.w) {
    if (!q.w.contains(x)) return false;
  }
  for (const Ordinal& x : p.s) {
    if (!q.s.contains(x)) return false;
  }
  const GapFragment& g = ctx.gap();
  for (const Ordinal& delta : p.s) {
    for (const Ordinal& i : p.w) {
      if (i < delta) continue;
      for (const Ordinal& j : q.w) {
        if (p.w.contains(j) || !(j < delta)) continue;
        if (ref_excess(g.a.at(j), g.b.at(i)) <= ref_count_below(ctx.ladder(), delta, j)) return false;
      }
    }
  }
  return true;
}

inline std::vector<OrdinalSet> subsets(const OrdinalSet& base, std::size_t max_size = SIZE_MAX) {
  const std::vector<Ordinal> v(base.begin(), base.end());
  std::vector<OrdinalSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << v.size()); ++mask) {
    OrdinalSet s;
    for (std::size_t x = 0; x < v.size(); ++x) {
      if ((mask >> x) & 1U) s.insert(v[x]);
    }
    if (s.size() <= max_size) out.push_back(std::move(s));
  }
  return out;
}

// Searches every condition over the context's indices and S for a common
// extension under the literal order.
inline bool ref_q_common_extension(const QContext& ctx, const QCondition& p, const QCondition& q) {
  const auto ws = subsets(ctx.indices());
  const auto ss = subsets(ctx.partition().S);
  for (const auto& w : ws) {
    for (const auto& s : ss) {
      const QCondition r{w, s};
      if (ref_q_leq(ctx, p, r) && ref_q_leq(ctx, q, r)) return true;
    }
  }
  return false;
}

// A random context with I = J drawn from `pool`; S is the set of pool
// limits marked odd, T the even ones.
inline GapFragment random_fragment(Rng& rng, const OrdinalSet& indices, std::size_t universe) {
  GapFragment g;
  g.universe = universe;
  for (const Ordinal& i : indices) {
    g.b[i] = random_finset(rng, universe);
    g.a[i] = random_finset(rng, universe);
  }
  return g;
}

struct SmallQContext {
  std::unique_ptr<QContext> ctx;
  std::vector<QCondition> conditions;  // every (w, s) with |w|, |s| <= 2
};

// Four tower indices drawn from the first three omega-blocks, random sets
// in [0, universe), canonical ladder and S = {omega, omega*2}.
inline SmallQContext random_small_q_context(Rng& rng, std::size_t universe) {
  static const std::vector<Ordinal> pool{{0, 1}, {0, 3}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
  OrdinalSet idx;
  while (idx.size() < 4) idx.insert(pool[uniform_below(rng, pool.size())]);
  SmallQContext out;
  out.ctx = std::make_unique<QContext>(random_fragment(rng, idx, universe), Ladder::canonical(),
                                       SPartition{{{1, 0}, {2, 0}}, {}, {}});
  for (const auto& w : subsets(idx, 2)) {
    for (const auto& s : subsets(out.ctx->partition().S, 2)) out.conditions.push_back({w, s});
  }
  return out;
}

// Brute-force search for x ⊆ [0, M) with a_i∖n0 ⊆ x∖n0 ⊆ b_j.
inline bool ref_interpolation_exists(const GapFragment& g, std::size_t n0) {
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.universe); ++mask) {
    const NatSet x = to_nat_set(mask_set(mask));
    bool ok = true;
    for (const auto& [i, ai] : g.a) {
      for (std::size_t k : to_nat_set(ai)) {
        if (k >= n0 && !x.contains(k)) ok = false;
      }
    }
    for (const auto& [j, bj] : g.b) {
      const NatSet b = to_nat_set(bj);
      for (std::size_t k : x) {
        if (k >= n0 && !b.contains(k)) ok = false;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace gapforge::testing
