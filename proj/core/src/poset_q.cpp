#include "gapforge/poset_q.hpp"

#include <algorithm>

#include "gapforge/error.hpp"

namespace gapforge {
namespace {

bool includes(const OrdinalSet& big, const OrdinalSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

OrdinalSet set_union(const OrdinalSet& x, const OrdinalSet& y) {
  OrdinalSet out = x;
  out.insert(y.begin(), y.end());
  return out;
}

void require_indices(const QContext& ctx, const OrdinalSet& w) {
  for (const Ordinal& i : w) {
    if (!ctx.indices().contains(i)) {
      throw Error(ErrorCode::kUnknownIndex, to_key(i) + " has no tower sets in the context");
    }
  }
}

}  // namespace

QContext::QContext(GapFragment g, Ladder ladder, SPartition part)
    : g_(std::move(g)), ladder_(std::move(ladder)), part_(std::move(part)) {
  indices_ = g_.I();
  if (indices_ != g_.J()) {
    throw Error(ErrorCode::kIndexMismatch, "the context needs one index set for both towers");
  }
  part_.validate();
  for (const Ordinal& delta : part_.S) {
    if (!ladder_.has(delta)) throw Error(ErrorCode::kUnknownDelta, "no ladder at " + to_key(delta));
  }
}

void validate_condition(const QContext& ctx, const QCondition& p) {
  for (const Ordinal& sigma : p.s) {
    if (!ctx.partition().S.contains(sigma)) {
      throw Error(ErrorCode::kInvalidCondition, to_key(sigma) + " is not in S");
    }
  }
  for (const Ordinal& i : p.w) {
    if (!ctx.indices().contains(i)) {
      throw Error(ErrorCode::kInvalidCondition, to_key(i) + " has no tower sets in the context");
    }
  }
}

bool q_leq(const QContext& ctx, const QCondition& p, const QCondition& q) {
  require_indices(ctx, p.w);
  require_indices(ctx, q.w);
  if (!includes(q.w, p.w) || !includes(q.s, p.s)) return false;

  std::vector<Ordinal> added;
  std::set_difference(q.w.begin(), q.w.end(), p.w.begin(), p.w.end(), std::back_inserter(added));
  if (added.empty()) return true;

  const GapFragment& g = ctx.gap();
  for (const Ordinal& delta : p.s) {
    for (auto i = p.w.lower_bound(delta); i != p.w.end(); ++i) {
      const FinSet& bi = g.b_at(*i);
      for (const Ordinal& j : added) {
        if (!(j < delta)) break;
        if (excess(g.a_at(j), bi) <= ctx.ladder().count_below(delta, j)) return false;
      }
    }
  }
  return true;
}

QCondition q_restrict(const QCondition& p, Ordinal alpha) {
  QCondition out;
  out.w.insert(p.w.begin(), p.w.lower_bound(alpha));
  out.s.insert(p.s.begin(), p.s.lower_bound(alpha));
  return out;
}

std::optional<QCondition> q_compatible(const QContext& ctx, const QCondition& p,
                                       const QCondition& q) {
  QCondition u{set_union(p.w, q.w), set_union(p.s, q.s)};
  if (q_leq(ctx, p, u) && q_leq(ctx, q, u)) return u;
  return std::nullopt;
}

FinSet meet_above(const QContext& ctx, const OrdinalSet& w, Ordinal gamma) {
  std::optional<FinSet> out;
  for (auto i = w.lower_bound(gamma); i != w.end(); ++i) {
    const FinSet& ai = ctx.gap().a_at(*i);
    out = out ? (*out & ai) : ai;
  }
  return out ? *out : FinSet::range(ctx.gap().universe);
}

FinSet join_above(const QContext& ctx, const OrdinalSet& w, Ordinal gamma) {
  FinSet out;
  for (auto j = w.lower_bound(gamma); j != w.end(); ++j) out |= ctx.gap().b_at(*j);
  return out;
}

bool lemma32_check(const QContext& ctx, const QCondition& p1, const QCondition& p2,
                   Ordinal gamma, Ordinal alpha) {
  if (!(gamma < alpha)) throw Error(ErrorCode::kInvalidArgument, "need gamma < alpha");
  require_indices(ctx, p1.w);
  require_indices(ctx, p2.w);

  if (!p1.w.empty() && !(*p1.w.rbegin() < alpha)) return false;
  if (!q_compatible(ctx, q_restrict(p1, gamma), p2)) return false;
  // Nothing of p2 may sit in [γ, α) for w, or in [γ, α] for s.
  const auto w2_mid = p2.w.lower_bound(gamma);
  if (w2_mid != p2.w.end() && *w2_mid < alpha) return false;
  const auto s2_mid = p2.s.lower_bound(gamma);
  if (s2_mid != p2.s.end() && !(alpha < *s2_mid)) return false;
  if (!q_compatible(ctx, q_restrict(p2, alpha), p1)) return false;

  // n must clear every ladder count at α for the δ in s2 above α.
  std::size_t floor = 0;
  bool bounded = false;
  for (auto d = p2.s.upper_bound(alpha); d != p2.s.end(); ++d) {
    floor = std::max(floor, ctx.ladder().count_below(*d, alpha));
    bounded = true;
  }
  const FinSet witnesses = meet_above(ctx, p1.w, gamma) - join_above(ctx, p2.w, gamma);
  if (witnesses.empty()) return false;
  return !bounded || *witnesses.max() > floor;
}

OrdinalSet extract_w(const QContext& ctx, const std::vector<QCondition>& chain) {
  OrdinalSet out;
  for (std::size_t t = 0; t < chain.size(); ++t) {
    if (t > 0 && !q_leq(ctx, chain[t - 1], chain[t])) {
      throw Error(ErrorCode::kNotAChain, "entry " + std::to_string(t) + " does not extend its predecessor");
    }
    out.insert(chain[t].w.begin(), chain[t].w.end());
  }
  return out;
}

}  // namespace gapforge
