#pragma once

#include <optional>
#include <vector>

#include "gapforge/gap.hpp"
#include "gapforge/ordinal.hpp"

namespace gapforge {

// The data a specialization poset is built over: a pre-gap whose a- and
// b-towers share one index set, a ladder system, and the designated S.
class QContext {
 public:
  // Throws IndexMismatch unless g.I() == g.J(), UnknownDelta if some
  // member of part.S has no ladder, and InvalidArgument for a bad partition.
  QContext(GapFragment g, Ladder ladder, SPartition part);

  const GapFragment& gap() const { return g_; }
  const Ladder& ladder() const { return ladder_; }
  const SPartition& partition() const { return part_; }
  const OrdinalSet& indices() const { return indices_; }

 private:
  GapFragment g_;
  Ladder ladder_;
  SPartition part_;
  OrdinalSet indices_;
};

struct QCondition {
  OrdinalSet w;
  OrdinalSet s;  // ⊆ S

  friend bool operator==(const QCondition&, const QCondition&) = default;
  friend auto operator<=>(const QCondition&, const QCondition&) = default;
};

// Throws InvalidCondition if s leaves S or w leaves the context's indices.
void validate_condition(const QContext& ctx, const QCondition& p);

// q extends p: componentwise inclusion, and for δ ∈ s^p, i ∈ w^p with
// δ ≤ i, each new j ∈ w^q below δ has X(a_j, b_i) > |c_δ ∩ j|.
bool q_leq(const QContext& ctx, const QCondition& p, const QCondition& q);

// (w ∩ α, s ∩ α)
QCondition q_restrict(const QCondition& p, Ordinal alpha);

// The union (w^p ∪ w^q, s^p ∪ s^q) if it extends both, else nothing. This
// decides compatibility exactly: any common extension contains the union,
// and clause b only gets harder for larger conditions.
std::optional<QCondition> q_compatible(const QContext& ctx, const QCondition& p,
                                       const QCondition& q);

// The hypotheses of the compatibility lemma for p1, p2 split at γ < α:
// w1 ⊆ α; p1↾γ compatible with p2; w2 ∩ α ⊆ γ; s2 ∩ (α+1) ⊆ γ;
// p2↾α compatible with p1; and some n in A∖B with n > |c_δ ∩ α| for every
// δ ∈ s2∖α, where A = ∩{a_i : i ∈ w1∖γ} (the universe when empty) and
// B = ∪{b_j : j ∈ w2∖γ}.
bool lemma32_check(const QContext& ctx, const QCondition& p1, const QCondition& p2,
                   Ordinal gamma, Ordinal alpha);

// ∩{a_i : i ∈ w, i ≥ γ}; [0, universe) when there is no such i.
FinSet meet_above(const QContext& ctx, const OrdinalSet& w, Ordinal gamma);
// ∪{b_j : j ∈ w, j ≥ γ}.
FinSet join_above(const QContext& ctx, const OrdinalSet& w, Ordinal gamma);

// Union of the w components. NotAChain unless consecutive entries are
// q_leq-increasing.
OrdinalSet extract_w(const QContext& ctx, const std::vector<QCondition>& chain);

}  // namespace gapforge
