#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "gapforge/finset.hpp"
#include "gapforge/ordinal.hpp"

namespace gapforge {

// The pair of words a condition assigns to <alpha,0> and <alpha,1>, kept as
// the sets [f] of positions holding a 1.
struct PWords {
  FinSet lower;  // [p(<alpha,0>)]
  FinSet upper;  // [p(<alpha,1>)]

  const FinSet& side(std::uint8_t s) const { return s == 0 ? lower : upper; }
  FinSet& side(std::uint8_t s) { return s == 0 ? lower : upper; }

  friend bool operator==(const PWords&, const PWords&) = default;
  friend auto operator<=>(const PWords&, const PWords&) = default;
};

// A condition of the gap-introducing poset: a finite function on I whose
// words all have one common length (the height), defined on both sides of
// each ordinal, with [p(<alpha,0>)] ⊆ [p(<alpha,1>)].
class PCondition {
 public:
  PCondition() = default;
  // Throws InvalidCondition if some word reaches past `height` or a lower
  // word is not contained in its upper word.
  PCondition(std::size_t height, std::map<Ordinal, PWords> entries);

  std::size_t height() const { return height_; }
  const std::map<Ordinal, PWords>& entries() const { return entries_; }
  OrdinalSet domain() const;
  bool contains(Ordinal alpha) const { return entries_.contains(alpha); }
  const FinSet& word(const Index& i) const;

  friend bool operator==(const PCondition&, const PCondition&) = default;

 private:
  std::size_t height_ = 0;
  std::map<Ordinal, PWords> entries_;
};

// q extends p.
bool p_leq(const PCondition& p, const PCondition& q);

// Domain cut down to `keep`; height unchanged.
PCondition p_restrict(const PCondition& p, const OrdinalSet& keep);

// The map union of two equal-height conditions that agree on their common
// domain. HeightMismatch or AgreementFailure otherwise.
PCondition p_union_agreeing(const PCondition& p, const PCondition& q);

// The canonical join p ∨ q. Requires q ≥ p↾dom(q) and height(q) ≥ height(p)
// (HypothesisFailure otherwise). On dom(q) the result equals q; an ordinal
// only in dom(p) inherits every bit that q added at or above height(p) to
// some k <_I i in dom(p) ∩ dom(q).
PCondition p_join(const PCondition& p, const PCondition& q);

// p1 ∨ p2 when p1↾C ≥ p2↾C for C = dom(p1) ∩ dom(p2) and
// height(p1) ≥ height(p2); computed as p_join(p2, p1).
PCondition p_join_corollary(const PCondition& p1, const PCondition& p2);

inline constexpr std::size_t kDefaultOracleCap = 24;

// Exact compatibility test. Searches every condition on dom(p) ∪ dom(q) of
// height max(height(p), height(q)) that agrees with both arguments below
// their heights, in lexicographic order of the free bits, and returns the
// first common extension. SearchTooLarge if more than `max_free_bits` bits
// are free.
std::optional<PCondition> p_compatible_oracle(const PCondition& p, const PCondition& q,
                                              std::size_t max_free_bits = kDefaultOracleCap);

// A bit at a position of one index's word.
struct ForcedBit {
  Index index;
  std::size_t position = 0;

  friend auto operator<=>(const ForcedBit&, const ForcedBit&) = default;
};

// Extends p to `target_height`, adding `new_ordinals` with all-zero words.
// New positions default to 0; each forced bit is set on its index and on
// every index above it in <_I, which keeps the result above p.
// InvalidBit for positions outside [height(p), target_height) or indices
// outside the new domain.
PCondition p_extend(const PCondition& p, std::size_t target_height,
                    const OrdinalSet& new_ordinals, const std::set<ForcedBit>& forced_bits);

struct DeltaSystem {
  std::vector<std::size_t> members;  // positions in the input family
  std::vector<PCondition> subfamily;
  OrdinalSet core;
};

// A subfamily of one height (the most common one) whose domains form a
// sunflower with kernel `core` and which agree on the core, so any finite
// subset has an upper bound by iterated p_union_agreeing.
DeltaSystem delta_system_refine(const std::vector<PCondition>& family);

}  // namespace gapforge
