#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gapforge/finset.hpp"
#include "gapforge/ordinal.hpp"

namespace gapforge {

// A finite pre-gap diagram: an a-tower indexed by I and a b-tower indexed
// by J, all sets inside [0, universe). Almost-inclusion between finite sets
// is trivial, so no tower law is enforced; excess() measures it instead.
struct GapFragment {
  std::size_t universe = 0;
  std::map<Ordinal, FinSet> a;  // keys form I
  std::map<Ordinal, FinSet> b;  // keys form J

  OrdinalSet I() const;
  OrdinalSet J() const;

  const FinSet& a_at(Ordinal i) const;  // UnknownIndex if i is not in I
  const FinSet& b_at(Ordinal j) const;  // UnknownIndex if j is not in J

  // Throws InvalidArgument if some set has a member >= universe.
  void validate() const;

  // The sub-diagram on I' = I ∩ rows and J' = J ∩ cols.
  GapFragment restricted(const OrdinalSet& rows, const OrdinalSet& cols) const;

  friend bool operator==(const GapFragment&, const GapFragment&) = default;
};

// X(a_i, b_j) for every i in I (rows) and j in J (columns), ascending.
std::vector<std::vector<std::size_t>> excess_matrix(const GapFragment& g);
// Header row ",q.r,..."; one row per i; comma separated, LF endings.
std::string excess_matrix_csv(const GapFragment& g);

// Kunen's clauses with the fixed n0. IndexMismatch unless I = J.
bool special_gap_check(const GapFragment& g, std::size_t n0);

// x with a_i∖n0 ⊆ x∖n0 ⊆ b_j for all i, j; the canonical witness is
// the union of the a_i∖n0.
std::optional<FinSet> uniform_interpolation(const GapFragment& g, std::size_t n0);

struct CHWitness {
  Ordinal delta;
  Ordinal j;
  std::size_t k = 0;
  std::size_t n_star = 0;

  friend bool operator==(const CHWitness&, const CHWitness&) = default;
};

struct CHFailure {
  Ordinal delta;
  Ordinal j;
  std::size_t n_star = 0;
  // Always n_star - 1: the top non-vacuous level, where failing_i in
  // I ∩ [c_delta(n), delta) has excess(a_i, b_j) <= n.
  std::size_t failing_level = 0;
  Ordinal failing_i;

  friend bool operator==(const CHFailure&, const CHFailure&) = default;
};

using CHResult = std::variant<CHWitness, CHFailure>;

// For each delta in S ∩ D and j in J with j >= delta: n* is the least n
// with c_delta(n) > max(I ∩ delta) (0 when I ∩ delta is empty). Levels
// n >= n* are vacuous, so a finite diagram only shows whether the clause
// holds on the non-vacuous levels. The witness k is the least k < n* such
// that every level n in [k, n*) satisfies the clause, or k = 0 when n* = 0.
// When n* > 0 and no such k exists, the pair is a Failure.
std::map<std::pair<Ordinal, Ordinal>, CHResult> c_hausdorff_check(const GapFragment& g,
                                                                 const Ladder& ladder,
                                                                 const SPartition& part);

bool all_witnessed(const std::map<std::pair<Ordinal, Ordinal>, CHResult>& results);

// (X(a_{i_n}, b_j))_n along an increasing sequence below delta. Divergence
// is not decidable at this scale, so callers choose the threshold policy.
std::vector<std::size_t> s_hausdorff_profile(const GapFragment& g, Ordinal delta,
                                             const std::vector<Ordinal>& seq, Ordinal j);

// x = ∪ a_i, returned iff x ⊆ b_j for every j in J.
std::optional<FinSet> full_inclusion_union(const GapFragment& g);

}  // namespace gapforge
