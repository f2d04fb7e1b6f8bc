#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gapforge/error.hpp"
#include "gapforge/gap.hpp"
#include "gapforge/poset_p.hpp"
#include "gapforge/poset_q.hpp"
#include "gapforge/rng.hpp"

namespace gapforge {

// A dense set given constructively: meet(p) is an extension of p lying in
// the set, and meet(p) == p when p already lies in it.
template <typename Condition>
struct DenseRequirement {
  std::string name;
  std::function<Condition(const Condition&, Rng&)> meet;
};

template <typename Condition>
struct SimRun {
  std::uint64_t seed = 0;
  std::vector<std::string> schedule;
  std::vector<Condition> trace;  // start, then one entry per requirement
  Condition result;
};

struct PPoset {
  bool leq(const PCondition& p, const PCondition& q) const { return p_leq(p, q); }
};

struct QPoset {
  const QContext* ctx;
  bool leq(const QCondition& p, const QCondition& q) const { return q_leq(*ctx, p, q); }
};

// Meets each requirement in turn, starting from `start`. Errors raised by a
// meet rule, and meet results that fail to extend, become RequirementFailure.
template <typename Poset, typename Condition>
SimRun<Condition> build_filter(const Poset& poset, Condition start,
                               const std::vector<DenseRequirement<Condition>>& reqs,
                               std::uint64_t seed) {
  SimRun<Condition> run;
  run.seed = seed;
  run.trace.push_back(start);
  Rng rng(seed);
  for (const auto& req : reqs) {
    run.schedule.push_back(req.name);
    const Condition& current = run.trace.back();
    Condition next;
    try {
      next = req.meet(current, rng);
    } catch (const Error& e) {
      throw Error(ErrorCode::kRequirementFailure, req.name + ": " + e.what());
    }
    if (!poset.leq(current, next)) {
      throw Error(ErrorCode::kRequirementFailure, req.name + ": result does not extend its input");
    }
    run.trace.push_back(std::move(next));
  }
  run.result = run.trace.back();
  return run;
}

// "alpha in dom" for each ordinal in ascending order, each followed by a
// height milestone ceil(H (k+1) / (N+1)), then "height >= H". New levels
// give every <alpha,0> column a forced bit with probability 1/4.
std::vector<DenseRequirement<PCondition>> p_standard_schedule(const OrdinalSet& ordinals,
                                                              std::size_t target_height,
                                                              std::uint64_t seed);

// I = J = dom(final), universe = height(final), a_alpha = [final(<alpha,0>)]
// and b_alpha = [final(<alpha,1>)].
GapFragment extract_gap_fragment(const PCondition& final_condition);

// Height of the condition just before each ordinal first appears in the
// trace (the start's own height for ordinals already in the start).
std::map<Ordinal, std::size_t> entry_heights(const SimRun<PCondition>& run);

// Checks excess(a_alpha, a_beta) and excess(b_beta, b_alpha) against the
// later entry height of alpha < beta. Returns one message per violation.
std::vector<std::string> tower_coherence_violations(const SimRun<PCondition>& run);

// Alternates "sigma in s" (taking s_ordinals in order while they last) with
// "|w| >= t" for t = 1..target. A w step only adds some j > max(w), chosen
// uniformly from the next two candidates while enough candidates remain.
std::vector<DenseRequirement<QCondition>> q_standard_schedule(const QContext& ctx,
                                                              std::size_t target_w_size,
                                                              const OrdinalSet& s_ordinals,
                                                              std::uint64_t seed);

struct PipelineParams {
  std::size_t indices = 20;
  std::size_t height = 64;
  std::uint32_t block = 5;
  std::size_t w_target = 10;  // clamped to the number of indices
};

struct PipelineReport {
  std::uint64_t seed = 0;
  GapFragment fragment;
  OrdinalSet W;
  std::map<std::pair<Ordinal, Ordinal>, CHResult> c_hausdorff;
  std::string excess_csv;  // of the fragment restricted to W
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// P-simulation over desk_ordinals(indices, block), fragment extraction,
// Q-simulation over the resulting context, then the C-Hausdorff check of
// the fragment restricted to W. Violations name the failed invariant:
// a ⊆ b, tower coherence, or a missing witness.
PipelineReport pipeline(const PipelineParams& params, const Ladder& ladder,
                        const SPartition& part, std::uint64_t seed);

struct PropFinding {
  Ordinal delta;
  Ordinal k;
  bool found = false;
  std::size_t m = 0;
  std::size_t length = 0;
};

// For each candidate delta and k in Kset above delta: m is the excess
// X(a_j, b_k) of the largest j in Jset ∩ delta, and `length` counts the
// longest run of Jset ∩ delta ending just below delta whose excesses stay
// within m. Not found when Jset ∩ delta is empty. Exploratory only.
std::vector<PropFinding> prop_phenomenon_scan(const GapFragment& g, const OrdinalSet& Jset,
                                              const OrdinalSet& Kset,
                                              const OrdinalSet& delta_candidates);

}  // namespace gapforge
