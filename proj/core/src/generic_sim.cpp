#include "gapforge/generic_sim.hpp"

#include <algorithm>
#include <iterator>

namespace gapforge {
namespace {

// Per-level chance that a <alpha,0> column receives the fresh bit.
constexpr std::uint64_t kBitNum = 1;
constexpr std::uint64_t kBitDen = 4;

DenseRequirement<PCondition> in_domain(Ordinal alpha) {
  return {"dom contains " + to_key(alpha), [alpha](const PCondition& p, Rng&) {
            if (p.contains(alpha)) return p;
            return p_extend(p, p.height(), {alpha}, {});
          }};
}

DenseRequirement<PCondition> height_at_least(std::size_t target, std::uint64_t stream_seed) {
  return {"height >= " + std::to_string(target), [target, stream_seed](const PCondition& p, Rng& rng) {
            if (p.height() >= target) return p;
            Rng local(derive_seed(stream_seed, rng()));
            std::set<ForcedBit> forced;
            for (std::size_t level = p.height(); level < target; ++level) {
              for (const auto& [alpha, words] : p.entries()) {
                if (chance(local, kBitNum, kBitDen)) forced.insert({Index{alpha, 0}, level});
              }
            }
            return p_extend(p, target, {}, forced);
          }};
}

}  // namespace

std::vector<DenseRequirement<PCondition>> p_standard_schedule(const OrdinalSet& ordinals,
                                                              std::size_t target_height,
                                                              std::uint64_t seed) {
  std::vector<DenseRequirement<PCondition>> out;
  const std::size_t n = ordinals.size();
  std::size_t k = 0;
  for (const Ordinal& alpha : ordinals) {
    out.push_back(in_domain(alpha));
    const std::size_t milestone = (target_height * (k + 1) + n) / (n + 1);
    out.push_back(height_at_least(milestone, derive_seed(seed, k)));
    ++k;
  }
  out.push_back(height_at_least(target_height, derive_seed(seed, n)));
  return out;
}

GapFragment extract_gap_fragment(const PCondition& final_condition) {
  GapFragment g;
  g.universe = final_condition.height();
  for (const auto& [alpha, words] : final_condition.entries()) {
    g.a.emplace(alpha, words.lower);
    g.b.emplace(alpha, words.upper);
  }
  return g;
}

std::map<Ordinal, std::size_t> entry_heights(const SimRun<PCondition>& run) {
  std::map<Ordinal, std::size_t> out;
  for (std::size_t t = 0; t < run.trace.size(); ++t) {
    const std::size_t h = t == 0 ? run.trace[0].height() : run.trace[t - 1].height();
    for (const auto& [alpha, words] : run.trace[t].entries()) out.try_emplace(alpha, h);
  }
  return out;
}

std::vector<std::string> tower_coherence_violations(const SimRun<PCondition>& run) {
  std::vector<std::string> out;
  const auto entry = entry_heights(run);
  const auto& entries = run.result.entries();
  for (auto x = entries.begin(); x != entries.end(); ++x) {
    for (auto y = std::next(x); y != entries.end(); ++y) {
      const std::size_t bound = std::max(entry.at(x->first), entry.at(y->first));
      const std::size_t lower = excess(x->second.lower, y->second.lower);
      const std::size_t upper = excess(y->second.upper, x->second.upper);
      if (lower > bound || upper > bound) {
        out.push_back("tower coherence: (" + to_key(x->first) + ", " + to_key(y->first) +
                      ") excesses " + std::to_string(lower) + "/" + std::to_string(upper) +
                      " exceed entry height " + std::to_string(bound));
      }
    }
  }
  return out;
}

std::vector<DenseRequirement<QCondition>> q_standard_schedule(const QContext& ctx,
                                                              std::size_t target_w_size,
                                                              const OrdinalSet& s_ordinals,
                                                              std::uint64_t seed) {
  std::vector<DenseRequirement<QCondition>> out;
  auto sigma = s_ordinals.begin();
  const QContext* context = &ctx;
  for (std::size_t t = 1; t <= target_w_size; ++t) {
    if (sigma != s_ordinals.end()) {
      const Ordinal s = *sigma++;
      out.push_back({"s contains " + to_key(s), [s](const QCondition& p, Rng&) {
                       QCondition q = p;
                       q.s.insert(s);
                       return q;
                     }});
    }
    const std::uint64_t stream_seed = derive_seed(seed, t);
    out.push_back({"|w| >= " + std::to_string(t),
                   [context, t, target_w_size, stream_seed](const QCondition& p, Rng& rng) {
                     if (p.w.size() >= t) return p;
                     const OrdinalSet& all = context->indices();
                     auto first = p.w.empty() ? all.begin() : all.upper_bound(*p.w.rbegin());
                     const auto available = static_cast<std::size_t>(std::distance(first, all.end()));
                     const std::size_t still_needed = target_w_size - p.w.size();
                     if (available < still_needed) {
                       throw Error(ErrorCode::kRequirementFailure,
                                   "no index above max(w) left to add");
                     }
                     // Skipping is only allowed while the rest of the target stays reachable.
                     const std::size_t window = std::min<std::size_t>(2, available - still_needed + 1);
                     Rng local(derive_seed(stream_seed, rng()));
                     std::advance(first, static_cast<std::ptrdiff_t>(uniform_below(local, window)));
                     QCondition q = p;
                     q.w.insert(*first);
                     return q;
                   }});
  }
  return out;
}

PipelineReport pipeline(const PipelineParams& params, const Ladder& ladder,
                        const SPartition& part, std::uint64_t seed) {
  PipelineReport report;
  report.seed = seed;

  const auto ordinals = desk_ordinals(params.indices, params.block);
  const OrdinalSet dom(ordinals.begin(), ordinals.end());
  const auto p_run = build_filter(PPoset{}, PCondition{},
                                  p_standard_schedule(dom, params.height, derive_seed(seed, 1)),
                                  derive_seed(seed, 2));
  report.fragment = extract_gap_fragment(p_run.result);

  for (const auto& [alpha, a] : report.fragment.a) {
    if (!a.subset_of(report.fragment.b.at(alpha))) {
      report.violations.push_back("a subset of b: fails at " + to_key(alpha));
    }
  }
  for (auto& v : tower_coherence_violations(p_run)) report.violations.push_back(std::move(v));

  const QContext ctx(report.fragment, ladder, part);
  OrdinalSet s_ordinals;
  if (!dom.empty()) {
    const Ordinal top = *dom.rbegin();
    for (const Ordinal& sigma : part.S) {
      if (!(top < sigma)) s_ordinals.insert(sigma);
    }
  }
  const std::size_t target = std::min(params.w_target, dom.size());
  const auto q_run = build_filter(QPoset{&ctx}, QCondition{},
                                  q_standard_schedule(ctx, target, s_ordinals, derive_seed(seed, 3)),
                                  derive_seed(seed, 4));
  std::vector<QCondition> chain = q_run.trace;
  report.W = extract_w(ctx, chain);

  const GapFragment restricted = report.fragment.restricted(report.W, report.W);
  report.excess_csv = excess_matrix_csv(restricted);
  report.c_hausdorff = c_hausdorff_check(restricted, ladder, part);
  for (const auto& [key, result] : report.c_hausdorff) {
    if (const auto* f = std::get_if<CHFailure>(&result)) {
      report.violations.push_back("c-hausdorff: no witness for delta " + to_key(f->delta) + ", j " +
                                  to_key(f->j));
    }
  }
  return report;
}

std::vector<PropFinding> prop_phenomenon_scan(const GapFragment& g, const OrdinalSet& Jset,
                                              const OrdinalSet& Kset,
                                              const OrdinalSet& delta_candidates) {
  std::vector<PropFinding> out;
  for (const Ordinal& delta : delta_candidates) {
    std::vector<Ordinal> below(Jset.begin(), Jset.lower_bound(delta));
    for (auto k = Kset.lower_bound(delta); k != Kset.end(); ++k) {
      PropFinding f{delta, *k};
      if (!below.empty()) {
        const FinSet& bk = g.b_at(*k);
        f.found = true;
        f.m = excess(g.a_at(below.back()), bk);
        for (auto j = below.rbegin(); j != below.rend() && excess(g.a_at(*j), bk) <= f.m; ++j) {
          ++f.length;
        }
      }
      out.push_back(f);
    }
  }
  return out;
}

}  // namespace gapforge
