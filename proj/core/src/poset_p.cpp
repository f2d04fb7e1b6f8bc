#include "gapforge/poset_p.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "gapforge/error.hpp"

namespace gapforge {

PCondition::PCondition(std::size_t height, std::map<Ordinal, PWords> entries)
    : height_(height), entries_(std::move(entries)) {
  for (const auto& [alpha, words] : entries_) {
    if (words.lower.bound() > height_ || words.upper.bound() > height_) {
      throw Error(ErrorCode::kInvalidCondition,
                  "word at " + to_key(alpha) + " is longer than height " + std::to_string(height_));
    }
    if (!words.lower.subset_of(words.upper)) {
      throw Error(ErrorCode::kInvalidCondition,
                  "[p(<" + to_key(alpha) + ",0>)] is not contained in [p(<" + to_key(alpha) + ",1>)]");
    }
  }
}

OrdinalSet PCondition::domain() const {
  OrdinalSet out;
  for (const auto& [alpha, words] : entries_) out.insert(alpha);
  return out;
}

const FinSet& PCondition::word(const Index& i) const {
  const auto it = entries_.find(i.ord);
  if (it == entries_.end()) throw Error(ErrorCode::kUnknownIndex, to_key(i.ord) + " not in domain");
  return it->second.side(i.side);
}

bool p_leq(const PCondition& p, const PCondition& q) {
  const std::size_t m = p.height();
  if (m > q.height()) return false;
  for (const auto& [alpha, words] : p.entries()) {
    if (!q.contains(alpha)) return false;
  }
  // Walk the indices of dom(p) from the top of <_I down, keeping the
  // intersection of q's words strictly above the current index.
  const std::vector<Index> indices = paired_indices(p.domain());
  std::optional<FinSet> above;
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
    const FinSet& qw = q.word(*it);
    const FinSet& pw = p.word(*it);
    if (qw.below(m) != pw) return false;
    if (above && !qw.at_or_above(m).subset_of(*above)) return false;
    above = above ? (*above & qw) : qw;
  }
  return true;
}

PCondition p_restrict(const PCondition& p, const OrdinalSet& keep) {
  std::map<Ordinal, PWords> entries;
  for (const auto& [alpha, words] : p.entries()) {
    if (keep.contains(alpha)) entries.emplace(alpha, words);
  }
  return PCondition(p.height(), std::move(entries));
}

PCondition p_union_agreeing(const PCondition& p, const PCondition& q) {
  if (p.height() != q.height()) {
    throw Error(ErrorCode::kHeightMismatch, "heights " + std::to_string(p.height()) + " and " +
                                                std::to_string(q.height()));
  }
  std::map<Ordinal, PWords> entries = p.entries();
  for (const auto& [alpha, words] : q.entries()) {
    auto [it, inserted] = entries.emplace(alpha, words);
    if (!inserted && !(it->second == words)) {
      throw Error(ErrorCode::kAgreementFailure, "conditions differ at " + to_key(alpha));
    }
  }
  return PCondition(p.height(), std::move(entries));
}

namespace {

void check_join_contract(const PCondition& p, const PCondition& q, const PCondition& r) {
#ifdef GAPFORGE_CHECK_CONTRACTS
  if (!p_leq(p, r) || !p_leq(q, r) || !(p_restrict(r, q.domain()) == q)) {
    throw std::logic_error("p_join produced a condition that is not an upper bound");
  }
#else
  (void)p;
  (void)q;
  (void)r;
#endif
}

}  // namespace

PCondition p_join(const PCondition& p, const PCondition& q) {
  const OrdinalSet A = q.domain();
  if (q.height() < p.height() || !p_leq(p_restrict(p, A), q)) {
    throw Error(ErrorCode::kHypothesisFailure, "p_join needs q >= p|dom(q) and height(q) >= height(p)");
  }
  const std::size_t m = p.height();

  std::map<Ordinal, PWords> entries = q.entries();
  // Bits q added above m on the shared part, listed along <_I.
  std::vector<std::pair<Index, FinSet>> added;
  for (const Index& k : paired_indices(p.domain())) {
    if (A.contains(k.ord)) added.emplace_back(k, q.word(k).at_or_above(m));
  }
  for (const auto& [alpha, words] : p.entries()) {
    if (A.contains(alpha)) continue;
    PWords r = words;
    for (std::uint8_t side = 0; side < 2; ++side) {
      const Index i{alpha, side};
      for (const auto& [k, bits] : added) {
        if (k < i) r.side(side) |= bits;
      }
    }
    entries.emplace(alpha, std::move(r));
  }
  PCondition r(q.height(), std::move(entries));
  check_join_contract(p, q, r);
  return r;
}

PCondition p_join_corollary(const PCondition& p1, const PCondition& p2) {
  OrdinalSet common;
  for (const auto& [alpha, words] : p1.entries()) {
    if (p2.contains(alpha)) common.insert(alpha);
  }
  if (p1.height() < p2.height() || !p_leq(p_restrict(p2, common), p_restrict(p1, common))) {
    throw Error(ErrorCode::kHypothesisFailure,
                "corollary needs p1|C >= p2|C and height(p1) >= height(p2)");
  }
  return p_join(p2, p1);
}

std::optional<PCondition> p_compatible_oracle(const PCondition& p, const PCondition& q,
                                              std::size_t max_free_bits) {
  const std::size_t height = std::max(p.height(), q.height());
  OrdinalSet dom = p.domain();
  for (const auto& [alpha, words] : q.entries()) dom.insert(alpha);

  // Seed each word with the bits fixed by the arguments and collect the
  // remaining free positions.
  std::map<Ordinal, PWords> base;
  std::vector<std::pair<Index, std::size_t>> free;
  for (const Ordinal& alpha : dom) {
    PWords& w = base[alpha];
    for (std::uint8_t side = 0; side < 2; ++side) {
      const Index i{alpha, side};
      const std::size_t hp = p.contains(alpha) ? p.height() : 0;
      const std::size_t hq = q.contains(alpha) ? q.height() : 0;
      for (std::size_t pos = 0; pos < height; ++pos) {
        std::optional<bool> fixed;
        if (pos < hp) fixed = p.word(i).contains(pos);
        if (pos < hq) {
          const bool v = q.word(i).contains(pos);
          if (fixed && *fixed != v) return std::nullopt;  // no common prefix extension
          fixed = v;
        }
        if (!fixed) {
          free.emplace_back(i, pos);
        } else if (*fixed) {
          w.side(side).insert(pos);
        }
      }
    }
  }
  if (free.size() > max_free_bits) {
    throw Error(ErrorCode::kSearchTooLarge, std::to_string(free.size()) + " free bits exceed the cap of " +
                                                std::to_string(max_free_bits));
  }

  // free[0] is the most significant bit, so counting up visits assignments
  // in lexicographic order.
  const std::uint64_t total = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::map<Ordinal, PWords> entries = base;
    for (std::size_t b = 0; b < free.size(); ++b) {
      if ((mask >> (free.size() - 1 - b)) & 1U) {
        const auto& [i, pos] = free[b];
        entries[i.ord].side(i.side).insert(pos);
      }
    }
    bool valid = true;
    for (const auto& [alpha, words] : entries) {
      if (!words.lower.subset_of(words.upper)) {
        valid = false;
        break;
      }
    }
    if (!valid) continue;
    PCondition r(height, std::move(entries));
    if (p_leq(p, r) && p_leq(q, r)) return r;
  }
  return std::nullopt;
}

PCondition p_extend(const PCondition& p, std::size_t target_height, const OrdinalSet& new_ordinals,
                    const std::set<ForcedBit>& forced_bits) {
  if (target_height < p.height()) {
    throw Error(ErrorCode::kInvalidArgument, "target height below current height");
  }
  std::map<Ordinal, PWords> entries = p.entries();
  for (const Ordinal& alpha : new_ordinals) entries.try_emplace(alpha);

  OrdinalSet dom;
  for (const auto& [alpha, words] : entries) dom.insert(alpha);
  const std::vector<Index> indices = paired_indices(dom);

  for (const ForcedBit& f : forced_bits) {
    if (f.position < p.height() || f.position >= target_height) {
      throw Error(ErrorCode::kInvalidBit, "position " + std::to_string(f.position) + " outside [" +
                                              std::to_string(p.height()) + ", " +
                                              std::to_string(target_height) + ")");
    }
    if (!dom.contains(f.index.ord)) {
      throw Error(ErrorCode::kInvalidBit, to_key(f.index.ord) + " is not in the extended domain");
    }
    for (const Index& j : indices) {
      if (!(j < f.index)) entries[j.ord].side(j.side).insert(f.position);
    }
  }
  return PCondition(target_height, std::move(entries));
}

DeltaSystem delta_system_refine(const std::vector<PCondition>& family) {
  DeltaSystem best;
  if (family.empty()) return best;

  // Plurality height; ties go to the lower height.
  std::map<std::size_t, std::vector<std::size_t>> by_height;
  for (std::size_t x = 0; x < family.size(); ++x) by_height[family[x].height()].push_back(x);
  const std::vector<std::size_t>* group = nullptr;
  for (const auto& [h, members] : by_height) {
    if (group == nullptr || members.size() > group->size()) group = &members;
  }

  std::vector<OrdinalSet> domains;
  domains.reserve(group->size());
  for (std::size_t x : *group) domains.push_back(family[x].domain());

  // Candidate kernels are the pairwise intersections (including ∅).
  std::set<OrdinalSet> kernels{OrdinalSet{}};
  for (std::size_t x = 0; x < domains.size(); ++x) {
    for (std::size_t y = x + 1; y < domains.size(); ++y) {
      OrdinalSet meet;
      std::set_intersection(domains[x].begin(), domains[x].end(), domains[y].begin(),
                            domains[y].end(), std::inserter(meet, meet.end()));
      kernels.insert(std::move(meet));
    }
  }

  for (const OrdinalSet& kernel : kernels) {
    // Members containing the kernel, bucketed by their restriction to it.
    std::map<std::vector<std::pair<Ordinal, PWords>>, std::vector<std::size_t>> buckets;
    std::vector<std::vector<std::pair<Ordinal, PWords>>> order;
    for (std::size_t x = 0; x < domains.size(); ++x) {
      if (!std::includes(domains[x].begin(), domains[x].end(), kernel.begin(), kernel.end())) continue;
      const auto& entries = family[(*group)[x]].entries();
      std::vector<std::pair<Ordinal, PWords>> key;
      for (const Ordinal& alpha : kernel) key.emplace_back(alpha, entries.at(alpha));
      auto [it, inserted] = buckets.try_emplace(key);
      if (inserted) order.push_back(key);
      it->second.push_back(x);
    }
    for (const auto& key : order) {
      // Greedy: keep members whose petals avoid every earlier petal.
      OrdinalSet used;
      std::vector<std::size_t> chosen;
      for (std::size_t x : buckets.at(key)) {
        bool disjoint = true;
        for (const Ordinal& alpha : domains[x]) {
          if (!kernel.contains(alpha) && used.contains(alpha)) {
            disjoint = false;
            break;
          }
        }
        if (!disjoint) continue;
        for (const Ordinal& alpha : domains[x]) {
          if (!kernel.contains(alpha)) used.insert(alpha);
        }
        chosen.push_back(x);
      }
      if (chosen.size() > best.members.size()) {
        best.members.clear();
        for (std::size_t x : chosen) best.members.push_back((*group)[x]);
        best.core = kernel;
      }
    }
  }
  for (std::size_t x : best.members) best.subfamily.push_back(family[x]);
  return best;
}

}  // namespace gapforge
