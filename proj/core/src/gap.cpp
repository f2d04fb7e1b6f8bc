#include "gapforge/gap.hpp"

#include <algorithm>

#include "gapforge/error.hpp"

namespace gapforge {
namespace {

OrdinalSet keys_of(const std::map<Ordinal, FinSet>& m) {
  OrdinalSet out;
  for (const auto& [k, v] : m) out.insert(k);
  return out;
}

}  // namespace

OrdinalSet GapFragment::I() const { return keys_of(a); }
OrdinalSet GapFragment::J() const { return keys_of(b); }

const FinSet& GapFragment::a_at(Ordinal i) const {
  const auto it = a.find(i);
  if (it == a.end()) throw Error(ErrorCode::kUnknownIndex, "no a-set at " + to_key(i));
  return it->second;
}

const FinSet& GapFragment::b_at(Ordinal j) const {
  const auto it = b.find(j);
  if (it == b.end()) throw Error(ErrorCode::kUnknownIndex, "no b-set at " + to_key(j));
  return it->second;
}

void GapFragment::validate() const {
  auto check = [this](const std::map<Ordinal, FinSet>& tower, const char* name) {
    for (const auto& [i, set] : tower) {
      if (set.bound() > universe) {
        throw Error(ErrorCode::kInvalidArgument, std::string(name) + "_" + to_key(i) +
                                                     " leaves the universe [0, " +
                                                     std::to_string(universe) + ")");
      }
    }
  };
  check(a, "a");
  check(b, "b");
}

GapFragment GapFragment::restricted(const OrdinalSet& rows, const OrdinalSet& cols) const {
  GapFragment out;
  out.universe = universe;
  for (const auto& [i, set] : a) {
    if (rows.contains(i)) out.a.emplace(i, set);
  }
  for (const auto& [j, set] : b) {
    if (cols.contains(j)) out.b.emplace(j, set);
  }
  return out;
}

std::vector<std::vector<std::size_t>> excess_matrix(const GapFragment& g) {
  std::vector<std::vector<std::size_t>> out;
  out.reserve(g.a.size());
  for (const auto& [i, ai] : g.a) {
    auto& row = out.emplace_back();
    row.reserve(g.b.size());
    for (const auto& [j, bj] : g.b) row.push_back(excess(ai, bj));
  }
  return out;
}

std::string excess_matrix_csv(const GapFragment& g) {
  std::string out = "i\\j";
  for (const auto& [j, bj] : g.b) out += "," + to_key(j);
  out += "\n";
  const auto matrix = excess_matrix(g);
  std::size_t r = 0;
  for (const auto& [i, ai] : g.a) {
    out += to_key(i);
    for (std::size_t x : matrix[r]) out += "," + std::to_string(x);
    out += "\n";
    ++r;
  }
  return out;
}

bool special_gap_check(const GapFragment& g, std::size_t n0) {
  if (g.I() != g.J()) throw Error(ErrorCode::kIndexMismatch, "special gaps need I = J");
  std::vector<const FinSet*> as, bs;
  for (const auto& [alpha, set] : g.a) {
    as.push_back(&set);
    bs.push_back(&g.b.at(alpha));
  }
  for (std::size_t x = 0; x < as.size(); ++x) {
    if (!almost_subset(*as[x], *bs[x], n0)) return false;
  }
  for (std::size_t x = 0; x < as.size(); ++x) {
    for (std::size_t y = x + 1; y < as.size(); ++y) {
      if (almost_subset(*as[x] | *as[y], *bs[x] & *bs[y], n0)) return false;
    }
  }
  return true;
}

std::optional<FinSet> uniform_interpolation(const GapFragment& g, std::size_t n0) {
  for (const auto& [i, ai] : g.a) {
    for (const auto& [j, bj] : g.b) {
      if (excess(ai, bj) > n0) return std::nullopt;
    }
  }
  FinSet x;
  for (const auto& [i, ai] : g.a) x |= ai.at_or_above(n0);
  return x;
}

std::map<std::pair<Ordinal, Ordinal>, CHResult> c_hausdorff_check(const GapFragment& g,
                                                                 const Ladder& ladder,
                                                                 const SPartition& part) {
  std::map<std::pair<Ordinal, Ordinal>, CHResult> out;
  const OrdinalSet I = g.I();
  for (const Ordinal& delta : part.S) {
    if (!part.D.contains(delta)) continue;
    std::vector<Ordinal> below;  // I ∩ delta, ascending
    for (const Ordinal& i : I) {
      if (i < delta) below.push_back(i);
    }

    std::size_t n_star = 0;
    if (!below.empty()) {
      while (!(below.back() < ladder.at(delta, n_star))) ++n_star;
    }

    for (const auto& [j, bj] : g.b) {
      if (j < delta) continue;
      if (n_star == 0) {
        out.emplace(std::pair{delta, j}, CHWitness{delta, j, 0, 0});
        continue;
      }
      // Walk down from the top non-vacuous level; k is one past the highest
      // level that fails.
      std::optional<CHFailure> fail;
      std::size_t k = 0;
      for (std::size_t n = n_star; n-- > 0;) {
        const Ordinal lo = ladder.at(delta, n);
        for (auto it = std::lower_bound(below.begin(), below.end(), lo); it != below.end(); ++it) {
          if (excess(g.a.at(*it), bj) <= n) {
            fail = CHFailure{delta, j, n_star, n, *it};
            break;
          }
        }
        if (fail) {
          k = n + 1;
          break;
        }
      }
      if (k < n_star) {
        out.emplace(std::pair{delta, j}, CHWitness{delta, j, k, n_star});
      } else {
        out.emplace(std::pair{delta, j}, *fail);
      }
    }
  }
  return out;
}

bool all_witnessed(const std::map<std::pair<Ordinal, Ordinal>, CHResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const auto& kv) {
    return std::holds_alternative<CHWitness>(kv.second);
  });
}

std::vector<std::size_t> s_hausdorff_profile(const GapFragment& g, Ordinal delta,
                                             const std::vector<Ordinal>& seq, Ordinal j) {
  if (j < delta) {
    throw Error(ErrorCode::kInvalidArgument, to_key(j) + " is below " + to_key(delta));
  }
  const FinSet& bj = g.b_at(j);
  std::vector<std::size_t> out;
  out.reserve(seq.size());
  for (std::size_t n = 0; n < seq.size(); ++n) {
    if (!(seq[n] < delta) || (n > 0 && !(seq[n - 1] < seq[n]))) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sequence must be strictly increasing and below " + to_key(delta));
    }
    out.push_back(excess(g.a_at(seq[n]), bj));
  }
  return out;
}

std::optional<FinSet> full_inclusion_union(const GapFragment& g) {
  FinSet x;
  for (const auto& [i, ai] : g.a) x |= ai;
  for (const auto& [j, bj] : g.b) {
    if (!x.subset_of(bj)) return std::nullopt;
  }
  return x;
}

}  // namespace gapforge
