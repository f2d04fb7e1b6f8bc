#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gapforge/poset_q.hpp"

namespace gapforge {

// cells[x][y] says whether rows[x] and cols[y] are compatible in Q.
struct CompatMatrix {
  std::vector<Ordinal> row_index;  // T1, increasing
  std::vector<Ordinal> col_index;  // T2, increasing
  std::vector<std::vector<bool>> cells;

  std::size_t rows() const { return row_index.size(); }
  std::size_t cols() const { return col_index.size(); }
};

CompatMatrix build_compat_matrix(const QContext& ctx, const std::vector<Ordinal>& t1,
                                 const std::vector<QCondition>& fam1,
                                 const std::vector<Ordinal>& t2,
                                 const std::vector<QCondition>& fam2);

// 0/1 cells with ordinal headers; comma separated, LF endings.
std::string compat_matrix_csv(const CompatMatrix& m);
CompatMatrix parse_compat_matrix_csv(const std::string& text);

// Two families of Q-conditions indexed along T1 and T2, split at gamma.
struct PccInstance {
  const QContext* ctx = nullptr;
  Ordinal gamma;
  std::vector<Ordinal> t1;
  std::vector<Ordinal> t2;
  std::vector<QCondition> fam1;
  std::vector<QCondition> fam2;
  std::size_t k = 0;  // strict bound on |c_alpha ∩ delta| for alpha in s∖gamma
};

// Throws InvalidArgument if an index list is not increasing, the families
// have the wrong length, some dom(p) ∩ delta leaves gamma, or k fails to
// bound a ladder count.
void validate_instance(const PccInstance& inst);

struct AbProfiles {
  std::map<Ordinal, FinSet> A;  // over T1: ∩{a_i : i ∈ w∖gamma}
  std::map<Ordinal, FinSet> B;  // over T2: ∪{b_i : i ∈ w∖gamma}
};

AbProfiles pcc_ab_profiles(const PccInstance& inst);

struct CompatiblePair {
  Ordinal delta1;
  Ordinal delta2;
  std::size_t n = 0;
  QCondition witness;  // the union, verified to extend both conditions
};

// First delta1 < delta2 (row-major) with some n >= k in A_delta1∖B_delta2
// for which the compatibility lemma's hypotheses hold at (gamma, delta2).
// Throws std::logic_error if such a pair turns out incompatible.
std::optional<CompatiblePair> find_compatible_pair(const PccInstance& inst);

struct Rectangle {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  std::size_t size() const { return rows.size() + cols.size(); }
};

// Every row/column pair with row ordinal < column ordinal is a true cell.
bool verify_rectangle(const CompatMatrix& m, const Rectangle& r);

// Maximum |rows| + |cols| by enumerating subsets of the smaller side.
// InvalidArgument if both sides exceed kExactRectangleLimit.
Rectangle exact_order_rectangle(const CompatMatrix& m);
// Drop the member with the most conflicts until none remain (at most
// `budget` drops), then re-add dropped members that no longer conflict.
Rectangle greedy_order_rectangle(const CompatMatrix& m, std::size_t budget);

inline constexpr std::size_t kExactRectangleLimit = 12;

// Exact up to 12x12, greedy beyond. The result is always verified.
Rectangle max_order_rectangle(const CompatMatrix& m, std::size_t budget = 1'000'000);

struct GeneratedPcc {
  QContext ctx;
  PccInstance instance;  // instance.ctx points into ctx; do not copy
};

struct PccGenParams {
  std::size_t family_size = 30;
  std::size_t universe = 24;
  std::size_t core_size = 3;
};

// A seeded instance with gamma = omega. T1 = T2 = omega*2t for
// t = 1..family_size. The S-limits omega*(2t+1) get explicit ladders that
// dip into lower blocks, so k is non-trivial. Each condition holds the
// shared core below gamma plus a few indices in its own blocks.
std::unique_ptr<GeneratedPcc> generate_pcc_instance(const PccGenParams& params, std::uint64_t seed);

}  // namespace gapforge
