#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace gapforge {

enum class Ordering { kLess, kEqual, kGreater };

// An ordinal below omega^2, written omega*q + r.
struct Ordinal {
  std::uint32_t q = 0;
  std::uint32_t r = 0;

  constexpr Ordinal() = default;
  constexpr Ordinal(std::uint32_t omega_coeff, std::uint32_t finite)
      : q(omega_coeff), r(finite) {}

  static constexpr Ordinal finite(std::uint32_t n) { return {0, n}; }
  static constexpr Ordinal limit(std::uint32_t omega_coeff) { return {omega_coeff, 0}; }

  constexpr bool is_zero() const { return q == 0 && r == 0; }
  constexpr bool is_limit() const { return r == 0 && q >= 1; }
  constexpr Ordinal successor() const { return {q, r + 1}; }

  friend constexpr auto operator<=>(const Ordinal&, const Ordinal&) = default;
};

Ordering cmp_ordinal(Ordinal x, Ordinal y);

// "q.r", used as a JSON object key and as a CSV header.
std::string to_key(Ordinal x);
Ordinal ordinal_from_key(const std::string& key);

using OrdinalSet = std::set<Ordinal>;

// Element of I = omega_1 + omega_1^*: side 0 is the ascending copy, side 1
// the descending copy. operator<=> is the order <_I, not the field order.
struct Index {
  Ordinal ord;
  std::uint8_t side = 0;

  friend constexpr bool operator==(const Index&, const Index&) = default;
  friend std::strong_ordering operator<=>(const Index& x, const Index& y);
};

Ordering cmp_index(const Index& x, const Index& y);

// Both sides of every ordinal in `ordinals`, sorted by <_I.
std::vector<Index> paired_indices(const OrdinalSet& ordinals);

// A ladder system: for each limit delta, a strictly increasing sequence
// c_delta(0) < c_delta(1) < ... of ordinals below delta.
class Ladder {
 public:
  enum class Mode { kCanonical, kExplicit };

  // c_delta(n) = omega*(q-1) + n for every limit delta = omega*q.
  static Ladder canonical();
  // Finite tables. Throws InvalidArgument unless every key is a limit and
  // every table is strictly increasing and bounded by its key.
  static Ladder explicit_tables(std::map<Ordinal, std::vector<Ordinal>> entries);

  Mode mode() const { return mode_; }
  const std::map<Ordinal, std::vector<Ordinal>>& entries() const { return entries_; }

  bool has(Ordinal delta) const;
  // c_delta(n). UnknownDelta if delta has no ladder, TableTooShort if an
  // explicit table has fewer than n+1 values.
  Ordinal at(Ordinal delta, std::size_t n) const;
  // |c_delta ∩ j| for j < delta.
  std::size_t count_below(Ordinal delta, Ordinal j) const;

  friend bool operator==(const Ladder&, const Ladder&) = default;

 private:
  Ladder(Mode mode, std::map<Ordinal, std::vector<Ordinal>> entries)
      : mode_(mode), entries_(std::move(entries)) {}

  Mode mode_;
  std::map<Ordinal, std::vector<Ordinal>> entries_;
};

std::size_t ladder_count_below(const Ladder& ladder, Ordinal delta, Ordinal j);

// Designated finite stand-ins for a stationary set S, its complement T and
// a club D. Nothing here is stationary or closed; they are plain inputs.
struct SPartition {
  OrdinalSet S;
  OrdinalSet T;
  OrdinalSet D;

  // Throws InvalidArgument if S and T meet or contain a non-limit.
  void validate() const;

  friend bool operator==(const SPartition&, const SPartition&) = default;
};

// Limits omega*q for 1 <= q <= max_q: odd q go to S, even q to T, and all
// of them to D.
SPartition alternating_partition(std::uint32_t max_q);

// The first `count` ordinals laid out in blocks of `block` consecutive
// finite parts: k -> omega*(k / block) + (k % block).
std::vector<Ordinal> desk_ordinals(std::size_t count, std::uint32_t block = 5);

}  // namespace gapforge

template <>
struct std::hash<gapforge::Ordinal> {
  std::size_t operator()(const gapforge::Ordinal& x) const noexcept {
    return (static_cast<std::size_t>(x.q) << 32) ^ x.r;
  }
};
