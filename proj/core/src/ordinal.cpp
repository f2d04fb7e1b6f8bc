#include "gapforge/ordinal.hpp"

#include <algorithm>
#include <charconv>

#include "gapforge/error.hpp"

namespace gapforge {

Ordering cmp_ordinal(Ordinal x, Ordinal y) {
  if (x < y) return Ordering::kLess;
  if (y < x) return Ordering::kGreater;
  return Ordering::kEqual;
}

std::string to_key(Ordinal x) {
  return std::to_string(x.q) + "." + std::to_string(x.r);
}

Ordinal ordinal_from_key(const std::string& key) {
  const auto dot = key.find('.');
  if (dot == std::string::npos) {
    throw Error(ErrorCode::kParseError, "ordinal key without '.': " + key);
  }
  Ordinal out;
  const char* begin = key.data();
  const char* end = key.data() + key.size();
  auto [p1, e1] = std::from_chars(begin, begin + dot, out.q);
  auto [p2, e2] = std::from_chars(begin + dot + 1, end, out.r);
  if (e1 != std::errc() || e2 != std::errc() || p1 != begin + dot || p2 != end) {
    throw Error(ErrorCode::kParseError, "malformed ordinal key: " + key);
  }
  return out;
}

std::strong_ordering operator<=>(const Index& x, const Index& y) {
  if (x.side != y.side) return x.side <=> y.side;
  if (x.side == 0) return x.ord <=> y.ord;
  return y.ord <=> x.ord;
}

Ordering cmp_index(const Index& x, const Index& y) {
  const auto c = x <=> y;
  if (c < 0) return Ordering::kLess;
  if (c > 0) return Ordering::kGreater;
  return Ordering::kEqual;
}

std::vector<Index> paired_indices(const OrdinalSet& ordinals) {
  std::vector<Index> out;
  out.reserve(2 * ordinals.size());
  for (const Ordinal& a : ordinals) out.push_back({a, 0});
  for (auto it = ordinals.rbegin(); it != ordinals.rend(); ++it) out.push_back({*it, 1});
  return out;
}

Ladder Ladder::canonical() { return Ladder(Mode::kCanonical, {}); }

Ladder Ladder::explicit_tables(std::map<Ordinal, std::vector<Ordinal>> entries) {
  for (const auto& [delta, values] : entries) {
    if (!delta.is_limit()) {
      throw Error(ErrorCode::kInvalidArgument, "ladder key is not a limit: " + to_key(delta));
    }
    for (std::size_t n = 0; n < values.size(); ++n) {
      if (!(values[n] < delta)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "ladder value " + to_key(values[n]) + " not below " + to_key(delta));
      }
      if (n > 0 && !(values[n - 1] < values[n])) {
        throw Error(ErrorCode::kInvalidArgument,
                    "ladder for " + to_key(delta) + " is not strictly increasing");
      }
    }
  }
  return Ladder(Mode::kExplicit, std::move(entries));
}

bool Ladder::has(Ordinal delta) const {
  if (mode_ == Mode::kCanonical) return delta.is_limit();
  return entries_.contains(delta);
}

Ordinal Ladder::at(Ordinal delta, std::size_t n) const {
  if (!has(delta)) throw Error(ErrorCode::kUnknownDelta, "no ladder at " + to_key(delta));
  if (mode_ == Mode::kCanonical) {
    return {delta.q - 1, static_cast<std::uint32_t>(n)};
  }
  const auto& values = entries_.at(delta);
  if (n >= values.size()) {
    throw Error(ErrorCode::kTableTooShort, "ladder at " + to_key(delta) + " has " +
                                               std::to_string(values.size()) +
                                               " values, asked for index " + std::to_string(n));
  }
  return values[n];
}

std::size_t Ladder::count_below(Ordinal delta, Ordinal j) const {
  if (!has(delta)) throw Error(ErrorCode::kUnknownDelta, "no ladder at " + to_key(delta));
  if (!(j < delta)) {
    throw Error(ErrorCode::kInvalidArgument,
                to_key(j) + " is not below " + to_key(delta) + "; the count would be infinite");
  }
  if (mode_ == Mode::kCanonical) {
    if (j.q + 1 < delta.q) return 0;
    return j.r;  // j lies in the last omega-block below delta
  }
  const auto& values = entries_.at(delta);
  // The first value >= j ends the count; the table must witness it.
  const auto it = std::lower_bound(values.begin(), values.end(), j);
  if (it == values.end()) {
    throw Error(ErrorCode::kTableTooShort, "ladder at " + to_key(delta) +
                                               " ends before reaching " + to_key(j));
  }
  return static_cast<std::size_t>(it - values.begin());
}

std::size_t ladder_count_below(const Ladder& ladder, Ordinal delta, Ordinal j) {
  return ladder.count_below(delta, j);
}

void SPartition::validate() const {
  for (const Ordinal& x : S) {
    if (!x.is_limit()) throw Error(ErrorCode::kInvalidArgument, "S holds non-limit " + to_key(x));
    if (T.contains(x)) throw Error(ErrorCode::kInvalidArgument, "S and T share " + to_key(x));
  }
  for (const Ordinal& x : T) {
    if (!x.is_limit()) throw Error(ErrorCode::kInvalidArgument, "T holds non-limit " + to_key(x));
  }
}

SPartition alternating_partition(std::uint32_t max_q) {
  SPartition part;
  for (std::uint32_t q = 1; q <= max_q; ++q) {
    (q % 2 == 1 ? part.S : part.T).insert(Ordinal::limit(q));
    part.D.insert(Ordinal::limit(q));
  }
  return part;
}

std::vector<Ordinal> desk_ordinals(std::size_t count, std::uint32_t block) {
  if (block == 0) throw Error(ErrorCode::kInvalidArgument, "block size must be positive");
  std::vector<Ordinal> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    out.push_back({static_cast<std::uint32_t>(k / block), static_cast<std::uint32_t>(k % block)});
  }
  return out;
}

}  // namespace gapforge
