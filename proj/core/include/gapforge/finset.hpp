#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gapforge {

// A finite set of naturals stored as a bitset. Trailing zero words are
// trimmed, so structural equality is set equality.
class FinSet {
 public:
  FinSet() = default;
  FinSet(std::initializer_list<std::size_t> members);

  static FinSet from_members(const std::vector<std::size_t>& members);
  // [0, n)
  static FinSet range(std::size_t n);
  // [lo, hi)
  static FinSet range(std::size_t lo, std::size_t hi);
  // Bit k of the word is character k ('0' or '1').
  static FinSet from_bits(std::string_view bits);

  bool contains(std::size_t k) const;
  void insert(std::size_t k);
  void erase(std::size_t k);

  bool empty() const { return words_.empty(); }
  std::size_t size() const;
  // Largest member + 1; 0 for the empty set.
  std::size_t bound() const;
  std::optional<std::size_t> max() const;
  std::vector<std::size_t> members() const;

  bool subset_of(const FinSet& other) const;
  // Members k with k < n.
  FinSet below(std::size_t n) const;
  // Members k with k >= n.
  FinSet at_or_above(std::size_t n) const;

  FinSet& operator|=(const FinSet& other);
  FinSet& operator&=(const FinSet& other);
  FinSet& operator-=(const FinSet& other);
  friend FinSet operator|(FinSet a, const FinSet& b) { return a |= b; }
  friend FinSet operator&(FinSet a, const FinSet& b) { return a &= b; }
  friend FinSet operator-(FinSet a, const FinSet& b) { return a -= b; }

  // Characters 0..length-1; members >= length are dropped.
  std::string to_bits(std::size_t length) const;

  friend bool operator==(const FinSet&, const FinSet&) = default;
  friend auto operator<=>(const FinSet& a, const FinSet& b) { return a.words_ <=> b.words_; }

 private:
  void trim();

  std::vector<std::uint64_t> words_;
};

// The excess number: least k with a∖b ⊆ [0, k).
std::size_t excess(const FinSet& a, const FinSet& b);

// a∖[0, n) ⊆ b.
bool almost_subset(const FinSet& a, const FinSet& b, std::size_t n);

}  // namespace gapforge
