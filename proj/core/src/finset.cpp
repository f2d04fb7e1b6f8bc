#include "gapforge/finset.hpp"

#include <algorithm>
#include <bit>

#include "gapforge/error.hpp"

namespace gapforge {
namespace {

constexpr std::size_t kWordBits = 64;

}  // namespace

FinSet::FinSet(std::initializer_list<std::size_t> members) {
  for (std::size_t k : members) insert(k);
}

FinSet FinSet::from_members(const std::vector<std::size_t>& members) {
  FinSet out;
  for (std::size_t k : members) out.insert(k);
  return out;
}

FinSet FinSet::range(std::size_t n) { return range(0, n); }

FinSet FinSet::range(std::size_t lo, std::size_t hi) {
  FinSet out;
  if (hi <= lo) return out;
  out.words_.assign((hi + kWordBits - 1) / kWordBits, ~std::uint64_t{0});
  if (hi % kWordBits != 0) out.words_.back() = (std::uint64_t{1} << (hi % kWordBits)) - 1;
  for (std::size_t w = 0; w < lo / kWordBits; ++w) out.words_[w] = 0;
  if (lo % kWordBits != 0) out.words_[lo / kWordBits] &= ~((std::uint64_t{1} << (lo % kWordBits)) - 1);
  out.trim();
  return out;
}

FinSet FinSet::from_bits(std::string_view bits) {
  FinSet out;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1') {
      out.insert(k);
    } else if (bits[k] != '0') {
      throw Error(ErrorCode::kParseError, "bit word may only contain '0' and '1'");
    }
  }
  return out;
}

bool FinSet::contains(std::size_t k) const {
  const std::size_t w = k / kWordBits;
  return w < words_.size() && ((words_[w] >> (k % kWordBits)) & 1U);
}

void FinSet::insert(std::size_t k) {
  const std::size_t w = k / kWordBits;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] |= std::uint64_t{1} << (k % kWordBits);
}

void FinSet::erase(std::size_t k) {
  const std::size_t w = k / kWordBits;
  if (w >= words_.size()) return;
  words_[w] &= ~(std::uint64_t{1} << (k % kWordBits));
  trim();
}

std::size_t FinSet::size() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t FinSet::bound() const {
  if (words_.empty()) return 0;
  const std::uint64_t top = words_.back();
  return (words_.size() - 1) * kWordBits + (kWordBits - static_cast<std::size_t>(std::countl_zero(top)));
}

std::optional<std::size_t> FinSet::max() const {
  if (words_.empty()) return std::nullopt;
  return bound() - 1;
}

std::vector<std::size_t> FinSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      out.push_back(w * kWordBits + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

bool FinSet::subset_of(const FinSet& other) const {
  if (words_.size() > other.words_.size()) return false;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

FinSet FinSet::below(std::size_t n) const {
  FinSet out = *this;
  out -= range(n, std::max(n, bound()));
  return out;
}

FinSet FinSet::at_or_above(std::size_t n) const {
  FinSet out = *this;
  out -= range(0, n);
  return out;
}

FinSet& FinSet::operator|=(const FinSet& other) {
  if (other.words_.size() > words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

FinSet& FinSet::operator&=(const FinSet& other) {
  if (words_.size() > other.words_.size()) words_.resize(other.words_.size());
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  trim();
  return *this;
}

FinSet& FinSet::operator-=(const FinSet& other) {
  const std::size_t n = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < n; ++w) words_[w] &= ~other.words_[w];
  trim();
  return *this;
}

std::string FinSet::to_bits(std::size_t length) const {
  std::string out(length, '0');
  for (std::size_t k = 0; k < length; ++k) {
    if (contains(k)) out[k] = '1';
  }
  return out;
}

void FinSet::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

std::size_t excess(const FinSet& a, const FinSet& b) { return (a - b).bound(); }

bool almost_subset(const FinSet& a, const FinSet& b, std::size_t n) { return excess(a, b) <= n; }

}  // namespace gapforge
