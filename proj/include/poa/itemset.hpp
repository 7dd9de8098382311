#pragma once

#include <cstdint>
#include <vector>

#include "poa/errors.hpp"

namespace poa {

// Subset of a fixed item universe [0, m). Backed by a word-packed bitset so
// it stays cheap for the grid universes (m up to 4096).
class ItemSet {
 public:
  ItemSet() : m_(0) {}

  explicit ItemSet(int m) : m_(m), bits_((m + 63) / 64, 0) {
    if (m < 0) throw ContractError("ItemSet: negative universe size");
  }

  static ItemSet from_mask(int m, uint64_t mask) {
    if (m > 64) throw ContractError("ItemSet::from_mask: universe exceeds 64 items");
    ItemSet s(m);
    if (m < 64 && (mask >> m) != 0) throw ContractError("ItemSet::from_mask: mask has bits past m");
    if (m > 0) s.bits_[0] = mask;
    return s;
  }

  static ItemSet full(int m) {
    ItemSet s(m);
    for (int j = 0; j < m; ++j) s.add(j);
    return s;
  }

  int universe() const { return m_; }

  void add(int j) {
    check(j);
    bits_[j >> 6] |= (1ull << (j & 63));
  }

  void remove(int j) {
    check(j);
    bits_[j >> 6] &= ~(1ull << (j & 63));
  }

  bool contains(int j) const {
    check(j);
    return (bits_[j >> 6] >> (j & 63)) & 1;
  }

  int count() const {
    int c = 0;
    for (uint64_t w : bits_) c += __builtin_popcountll(w);
    return c;
  }

  bool empty() const {
    for (uint64_t w : bits_) if (w) return false;
    return true;
  }

  uint64_t mask() const {
    if (m_ > 64) throw CapacityError("ItemSet::mask: universe exceeds 64 items");
    return bits_.empty() ? 0 : bits_[0];
  }

  ItemSet unite(const ItemSet& o) const {
    ItemSet r = strict_pair(o);
    for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] | o.bits_[i];
    return r;
  }

  ItemSet intersect(const ItemSet& o) const {
    ItemSet r = strict_pair(o);
    for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & o.bits_[i];
    return r;
  }

  std::vector<int> items() const {
    std::vector<int> out;
    out.reserve(count());
    for (int j = 0; j < m_; ++j)
      if (contains(j)) out.push_back(j);
    return out;
  }

  bool operator==(const ItemSet& o) const { return m_ == o.m_ && bits_ == o.bits_; }

 private:
  void check(int j) const {
    if (j < 0 || j >= m_) throw ContractError("ItemSet: item index out of range");
  }

  ItemSet strict_pair(const ItemSet& o) const {
    if (m_ != o.m_) throw ContractError("ItemSet: mismatched universes");
    return ItemSet(m_);
  }

  int m_;
  std::vector<uint64_t> bits_;
};

}  // namespace poa
