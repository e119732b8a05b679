#ifndef TRANSFRAME_POINT_SET_HPP
#define TRANSFRAME_POINT_SET_HPP

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace transframe {

/// Index of a point inside its frame (position in the frame's point order).
using PointIndex = std::size_t;

/// Fixed-capacity bit set over point indices. Frames are desk scale, so a
/// small inline array keeps set algebra allocation-free in the hot loops of
/// model checking and reduction search.
class PointSet {
 public:
  static constexpr std::size_t kWords = 2;
  static constexpr std::size_t kCapacity = kWords * 64;

  constexpr PointSet() = default;

  static PointSet first_n(std::size_t n) {
    PointSet s;
    for (std::size_t w = 0; w < kWords; ++w) {
      if (n >= (w + 1) * 64) {
        s.words_[w] = ~std::uint64_t{0};
      } else if (n > w * 64) {
        s.words_[w] = (std::uint64_t{1} << (n - w * 64)) - 1;
      }
    }
    return s;
  }

  static PointSet single(PointIndex i) {
    PointSet s;
    s.insert(i);
    return s;
  }

  bool contains(PointIndex i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void insert(PointIndex i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void erase(PointIndex i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  bool intersects(const PointSet& o) const {
    for (std::size_t w = 0; w < kWords; ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }

  bool subset_of(const PointSet& o) const {
    for (std::size_t w = 0; w < kWords; ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }

  /// Smallest member, or kCapacity when empty.
  PointIndex first() const {
    for (std::size_t w = 0; w < kWords; ++w)
      if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
    return kCapacity;
  }

  PointSet& operator|=(const PointSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] |= o.words_[w];
    return *this;
  }
  PointSet& operator&=(const PointSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= o.words_[w];
    return *this;
  }
  PointSet& operator-=(const PointSet& o) {
    for (std::size_t w = 0; w < kWords; ++w) words_[w] &= ~o.words_[w];
    return *this;
  }
  friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
  friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
  friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

  std::vector<PointIndex> members() const {
    std::vector<PointIndex> out;
    for_each([&](PointIndex i) { out.push_back(i); });
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < kWords; ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        f(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
  }

  /// Lexicographic comparison of the sorted member lists.
  friend bool lex_less(const PointSet& a, const PointSet& b) {
    auto ma = a.members();
    auto mb = b.members();
    return ma < mb;
  }

 private:
  std::array<std::uint64_t, kWords> words_{};
};

}  // namespace transframe

#endif  // TRANSFRAME_POINT_SET_HPP
