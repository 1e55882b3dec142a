#ifndef FOLGEO_BITSET_HPP
#define FOLGEO_BITSET_HPP

#include <cstdint>
#include <vector>

namespace folgeo {

/// A fixed-width dense bit vector in 64-bit blocks. Unused bits of the
/// last word are kept zero.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::uint64_t size)
      : size_(size), words_((size + 63) / 64, 0) {}

  std::uint64_t size() const { return size_; }

  void set(std::uint64_t i) { words_[i >> 6] |= 1ull << (i & 63); }
  void reset(std::uint64_t i) { words_[i >> 6] &= ~(1ull << (i & 63)); }
  bool test(std::uint64_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    return *this;
  }
  void flip() {
    for (auto& w : words_) w = ~w;
    mask_tail();
  }

  std::uint64_t count() const {
    std::uint64_t n = 0;
    for (auto w : words_) n += static_cast<std::uint64_t>(__builtin_popcountll(w));
    return n;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }
  bool all() const { return count() == size_; }

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }
  bool intersects(const Bitset& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & o.words_[w]) return true;
    return false;
  }

  bool operator==(const Bitset&) const = default;
  bool operator<(const Bitset& o) const {
    if (size_ != o.size_) return size_ < o.size_;
    return words_ < o.words_;
  }

  /// Indices of set bits, ascending.
  std::vector<std::uint64_t> members() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < size_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

 private:
  void mask_tail() {
    if (size_ & 63) words_.back() &= (1ull << (size_ & 63)) - 1;
  }

  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace folgeo

#endif
