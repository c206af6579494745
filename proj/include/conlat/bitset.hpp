#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace conlat {

// Fixed-length bit set over the positions of a RelationTable. Subsets of a
// table are the working currency of the whole library: intersection is a
// word-wise AND and inclusion a word-wise test.
class BitSet {
 public:
  using word_type = std::uint64_t;
  static constexpr std::size_t word_bits = 64;

  BitSet() = default;
  explicit BitSet(std::size_t size)
      : size_(size), words_((size + word_bits - 1) / word_bits, 0) {}

  static BitSet full(std::size_t size) {
    BitSet b(size);
    for (auto& w : b.words_) {
      w = ~word_type{0};
    }
    b.trim();
    return b;
  }

  std::size_t size() const noexcept { return size_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<word_type const> words() const noexcept { return words_; }
  std::span<word_type> words() noexcept { return words_; }

  bool test(std::size_t i) const noexcept {
    return (words_[i / word_bits] >> (i % word_bits)) & 1U;
  }
  void set(std::size_t i) noexcept {
    words_[i / word_bits] |= word_type{1} << (i % word_bits);
  }
  void reset(std::size_t i) noexcept {
    words_[i / word_bits] &= ~(word_type{1} << (i % word_bits));
  }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) {
      c += static_cast<std::size_t>(std::popcount(w));
    }
    return c;
  }

  bool none() const noexcept {
    for (auto w : words_) {
      if (w != 0) {
        return false;
      }
    }
    return true;
  }

  bool is_subset_of(BitSet const& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~other.words_[i]) != 0) {
        return false;
      }
    }
    return true;
  }

  BitSet& operator&=(BitSet const& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] &= other.words_[i];
    }
    return *this;
  }
  BitSet& operator|=(BitSet const& other) noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      words_[i] |= other.words_[i];
    }
    return *this;
  }
  friend BitSet operator&(BitSet a, BitSet const& b) { return a &= b; }
  friend BitSet operator|(BitSet a, BitSet const& b) { return a |= b; }

  friend bool operator==(BitSet const&, BitSet const&) = default;

  // Orders by the bit pattern read as a number, highest word first.
  friend bool operator<(BitSet const& a, BitSet const& b) noexcept {
    for (std::size_t i = a.words_.size(); i-- > 0;) {
      if (a.words_[i] != b.words_[i]) {
        return a.words_[i] < b.words_[i];
      }
    }
    return false;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      word_type w = words_[wi];
      while (w != 0) {
        auto bit = static_cast<std::size_t>(std::countr_zero(w));
        fn(wi * word_bits + bit);
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  std::size_t hash() const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ size_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

 private:
  void trim() noexcept {
    if (size_ % word_bits != 0 && !words_.empty()) {
      words_.back() &= (word_type{1} << (size_ % word_bits)) - 1;
    }
  }

  std::size_t size_ = 0;
  std::vector<word_type> words_;
};

struct BitSetHash {
  std::size_t operator()(BitSet const& b) const noexcept { return b.hash(); }
};

}  // namespace conlat
