#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qmalab {

/// Fixed-length bit vector packed into 64-bit words. Used for Pauli X/Z
/// supports, Z-error patterns and syndromes.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t num_bits)
      : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {}

  static BitVec from_string(std::string_view s) {
    BitVec v(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        v.set(i, true);
      } else if (s[i] != '0') {
        throw std::invalid_argument("BitVec::from_string: expected '0'/'1', got '" +
                                    std::string(1, s[i]) + "'");
      }
    }
    return v;
  }

  std::size_t size() const { return num_bits_; }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

  void set(std::size_t i, bool v) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(std::size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

  bool any() const {
    for (uint64_t w : words_) {
      if (w != 0) return true;
    }
    return false;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  /// Parity of popcount(this AND other). The symplectic building block.
  bool parity_and(const BitVec& other) const {
    uint64_t acc = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) acc ^= words_[k] & other.words_[k];
    return std::popcount(acc) & 1;
  }

  BitVec& operator^=(const BitVec& other) {
    if (num_bits_ != other.num_bits_) {
      throw std::invalid_argument("BitVec xor: length mismatch");
    }
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
    return *this;
  }

  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }

  bool operator==(const BitVec& other) const = default;

  /// Bits at the given positions, in order, as a fresh vector.
  BitVec select(std::span<const std::size_t> positions) const {
    BitVec out(positions.size());
    for (std::size_t k = 0; k < positions.size(); ++k) out.set(k, get(positions[k]));
    return out;
  }

  std::string to_string() const {
    std::string s(num_bits_, '0');
    for (std::size_t i = 0; i < num_bits_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  std::span<const uint64_t> words() const { return words_; }
  std::span<uint64_t> words() { return words_; }

 private:
  std::size_t num_bits_ = 0;
  std::vector<uint64_t> words_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& v) const {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
    for (uint64_t w : v.words()) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace qmalab
