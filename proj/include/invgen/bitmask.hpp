#pragma once

// Membership bitmaps over a group's enumerated element table.  Bit i is
// element index i.  Hex serialization is byte-wise: bit i lives in byte
// i/8 at position i%8, bytes printed in increasing order, two lowercase
// digits each.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace invgen {

class ElementMask {
public:
  ElementMask() : nbits_(0) {}
  explicit ElementMask(std::size_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  std::size_t size() const { return nbits_; }

  bool test(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  void set(std::size_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (uint64_t w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  ElementMask &operator&=(const ElementMask &o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ElementMask &operator|=(const ElementMask &o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend ElementMask operator&(ElementMask a, const ElementMask &b) {
    a &= b;
    return a;
  }
  friend ElementMask operator|(ElementMask a, const ElementMask &b) {
    a |= b;
    return a;
  }

  bool intersects(const ElementMask &o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }
  bool is_subset_of(const ElementMask &o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  friend bool operator==(const ElementMask &a, const ElementMask &b) {
    return a.nbits_ == b.nbits_ && a.words_ == b.words_;
  }
  friend bool operator<(const ElementMask &a, const ElementMask &b) {
    return a.words_ < b.words_;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (uint64_t w : words_) {
      h ^= static_cast<std::size_t>(w);
      h *= 1099511628211ull;
    }
    return h;
  }

  std::string to_hex() const {
    static const char digits[] = "0123456789abcdef";
    std::size_t nbytes = (nbits_ + 7) / 8;
    std::string out;
    out.reserve(2 * nbytes);
    for (std::size_t b = 0; b < nbytes; ++b) {
      uint8_t byte = static_cast<uint8_t>(words_[b >> 3] >> ((b & 7) * 8));
      out += digits[byte >> 4];
      out += digits[byte & 15];
    }
    return out;
  }

  static ElementMask from_hex(const std::string &hex, std::size_t nbits) {
    std::size_t nbytes = (nbits + 7) / 8;
    if (hex.size() != 2 * nbytes)
      throw ParseError("mask hex has wrong length");
    ElementMask m(nbits);
    for (std::size_t b = 0; b < nbytes; ++b) {
      auto nib = [&](char c) -> uint64_t {
        if (c >= '0' && c <= '9') return static_cast<uint64_t>(c - '0');
        if (c >= 'a' && c <= 'f') return static_cast<uint64_t>(c - 'a' + 10);
        throw ParseError("bad hex digit in mask");
      };
      uint64_t byte = (nib(hex[2 * b]) << 4) | nib(hex[2 * b + 1]);
      m.words_[b >> 3] |= byte << ((b & 7) * 8);
    }
    // Reject set bits beyond nbits.
    for (std::size_t i = nbits; i < nbytes * 8; ++i)
      if (m.test(i)) throw ParseError("mask has bits beyond its size");
    return m;
  }

  struct Hash {
    std::size_t operator()(const ElementMask &m) const { return m.hash(); }
  };

private:
  std::size_t nbits_;
  std::vector<uint64_t> words_;
};

} // namespace invgen
