#pragma once

// Permutations of {0..n-1} stored as image arrays, with the composition
// convention fixed once for the whole project:
//
//     compose(p, q) maps x to q(p(x))   (apply p first, then q)
//
// Conjugation follows the same convention: conjugate(x, g) = g^-1 x g,
// i.e. apply g^-1, then x, then g.
//
// Points are zero-based internally.  Cycle notation at I/O boundaries is
// one-based, e.g. "(1,2,3)(4,5)"; the identity prints as "()".

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"

namespace invgen {

class Permutation {
public:
  // Identity on {0..degree-1}.
  explicit Permutation(uint32_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), 0u);
  }

  // From an explicit image array; validates bijectivity.
  explicit Permutation(std::vector<uint32_t> images)
      : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (uint32_t v : images_) {
      if (v >= images_.size() || seen[v])
        throw InvalidArgument("image array is not a permutation");
      seen[v] = true;
    }
  }

  static Permutation identity(uint32_t degree) { return Permutation(degree); }

  uint32_t degree() const { return static_cast<uint32_t>(images_.size()); }
  uint32_t operator[](uint32_t point) const { return images_[point]; }
  const std::vector<uint32_t> &images() const { return images_; }

  bool is_identity() const {
    for (uint32_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    std::vector<uint32_t> inv(images_.size());
    for (uint32_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
    Permutation p(0);
    p.images_ = std::move(inv);
    return p;
  }

  // Smallest point moved, or degree() if identity.
  uint32_t smallest_moved_point() const {
    for (uint32_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return i;
    return degree();
  }

  // Order of the permutation as a group element (lcm of cycle lengths).
  uint64_t order() const {
    std::vector<bool> seen(images_.size(), false);
    uint64_t result = 1;
    for (uint32_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      uint64_t len = 0;
      for (uint32_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      result = std::lcm(result, len);
    }
    return result;
  }

  friend bool operator==(const Permutation &a, const Permutation &b) {
    return a.images_ == b.images_;
  }
  // Lexicographic on (degree, image array); the identity is least among
  // permutations of a fixed degree, which pins its element index to 0.
  friend std::strong_ordering operator<=>(const Permutation &a,
                                          const Permutation &b) {
    if (a.degree() != b.degree()) return a.degree() <=> b.degree();
    return a.images_ <=> b.images_;
  }

private:
  std::vector<uint32_t> images_;
};

// Apply p, then q.
inline Permutation compose(const Permutation &p, const Permutation &q) {
  if (p.degree() != q.degree())
    throw InvalidArgument("compose: degree mismatch (" +
                          std::to_string(p.degree()) + " vs " +
                          std::to_string(q.degree()) + ")");
  std::vector<uint32_t> images(p.degree());
  for (uint32_t x = 0; x < p.degree(); ++x) images[x] = q[p[x]];
  return Permutation(std::move(images));
}

// g^-1 x g.
inline Permutation conjugate(const Permutation &x, const Permutation &g) {
  return compose(compose(g.inverse(), x), g);
}

struct PermHash {
  std::size_t operator()(const Permutation &p) const {
    // FNV-1a over the image words.
    std::size_t h = 1469598103934665603ull;
    for (uint32_t v : p.images()) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// ---------------------------------------------------------------------
// Cycle notation I/O (one-based points).

inline std::string to_cycle_string(const Permutation &p) {
  std::string out;
  std::vector<bool> seen(p.degree(), false);
  for (uint32_t i = 0; i < p.degree(); ++i) {
    if (seen[i] || p[i] == i) {
      seen[i] = true;
      continue;
    }
    out += '(';
    for (uint32_t j = i;; j = p[j]) {
      seen[j] = true;
      out += std::to_string(j + 1);
      if (p[j] == i) break;
      out += ',';
    }
    out += ')';
  }
  if (out.empty()) out = "()";
  return out;
}

// Parses cycle notation into a permutation of the given degree.
// Whitespace-insensitive.  "()" is the identity.  Points must lie in
// 1..degree and may not repeat.
inline Permutation parse_permutation(const std::string &text,
                                     uint32_t degree) {
  std::vector<uint32_t> images(degree);
  std::iota(images.begin(), images.end(), 0u);
  std::vector<bool> used(degree, false);

  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
      ++i;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty permutation", i);

  bool any_cycle = false;
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(') throw ParseError("expected '('", i);
    ++i;
    std::vector<uint32_t> cycle;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("expected point number", i);
      uint64_t v = 0;
      while (i < text.size() &&
             std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<uint64_t>(text[i] - '0');
        if (v > degree) throw ParseError("point out of range", i);
        ++i;
      }
      if (v == 0) throw ParseError("points are one-based", i);
      uint32_t pt = static_cast<uint32_t>(v - 1);
      if (used[pt]) throw ParseError("repeated point", i);
      used[pt] = true;
      cycle.push_back(pt);
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        skip_ws();
        if (i >= text.size() || text[i] == ')')
          throw ParseError("trailing comma in cycle", i);
      }
    }
    if (i == text.size()) throw ParseError("unclosed cycle", i);
    ++i; // ')'
    if (cycle.size() == 1) throw ParseError("singleton cycle", i);
    for (std::size_t k = 0; k < cycle.size(); ++k)
      images[cycle[k]] = cycle[(k + 1) % cycle.size()];
    any_cycle = true;
    skip_ws();
  }
  if (!any_cycle) throw ParseError("no cycles found", i);
  return Permutation(std::move(images));
}

// Largest point mentioned in a cycle string (for inferring degrees);
// returns 0 for the identity "()".
inline uint32_t max_point_in_cycles(const std::string &text) {
  uint32_t max_pt = 0;
  uint64_t v = 0;
  bool in_num = false;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      v = v * 10 + static_cast<uint64_t>(c - '0');
      in_num = true;
    } else {
      if (in_num && v > max_pt) max_pt = static_cast<uint32_t>(v);
      v = 0;
      in_num = false;
    }
  }
  if (in_num && v > max_pt) max_pt = static_cast<uint32_t>(v);
  return max_pt;
}

} // namespace invgen
