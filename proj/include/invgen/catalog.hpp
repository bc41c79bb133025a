#pragma once

// Named group constructors and the descriptor grammar shared by the CLI,
// the cache and the test suites.
//
//   S<n>        symmetric group, natural action       (n <= 16)
//   A<n>        alternating group, natural action     (n <= 16)
//   C<n>        cyclic group of order n, degree n
//   D<n>        dihedral group of ORDER n (n even, n >= 6), degree n/2
//   Q8          quaternion group, regular action on 8 points
//   PSL(2,q)    q prime <= 31, action on the q+1 points of the
//               projective line via x -> x+1 and x -> -1/x
//   <desc>^<m>  direct power on m disjoint blocks
//   perm:<degree>:<gen>;<gen>;...   explicit generators in cycle notation
//
// Every named family resolves with a fixed, documented generator choice,
// and the resolved order is validated against the family formula.

#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "perm_group.hpp"

namespace invgen {

struct GroupDescriptor {
  enum class Kind {
    symmetric,
    alternating,
    cyclic,
    dihedral,
    quaternion8,
    psl2,
    direct_power,
    explicit_gens
  };
  Kind kind = Kind::cyclic;
  uint64_t n = 1; // family parameter (n, or q for psl2, or m for powers)
  std::shared_ptr<GroupDescriptor> base; // direct_power only
  uint32_t degree = 0;                   // explicit_gens only
  std::vector<std::string> gen_cycles;   // explicit_gens only
};

inline std::string print_descriptor(const GroupDescriptor &d) {
  using Kind = GroupDescriptor::Kind;
  switch (d.kind) {
  case Kind::symmetric: return "S" + std::to_string(d.n);
  case Kind::alternating: return "A" + std::to_string(d.n);
  case Kind::cyclic: return "C" + std::to_string(d.n);
  case Kind::dihedral: return "D" + std::to_string(d.n);
  case Kind::quaternion8: return "Q8";
  case Kind::psl2: return "PSL(2," + std::to_string(d.n) + ")";
  case Kind::direct_power:
    return print_descriptor(*d.base) + "^" + std::to_string(d.n);
  case Kind::explicit_gens: {
    std::string out = "perm:" + std::to_string(d.degree) + ":";
    for (std::size_t i = 0; i < d.gen_cycles.size(); ++i) {
      if (i) out += ";";
      out += d.gen_cycles[i];
    }
    return out;
  }
  }
  throw InternalError("unhandled descriptor kind");
}

namespace detail {

inline bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline uint64_t parse_uint(const std::string &text, std::size_t &pos) {
  if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
    throw ParseError("expected a number", pos);
  uint64_t v = 0;
  while (pos < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[pos]))) {
    v = v * 10 + static_cast<uint64_t>(text[pos] - '0');
    if (v > 1000000) throw ParseError("parameter too large", pos);
    ++pos;
  }
  return v;
}

} // namespace detail

inline GroupDescriptor parse_descriptor(const std::string &text) {
  GroupDescriptor d;
  using Kind = GroupDescriptor::Kind;

  // Direct power: split on the last '^'.
  std::size_t caret = text.rfind('^');
  if (caret != std::string::npos && text.rfind("perm:", 0) != 0) {
    if (caret + 1 >= text.size())
      throw ParseError("missing power exponent", caret);
    std::size_t pos = caret + 1;
    uint64_t m = detail::parse_uint(text, pos);
    if (pos != text.size()) throw ParseError("trailing input after power", pos);
    if (m < 1) throw ParseError("power exponent must be >= 1", caret + 1);
    GroupDescriptor base = parse_descriptor(text.substr(0, caret));
    if (base.kind == Kind::direct_power)
      throw ParseError("nested direct powers are not supported", caret);
    d.kind = Kind::direct_power;
    d.n = m;
    d.base = std::make_shared<GroupDescriptor>(std::move(base));
    return d;
  }

  if (text.rfind("perm:", 0) == 0) {
    std::size_t pos = 5;
    uint64_t degree = detail::parse_uint(text, pos);
    if (degree < 1 || degree > 10000)
      throw ParseError("unsupported degree", 5);
    if (pos >= text.size() || text[pos] != ':')
      throw ParseError("expected ':' after degree", pos);
    ++pos;
    d.kind = Kind::explicit_gens;
    d.degree = static_cast<uint32_t>(degree);
    std::string rest = text.substr(pos);
    std::size_t start = 0;
    while (true) {
      std::size_t semi = rest.find(';', start);
      std::string piece = rest.substr(
          start, semi == std::string::npos ? std::string::npos : semi - start);
      // normalize through a parse/print round trip
      Permutation p = parse_permutation(piece, d.degree);
      d.gen_cycles.push_back(to_cycle_string(p));
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    if (d.gen_cycles.empty()) throw ParseError("no generators given", pos);
    return d;
  }

  if (text.rfind("PSL(2,", 0) == 0) {
    std::size_t pos = 6;
    uint64_t q = detail::parse_uint(text, pos);
    if (pos >= text.size() || text[pos] != ')')
      throw ParseError("expected ')'", pos);
    ++pos;
    if (pos != text.size()) throw ParseError("trailing input", pos);
    if (!detail::is_prime(q) || q > 31)
      throw ParseError("unsupported parameter: PSL(2,q) needs a prime q <= 31",
                       6);
    d.kind = Kind::psl2;
    d.n = q;
    return d;
  }

  if (text == "Q8") {
    d.kind = Kind::quaternion8;
    d.n = 8;
    return d;
  }

  if (!text.empty() && (text[0] == 'S' || text[0] == 'A' || text[0] == 'C' ||
                        text[0] == 'D')) {
    std::size_t pos = 1;
    uint64_t n = detail::parse_uint(text, pos);
    if (pos != text.size()) throw ParseError("trailing input", pos);
    switch (text[0]) {
    case 'S':
      if (n < 1 || n > 16)
        throw ParseError("unsupported parameter: S<n> needs 1 <= n <= 16", 1);
      d.kind = Kind::symmetric;
      break;
    case 'A':
      if (n < 1 || n > 16)
        throw ParseError("unsupported parameter: A<n> needs 1 <= n <= 16", 1);
      d.kind = Kind::alternating;
      break;
    case 'C':
      if (n < 1 || n > 5000)
        throw ParseError("unsupported parameter: C<n> needs 1 <= n <= 5000", 1);
      d.kind = Kind::cyclic;
      break;
    case 'D':
      if (n < 6 || n % 2 != 0 || n > 5000)
        throw ParseError(
            "unsupported parameter: D<n> is the dihedral group of order n, "
            "n even and >= 6",
            1);
      d.kind = Kind::dihedral;
      break;
    }
    d.n = n;
    return d;
  }
  throw ParseError("unrecognized group descriptor", 0);
}

// ---------------------------------------------------------------------
// Resolution to permutation groups.

namespace detail {

inline Permutation cycle_perm(uint32_t degree,
                              const std::vector<uint32_t> &cycle) {
  std::vector<uint32_t> images(degree);
  std::iota(images.begin(), images.end(), 0u);
  for (std::size_t i = 0; i < cycle.size(); ++i)
    images[cycle[i]] = cycle[(i + 1) % cycle.size()];
  return Permutation(std::move(images));
}

inline uint64_t factorial(uint64_t n) {
  uint64_t f = 1;
  for (uint64_t i = 2; i <= n; ++i) f *= i;
  return f;
}

inline uint64_t mod_inverse(uint64_t a, uint64_t p) {
  // Fermat: a^(p-2) mod p.
  uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

} // namespace detail

// Order the descriptor must resolve to.
inline uint64_t descriptor_order(const GroupDescriptor &d) {
  using Kind = GroupDescriptor::Kind;
  switch (d.kind) {
  case Kind::symmetric: return detail::factorial(d.n);
  case Kind::alternating: return d.n <= 2 ? 1 : detail::factorial(d.n) / 2;
  case Kind::cyclic: return d.n;
  case Kind::dihedral: return d.n;
  case Kind::quaternion8: return 8;
  case Kind::psl2: {
    uint64_t q = d.n;
    return q * (q * q - 1) / std::gcd<uint64_t>(2, q - 1);
  }
  case Kind::direct_power: {
    uint64_t base = descriptor_order(*d.base);
    unsigned __int128 o = 1;
    for (uint64_t i = 0; i < d.n; ++i) {
      o *= base;
      if (o > static_cast<unsigned __int128>(UINT64_MAX))
        throw InvalidArgument("direct power order exceeds 2^64");
    }
    return static_cast<uint64_t>(o);
  }
  case Kind::explicit_gens: return 0; // unknown until resolved
  }
  throw InternalError("unhandled descriptor kind");
}

inline PermGroup resolve(const GroupDescriptor &d) {
  using Kind = GroupDescriptor::Kind;
  PermGroup g;
  switch (d.kind) {
  case Kind::symmetric: {
    uint32_t n = static_cast<uint32_t>(d.n);
    std::vector<Permutation> gens;
    if (n < 2) {
      gens.push_back(Permutation::identity(1));
      g = PermGroup::from_generators(1, gens);
    } else {
      gens.push_back(detail::cycle_perm(n, {0, 1}));
      if (n > 2) {
        std::vector<uint32_t> full(n);
        std::iota(full.begin(), full.end(), 0u);
        gens.push_back(detail::cycle_perm(n, full));
      }
      g = PermGroup::from_generators(n, gens);
    }
    break;
  }
  case Kind::alternating: {
    uint32_t n = static_cast<uint32_t>(d.n);
    if (n <= 2) {
      uint32_t deg = n == 0 ? 1 : n;
      g = PermGroup::from_generators(
          deg, {Permutation::identity(deg)});
    } else {
      std::vector<Permutation> gens;
      gens.push_back(detail::cycle_perm(n, {0, 1, 2}));
      if (n >= 4) {
        std::vector<uint32_t> cycle;
        if (n % 2 == 1) {
          for (uint32_t i = 0; i < n; ++i) cycle.push_back(i);
        } else {
          for (uint32_t i = 1; i < n; ++i) cycle.push_back(i);
        }
        gens.push_back(detail::cycle_perm(n, cycle));
      }
      g = PermGroup::from_generators(n, gens);
    }
    break;
  }
  case Kind::cyclic: {
    uint32_t n = static_cast<uint32_t>(d.n);
    if (n == 1) {
      g = PermGroup::from_generators(1, {Permutation::identity(1)});
    } else {
      std::vector<uint32_t> full(n);
      std::iota(full.begin(), full.end(), 0u);
      g = PermGroup::from_generators(n, {detail::cycle_perm(n, full)});
    }
    break;
  }
  case Kind::dihedral: {
    uint32_t k = static_cast<uint32_t>(d.n / 2);
    std::vector<uint32_t> rot(k);
    std::iota(rot.begin(), rot.end(), 0u);
    std::vector<uint32_t> refl(k);
    for (uint32_t x = 0; x < k; ++x) refl[x] = (k - x) % k;
    g = PermGroup::from_generators(
        k, {detail::cycle_perm(k, rot), Permutation(std::move(refl))});
    break;
  }
  case Kind::quaternion8: {
    // Regular action on {1, -1, i, -i, j, -j, k, -k}; generators are right
    // multiplication by i and by j.
    //                      1  -1   i  -i   j  -j   k  -k
    const uint32_t by_i[] = {2, 3, 1, 0, 7, 6, 4, 5};
    const uint32_t by_j[] = {4, 5, 6, 7, 1, 0, 3, 2};
    g = PermGroup::from_generators(
        8, {Permutation(std::vector<uint32_t>(by_i, by_i + 8)),
            Permutation(std::vector<uint32_t>(by_j, by_j + 8))});
    break;
  }
  case Kind::psl2: {
    uint32_t q = static_cast<uint32_t>(d.n);
    uint32_t deg = q + 1; // points 0..q-1 and infinity at index q
    std::vector<uint32_t> shift(deg), flip(deg);
    for (uint32_t x = 0; x < q; ++x) shift[x] = (x + 1) % q;
    shift[q] = q;
    flip[0] = q;
    flip[q] = 0;
    for (uint32_t x = 1; x < q; ++x)
      flip[x] = static_cast<uint32_t>(
          (q - detail::mod_inverse(x, q)) % q);
    g = PermGroup::from_generators(
        deg, {Permutation(std::move(shift)), Permutation(std::move(flip))});
    break;
  }
  case Kind::direct_power: {
    PermGroup base = resolve(*d.base);
    if (static_cast<uint64_t>(base.degree()) * d.n > 10000)
      throw InvalidArgument("direct power degree exceeds 10000");
    g = direct_power(base, static_cast<uint32_t>(d.n)).group;
    break;
  }
  case Kind::explicit_gens: {
    std::vector<Permutation> gens;
    for (const auto &c : d.gen_cycles)
      gens.push_back(parse_permutation(c, d.degree));
    g = PermGroup::from_generators(d.degree, gens);
    break;
  }
  }
  uint64_t expect = descriptor_order(d);
  if (expect != 0 && g.order() != expect)
    throw InternalError("resolved group has order " + std::to_string(g.order()) +
                        ", family formula gives " + std::to_string(expect));
  return g;
}

inline PermGroup resolve(const std::string &text) {
  return resolve(parse_descriptor(text));
}

// ---------------------------------------------------------------------
// The catalogs the verification suites quantify over.

// Groups of order <= 500 exercised by the acceptance suite.
inline std::vector<std::string> catalog_core() {
  return {
      "C1",  "C2",  "C3",  "C4",  "C5",  "C6",   "C7",   "C8",  "C9",
      "C10", "C11", "C12", "C15", "C16", "C20",  "C24",  "C30", "C2^2",
      "C2^3", "C2^4", "C3^2", "C6^2", "D6", "D8", "D10",  "D12", "D16",
      "D20", "D24", "Q8",  "S3",  "S4",  "S5",   "A4",   "A5",  "A6",
      "PSL(2,5)", "PSL(2,7)"};
}

// Larger groups used for the chain-order versus exhaustive-closure checks.
inline std::vector<std::string> catalog_extended() {
  return {"S6", "S7", "A7", "PSL(2,11)", "PSL(2,13)", "A5^2"};
}

} // namespace invgen
