#pragma once

// Conjugacy classes over the full element table, plus the element-table
// scans (center, derived subgroup, normal closures) that the quotient and
// subadditivity machinery feeds on.

#include <cstdint>
#include <vector>

#include "perm_group.hpp"

namespace invgen {

struct ConjClass {
  uint32_t representative; // least element index in the class
  ElementMask mask;
  uint64_t size;
};

struct ConjClassTable {
  std::vector<ConjClass> classes; // ordered by representative index
  std::vector<uint32_t> class_of; // element index -> class id

  uint32_t count() const { return static_cast<uint32_t>(classes.size()); }
};

// Conjugation orbits computed by BFS under conjugation by the generators.
// Scanning start elements in index order makes class ids deterministic and
// puts the identity alone in class 0.
inline ConjClassTable conjugacy_classes(const PermGroup &g,
                                        uint64_t cap = kDefaultElementCap) {
  const ElementTable &t = g.elements(cap);
  uint32_t n = t.size();

  // Per-generator conjugation maps on element indices.
  std::vector<std::vector<uint32_t>> conj_maps;
  for (const auto &gen : g.generators()) {
    std::vector<uint32_t> map(n);
    Permutation ginv = gen.inverse();
    for (uint32_t i = 0; i < n; ++i)
      map[i] = t.index_of(compose(compose(ginv, t.elems[i]), gen));
    conj_maps.push_back(std::move(map));
  }

  ConjClassTable table;
  table.class_of.assign(n, UINT32_MAX);
  for (uint32_t start = 0; start < n; ++start) {
    if (table.class_of[start] != UINT32_MAX) continue;
    uint32_t id = table.count();
    ConjClass cls;
    cls.representative = start;
    cls.mask = ElementMask(n);
    std::vector<uint32_t> queue = {start};
    table.class_of[start] = id;
    cls.mask.set(start);
    while (!queue.empty()) {
      uint32_t x = queue.back();
      queue.pop_back();
      for (const auto &map : conj_maps) {
        uint32_t y = map[x];
        if (table.class_of[y] == UINT32_MAX) {
          table.class_of[y] = id;
          cls.mask.set(y);
          queue.push_back(y);
        }
      }
    }
    cls.size = cls.mask.count();
    table.classes.push_back(std::move(cls));
  }
  return table;
}

// ---------------------------------------------------------------------
// Element-table scans.

inline ElementMask center_mask(const PermGroup &g,
                               uint64_t cap = kDefaultElementCap) {
  const ElementTable &t = g.elements(cap);
  uint32_t n = t.size();
  ElementMask z(n);
  for (uint32_t i = 0; i < n; ++i) {
    bool central = true;
    for (const auto &gen : g.generators()) {
      if (!(compose(t.elems[i], gen) == compose(gen, t.elems[i]))) {
        central = false;
        break;
      }
    }
    if (central) z.set(i);
  }
  return z;
}

// Smallest subgroup containing `seed` and closed under both multiplication
// and conjugation: the normal closure of the seeded elements.
inline ElementMask normal_closure(const PermGroup &g, const ElementMask &seed,
                                  uint64_t cap = kDefaultElementCap) {
  const ElementTable &t = g.elements(cap);
  const auto &mt = g.mult_table(cap);
  uint32_t n = t.size();

  std::vector<std::vector<uint32_t>> conj_maps;
  for (const auto &gen : g.generators()) {
    std::vector<uint32_t> map(n);
    Permutation ginv = gen.inverse();
    for (uint32_t i = 0; i < n; ++i)
      map[i] = t.index_of(compose(compose(ginv, t.elems[i]), gen));
    conj_maps.push_back(std::move(map));
  }

  ElementMask closed(n);
  closed.set(0);
  std::vector<uint32_t> members = {0};
  std::vector<uint32_t> queue = {0};
  auto add = [&](uint32_t x) {
    if (!closed.test(x)) {
      closed.set(x);
      members.push_back(x);
      queue.push_back(x);
    }
  };
  for (uint32_t i = 0; i < n; ++i)
    if (seed.test(i)) add(i);
  while (!queue.empty()) {
    uint32_t x = queue.back();
    queue.pop_back();
    for (const auto &map : conj_maps) add(map[x]);
    // products with everything already in (both sides)
    for (std::size_t k = 0; k < members.size(); ++k) {
      uint32_t m = members[k];
      add(mt[static_cast<uint64_t>(x) * n + m]);
      add(mt[static_cast<uint64_t>(m) * n + x]);
    }
  }
  return closed;
}

inline ElementMask derived_subgroup_mask(const PermGroup &g,
                                         uint64_t cap = kDefaultElementCap) {
  const ElementTable &t = g.elements(cap);
  uint32_t n = t.size();
  ElementMask seed(n);
  for (const auto &a : g.generators())
    for (const auto &b : g.generators()) {
      Permutation comm =
          compose(compose(a.inverse(), b.inverse()), compose(a, b));
      seed.set(t.index_of(comm));
    }
  return normal_closure(g, seed, cap);
}

inline bool is_abelian(const PermGroup &g) {
  const auto &gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!(compose(gens[i], gens[j]) == compose(gens[j], gens[i])))
        return false;
  return true;
}

// Nonabelian and simple: the normal closure of every nonidentity element
// is the whole group.  Checking one representative per conjugacy class
// suffices because normal closures are constant on classes.
inline bool is_nonabelian_simple(const PermGroup &g,
                                 uint64_t cap = kDefaultElementCap) {
  if (g.order() == 1 || is_abelian(g)) return false;
  const ConjClassTable classes = conjugacy_classes(g, cap);
  uint32_t n = g.elements(cap).size();
  for (uint32_t c = 1; c < classes.count(); ++c) {
    ElementMask seed(n);
    seed.set(classes.classes[c].representative);
    if (normal_closure(g, seed, cap).count() != g.order()) return false;
  }
  return true;
}

} // namespace invgen
