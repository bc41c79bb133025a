#pragma once

// Automorphism groups found by backtracking over images of a deterministic
// generating sequence.  Candidate images are filtered by element order and
// conjugacy class size, partial assignments are pruned by generated-subgroup
// order, and every surviving assignment is validated against the full
// multiplication table.  Nothing is taken from classification tables.

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "conjugacy.hpp"
#include "perm_group.hpp"

namespace invgen {

struct AutGroup {
  PermGroup base;
  // Each automorphism as a bijection on element indices of the base group.
  std::vector<std::vector<uint32_t>> maps;
  uint64_t inner_count = 1;
  uint64_t out_order = 1;
  std::vector<uint32_t> generator_seq; // generating element indices used

  uint64_t size() const { return maps.size(); }
};

namespace detail {

struct IndexVecHash {
  std::size_t operator()(const std::vector<uint32_t> &v) const {
    std::size_t h = 1469598103934665603ull;
    for (uint32_t x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

inline uint64_t closure_order(const std::vector<uint32_t> &mt, uint32_t n,
                              const std::vector<uint32_t> &gens) {
  return close_generated(mt, n, gens).count();
}

} // namespace detail

inline AutGroup automorphism_group(const PermGroup &g,
                                   uint64_t budget = kDefaultAutBudget) {
  if (g.order() > budget)
    throw BudgetExceeded("automorphism search: order " +
                         std::to_string(g.order()) + " exceeds budget " +
                         std::to_string(budget));
  const ElementTable &t = g.elements(budget);
  const auto &mt = g.mult_table(budget);
  const ConjClassTable classes = conjugacy_classes(g, budget);
  uint32_t n = t.size();

  AutGroup aut;
  aut.base = g;

  if (n == 1) {
    aut.maps.push_back({0});
    aut.inner_count = 1;
    aut.out_order = 1;
    return aut;
  }

  // Deterministic generating sequence: repeatedly adjoin the least element
  // outside the subgroup generated so far.
  std::vector<uint32_t> seq;
  {
    ElementMask have(n);
    have.set(0);
    while (have.count() < n) {
      uint32_t pick = 0;
      for (uint32_t i = 1; i < n; ++i)
        if (!have.test(i)) {
          pick = i;
          break;
        }
      seq.push_back(pick);
      have = detail::close_generated(mt, n, seq);
    }
  }
  aut.generator_seq = seq;

  // BFS word tree over the generating sequence; used to extend a candidate
  // assignment to all elements in O(n).
  std::vector<uint32_t> bfs_order, bfs_parent(n), bfs_gen(n);
  {
    std::vector<bool> seen(n, false);
    seen[0] = true;
    bfs_order.push_back(0);
    for (std::size_t head = 0; head < bfs_order.size(); ++head) {
      uint32_t x = bfs_order[head];
      for (std::size_t k = 0; k < seq.size(); ++k) {
        uint32_t y = mt[static_cast<uint64_t>(x) * n + seq[k]];
        if (!seen[y]) {
          seen[y] = true;
          bfs_parent[y] = x;
          bfs_gen[y] = static_cast<uint32_t>(k);
          bfs_order.push_back(y);
        }
      }
    }
  }

  // Candidate images per sequence entry: equal element order and equal
  // conjugacy class size.
  std::vector<std::vector<uint32_t>> candidates(seq.size());
  std::vector<uint64_t> seq_sub_order(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) {
    std::vector<uint32_t> prefix(seq.begin(), seq.begin() + k + 1);
    seq_sub_order[k] = detail::closure_order(mt, n, prefix);
    uint64_t ord = t.orders[seq[k]];
    uint64_t csize = classes.classes[classes.class_of[seq[k]]].size;
    for (uint32_t i = 1; i < n; ++i)
      if (t.orders[i] == ord &&
          classes.classes[classes.class_of[i]].size == csize)
        candidates[k].push_back(i);
  }

  std::vector<uint32_t> assignment(seq.size());
  std::vector<uint32_t> phi(n);
  auto validate_and_emit = [&]() {
    // Build phi along the BFS tree, then check bijectivity and
    // multiplicativity against the generators.
    phi[0] = 0;
    for (std::size_t i = 1; i < bfs_order.size(); ++i) {
      uint32_t e = bfs_order[i];
      phi[e] = mt[static_cast<uint64_t>(phi[bfs_parent[e]]) * n +
                  assignment[bfs_gen[e]]];
    }
    std::vector<bool> hit(n, false);
    for (uint32_t i = 0; i < n; ++i) {
      if (hit[phi[i]]) return;
      hit[phi[i]] = true;
    }
    for (uint32_t x = 0; x < n; ++x)
      for (std::size_t k = 0; k < seq.size(); ++k) {
        uint32_t lhs = phi[mt[static_cast<uint64_t>(x) * n + seq[k]]];
        uint32_t rhs = mt[static_cast<uint64_t>(phi[x]) * n + assignment[k]];
        if (lhs != rhs) return;
      }
    aut.maps.push_back(phi);
  };

  // Depth-first over candidate images, ascending, so the emitted list is
  // deterministic.
  auto search = [&](auto &&self, std::size_t k) -> void {
    if (k == seq.size()) {
      validate_and_emit();
      return;
    }
    for (uint32_t cand : candidates[k]) {
      assignment[k] = cand;
      std::vector<uint32_t> prefix(assignment.begin(),
                                   assignment.begin() + k + 1);
      if (detail::closure_order(mt, n, prefix) != seq_sub_order[k]) continue;
      self(self, k + 1);
    }
  };
  search(search, 0);

  if (aut.maps.empty()) throw InternalError("automorphism search found nothing");

  // Inner automorphisms: conjugation maps, matched against the list.
  std::unordered_map<std::vector<uint32_t>, uint32_t, detail::IndexVecHash>
      position;
  for (uint32_t i = 0; i < aut.maps.size(); ++i)
    position.emplace(aut.maps[i], i);
  std::unordered_map<std::vector<uint32_t>, char, detail::IndexVecHash>
      inner_seen;
  for (uint32_t gidx = 0; gidx < n; ++gidx) {
    std::vector<uint32_t> conj(n);
    Permutation ginv = t.elems[gidx].inverse();
    for (uint32_t x = 0; x < n; ++x)
      conj[x] = t.index_of(compose(compose(ginv, t.elems[x]), t.elems[gidx]));
    if (position.find(conj) == position.end())
      throw InternalError("inner automorphism missing from search results");
    inner_seen.emplace(std::move(conj), 1);
  }
  aut.inner_count = inner_seen.size();
  if (aut.maps.size() % aut.inner_count != 0)
    throw InternalError("inner automorphisms do not divide Aut");
  aut.out_order = aut.maps.size() / aut.inner_count;
  return aut;
}

// Lexicographically least image of the tuple under the diagonal action of
// the listed automorphisms.  Two tuples lie in the same orbit iff their
// canonical forms are equal.
inline std::vector<uint32_t>
tuple_orbit_canonical(const AutGroup &aut, const std::vector<uint32_t> &tuple) {
  std::vector<uint32_t> best;
  std::vector<uint32_t> image(tuple.size());
  for (const auto &map : aut.maps) {
    for (std::size_t i = 0; i < tuple.size(); ++i) image[i] = map[tuple[i]];
    if (best.empty() || image < best) best = image;
  }
  if (best.empty()) best = tuple; // no automorphisms listed: identity orbit
  return best;
}

// Permutations induced on conjugacy class ids, deduplicated.  `witness`
// maps each induced permutation back to the index of one automorphism that
// induces it.
struct ClassAction {
  std::vector<std::vector<uint32_t>> maps; // class id -> class id
  std::vector<uint32_t> witness;           // index into aut.maps

  uint64_t size() const { return maps.size(); }
};

inline ClassAction class_action(const AutGroup &aut,
                                const ConjClassTable &classes) {
  ClassAction act;
  std::unordered_map<std::vector<uint32_t>, uint32_t, detail::IndexVecHash>
      seen;
  for (uint32_t a = 0; a < aut.maps.size(); ++a) {
    std::vector<uint32_t> induced(classes.count());
    for (uint32_t c = 0; c < classes.count(); ++c)
      induced[c] = classes.class_of[aut.maps[a][classes.classes[c].representative]];
    if (seen.emplace(induced, a).second) {
      act.maps.push_back(std::move(induced));
      act.witness.push_back(a);
    }
  }
  return act;
}

} // namespace invgen
