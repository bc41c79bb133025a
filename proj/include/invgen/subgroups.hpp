#pragma once

// Exhaustive subgroup lattice for groups within the lattice budget.
//
// Enumeration is by cyclic-closure layering: seed with all cyclic
// subgroups, then repeatedly adjoin one cyclic subgroup's generator to a
// previously found subgroup and close, deduplicating by element mask.
// Every subgroup is generated by finitely many cyclic subgroups, so the
// layering reaches all of them.  No conjugacy-class shortcuts: maximality
// flags come from a full containment scan.

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "conjugacy.hpp"
#include "hom.hpp"
#include "perm_group.hpp"

namespace invgen {

struct SubgroupRecord {
  ElementMask mask;
  std::vector<uint32_t> gens; // element indices generating the subgroup
  uint64_t order = 1;
  uint32_t subgroup_class = 0; // conjugacy class of subgroups
  bool maximal = false;
};

struct SubgroupLattice {
  std::vector<SubgroupRecord> records; // sorted by (order, mask)
  uint32_t subgroup_class_count = 0;
  std::vector<uint32_t> maximal_ids; // record ids flagged maximal

  const SubgroupRecord &record(uint32_t id) const { return records[id]; }
  uint32_t size() const { return static_cast<uint32_t>(records.size()); }
};

inline SubgroupLattice all_subgroups(const PermGroup &g,
                                     uint64_t budget = kDefaultLatticeBudget) {
  if (g.order() > budget)
    throw BudgetExceeded("subgroup lattice: order " + std::to_string(g.order()) +
                         " exceeds budget " + std::to_string(budget));
  const ElementTable &t = g.elements(budget);
  const auto &mt = g.mult_table(budget);
  uint32_t n = t.size();
  constexpr std::size_t kMaxRecords = 200000;

  struct Found {
    ElementMask mask;
    std::vector<uint32_t> gens;
  };
  std::vector<Found> found;
  std::unordered_map<ElementMask, uint32_t, ElementMask::Hash> seen;
  auto try_add = [&](ElementMask mask, std::vector<uint32_t> gens) -> bool {
    auto it = seen.find(mask);
    if (it != seen.end()) return false;
    if (found.size() >= kMaxRecords)
      throw BudgetExceeded("subgroup lattice: more than " +
                           std::to_string(kMaxRecords) + " subgroups");
    seen.emplace(mask, static_cast<uint32_t>(found.size()));
    found.push_back({std::move(mask), std::move(gens)});
    return true;
  };

  // Trivial subgroup, then all distinct cyclic subgroups.
  {
    ElementMask triv(n);
    triv.set(0);
    try_add(std::move(triv), {});
  }
  std::vector<uint32_t> cyclic_gen; // generator element of each cyclic subgroup
  for (uint32_t x = 1; x < n; ++x) {
    ElementMask m = detail::close_generated(mt, n, {x});
    if (try_add(std::move(m), {x})) cyclic_gen.push_back(x);
  }

  // Layering: adjoin one cyclic generator to each found subgroup.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (uint32_t cg : cyclic_gen) {
      if (found[i].mask.test(cg)) continue;
      std::vector<uint32_t> gens = found[i].gens;
      gens.push_back(cg);
      ElementMask m = detail::close_generated(mt, n, gens);
      try_add(std::move(m), std::move(gens));
    }
  }

  SubgroupLattice lattice;
  lattice.records.reserve(found.size());
  for (auto &f : found) {
    SubgroupRecord rec;
    rec.order = f.mask.count();
    rec.mask = std::move(f.mask);
    rec.gens = std::move(f.gens);
    lattice.records.push_back(std::move(rec));
  }
  std::sort(lattice.records.begin(), lattice.records.end(),
            [](const SubgroupRecord &a, const SubgroupRecord &b) {
              if (a.order != b.order) return a.order < b.order;
              return a.mask < b.mask;
            });
  if (lattice.records.back().order != g.order())
    throw InternalError("subgroup lattice did not reach the full group");

  // Conjugacy classes of subgroups: orbits of masks under conjugation by
  // the group generators.  Class ids in discovery order over record ids.
  std::unordered_map<ElementMask, uint32_t, ElementMask::Hash> rec_of_mask;
  for (uint32_t i = 0; i < lattice.size(); ++i)
    rec_of_mask.emplace(lattice.records[i].mask, i);
  std::vector<std::vector<uint32_t>> conj_maps;
  for (const auto &gen : g.generators()) {
    std::vector<uint32_t> map(n);
    Permutation ginv = gen.inverse();
    for (uint32_t i = 0; i < n; ++i)
      map[i] = t.index_of(compose(compose(ginv, t.elems[i]), gen));
    conj_maps.push_back(std::move(map));
  }
  auto conj_mask = [&](const ElementMask &m, const std::vector<uint32_t> &map) {
    ElementMask out(n);
    for (uint32_t i = 0; i < n; ++i)
      if (m.test(i)) out.set(map[i]);
    return out;
  };
  std::vector<bool> classed(lattice.size(), false);
  for (uint32_t i = 0; i < lattice.size(); ++i) {
    if (classed[i]) continue;
    uint32_t cls = lattice.subgroup_class_count++;
    std::vector<uint32_t> queue = {i};
    classed[i] = true;
    lattice.records[i].subgroup_class = cls;
    while (!queue.empty()) {
      uint32_t r = queue.back();
      queue.pop_back();
      for (const auto &map : conj_maps) {
        ElementMask cm = conj_mask(lattice.records[r].mask, map);
        uint32_t other = rec_of_mask.at(cm);
        if (!classed[other]) {
          classed[other] = true;
          lattice.records[other].subgroup_class = cls;
          queue.push_back(other);
        }
      }
    }
  }

  // Maximality: proper subgroups not strictly contained in any other
  // proper subgroup.  Records are sorted by order, so scan larger orders.
  for (uint32_t i = 0; i < lattice.size(); ++i) {
    SubgroupRecord &rec = lattice.records[i];
    if (rec.order == g.order()) continue;
    bool maximal = true;
    for (uint32_t j = i + 1; j < lattice.size() && maximal; ++j) {
      const SubgroupRecord &big = lattice.records[j];
      if (big.order == g.order() || big.order <= rec.order) continue;
      if (big.order % rec.order != 0) continue;
      if (rec.mask.is_subset_of(big.mask)) maximal = false;
    }
    rec.maximal = maximal;
    if (maximal) lattice.maximal_ids.push_back(i);
  }
  return lattice;
}

// One representative per conjugacy class of maximal subgroups, ordered by
// descending subgroup order, then mask.
inline std::vector<uint32_t>
maximal_class_representatives(const SubgroupLattice &lattice) {
  std::vector<uint32_t> reps;
  std::unordered_set<uint32_t> seen_classes;
  for (uint32_t id : lattice.maximal_ids) {
    uint32_t cls = lattice.records[id].subgroup_class;
    if (seen_classes.insert(cls).second) reps.push_back(id);
  }
  std::sort(reps.begin(), reps.end(), [&](uint32_t a, uint32_t b) {
    const auto &ra = lattice.records[a];
    const auto &rb = lattice.records[b];
    if (ra.order != rb.order) return ra.order > rb.order;
    return ra.mask < rb.mask;
  });
  return reps;
}

// Frattini subgroup: intersection of the masks of all maximal subgroups
// (every conjugate, not just class representatives).  For the trivial
// group there are no maximal subgroups and the intersection is the whole
// group.
inline ElementMask frattini_mask(const PermGroup &g,
                                 const SubgroupLattice &lattice) {
  ElementMask phi = g.elements().full_mask();
  for (uint32_t id : lattice.maximal_ids) phi &= lattice.records[id].mask;
  return phi;
}

// Normal subgroups, read off the lattice: a subgroup is normal iff its
// mask is a union of conjugacy classes of elements.
inline std::vector<uint32_t> normal_subgroup_ids(const PermGroup &g,
                                                 const SubgroupLattice &lattice,
                                                 const ConjClassTable &classes) {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < lattice.size(); ++i) {
    const ElementMask &m = lattice.records[i].mask;
    bool normal = true;
    for (const auto &cls : classes.classes) {
      if (!m.test(cls.representative)) continue;
      if (!cls.mask.is_subset_of(m)) {
        normal = false;
        break;
      }
    }
    if (normal) out.push_back(i);
  }
  return out;
}

// Union of all conjugates of the subgroup with the given record id.
inline ElementMask conjugate_union_mask(const SubgroupLattice &lattice,
                                        uint32_t record_id) {
  uint32_t cls = lattice.records[record_id].subgroup_class;
  ElementMask u(lattice.records[record_id].mask.size());
  for (const auto &rec : lattice.records)
    if (rec.subgroup_class == cls) u |= rec.mask;
  return u;
}

} // namespace invgen
