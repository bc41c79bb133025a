#pragma once

// Homomorphisms arising from coset actions, and quotients by normal
// subgroups realized as faithful permutation groups on the coset space.

#include <cstdint>
#include <vector>

#include "perm_group.hpp"

namespace invgen {

struct GroupHom {
  PermGroup source;
  PermGroup target;
  std::vector<Permutation> gen_images; // one per source generator
  // Image of every source element, as a target element index.
  std::vector<uint32_t> elem_images;
  ElementMask kernel_mask; // over source elements

  Permutation apply(const Permutation &g) const {
    uint32_t idx = source.elements().index_of(g);
    return target.elements().elems[elem_images[idx]];
  }
  Permutation apply_index(uint32_t source_idx) const {
    return target.elements().elems[elem_images[source_idx]];
  }
};

// Action of G on the right cosets of the subgroup given by `subgroup_mask`.
// The target is the image of the action (degree = index of the subgroup);
// its kernel is the normal core.  Coset ids are assigned by scanning
// elements in index order, so the representative of coset k is the least
// element it contains.
inline GroupHom coset_action(const PermGroup &g, const ElementMask &subgroup_mask,
                             uint64_t cap = kDefaultElementCap) {
  if (!mask_is_subgroup(g, subgroup_mask, cap))
    throw InvalidArgument("coset_action: mask is not closed under composition");
  const ElementTable &t = g.elements(cap);
  const auto &mt = g.mult_table(cap);
  uint32_t n = t.size();

  // Coset of element x is determined by the set H*x; two elements x, y lie
  // in the same coset iff x * y^-1 in H.  Assign ids greedily.
  std::vector<uint32_t> coset_of(n, UINT32_MAX);
  std::vector<uint32_t> coset_rep;
  std::vector<uint32_t> members; // members of H, for fast coset fills
  for (uint32_t i = 0; i < n; ++i)
    if (subgroup_mask.test(i)) members.push_back(i);
  for (uint32_t x = 0; x < n; ++x) {
    if (coset_of[x] != UINT32_MAX) continue;
    uint32_t id = static_cast<uint32_t>(coset_rep.size());
    coset_rep.push_back(x);
    for (uint32_t h : members)
      coset_of[mt[static_cast<uint64_t>(h) * n + x]] = id;
  }
  uint32_t index = static_cast<uint32_t>(coset_rep.size());

  // Permutation induced by element e: coset(H x) -> coset(H x e).
  auto action_of = [&](uint32_t e) {
    std::vector<uint32_t> images(index);
    for (uint32_t c = 0; c < index; ++c)
      images[c] = coset_of[mt[static_cast<uint64_t>(coset_rep[c]) * n + e]];
    return Permutation(std::move(images));
  };

  GroupHom hom;
  hom.source = g;
  for (const auto &gen : g.generators())
    hom.gen_images.push_back(action_of(t.index_of(gen)));
  hom.target = PermGroup::from_generators(index, hom.gen_images);

  const ElementTable &tt = hom.target.elements(cap);
  hom.elem_images.resize(n);
  hom.kernel_mask = ElementMask(n);
  for (uint32_t e = 0; e < n; ++e) {
    Permutation img = action_of(e);
    hom.elem_images[e] = tt.index_of(img);
    if (img.is_identity()) hom.kernel_mask.set(e);
  }
  return hom;
}

// Whether the subgroup mask is stable under conjugation by the group's
// generators (equivalently, normal).
inline bool mask_is_normal(const PermGroup &g, const ElementMask &subgroup_mask,
                           uint64_t cap = kDefaultElementCap) {
  const ElementTable &t = g.elements(cap);
  for (const auto &gen : g.generators()) {
    for (uint32_t i = 0; i < t.size(); ++i) {
      if (!subgroup_mask.test(i)) continue;
      Permutation c = conjugate(t.elems[i], gen);
      if (!subgroup_mask.test(t.index_of(c))) return false;
    }
  }
  return true;
}

// G/N as a faithful permutation group of degree |G:N|, via the coset
// action.  Throws NotNormal when conjugation closure fails.
inline PermGroup quotient(const PermGroup &g, const ElementMask &normal_mask,
                          uint64_t cap = kDefaultElementCap) {
  if (!mask_is_subgroup(g, normal_mask, cap))
    throw InvalidArgument("quotient: mask is not a subgroup");
  if (!mask_is_normal(g, normal_mask, cap))
    throw NotNormal("quotient: subgroup is not normal");
  GroupHom hom = coset_action(g, normal_mask, cap);
  if (hom.target.order() * normal_mask.count() != g.order())
    throw InternalError("quotient: order mismatch");
  return hom.target;
}

} // namespace invgen
