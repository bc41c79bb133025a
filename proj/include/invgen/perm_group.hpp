#pragma once

// Permutation groups backed by a deterministic stabilizer chain (base and
// strong generating set).  Base points are chosen as the smallest moved
// point at each level and all processing orders are fixed, so orders,
// transversals and element indices are reproducible across runs.
//
// A PermGroup is immutable after construction; the element table and
// multiplication table are populated lazily on first use and cached.
// Construction and first access are single-threaded per object; afterwards
// concurrent read-only use is safe.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "bitmask.hpp"
#include "error.hpp"
#include "perm.hpp"

namespace invgen {

inline constexpr uint64_t kDefaultElementCap = 100000;
inline constexpr uint64_t kDefaultLatticeBudget = 2500;
inline constexpr uint64_t kDefaultAutBudget = 1000;
inline constexpr uint64_t kDefaultTupleBudget = 20000000;

// ---------------------------------------------------------------------
// Stabilizer chain.

class StabilizerChain {
public:
  struct Level {
    uint32_t base_point = 0;
    std::vector<Permutation> gens; // strong generators first needed here
    std::vector<uint32_t> orbit;   // fundamental orbit, BFS discovery order
    std::vector<int32_t> orbit_pos;       // point -> index in orbit, or -1
    std::vector<Permutation> transversal; // transversal[k]: base -> orbit[k]
  };

  static StabilizerChain build(uint32_t degree,
                               const std::vector<Permutation> &gens) {
    StabilizerChain chain;
    chain.degree_ = degree;
    for (const auto &g : gens) {
      if (g.degree() != degree)
        throw InvalidArgument("generator degree mismatch");
      if (!g.is_identity()) chain.add_generator(0, g);
    }
    chain.close();
    return chain;
  }

  uint32_t degree() const { return degree_; }
  const std::vector<Level> &levels() const { return levels_; }

  uint64_t order() const {
    unsigned __int128 n = 1;
    for (const auto &lv : levels_) {
      n *= lv.orbit.size();
      if (n > static_cast<unsigned __int128>(UINT64_MAX))
        throw BudgetExceeded("group order exceeds 2^64");
    }
    return static_cast<uint64_t>(n);
  }

  bool contains(const Permutation &p) const {
    if (p.degree() != degree_)
      throw InvalidArgument("membership test: degree mismatch");
    auto [residue, level] = sift(0, p);
    (void)level;
    return residue.is_identity();
  }

  // Sift p through levels starting at `from`; returns the residue and the
  // level at which sifting stopped (levels_.size() if it ran through).
  std::pair<Permutation, std::size_t> sift(std::size_t from,
                                           Permutation p) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      const Level &lv = levels_[i];
      uint32_t image = p[lv.base_point];
      int32_t pos = lv.orbit_pos[image];
      if (pos < 0) return {std::move(p), i};
      // p = h * u with u in the transversal and h fixing the base point.
      p = compose(p, lv.transversal[static_cast<std::size_t>(pos)].inverse());
    }
    return {std::move(p), levels_.size()};
  }

  // Uniformly random element: one transversal representative per level,
  // multiplied deepest-first.  Index reduction uses rng() % n, which is
  // deterministic across platforms (std::mt19937_64 is fully specified).
  Permutation random_element(std::mt19937_64 &rng) const {
    Permutation x = Permutation::identity(degree_);
    for (std::size_t i = levels_.size(); i-- > 0;) {
      const auto &tr = levels_[i].transversal;
      x = compose(x, tr[static_cast<std::size_t>(rng() % tr.size())]);
    }
    return x;
  }

  // All group elements (unsorted), by expanding transversal products.
  std::vector<Permutation> enumerate() const {
    std::vector<Permutation> elems{Permutation::identity(degree_)};
    for (std::size_t i = levels_.size(); i-- > 0;) {
      std::vector<Permutation> next;
      next.reserve(elems.size() * levels_[i].transversal.size());
      for (const auto &x : elems)
        for (const auto &u : levels_[i].transversal)
          next.push_back(compose(x, u));
      elems = std::move(next);
    }
    return elems;
  }

private:
  uint32_t degree_ = 0;
  std::vector<Level> levels_;

  // Generators stabilizing all base points before level i.
  std::vector<const Permutation *> gens_from(std::size_t i) const {
    std::vector<const Permutation *> out;
    for (std::size_t j = i; j < levels_.size(); ++j)
      for (const auto &g : levels_[j].gens) out.push_back(&g);
    return out;
  }

  void add_generator(std::size_t level, const Permutation &g) {
    if (level == levels_.size()) {
      Level lv;
      lv.base_point = g.smallest_moved_point();
      levels_.push_back(std::move(lv));
    }
    levels_[level].gens.push_back(g);
  }

  void rebuild_orbit(std::size_t i) {
    Level &lv = levels_[i];
    auto gens = gens_from(i);
    lv.orbit.assign(1, lv.base_point);
    lv.orbit_pos.assign(degree_, -1);
    lv.orbit_pos[lv.base_point] = 0;
    lv.transversal.assign(1, Permutation::identity(degree_));
    for (std::size_t head = 0; head < lv.orbit.size(); ++head) {
      uint32_t pt = lv.orbit[head];
      for (const Permutation *g : gens) {
        uint32_t img = (*g)[pt];
        if (lv.orbit_pos[img] < 0) {
          lv.orbit_pos[img] = static_cast<int32_t>(lv.orbit.size());
          lv.orbit.push_back(img);
          lv.transversal.push_back(compose(lv.transversal[head], *g));
        }
      }
    }
  }

  // Bottom-up verification: every Schreier generator of a verified level
  // sifts to the identity through the levels below it.
  void close() {
    if (levels_.empty()) return;
    std::size_t i = levels_.size() - 1;
    while (true) {
      rebuild_orbit(i);
      bool added = false;
      const Level &lv = levels_[i];
      auto gens = gens_from(i);
      for (std::size_t k = 0; k < lv.orbit.size() && !added; ++k) {
        for (const Permutation *g : gens) {
          uint32_t img = (*g)[lv.orbit[k]];
          const Permutation &u_img =
              lv.transversal[static_cast<std::size_t>(lv.orbit_pos[img])];
          Permutation schreier =
              compose(compose(lv.transversal[k], *g), u_img.inverse());
          auto [residue, j] = sift(i + 1, std::move(schreier));
          if (!residue.is_identity()) {
            add_generator(j, residue);
            i = j;
            added = true;
            break;
          }
        }
      }
      if (added) continue;
      if (i == 0) break;
      --i;
    }
  }
};

// ---------------------------------------------------------------------
// Element table: all elements sorted lexicographically by image array,
// which places the identity at index 0.  Indices are the stable element
// ids used by masks, class tables and certificates.

struct ElementTable {
  std::vector<Permutation> elems;
  std::unordered_map<Permutation, uint32_t, PermHash> index;
  std::vector<uint32_t> inverse;   // index of each element's inverse
  std::vector<uint64_t> orders;    // element orders

  uint32_t size() const { return static_cast<uint32_t>(elems.size()); }

  uint32_t index_of(const Permutation &p) const {
    auto it = index.find(p);
    if (it == index.end())
      throw InvalidArgument("element is not in the group");
    return it->second;
  }
  bool lookup(const Permutation &p, uint32_t &out) const {
    auto it = index.find(p);
    if (it == index.end()) return false;
    out = it->second;
    return true;
  }

  ElementMask full_mask() const {
    ElementMask m(size());
    for (uint32_t i = 0; i < size(); ++i) m.set(i);
    return m;
  }
};

// ---------------------------------------------------------------------
// PermGroup.

class PermGroup {
public:
  PermGroup() = default;

  static PermGroup from_generators(uint32_t degree,
                                   std::vector<Permutation> gens) {
    if (gens.empty()) throw InvalidArgument("generator list is empty");
    PermGroup g;
    g.impl_ = std::make_shared<Impl>();
    g.impl_->degree = degree;
    g.impl_->gens = std::move(gens);
    g.impl_->chain = StabilizerChain::build(degree, g.impl_->gens);
    g.impl_->order = g.impl_->chain.order();
    return g;
  }

  bool valid() const { return impl_ != nullptr; }
  uint32_t degree() const { return impl_->degree; }
  const std::vector<Permutation> &generators() const { return impl_->gens; }
  uint64_t order() const { return impl_->order; }
  const StabilizerChain &chain() const { return impl_->chain; }

  bool contains(const Permutation &p) const { return impl_->chain.contains(p); }

  Permutation random_element(std::mt19937_64 &rng) const {
    return impl_->chain.random_element(rng);
  }

  bool has_element_table() const { return impl_->table.has_value(); }

  // Full element table; fails loudly when the order exceeds the cap.
  const ElementTable &elements(uint64_t cap = kDefaultElementCap) const {
    if (!impl_->table) {
      if (order() > cap)
        throw CapExceeded("element table needs order " +
                          std::to_string(order()) + " > cap " +
                          std::to_string(cap));
      ElementTable t;
      t.elems = impl_->chain.enumerate();
      std::sort(t.elems.begin(), t.elems.end());
      t.index.reserve(t.elems.size() * 2);
      for (uint32_t i = 0; i < t.elems.size(); ++i) t.index.emplace(t.elems[i], i);
      if (t.elems.size() != order())
        throw InternalError("element enumeration does not match chain order");
      t.inverse.resize(t.elems.size());
      t.orders.resize(t.elems.size());
      for (uint32_t i = 0; i < t.elems.size(); ++i) {
        t.inverse[i] = t.index.at(t.elems[i].inverse());
        t.orders[i] = t.elems[i].order();
      }
      impl_->table = std::move(t);
    }
    return *impl_->table;
  }

  // Row-major multiplication table over element indices:
  // entry(a, b) = index of elems[a] * elems[b]  (apply a, then b).
  const std::vector<uint32_t> &mult_table(uint64_t cap = kDefaultElementCap) const {
    if (impl_->mult.empty()) {
      const ElementTable &t = elements(cap);
      uint64_t n = t.size();
      if (n * n > 64ull * 1024 * 1024)
        throw BudgetExceeded("multiplication table too large for order " +
                             std::to_string(n));
      impl_->mult.resize(n * n);
      for (uint32_t a = 0; a < n; ++a)
        for (uint32_t b = 0; b < n; ++b)
          impl_->mult[a * n + b] = t.index_of(compose(t.elems[a], t.elems[b]));
    }
    return impl_->mult;
  }

  uint32_t mult(uint32_t a, uint32_t b) const {
    return impl_->mult[static_cast<uint64_t>(a) * impl_->table->size() + b];
  }

private:
  struct Impl {
    uint32_t degree = 0;
    std::vector<Permutation> gens;
    StabilizerChain chain;
    uint64_t order = 1;
    mutable std::optional<ElementTable> table;
    mutable std::vector<uint32_t> mult;
  };
  std::shared_ptr<Impl> impl_;
};

// Order of the subgroup generated by `gens` inside Sym(degree), without
// building a PermGroup.  Workhorse of the sampling checks.
inline uint64_t order_of_generated(uint32_t degree,
                                   const std::vector<Permutation> &gens) {
  return StabilizerChain::build(degree, gens).order();
}

// ---------------------------------------------------------------------
// Subgroups from masks.

namespace detail {

// Elements of the subgroup generated by the given element indices: BFS
// from the identity under right multiplication through the mult table.
inline ElementMask close_generated(const std::vector<uint32_t> &mt, uint32_t n,
                                   const std::vector<uint32_t> &gens) {
  ElementMask have(n);
  have.set(0);
  std::vector<uint32_t> queue = {0};
  while (!queue.empty()) {
    uint32_t x = queue.back();
    queue.pop_back();
    for (uint32_t g : gens) {
      uint32_t y = mt[static_cast<uint64_t>(x) * n + g];
      if (!have.test(y)) {
        have.set(y);
        queue.push_back(y);
      }
    }
  }
  return have;
}

} // namespace detail

inline bool mask_is_subgroup(const PermGroup &g, const ElementMask &mask,
                             uint64_t cap = kDefaultElementCap) {
  const ElementTable &t = g.elements(cap);
  if (mask.size() != t.size() || !mask.test(0)) return false;
  const auto &mt = g.mult_table(cap);
  uint32_t n = t.size();
  for (uint32_t a = 0; a < n; ++a) {
    if (!mask.test(a)) continue;
    for (uint32_t b = 0; b < n; ++b)
      if (mask.test(b) && !mask.test(mt[static_cast<uint64_t>(a) * n + b]))
        return false;
  }
  return true;
}

// Greedy generating set for the subgroup given by a mask: repeatedly
// adjoin the least element not yet generated.  Deterministic.
inline std::vector<uint32_t> mask_generators(const PermGroup &g,
                                             const ElementMask &mask,
                                             uint64_t cap = kDefaultElementCap) {
  const ElementTable &t = g.elements(cap);
  const auto &mt = g.mult_table(cap);
  uint32_t n = t.size();
  std::vector<uint32_t> gens;
  ElementMask have(n);
  have.set(0);
  std::size_t have_count = 1;
  std::size_t target = mask.count();
  while (have_count < target) {
    uint32_t pick = n;
    for (uint32_t i = 1; i < n; ++i)
      if (mask.test(i) && !have.test(i)) {
        pick = i;
        break;
      }
    if (pick == n) throw InternalError("mask_generators: mask not closed");
    gens.push_back(pick);
    have = detail::close_generated(mt, n, gens);
    have_count = have.count();
  }
  return gens;
}

// The subgroup named by a mask, as a PermGroup on the same points.
// The trivial mask yields the trivial group generated by the identity.
inline PermGroup subgroup_from_mask(const PermGroup &g, const ElementMask &mask,
                                    uint64_t cap = kDefaultElementCap) {
  const ElementTable &t = g.elements(cap);
  std::vector<uint32_t> gen_idx = mask_generators(g, mask, cap);
  std::vector<Permutation> gens;
  if (gen_idx.empty()) {
    gens.push_back(Permutation::identity(g.degree()));
  } else {
    for (uint32_t i : gen_idx) gens.push_back(t.elems[i]);
  }
  return PermGroup::from_generators(g.degree(), std::move(gens));
}

// ---------------------------------------------------------------------
// Direct powers: m commuting copies of a base group on m disjoint blocks
// of points, with component embeddings and projections.

struct DirectPower {
  PermGroup group;
  PermGroup base;
  uint32_t factors = 1;
  uint32_t base_degree = 0;

  // Base-group element t placed in block j, identity elsewhere.
  Permutation embed(uint32_t block, const Permutation &t) const {
    if (t.degree() != base_degree)
      throw InvalidArgument("embed: degree mismatch");
    std::vector<uint32_t> images(group.degree());
    std::iota(images.begin(), images.end(), 0u);
    uint32_t off = block * base_degree;
    for (uint32_t x = 0; x < base_degree; ++x) images[off + x] = off + t[x];
    return Permutation(std::move(images));
  }

  // Restriction of a block-diagonal element to block j.
  Permutation project(uint32_t block, const Permutation &g) const {
    uint32_t off = block * base_degree;
    std::vector<uint32_t> images(base_degree);
    for (uint32_t x = 0; x < base_degree; ++x) {
      uint32_t img = g[off + x];
      if (img < off || img >= off + base_degree)
        throw InvalidArgument("project: element does not preserve the block");
      images[x] = img - off;
    }
    return Permutation(std::move(images));
  }

  // Assemble an element from one base-group component per block.
  Permutation assemble(const std::vector<Permutation> &components) const {
    if (components.size() != factors)
      throw InvalidArgument("assemble: wrong number of components");
    std::vector<uint32_t> images(group.degree());
    for (uint32_t j = 0; j < factors; ++j) {
      uint32_t off = j * base_degree;
      for (uint32_t x = 0; x < base_degree; ++x)
        images[off + x] = off + components[j][x];
    }
    return Permutation(std::move(images));
  }
};

inline DirectPower direct_power(const PermGroup &base, uint32_t m) {
  if (m < 1) throw InvalidArgument("direct power exponent must be >= 1");
  DirectPower dp;
  dp.base = base;
  dp.factors = m;
  dp.base_degree = base.degree();
  if (m == 1) {
    dp.group = base;
    return dp;
  }
  uint32_t degree = base.degree() * m;
  std::vector<Permutation> gens;
  for (uint32_t j = 0; j < m; ++j) {
    for (const auto &g : base.generators()) {
      std::vector<uint32_t> images(degree);
      std::iota(images.begin(), images.end(), 0u);
      uint32_t off = j * base.degree();
      for (uint32_t x = 0; x < base.degree(); ++x) images[off + x] = off + g[x];
      gens.emplace_back(std::move(images));
    }
  }
  dp.group = PermGroup::from_generators(degree, std::move(gens));
  return dp;
}

} // namespace invgen
