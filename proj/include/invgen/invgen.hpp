#pragma once

// Deciding invariable generation with certificates, and the exact
// invariable-generation number d_I(G).
//
// A set S invariably generates a finite group G exactly when, for every
// maximal subgroup M, some s in S has its whole conjugacy class disjoint
// from M (equivalently from the union of conjugates of M; the two tests
// agree because conjugacy classes are conjugation-stable).  Everything
// here works over conjugacy classes of S, which is what makes the d_I
// search exact at this scale.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "context.hpp"
#include "hom.hpp"

namespace invgen {

// A conjugacy class meets the union of conjugates of H iff it meets H
// itself, so a single mask intersection decides it.
inline bool class_meets_subgroup(GroupContext &ctx, uint32_t class_id,
                                 const ElementMask &subgroup_mask) {
  return ctx.classes().classes[class_id].mask.intersects(subgroup_mask);
}

// ---------------------------------------------------------------------
// Certificates.

struct CitedSubgroup {
  std::vector<Permutation> generators;
  uint64_t order = 1;
};

struct InvGenCertificate {
  bool yes = false;
  uint32_t degree = 0;
  std::vector<Permutation> group_generators;
  uint64_t group_order = 1;
  std::vector<Permutation> elements; // S, verbatim

  struct YesEntry {
    CitedSubgroup maximal;  // one maximal-subgroup class representative
    uint32_t witness_index; // index into `elements`
    uint32_t witness_class; // class id of the witness (informational)
  };
  std::vector<YesEntry> yes_entries; // one per maximal subgroup class

  CitedSubgroup refuting_maximal;       // on no
  std::vector<Permutation> conjugators; // on no: s^g lands in the maximal
};

namespace detail {

inline std::vector<Permutation> record_generators(GroupContext &ctx,
                                                  uint32_t record_id) {
  const auto &rec = ctx.lattice().records[record_id];
  const auto &t = ctx.elements();
  std::vector<Permutation> gens;
  for (uint32_t e : rec.gens) gens.push_back(t.elems[e]);
  if (gens.empty()) gens.push_back(Permutation::identity(ctx.group().degree()));
  return gens;
}

// Conjugator g with s^g inside the target mask, found by BFS over the
// conjugation orbit with parent pointers, so certificates can be replayed
// without the lattice.
inline Permutation conjugator_into(GroupContext &ctx, const Permutation &s,
                                   const ElementMask &target) {
  const auto &t = ctx.elements();
  const auto &gens = ctx.group().generators();
  uint32_t n = t.size();
  uint32_t start = t.index_of(s);
  std::vector<int32_t> parent(n, -1);
  std::vector<uint32_t> via_gen(n, 0);
  std::vector<uint32_t> queue = {start};
  parent[start] = static_cast<int32_t>(start);
  auto build = [&](uint32_t idx) {
    std::vector<uint32_t> path_gens;
    for (uint32_t x = idx; x != start; x = static_cast<uint32_t>(parent[x]))
      path_gens.push_back(via_gen[x]);
    std::reverse(path_gens.begin(), path_gens.end());
    Permutation g = Permutation::identity(ctx.group().degree());
    for (uint32_t k : path_gens) g = compose(g, gens[k]);
    return g;
  };
  if (target.test(start)) return build(start);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    uint32_t x = queue[head];
    for (uint32_t k = 0; k < gens.size(); ++k) {
      uint32_t y = t.index_of(conjugate(t.elems[x], gens[k]));
      if (parent[y] >= 0) continue;
      parent[y] = static_cast<int32_t>(x);
      via_gen[y] = k;
      if (target.test(y)) return build(y);
      queue.push_back(y);
    }
  }
  throw InternalError("conjugation orbit does not reach the target subgroup");
}

} // namespace detail

// Lemma-style criterion over the maximal subgroup classes, with witnesses.
// Witness selection per maximal class: the element of S whose class id is
// lowest (ties broken by position in S).
inline InvGenCertificate invariably_generates(GroupContext &ctx,
                                              const std::vector<Permutation> &s) {
  for (const auto &p : s)
    if (!ctx.group().contains(p))
      throw InvalidArgument("invariably_generates: element not in group");

  const auto &classes = ctx.classes();
  const auto &t = ctx.elements();
  const auto &maximals = ctx.maximal_reps();

  InvGenCertificate cert;
  cert.degree = ctx.group().degree();
  cert.group_generators = ctx.group().generators();
  cert.group_order = ctx.group().order();
  cert.elements = s;

  std::vector<uint32_t> s_class;
  for (const auto &p : s) s_class.push_back(classes.class_of[t.index_of(p)]);

  for (uint32_t m : maximals) {
    const auto &rec = ctx.lattice().records[m];
    uint32_t best = UINT32_MAX;
    for (uint32_t i = 0; i < s.size(); ++i) {
      if (classes.classes[s_class[i]].mask.intersects(rec.mask)) continue;
      if (best == UINT32_MAX || s_class[i] < s_class[best]) best = i;
    }
    if (best == UINT32_MAX) {
      // Refuted: every element of S has a conjugate inside this maximal.
      cert.yes = false;
      cert.yes_entries.clear();
      cert.refuting_maximal.generators = detail::record_generators(ctx, m);
      cert.refuting_maximal.order = rec.order;
      for (const auto &p : s)
        cert.conjugators.push_back(detail::conjugator_into(ctx, p, rec.mask));
      return cert;
    }
    InvGenCertificate::YesEntry entry;
    entry.maximal.generators = detail::record_generators(ctx, m);
    entry.maximal.order = rec.order;
    entry.witness_index = best;
    entry.witness_class = s_class[best];
    cert.yes_entries.push_back(std::move(entry));
  }
  cert.yes = true;
  return cert;
}

// ---------------------------------------------------------------------
// Fixed-point-free formulation over a transitive coset action.

inline bool fixed_point_free_exists(const GroupHom &action,
                                    const std::vector<Permutation> &s) {
  // Transitivity of the target on its points.
  uint32_t deg = action.target.degree();
  {
    std::vector<bool> seen(deg, false);
    std::vector<uint32_t> queue = {0};
    seen[0] = true;
    std::size_t cnt = 1;
    while (!queue.empty()) {
      uint32_t x = queue.back();
      queue.pop_back();
      for (const auto &g : action.target.generators()) {
        if (!seen[g[x]]) {
          seen[g[x]] = true;
          ++cnt;
          queue.push_back(g[x]);
        }
      }
    }
    if (cnt != deg)
      throw InvalidArgument("fixed_point_free_exists: action is not transitive");
  }
  for (const auto &p : s) {
    Permutation img = action.apply(p);
    bool fpf = true;
    for (uint32_t x = 0; x < deg; ++x)
      if (img[x] == x) {
        fpf = false;
        break;
      }
    if (fpf) return true;
  }
  return false;
}

// ---------------------------------------------------------------------
// d_I(G): minimum number of conjugacy classes covering all maximal
// subgroup classes by avoidance.

struct DIResult {
  uint32_t value = 0;
  std::vector<uint32_t> witness_classes;    // class ids, ascending
  std::vector<uint32_t> maximal_rep_ids;    // lattice record ids, fixed order
  std::vector<std::vector<bool>> incidence; // [class id][maximal position]
};

inline DIResult compute_dI(GroupContext &ctx) {
  const auto &classes = ctx.classes();
  const auto &maximals = ctx.maximal_reps();
  uint32_t k = classes.count();
  uint32_t mcount = static_cast<uint32_t>(maximals.size());

  DIResult result;
  result.maximal_rep_ids = maximals;
  result.incidence.assign(k, std::vector<bool>(mcount, false));
  // avoid[c]: bitset over maximal positions whose subgroup the class misses
  std::size_t words = (mcount + 63) / 64;
  if (words == 0) words = 1;
  std::vector<std::vector<uint64_t>> avoid(k, std::vector<uint64_t>(words, 0));
  for (uint32_t c = 0; c < k; ++c)
    for (uint32_t m = 0; m < mcount; ++m) {
      bool meets = classes.classes[c].mask.intersects(
          ctx.lattice().records[maximals[m]].mask);
      result.incidence[c][m] = meets;
      if (!meets) avoid[c][m >> 6] |= uint64_t{1} << (m & 63);
    }
  std::vector<uint64_t> full(words, 0);
  for (uint32_t m = 0; m < mcount; ++m) full[m >> 6] |= uint64_t{1} << (m & 63);

  // Classes that avoid nothing can never appear in a minimum witness.
  std::vector<uint32_t> useful;
  for (uint32_t c = 0; c < k; ++c) {
    bool nonzero = false;
    for (uint64_t w : avoid[c]) nonzero |= (w != 0);
    if (nonzero) useful.push_back(c);
  }

  std::vector<uint32_t> pick;
  std::vector<uint64_t> acc(words, 0);
  // Increasing target size, candidates ascending: the first hit is the
  // lexicographically least witness of minimum size.
  auto search = [&](auto &&self, std::size_t from, uint32_t remaining) -> bool {
    if (acc == full) return remaining == 0;
    if (remaining == 0) return false;
    if (useful.size() - from < remaining) return false;
    for (std::size_t i = from; i < useful.size(); ++i) {
      uint32_t c = useful[i];
      std::vector<uint64_t> saved = acc;
      for (std::size_t w = 0; w < words; ++w) acc[w] |= avoid[c][w];
      pick.push_back(c);
      if (self(self, i + 1, remaining - 1)) return true;
      pick.pop_back();
      acc = saved;
    }
    return false;
  };
  for (uint32_t target = 0; target <= useful.size(); ++target) {
    pick.clear();
    std::fill(acc.begin(), acc.end(), 0);
    if (search(search, 0, target)) {
      result.value = target;
      result.witness_classes = pick;
      return result;
    }
  }
  throw InternalError("no class subset covers the maximal subgroups");
}

// ---------------------------------------------------------------------
// Identities around d_I.

struct FrattiniReport {
  uint64_t frattini_order = 1;
  DIResult di_group;
  DIResult di_quotient;
  bool equal = false;
};

inline FrattiniReport check_frattini_invariance(GroupContext &ctx) {
  FrattiniReport report;
  ElementMask phi = frattini_mask(ctx.group(), ctx.lattice());
  report.frattini_order = phi.count();
  report.di_group = compute_dI(ctx);
  PermGroup q = quotient(ctx.group(), phi, ctx.budgets().element_cap);
  GroupContext qctx(q, ctx.budgets());
  report.di_quotient = compute_dI(qctx);
  report.equal = report.di_group.value == report.di_quotient.value;
  return report;
}

struct SubadditivityReport {
  uint64_t normal_order = 1;
  uint32_t di_group = 0;
  uint32_t di_normal = 0;
  uint32_t di_quotient = 0;
  bool holds = false;
};

inline SubadditivityReport check_subadditivity(GroupContext &ctx,
                                               const ElementMask &normal_mask) {
  if (!mask_is_normal(ctx.group(), normal_mask, ctx.budgets().element_cap))
    throw NotNormal("check_subadditivity: subgroup is not normal");
  SubadditivityReport report;
  report.normal_order = normal_mask.count();
  report.di_group = compute_dI(ctx).value;
  PermGroup n = subgroup_from_mask(ctx.group(), normal_mask,
                                   ctx.budgets().element_cap);
  GroupContext nctx(n, ctx.budgets());
  report.di_normal = compute_dI(nctx).value;
  PermGroup q = quotient(ctx.group(), normal_mask, ctx.budgets().element_cap);
  GroupContext qctx(q, ctx.budgets());
  report.di_quotient = compute_dI(qctx).value;
  report.holds = report.di_group <= report.di_normal + report.di_quotient;
  return report;
}

// ---------------------------------------------------------------------
// Definitional sampling cross-check: draw conjugators, test whether the
// conjugated set still generates.  A returned tuple is a disproof of
// invariable generation.

struct RefuteResult {
  uint64_t trial = 0;
  std::vector<Permutation> conjugators;
};

inline std::optional<RefuteResult>
sample_refute(const PermGroup &g, const std::vector<Permutation> &s,
              uint64_t trials, uint64_t seed) {
  if (s.empty())
    return g.order() == 1 ? std::nullopt
                          : std::optional<RefuteResult>(RefuteResult{});
  std::mt19937_64 rng(seed);
  std::vector<Permutation> conjugated;
  conjugated.reserve(s.size());
  for (uint64_t trial = 0; trial < trials; ++trial) {
    std::vector<Permutation> conjugators;
    conjugated.clear();
    for (const auto &p : s) {
      Permutation c = g.random_element(rng);
      conjugated.push_back(conjugate(p, c));
      conjugators.push_back(std::move(c));
    }
    if (order_of_generated(g.degree(), conjugated) != g.order())
      return RefuteResult{trial, std::move(conjugators)};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------
// Standalone certificate replay.  Rebuilds everything it checks from the
// certificate's own data: the cited subgroups from their generators, the
// conjugacy class of each witness from a conjugation orbit.  Never touches
// the lattice.

inline bool verify_certificate(const InvGenCertificate &cert,
                               std::string *why = nullptr,
                               uint64_t cap = kDefaultElementCap) {
  auto fail = [&](const std::string &msg) {
    if (why) *why = msg;
    return false;
  };
  PermGroup g;
  try {
    g = PermGroup::from_generators(cert.degree, cert.group_generators);
  } catch (const Error &e) {
    return fail(std::string("bad group generators: ") + e.what());
  }
  if (g.order() != cert.group_order) return fail("group order mismatch");
  for (const auto &p : cert.elements)
    if (!g.contains(p)) return fail("cited element is not in the group");

  // Element set of a cited subgroup, rebuilt from its generators.
  auto elements_of = [&](const CitedSubgroup &c) {
    StabilizerChain chain = StabilizerChain::build(cert.degree, c.generators);
    if (chain.order() > cap) throw CapExceeded("cited subgroup exceeds cap");
    std::unordered_map<Permutation, char, PermHash> set;
    for (auto &p : chain.enumerate()) set.emplace(std::move(p), 1);
    return set;
  };
  // Conjugation orbit of p as a set of permutations.
  auto class_of = [&](const Permutation &p) {
    std::vector<Permutation> orbit = {p};
    std::unordered_map<Permutation, char, PermHash> seen;
    seen.emplace(p, 1);
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const auto &gen : g.generators()) {
        Permutation q = conjugate(orbit[head], gen);
        if (seen.emplace(q, 1).second) orbit.push_back(q);
      }
      if (orbit.size() > cap) throw CapExceeded("class orbit exceeds cap");
    }
    return orbit;
  };

  if (cert.yes) {
    if (cert.yes_entries.empty() && cert.group_order > 1)
      return fail("yes certificate cites no maximal subgroups");
    for (const auto &entry : cert.yes_entries) {
      if (entry.witness_index >= cert.elements.size())
        return fail("witness index out of range");
      auto msub = elements_of(entry.maximal);
      if (msub.size() != entry.maximal.order || msub.size() >= cert.group_order)
        return fail("cited maximal subgroup order is wrong or not proper");
      for (const auto &q : class_of(cert.elements[entry.witness_index]))
        if (msub.count(q))
          return fail("witness class intersects the cited maximal subgroup");
    }
    return true;
  }
  if (cert.conjugators.size() != cert.elements.size())
    return fail("conjugator count does not match S");
  auto msub = elements_of(cert.refuting_maximal);
  if (msub.size() != cert.refuting_maximal.order ||
      msub.size() >= cert.group_order)
    return fail("refuting subgroup order is wrong or not proper");
  for (std::size_t i = 0; i < cert.elements.size(); ++i) {
    if (!g.contains(cert.conjugators[i]))
      return fail("conjugator is not in the group");
    Permutation moved = conjugate(cert.elements[i], cert.conjugators[i]);
    if (!msub.count(moved))
      return fail("conjugate misses the refuting subgroup");
  }
  return true;
}

} // namespace invgen
