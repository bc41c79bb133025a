#pragma once

// Invariable generation of direct powers T^m of a nonabelian finite simple
// group, the exact maximum m with d_I(T^m) <= r, and the sandwich bounds
// around that maximum.
//
// For S = {s_1..s_r} in T^m, write the r x m matrix whose (i, j) entry is
// the j-th component of s_i.  S invariably generates T^m exactly when
//   (a) each column's entry set invariably generates T, and
//   (b) no automorphism of T carries the conjugacy-class vector of one
//       column to the class vector of another.
// Condition (b) has to be over class vectors rather than raw element
// tuples: conjugates are free in invariable generation, so columns whose
// class vectors are automorphism-linked can be conjugated coordinatewise
// into an exact match, trapping every conjugated generator inside a
// twisted-diagonal subgroup.  The element-tuple orbit count is still
// computed and reported alongside; it is not the bounded quantity.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "context.hpp"
#include "invgen.hpp"

namespace invgen {

struct GenMatrix {
  PermGroup base; // T
  uint32_t rows = 0;
  uint32_t cols = 0;
  std::vector<uint32_t> entries; // row-major element indices

  uint32_t entry(uint32_t i, uint32_t j) const { return entries[i * cols + j]; }
};

// Builds a generating matrix after verifying the base group is nonabelian
// simple (no proper nontrivial normal subgroup).
inline GenMatrix make_gen_matrix(GroupContext &tctx, uint32_t rows,
                                 uint32_t cols,
                                 std::vector<uint32_t> entries) {
  if (entries.size() != static_cast<std::size_t>(rows) * cols)
    throw InvalidArgument("gen matrix: entry count does not match shape");
  uint32_t n = tctx.elements().size();
  for (uint32_t e : entries)
    if (e >= n) throw InvalidArgument("gen matrix: entry index out of range");
  if (!is_nonabelian_simple(tctx.group(), tctx.budgets().element_cap))
    throw InvalidArgument("gen matrix: base group is not nonabelian simple");
  GenMatrix a;
  a.base = tctx.group();
  a.rows = rows;
  a.cols = cols;
  a.entries = std::move(entries);
  return a;
}

struct PowerCertificate {
  enum class Verdict { yes, fail_column, fail_pair };
  Verdict verdict = Verdict::yes;

  // fail_column: this column's entry set does not invariably generate T.
  uint32_t bad_column = 0;
  InvGenCertificate column_refutation;

  // fail_pair: an automorphism links the two columns' class vectors; the
  // row conjugators c_i satisfy  phi(entry(i, first))^(c_i) = entry(i, second).
  uint32_t pair_first = 0, pair_second = 0;
  std::vector<uint32_t> automorphism; // element-index map phi
  std::vector<Permutation> row_conjugators;

  // yes: one certificate per column plus the pairwise-distinct canonical
  // class vectors.
  std::vector<InvGenCertificate> column_certificates;
  std::vector<std::vector<uint32_t>> column_class_canonical;

  bool yes() const { return verdict == Verdict::yes; }
};

namespace detail {

inline std::vector<uint32_t>
canonical_class_vector(const ClassAction &act, const std::vector<uint32_t> &v) {
  std::vector<uint32_t> best;
  std::vector<uint32_t> image(v.size());
  for (const auto &map : act.maps) {
    for (std::size_t i = 0; i < v.size(); ++i) image[i] = map[v[i]];
    if (best.empty() || image < best) best = image;
  }
  if (best.empty()) best = v;
  return best;
}

} // namespace detail

// Decides invariable generation of T^m from the matrix, with witnesses for
// both failure modes.  Columns are checked in ascending order; failure (a)
// is reported before failure (b).
inline PowerCertificate power_check(GroupContext &tctx, const GenMatrix &a) {
  const auto &t = tctx.elements();
  const auto &classes = tctx.classes();
  PowerCertificate cert;

  std::vector<std::vector<uint32_t>> class_vecs(a.cols);
  for (uint32_t j = 0; j < a.cols; ++j) {
    std::vector<Permutation> column;
    class_vecs[j].resize(a.rows);
    for (uint32_t i = 0; i < a.rows; ++i) {
      column.push_back(t.elems[a.entry(i, j)]);
      class_vecs[j][i] = classes.class_of[a.entry(i, j)];
    }
    InvGenCertificate col_cert = invariably_generates(tctx, column);
    if (!col_cert.yes) {
      cert.verdict = PowerCertificate::Verdict::fail_column;
      cert.bad_column = j;
      cert.column_refutation = std::move(col_cert);
      return cert;
    }
    cert.column_certificates.push_back(std::move(col_cert));
  }

  const ClassAction &act = tctx.aut_class_action();
  const AutGroup &aut = tctx.aut();
  for (uint32_t j = 0; j < a.cols; ++j)
    for (uint32_t j2 = j + 1; j2 < a.cols; ++j2) {
      for (uint32_t w = 0; w < act.maps.size(); ++w) {
        const auto &map = act.maps[w];
        bool linked = true;
        for (uint32_t i = 0; i < a.rows && linked; ++i)
          linked = map[class_vecs[j][i]] == class_vecs[j2][i];
        if (!linked) continue;
        cert.verdict = PowerCertificate::Verdict::fail_pair;
        cert.pair_first = j;
        cert.pair_second = j2;
        cert.automorphism = aut.maps[act.witness[w]];
        for (uint32_t i = 0; i < a.rows; ++i) {
          uint32_t from = cert.automorphism[a.entry(i, j)];
          uint32_t to = a.entry(i, j2);
          ElementMask single(t.size());
          single.set(to);
          cert.row_conjugators.push_back(
              detail::conjugator_into(tctx, t.elems[from], single));
        }
        cert.column_certificates.clear();
        return cert;
      }
    }

  for (uint32_t j = 0; j < a.cols; ++j)
    cert.column_class_canonical.push_back(
        detail::canonical_class_vector(act, class_vecs[j]));
  cert.verdict = PowerCertificate::Verdict::yes;
  return cert;
}

// ---------------------------------------------------------------------
// Definitional cross-check on T^m built as a permutation group.

struct CrossCheckReport {
  bool matrix_passed = false;     // verdict of power_check
  uint64_t trials = 0;
  bool sampling_clean = true;     // yes-case: no refutation found
  std::optional<RefuteResult> counterexample;
  bool witness_verified = false;  // no-case: witness absorbs a conjugate of
                                  // every row
  uint64_t witness_index = 0;     // index of the witness subgroup in T^m
  bool consistent = false;
};

inline CrossCheckReport direct_power_cross_check(GroupContext &tctx,
                                                 const GenMatrix &a,
                                                 uint64_t trials,
                                                 uint64_t seed) {
  const auto &t = tctx.elements();
  DirectPower dp = direct_power(a.base, a.cols);
  std::vector<Permutation> rows;
  for (uint32_t i = 0; i < a.rows; ++i) {
    std::vector<Permutation> comps;
    for (uint32_t j = 0; j < a.cols; ++j) comps.push_back(t.elems[a.entry(i, j)]);
    rows.push_back(dp.assemble(comps));
  }

  PowerCertificate cert = power_check(tctx, a);
  CrossCheckReport report;
  report.matrix_passed = cert.yes();
  report.trials = trials;

  if (cert.yes()) {
    report.counterexample = sample_refute(dp.group, rows, trials, seed);
    report.sampling_clean = !report.counterexample.has_value();
    report.consistent = report.sampling_clean;
    return report;
  }

  if (cert.verdict == PowerCertificate::Verdict::fail_column) {
    // Witness: the full preimage of the refuting maximal subgroup M in the
    // offending coordinate.  Index in T^m equals |T : M|.
    uint32_t j = cert.bad_column;
    StabilizerChain mchain = StabilizerChain::build(
        a.base.degree(), cert.column_refutation.refuting_maximal.generators);
    std::unordered_set<Permutation, PermHash> msub;
    for (auto &p : mchain.enumerate()) msub.insert(std::move(p));
    report.witness_index = a.base.order() / msub.size();
    bool ok = msub.size() < a.base.order();
    for (uint32_t i = 0; i < a.rows && ok; ++i) {
      const Permutation &c = cert.column_refutation.conjugators[i];
      Permutation moved = conjugate(rows[i], dp.embed(j, c));
      ok = msub.count(dp.project(j, moved)) > 0;
    }
    report.witness_verified = ok;
    report.consistent = ok;
    return report;
  }

  // fail_pair: twisted diagonal between the two coordinates, full factors
  // elsewhere; index in T^m equals |T|.
  uint32_t j = cert.pair_first, j2 = cert.pair_second;
  report.witness_index = a.base.order();
  bool ok = true;
  for (uint32_t i = 0; i < a.rows && ok; ++i) {
    Permutation moved =
        conjugate(rows[i], dp.embed(j2, cert.row_conjugators[i].inverse()));
    Permutation left = dp.project(j, moved);
    Permutation right = dp.project(j2, moved);
    uint32_t mapped = cert.automorphism[t.index_of(left)];
    ok = t.elems[mapped] == right;
  }
  report.witness_verified = ok;
  report.consistent = ok;
  return report;
}

// ---------------------------------------------------------------------
// Exact m(T, r) and the sandwich bounds.

struct PowerReport {
  uint32_t r = 1;
  uint64_t class_count = 0; // k(T)
  uint64_t out_order = 1;
  uint64_t max_power = 0; // exact m(T, r): orbits of surviving class vectors
  uint64_t element_tuple_orbit_count = 0; // Aut-orbits of surviving tuples
  uint64_t surviving_class_vectors = 0;
  uint64_t surviving_tuple_count = 0;
  int64_t lower_num = 0; // k^{r-2}/out - 1, exact fraction
  int64_t lower_den = 1;
  uint64_t upper = 0; // k^r
  bool sandwich_holds = true; // asserted for r >= 2
  std::vector<std::vector<uint32_t>> witness_class_vectors; // orbit reps
  GenMatrix witness; // r x max_power matrix from the representatives
};

inline PowerReport max_power_report(GroupContext &tctx, uint32_t r) {
  if (r < 1) throw InvalidArgument("max_power: r must be >= 1");
  if (!is_nonabelian_simple(tctx.group(), tctx.budgets().element_cap))
    throw InvalidArgument("max_power: base group is not nonabelian simple");
  uint64_t raw = 1;
  for (uint32_t i = 0; i < r; ++i) {
    raw *= tctx.group().order();
    if (raw > tctx.budgets().tuples)
      throw BudgetExceeded("max_power: |T|^r exceeds the tuple budget");
  }

  const auto &classes = tctx.classes();
  const auto &lattice = tctx.lattice();
  const auto &maximals = tctx.maximal_reps();
  const ClassAction &act = tctx.aut_class_action();
  const AutGroup &aut = tctx.aut();
  uint32_t k = classes.count();
  uint32_t mcount = static_cast<uint32_t>(maximals.size());

  PowerReport report;
  report.r = r;
  report.class_count = k;
  report.out_order = aut.out_order;

  // Avoidance bitmask per class over maximal positions.
  std::vector<uint64_t> avoid(k, 0);
  if (mcount > 64) throw BudgetExceeded("max_power: too many maximal classes");
  uint64_t full = (mcount == 64) ? ~uint64_t{0}
                                 : ((uint64_t{1} << mcount) - 1);
  for (uint32_t c = 0; c < k; ++c)
    for (uint32_t m = 0; m < mcount; ++m)
      if (!classes.classes[c].mask.intersects(lattice.records[maximals[m]].mask))
        avoid[c] |= uint64_t{1} << m;

  // Enumerate class vectors with an odometer; a vector survives when the
  // union of its classes' avoidance sets covers every maximal class.
  std::vector<uint32_t> vec(r, 0);
  std::vector<std::vector<uint32_t>> survivors;
  do {
    uint64_t cover = 0;
    for (uint32_t c : vec) cover |= avoid[c];
    if (cover == full) survivors.push_back(vec);
  } while ([&] {
    for (uint32_t pos = r; pos-- > 0;) {
      if (++vec[pos] < k) return true;
      vec[pos] = 0;
    }
    return false;
  }());
  report.surviving_class_vectors = survivors.size();

  // Orbits of surviving vectors under the induced class action; the
  // representatives (vectors equal to their canonical form) become the
  // witness columns.
  for (const auto &v : survivors) {
    if (detail::canonical_class_vector(act, v) == v)
      report.witness_class_vectors.push_back(v);
  }
  report.max_power = report.witness_class_vectors.size();

  // Surviving element tuples, and their orbit count under the diagonal
  // action of Aut(T), by expanding each surviving class vector.
  uint64_t tuple_count = 0;
  std::unordered_set<std::vector<uint32_t>, detail::IndexVecHash> canon_set;
  std::vector<std::vector<uint32_t>> class_members(k);
  for (uint32_t c = 0; c < k; ++c)
    for (uint32_t e = 0; e < tctx.elements().size(); ++e)
      if (classes.classes[c].mask.test(e)) class_members[c].push_back(e);
  std::vector<uint32_t> tuple(r), image(r), best(r);
  for (const auto &v : survivors) {
    uint64_t block = 1;
    for (uint32_t c : v) block *= classes.classes[c].size;
    tuple_count += block;
    std::vector<uint32_t> idx(r, 0);
    do {
      for (uint32_t i = 0; i < r; ++i) tuple[i] = class_members[v[i]][idx[i]];
      bool first = true;
      for (const auto &map : aut.maps) {
        for (uint32_t i = 0; i < r; ++i) image[i] = map[tuple[i]];
        if (first || image < best) best = image;
        first = false;
      }
      canon_set.insert(best);
    } while ([&] {
      for (uint32_t pos = r; pos-- > 0;) {
        if (++idx[pos] < class_members[v[pos]].size()) return true;
        idx[pos] = 0;
      }
      return false;
    }());
  }
  report.surviving_tuple_count = tuple_count;
  report.element_tuple_orbit_count = canon_set.size();

  // Bounds: k^{r-2}/out - 1 < m <= k^r, exact fraction arithmetic.
  uint64_t upper = 1;
  for (uint32_t i = 0; i < r; ++i) upper *= k;
  report.upper = upper;
  if (r >= 2) {
    uint64_t pow_km2 = 1;
    for (uint32_t i = 2; i < r; ++i) pow_km2 *= k;
    report.lower_num = static_cast<int64_t>(pow_km2) -
                       static_cast<int64_t>(aut.out_order);
    report.lower_den = static_cast<int64_t>(aut.out_order);
    bool gt_lower = static_cast<int64_t>(report.max_power) * report.lower_den >
                    report.lower_num;
    report.sandwich_holds = gt_lower && report.max_power <= report.upper;
  } else {
    // r = 1: k^{-1}/out - 1, reported only.
    report.lower_num = 1 - static_cast<int64_t>(k) *
                               static_cast<int64_t>(aut.out_order);
    report.lower_den = static_cast<int64_t>(k) *
                       static_cast<int64_t>(aut.out_order);
    report.sandwich_holds = true;
  }

  // Witness matrix: entry (i, j) = representative element of the i-th
  // class in the j-th surviving orbit representative.
  report.witness.base = tctx.group();
  report.witness.rows = r;
  report.witness.cols = static_cast<uint32_t>(report.max_power);
  report.witness.entries.resize(static_cast<std::size_t>(r) * report.max_power);
  for (uint32_t j = 0; j < report.witness.cols; ++j)
    for (uint32_t i = 0; i < r; ++i)
      report.witness.entries[i * report.witness.cols + j] =
          classes.classes[report.witness_class_vectors[j][i]].representative;
  return report;
}

// ---------------------------------------------------------------------
// Constructive small-power bound: for every m <= floor(k(T)/|Out(T)|),
// exhibit a 3-row matrix passing power_check, certifying d_I(T^m) <= 3.
// Built the way the sandwich's lower bound is proved: two constant rows
// from an invariably generating pair, third row running over class
// representatives whose triples lie in pairwise different orbits.

struct PowerBoundsReport {
  PowerReport report; // for the requested r
  uint64_t cor_limit = 0; // floor(k/out)
  bool construction_ok = false;
  std::vector<GenMatrix> constructed; // matrices for m = 1..cor_limit
  uint64_t k_over_out_num = 0, k_over_out_den = 1;
  // For PSL(2, q) bases (q supplied by the caller): c with k^2/out = c*q,
  // reported as a fraction, never asserted.
  uint64_t lie_c_num = 0, lie_c_den = 1;
};

inline GenMatrix build_three_row_matrix(GroupContext &tctx, uint32_t m) {
  const auto &classes = tctx.classes();
  const ClassAction &act = tctx.aut_class_action();
  DIResult di = compute_dI(tctx);
  if (di.value != 2)
    throw InvalidArgument("three-row construction needs an invariably "
                          "generating pair of classes");
  uint32_t ca = di.witness_classes[0], cb = di.witness_classes[1];

  // Distinct-orbit triples (ca, cb, c): scan c ascending, keep those whose
  // canonical form is new.
  std::vector<std::vector<uint32_t>> kept;
  std::vector<std::vector<uint32_t>> canons;
  for (uint32_t c = 0; c < classes.count() && kept.size() < m; ++c) {
    std::vector<uint32_t> v = {ca, cb, c};
    auto canon = detail::canonical_class_vector(act, v);
    bool fresh = true;
    for (const auto &seen : canons)
      if (seen == canon) {
        fresh = false;
        break;
      }
    if (fresh) {
      kept.push_back(v);
      canons.push_back(canon);
    }
  }
  if (kept.size() < m)
    throw InternalError("not enough class-triple orbits for the construction");

  GenMatrix a;
  a.base = tctx.group();
  a.rows = 3;
  a.cols = m;
  a.entries.resize(3u * m);
  for (uint32_t j = 0; j < m; ++j)
    for (uint32_t i = 0; i < 3; ++i)
      a.entries[i * m + j] = classes.classes[kept[j][i]].representative;
  return a;
}

inline PowerBoundsReport power_bounds_report(GroupContext &tctx, uint32_t r,
                                             uint64_t lie_q = 0) {
  PowerBoundsReport out;
  out.report = max_power_report(tctx, r);
  uint64_t k = out.report.class_count;
  uint64_t o = out.report.out_order;
  out.cor_limit = k / o;
  out.k_over_out_num = k;
  out.k_over_out_den = o;
  out.construction_ok = true;
  for (uint64_t m = 1; m <= out.cor_limit; ++m) {
    GenMatrix a = build_three_row_matrix(tctx, static_cast<uint32_t>(m));
    PowerCertificate cert = power_check(tctx, a);
    if (!cert.yes()) out.construction_ok = false;
    out.constructed.push_back(std::move(a));
  }
  if (lie_q > 0) {
    out.lie_c_num = k * k;
    out.lie_c_den = o * lie_q;
  }
  return out;
}

} // namespace invgen
