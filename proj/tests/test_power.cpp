#include <catch2/catch_amalgamated.hpp>

#include "invgen/catalog.hpp"
#include "invgen/power.hpp"

using namespace invgen;

namespace {

uint32_t rep_of_order(GroupContext &ctx, uint64_t order) {
  for (const auto &c : ctx.classes().classes)
    if (ctx.elements().orders[c.representative] == order)
      return c.representative;
  FAIL("no class of element order " << order);
  return 0;
}

} // namespace

TEST_CASE("generating matrices require a nonabelian simple base") {
  GroupContext s4{resolve("S4")};
  REQUIRE_THROWS_AS(make_gen_matrix(s4, 1, 1, {1}), InvalidArgument);
  GroupContext c7{resolve("C7")};
  REQUIRE_THROWS_AS(make_gen_matrix(c7, 1, 1, {1}), InvalidArgument);
  GroupContext a5{resolve("A5")};
  REQUIRE_NOTHROW(make_gen_matrix(a5, 1, 1, {1}));
}

TEST_CASE("power matrix verdicts") {
  GroupContext ctx{resolve("A5")};
  uint32_t three = rep_of_order(ctx, 3);
  uint32_t five = rep_of_order(ctx, 5);

  SECTION("two columns in different class-vector orbits pass") {
    GenMatrix a = make_gen_matrix(ctx, 2, 2, {three, five, five, three});
    PowerCertificate cert = power_check(ctx, a);
    REQUIRE(cert.yes());
    REQUIRE(cert.column_certificates.size() == 2);
    REQUIRE(cert.column_class_canonical[0] != cert.column_class_canonical[1]);
  }
  SECTION("equal columns fail with the identity automorphism") {
    GenMatrix a = make_gen_matrix(ctx, 2, 2, {three, three, five, five});
    PowerCertificate cert = power_check(ctx, a);
    REQUIRE(cert.verdict == PowerCertificate::Verdict::fail_pair);
    for (uint32_t i = 0; i < ctx.elements().size(); ++i)
      REQUIRE(cert.automorphism[i] == i);
    for (const auto &c : cert.row_conjugators) REQUIRE(c.is_identity());
  }
  SECTION("a single-class column fails condition (a)") {
    uint32_t five2 = five;
    const auto &cls =
        ctx.classes().classes[ctx.classes().class_of[five]];
    for (uint32_t e = five + 1; e < ctx.elements().size(); ++e)
      if (cls.mask.test(e)) {
        five2 = e;
        break;
      }
    GenMatrix a = make_gen_matrix(ctx, 2, 2, {five, three, five2, five});
    PowerCertificate cert = power_check(ctx, a);
    REQUIRE(cert.verdict == PowerCertificate::Verdict::fail_column);
    REQUIRE(cert.bad_column == 0);
    REQUIRE(cert.column_refutation.refuting_maximal.order == 10);
  }
}

TEST_CASE("class-vector linkage decides, not element-tuple orbits") {
  // Columns with identical class vectors that are NOT related by one
  // automorphism applied entrywise.  Such a set can still be conjugated
  // into a diagonal, so the verdict must be "no".
  GroupContext ctx{resolve("A5")};
  const AutGroup &aut = ctx.aut();
  uint32_t a = rep_of_order(ctx, 3);
  uint32_t b = rep_of_order(ctx, 5);
  const auto &cls_a = ctx.classes().classes[ctx.classes().class_of[a]];
  const auto &cls_b = ctx.classes().classes[ctx.classes().class_of[b]];

  auto canon = tuple_orbit_canonical(aut, {a, b});
  uint32_t a2 = UINT32_MAX, b2 = UINT32_MAX;
  for (uint32_t x = 0; x < ctx.elements().size() && a2 == UINT32_MAX; ++x) {
    if (!cls_a.mask.test(x)) continue;
    for (uint32_t y = 0; y < ctx.elements().size(); ++y) {
      if (!cls_b.mask.test(y)) continue;
      if (tuple_orbit_canonical(aut, {x, y}) != canon) {
        a2 = x;
        b2 = y;
        break;
      }
    }
  }
  REQUIRE(a2 != UINT32_MAX); // componentwise conjugates outnumber one orbit

  GenMatrix m = make_gen_matrix(ctx, 2, 2, {a, a2, b, b2});
  PowerCertificate cert = power_check(ctx, m);
  REQUIRE(cert.verdict == PowerCertificate::Verdict::fail_pair);

  // and the twisted-diagonal witness verifies
  CrossCheckReport cc = direct_power_cross_check(ctx, m, 0, 1);
  REQUIRE(cc.witness_verified);
  REQUIRE(cc.consistent);
}

TEST_CASE("cross-checks on the direct power") {
  GroupContext ctx{resolve("A5")};
  uint32_t three = rep_of_order(ctx, 3);
  uint32_t five = rep_of_order(ctx, 5);

  SECTION("a passing matrix survives seeded sampling") {
    GenMatrix a = make_gen_matrix(ctx, 2, 2, {three, five, five, three});
    CrossCheckReport cc = direct_power_cross_check(ctx, a, 300, 7);
    REQUIRE(cc.matrix_passed);
    REQUIRE(cc.sampling_clean);
    REQUIRE(cc.consistent);
  }
  SECTION("equal columns land verbatim in the straight diagonal") {
    GenMatrix a = make_gen_matrix(ctx, 2, 2, {three, three, five, five});
    CrossCheckReport cc = direct_power_cross_check(ctx, a, 0, 7);
    REQUIRE_FALSE(cc.matrix_passed);
    REQUIRE(cc.witness_verified);
    REQUIRE(cc.witness_index == 60);
  }
  SECTION("a column refutation lifts through its coordinate") {
    uint32_t five2 = five;
    const auto &cls = ctx.classes().classes[ctx.classes().class_of[five]];
    for (uint32_t e = five + 1; e < ctx.elements().size(); ++e)
      if (cls.mask.test(e)) {
        five2 = e;
        break;
      }
    GenMatrix a = make_gen_matrix(ctx, 2, 2, {five, three, five2, five});
    CrossCheckReport cc = direct_power_cross_check(ctx, a, 0, 7);
    REQUIRE_FALSE(cc.matrix_passed);
    REQUIRE(cc.witness_verified);
    REQUIRE(cc.witness_index == 6); // |A5 : D10|
  }
}

TEST_CASE("verdicts are invariant under matrix symmetries") {
  GroupContext ctx{resolve("A5")};
  uint32_t three = rep_of_order(ctx, 3);
  uint32_t five = rep_of_order(ctx, 5);
  GenMatrix base = make_gen_matrix(ctx, 2, 2, {three, five, five, three});
  REQUIRE(power_check(ctx, base).yes());

  SECTION("row permutation") {
    GenMatrix swapped = make_gen_matrix(ctx, 2, 2, {five, three, three, five});
    REQUIRE(power_check(ctx, swapped).yes());
  }
  SECTION("column permutation") {
    GenMatrix swapped = make_gen_matrix(ctx, 2, 2, {five, three, three, five});
    REQUIRE(power_check(ctx, swapped).yes());
  }
  SECTION("an automorphism applied to one whole column") {
    for (std::size_t which : {std::size_t{1}, std::size_t{5}}) {
      const auto &map = ctx.aut().maps[which % ctx.aut().maps.size()];
      GenMatrix mapped = make_gen_matrix(
          ctx, 2, 2, {map[three], five, map[five], three});
      REQUIRE(power_check(ctx, mapped).yes());
    }
  }
  SECTION("failing instances stay failing") {
    GenMatrix eq = make_gen_matrix(ctx, 2, 2, {three, three, five, five});
    REQUIRE_FALSE(power_check(ctx, eq).yes());
    const auto &map = ctx.aut().maps[3 % ctx.aut().maps.size()];
    GenMatrix mapped =
        make_gen_matrix(ctx, 2, 2, {map[three], three, map[five], five});
    REQUIRE_FALSE(power_check(ctx, mapped).yes());
  }
}

TEST_CASE("exact maximum power counts for A5") {
  GroupContext ctx{resolve("A5")};

  SECTION("no single element works") {
    PowerReport rep = max_power_report(ctx, 1);
    REQUIRE(rep.max_power == 0);
    REQUIRE(rep.surviving_class_vectors == 0);
    REQUIRE(rep.element_tuple_orbit_count == 0);
  }
  SECTION("r = 2: exact value 2 inside (-1/2, 25]") {
    PowerReport rep = max_power_report(ctx, 2);
    REQUIRE(rep.max_power == 2);
    REQUIRE(rep.surviving_class_vectors == 4);
    REQUIRE(rep.surviving_tuple_count == 960);
    REQUIRE(rep.element_tuple_orbit_count == 8);
    REQUIRE(rep.lower_num == -1);
    REQUIRE(rep.lower_den == 2);
    REQUIRE(rep.upper == 25);
    REQUIRE(rep.sandwich_holds);
  }
  SECTION("monotone in r") {
    REQUIRE(max_power_report(ctx, 1).max_power <=
            max_power_report(ctx, 2).max_power);
  }
  SECTION("the witness matrix certifies d_I(A5^2) <= 2") {
    PowerReport rep = max_power_report(ctx, 2);
    PowerCertificate cert = power_check(ctx, rep.witness);
    REQUIRE(cert.yes());
    CrossCheckReport cc = direct_power_cross_check(ctx, rep.witness, 300, 11);
    REQUIRE(cc.sampling_clean);
  }
  SECTION("independent survivor count via union-of-conjugates masks") {
    const auto &t = ctx.elements();
    std::vector<ElementMask> unions;
    for (uint32_t m : ctx.maximal_reps())
      unions.push_back(conjugate_union_mask(ctx.lattice(), m));
    uint64_t survivors = 0;
    for (uint32_t x = 0; x < t.size(); ++x)
      for (uint32_t y = 0; y < t.size(); ++y) {
        bool good = true;
        for (const auto &u : unions)
          if (u.test(x) && u.test(y)) {
            good = false;
            break;
          }
        if (good) ++survivors;
      }
    REQUIRE(survivors == max_power_report(ctx, 2).surviving_tuple_count);
  }
  SECTION("orbit count agrees with counting fixed tuples") {
    PowerReport rep = max_power_report(ctx, 2);
    const AutGroup &aut = ctx.aut();
    const auto &classes = ctx.classes();
    // fixed surviving tuples of each automorphism, summed
    uint64_t fixed_sum = 0;
    for (const auto &map : aut.maps) {
      for (uint32_t x = 0; x < ctx.elements().size(); ++x) {
        if (map[x] != x) continue;
        for (uint32_t y = 0; y < ctx.elements().size(); ++y) {
          if (map[y] != y) continue;
          // does {x, y} invariably generate?
          bool good = true;
          for (uint32_t m : ctx.maximal_reps()) {
            const auto &mask = ctx.lattice().records[m].mask;
            bool x_avoids =
                !classes.classes[classes.class_of[x]].mask.intersects(mask);
            bool y_avoids =
                !classes.classes[classes.class_of[y]].mask.intersects(mask);
            if (!x_avoids && !y_avoids) {
              good = false;
              break;
            }
          }
          if (good) ++fixed_sum;
        }
      }
    }
    REQUIRE(fixed_sum % aut.maps.size() == 0);
    REQUIRE(fixed_sum / aut.maps.size() == rep.element_tuple_orbit_count);
  }
  SECTION("budget is enforced") {
    Budgets tight;
    tight.tuples = 1000;
    GroupContext small{resolve("A5"), tight};
    REQUIRE_THROWS_AS(max_power_report(small, 2), BudgetExceeded);
  }
}

TEST_CASE("sandwich bounds and the three-row construction") {
  GroupContext ctx{resolve("A5")};
  PowerBoundsReport rep = power_bounds_report(ctx, 2);
  REQUIRE(rep.report.sandwich_holds);
  REQUIRE(rep.cor_limit == 2);
  REQUIRE(rep.construction_ok);
  REQUIRE(rep.constructed.size() == 2);
  REQUIRE(rep.constructed[1].rows == 3);
  REQUIRE(rep.constructed[1].cols == 2);
  REQUIRE(rep.k_over_out_num == 5);
  REQUIRE(rep.k_over_out_den == 2);

  SECTION("each constructed matrix passes and certifies d_I <= 3") {
    for (const auto &m : rep.constructed) {
      PowerCertificate cert = power_check(ctx, m);
      REQUIRE(cert.yes());
    }
  }
  SECTION("Lie-type annotation is a plain fraction") {
    GroupContext psl{resolve("PSL(2,5)")};
    PowerBoundsReport b = power_bounds_report(psl, 2, 5);
    REQUIRE(b.lie_c_num == 25); // k(PSL(2,5))^2 = 25
    REQUIRE(b.lie_c_den == 10); // out * q = 2 * 5
  }
}
