#include <catch2/catch_amalgamated.hpp>

#include "invgen/catalog.hpp"

using namespace invgen;

TEST_CASE("descriptor grammar") {
  SECTION("named families resolve with the right order and degree") {
    struct Row {
      const char *text;
      uint64_t order;
      uint32_t degree;
    };
    for (Row row : std::initializer_list<Row>{{"A5", 60, 5},
                                              {"S5", 120, 5},
                                              {"C12", 12, 12},
                                              {"D8", 8, 4},
                                              {"Q8", 8, 8},
                                              {"PSL(2,7)", 168, 8},
                                              {"PSL(2,2)", 6, 3},
                                              {"A5^2", 3600, 10},
                                              {"C2^3", 8, 6},
                                              {"C1", 1, 1},
                                              {"S1", 1, 1},
                                              {"A2", 1, 2}}) {
      PermGroup g = resolve(row.text);
      INFO(row.text);
      REQUIRE(g.order() == row.order);
      REQUIRE(g.degree() == row.degree);
    }
  }
  SECTION("print after parse is idempotent") {
    for (std::string text :
         {"A5", "S7", "C30", "D12", "Q8", "PSL(2,11)", "A5^2",
          "perm:5:(1,2,3);(3,4,5)"}) {
      GroupDescriptor d = parse_descriptor(text);
      REQUIRE(print_descriptor(d) == text);
      REQUIRE(print_descriptor(parse_descriptor(print_descriptor(d))) == text);
    }
  }
  SECTION("explicit generators normalize through the printer") {
    GroupDescriptor d = parse_descriptor("perm:5: ( 1 , 2 , 3 ) ;(3,4,5)");
    REQUIRE(print_descriptor(d) == "perm:5:(1,2,3);(3,4,5)");
    REQUIRE(resolve(d).order() == 60);
  }
  SECTION("rejections carry positions") {
    REQUIRE_THROWS_AS(parse_descriptor("X9"), ParseError);
    REQUIRE_THROWS_AS(parse_descriptor("D4"), ParseError);
    REQUIRE_THROWS_AS(parse_descriptor("D7"), ParseError);
    REQUIRE_THROWS_AS(parse_descriptor("PSL(2,9)"), ParseError);
    REQUIRE_THROWS_AS(parse_descriptor("PSL(2,37)"), ParseError);
    REQUIRE_THROWS_AS(parse_descriptor("S17"), ParseError);
    REQUIRE_THROWS_AS(parse_descriptor("A5^"), ParseError);
    REQUIRE_THROWS_AS(parse_descriptor("A5^2^2"), ParseError);
    REQUIRE_THROWS_AS(parse_descriptor("perm:5:"), ParseError);
    REQUIRE_THROWS_AS(parse_descriptor(""), ParseError);
  }
}

TEST_CASE("every catalog entry matches its family formula") {
  std::vector<std::string> descs = catalog_core();
  for (const auto &d : catalog_extended()) descs.push_back(d);
  for (const auto &text : descs) {
    GroupDescriptor d = parse_descriptor(text);
    PermGroup g = resolve(d);
    INFO(text);
    REQUIRE(g.order() == descriptor_order(d));
    REQUIRE(print_descriptor(d) == text);
  }
}

TEST_CASE("quaternion group structure from the regular action") {
  PermGroup q8 = resolve("Q8");
  REQUIRE(q8.order() == 8);
  const auto &t = q8.elements();
  std::multiset<uint64_t> orders(t.orders.begin(), t.orders.end());
  REQUIRE(orders == std::multiset<uint64_t>{1, 2, 4, 4, 4, 4, 4, 4});
}

TEST_CASE("projective line action of PSL(2,q)") {
  PermGroup g = resolve("PSL(2,7)");
  REQUIRE(g.degree() == 8);
  REQUIRE(g.order() == 168);
  REQUIRE(is_nonabelian_simple(g));

  SECTION("PSL(2,5) is simple of order 60") {
    PermGroup h = resolve("PSL(2,5)");
    REQUIRE(h.order() == 60);
    REQUIRE(is_nonabelian_simple(h));
  }
  SECTION("PSL(2,3) is solvable of order 12") {
    PermGroup h = resolve("PSL(2,3)");
    REQUIRE(h.order() == 12);
    REQUIRE_FALSE(is_nonabelian_simple(h));
  }
}

TEST_CASE("dihedral groups use the order parameter") {
  REQUIRE(resolve("D6").order() == 6);
  REQUIRE(resolve("D6").degree() == 3);
  REQUIRE(resolve("D20").order() == 20);
  REQUIRE_FALSE(is_abelian(resolve("D8")));
}
