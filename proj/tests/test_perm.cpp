#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "invgen/perm.hpp"

using namespace invgen;

namespace {

Permutation random_perm(uint32_t degree, std::mt19937_64 &rng) {
  std::vector<uint32_t> images(degree);
  std::iota(images.begin(), images.end(), 0u);
  for (uint32_t i = degree; i > 1; --i)
    std::swap(images[i - 1], images[rng() % i]);
  return Permutation(std::move(images));
}

} // namespace

TEST_CASE("composition follows the apply-first-then-second convention") {
  Permutation swap01 = parse_permutation("(1,2)", 4);
  Permutation cycle = parse_permutation("(1,2,3)", 4);

  SECTION("an involution squares to the identity") {
    REQUIRE(compose(swap01, swap01).is_identity());
  }
  SECTION("a 3-cycle squared is its inverse") {
    REQUIRE(compose(cycle, cycle) == parse_permutation("(1,3,2)", 4));
    REQUIRE(compose(compose(cycle, cycle), cycle).is_identity());
  }
  SECTION("identity laws") {
    Permutation id = Permutation::identity(4);
    REQUIRE(compose(cycle, id) == cycle);
    REQUIRE(compose(id, cycle) == cycle);
  }
  SECTION("order of application") {
    // (1,2) then (2,3): point 1 -> 2 -> 3.
    Permutation s = parse_permutation("(2,3)", 4);
    REQUIRE(compose(swap01, s)[0] == 2);
  }
  SECTION("degree mismatch is rejected") {
    REQUIRE_THROWS_AS(compose(swap01, parse_permutation("(1,2)", 5)),
                      InvalidArgument);
  }
}

TEST_CASE("group axioms on random permutations") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Permutation p = random_perm(8, rng);
    Permutation q = random_perm(8, rng);
    Permutation r = random_perm(8, rng);
    REQUIRE(compose(compose(p, q), r) == compose(p, compose(q, r)));
    REQUIRE(compose(p, p.inverse()).is_identity());
    REQUIRE(compose(p.inverse(), p).is_identity());
    REQUIRE(conjugate(p, q).order() == p.order());
  }
}

TEST_CASE("element order is the lcm of cycle lengths") {
  REQUIRE(Permutation::identity(5).order() == 1);
  REQUIRE(parse_permutation("(1,2)(3,4,5)", 5).order() == 6);
  REQUIRE(parse_permutation("(1,2,3,4,5)", 5).order() == 5);
}

TEST_CASE("cycle notation round trips") {
  for (std::string text : {"(1,2,3)(4,5)", "(1,2)", "()", "(1,5)(2,4)"}) {
    Permutation p = parse_permutation(text, 5);
    REQUIRE(to_cycle_string(p) == text);
    REQUIRE(parse_permutation(to_cycle_string(p), 5) == p);
  }
  SECTION("whitespace-insensitive") {
    REQUIRE(parse_permutation("  ( 1 , 2 , 3 ) ( 4 , 5 )  ", 5) ==
            parse_permutation("(1,2,3)(4,5)", 5));
  }
  SECTION("identity prints as ()") {
    REQUIRE(to_cycle_string(Permutation::identity(3)) == "()");
    REQUIRE(parse_permutation("()", 3).is_identity());
  }
}

TEST_CASE("cycle parser rejects malformed input with a position") {
  auto pos_of = [](const std::string &text, uint32_t degree) {
    try {
      parse_permutation(text, degree);
    } catch (const ParseError &e) {
      return e.pos;
    }
    return std::size_t(99999);
  };
  REQUIRE_THROWS_AS(parse_permutation("(1,2", 4), ParseError);
  REQUIRE_THROWS_AS(parse_permutation("(0,1)", 4), ParseError);
  REQUIRE_THROWS_AS(parse_permutation("(1,1)", 4), ParseError);
  REQUIRE_THROWS_AS(parse_permutation("(5)", 4), ParseError);
  REQUIRE_THROWS_AS(parse_permutation("abc", 4), ParseError);
  REQUIRE_THROWS_AS(parse_permutation("(1,2,)", 4), ParseError);
  REQUIRE_THROWS_AS(parse_permutation("", 4), ParseError);
  REQUIRE(pos_of("(1,2", 4) > 0);
}

TEST_CASE("image-array ordering puts the identity first") {
  std::mt19937_64 rng(11);
  Permutation id = Permutation::identity(6);
  for (int trial = 0; trial < 30; ++trial) {
    Permutation p = random_perm(6, rng);
    if (!p.is_identity()) REQUIRE(id < p);
  }
}

TEST_CASE("max point scan for degree inference") {
  REQUIRE(max_point_in_cycles("(1,2,3)(4,12)") == 12);
  REQUIRE(max_point_in_cycles("()") == 0);
}
