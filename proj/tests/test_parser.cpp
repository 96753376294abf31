#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gcalc/parser.hpp"

using namespace gcalc;

TEST_CASE("basic expressions") {
  DiffPoly uu1 = DiffPoly::var(0, 0) * DiffPoly::var(0, 1);
  CHECK(parse_diffpoly("u*u'") == uu1);
  CHECK(parse_diffpoly("u1 * u1'") == uu1);

  DiffPoly expect = DiffPoly::var(0, 3).pow(2) - DiffPoly(rat(1, 2));
  CHECK(parse_diffpoly("u1(3)^2 - 1/2") == expect);
  CHECK(parse_diffpoly("u'''^2 - 1/2") == expect);

  CHECK(parse_diffpoly("v''") == DiffPoly::var(1, 2));
  CHECK(parse_diffpoly("z2") == DiffPoly::var(1, 0));
  CHECK(parse_diffpoly("-u + u").is_zero());
  CHECK(parse_diffpoly("3/2") == DiffPoly(rat(3, 2)));
  CHECK(parse_diffpoly("(u + v)*(u - v)") ==
        DiffPoly::var(0, 0).pow(2) - DiffPoly::var(1, 0).pow(2));
  CHECK(parse_diffpoly("2*u^3") == Rat(2) * DiffPoly::var(0, 0).pow(3));
}

TEST_CASE("syntax errors carry positions") {
  CHECK_THROWS_AS(parse_diffpoly("u +* v"), SyntaxError);
  try {
    parse_diffpoly("u +* v");
  } catch (const SyntaxError& e) {
    CHECK(e.column == 4);
  }
  CHECK_THROWS_AS(parse_diffpoly("u +"), SyntaxError);
  CHECK_THROWS_AS(parse_diffpoly("(u"), SyntaxError);
  CHECK_THROWS_AS(parse_diffpoly("u0"), SyntaxError);
  CHECK_THROWS_AS(parse_diffpoly("1/0"), SyntaxError);
  CHECK_THROWS_AS(parse_diffpoly("u1(2"), SyntaxError);
  CHECK_THROWS_AS(parse_diffpoly("w"), SyntaxError);
}

TEST_CASE("unknown generator") {
  CHECK_THROWS_AS(parse_diffpoly("u3", 2), UnknownGenerator);
  CHECK_NOTHROW(parse_diffpoly("u3", 3));
}

TEST_CASE("printer/parser round trip on random canonical forms") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coeff(-6, 6), den(1, 4), gen(0, 3),
      ord(0, 5), deg(0, 3), nterms(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    DiffPoly p;
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
      DiffPoly mono(rat(coeff(rng), den(rng)));
      int d = deg(rng);
      for (int i = 0; i < d; ++i)
        mono = mono * DiffPoly::var(gen(rng), ord(rng));
      p += mono;
    }
    CHECK(parse_diffpoly(p.str()) == p);
  }
}
