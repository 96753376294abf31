#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gcalc/diffpoly.hpp"
#include "gcalc/parser.hpp"

using namespace gcalc;

namespace {

const DiffPoly u = DiffPoly::var(0, 0);
const DiffPoly u1 = DiffPoly::var(0, 1);
const DiffPoly u2 = DiffPoly::var(0, 2);
const DiffPoly v = DiffPoly::var(1, 0);

DiffPoly random_poly(std::mt19937& rng, int gens = 2, int max_ord = 3,
                     int max_deg = 2, int nterms = 4) {
  std::uniform_int_distribution<int> coeff(-4, 4), gen(0, gens - 1),
      ord(0, max_ord), deg(1, max_deg), nt(1, nterms);
  DiffPoly p;
  int terms = nt(rng);
  for (int t = 0; t < terms; ++t) {
    DiffPoly mono(Rat(coeff(rng)));
    int d = deg(rng);
    for (int i = 0; i < d; ++i) mono = mono * DiffPoly::var(gen(rng), ord(rng));
    p += mono;
  }
  return p;
}

}  // namespace

TEST_CASE("ring operations") {
  CHECK(u * u == u.pow(2));
  CHECK((u + (-u)).is_zero());
  // (u+u')(u-u') = u^2 - u'^2
  CHECK((u + u1) * (u - u1) == u.pow(2) - u1.pow(2));
  CHECK(u * v == v * u);
  CHECK((u + v) * u2 == u * u2 + v * u2);
}

TEST_CASE("total derivative") {
  CHECK(total_derivative(u) == u1);
  CHECK(total_derivative(DiffPoly(rat(3, 2))).is_zero());
  // Leibniz on u*u'
  CHECK(total_derivative(u * u1) == u1 * u1 + u * u2);
}

TEST_CASE("partial derivative") {
  CHECK(partial_derivative(v, 0, 0).is_zero());
  CHECK(partial_derivative(u, 0, 0) == DiffPoly(Rat(1)));
  CHECK(partial_derivative(u, 0, 1).is_zero());
  CHECK(partial_derivative(u1 * u1, 0, 1) == Rat(2) * u1);
  CHECK(partial_derivative(u * u2, 0, 2) == u);
}

TEST_CASE("lambda action") {
  LambdaPoly a = lambda_action(0, u);
  CHECK(a.coeffs.size() == 1);
  CHECK(a.coeffs.at({0}) == DiffPoly(Rat(1)));
  CHECK(lambda_action(0, v).is_zero());
  // u_lambda (u u'') = u'' + lambda^2 u
  LambdaPoly b = lambda_action(0, u * u2);
  CHECK(b.coeffs.at({0}) == u2);
  CHECK(b.coeffs.at({2}) == u);
  CHECK(b.coeffs.size() == 2);
}

TEST_CASE("variational derivative") {
  CHECK(variational_derivative(u * u1, 0).is_zero());
  CHECK(variational_derivative(u * u2, 0) == Rat(2) * u2);
  CHECK(variational_derivative(rat(1, 2) * (u1 * u1), 0) == -u2);
}

TEST_CASE("exactness decision and witness") {
  auto r = is_total_derivative(u * u1);
  CHECK(r.exact);
  CHECK(*r.witness == rat(1, 2) * u.pow(2));

  CHECK_FALSE(is_total_derivative(u).exact);

  auto r2 = is_total_derivative(u2 * u1);
  CHECK(r2.exact);
  CHECK(*r2.witness == rat(1, 2) * u1.pow(2));
}

TEST_CASE("quotient equality") {
  // int u u'' = int(-u'^2): u u'' + u'^2 = del(u u')
  CHECK(quotient_equal(u * u2, -(u1 * u1)));
  CHECK_FALSE(quotient_equal(u, DiffPoly()));
  CHECK(quotient_equal(u * v, u * v));
}

TEST_CASE("commutation [d/du^(n), del] = d/du^(n-1) on random polys") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    DiffPoly f = random_poly(rng);
    int gen = trial % 2, n = 1 + trial % 3;
    DiffPoly lhs = partial_derivative(total_derivative(f), gen, n) -
                   total_derivative(partial_derivative(f, gen, n));
    CHECK(lhs == partial_derivative(f, gen, n - 1));
  }
}

TEST_CASE("derivation property of del and partials") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    DiffPoly f = random_poly(rng), g = random_poly(rng);
    CHECK(total_derivative(f * g) ==
          total_derivative(f) * g + f * total_derivative(g));
    DiffPoly pf = partial_derivative(f * g, 0, 1);
    CHECK(pf == partial_derivative(f, 0, 1) * g +
                    f * partial_derivative(g, 0, 1));
  }
}

TEST_CASE("euler operator kills total derivatives") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    DiffPoly g = random_poly(rng);
    DiffPoly f = total_derivative(g);
    CHECK(variational_derivative(f, 0).is_zero());
    CHECK(variational_derivative(f, 1).is_zero());
    auto r = is_total_derivative(f);
    CHECK(r.exact);
    CHECK(total_derivative(*r.witness) == f);
    CHECK(quotient_equal(*r.witness, g));
  }
}

TEST_CASE("lambda action is a derivation in f") {
  std::mt19937 rng(10);
  for (int trial = 0; trial < 50; ++trial) {
    DiffPoly f = random_poly(rng), g = random_poly(rng);
    LambdaPoly lhs = lambda_action(0, f * g);
    LambdaPoly rhs;
    for (const auto& [m, p] : lambda_action(0, f).coeffs) rhs.add(m, p * g);
    for (const auto& [m, p] : lambda_action(0, g).coeffs) rhs.add(m, f * p);
    CHECK(lhs == rhs);
  }
}
