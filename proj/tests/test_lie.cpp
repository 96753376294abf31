#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gcalc/lie.hpp"
#include "gcalc/parser.hpp"

using namespace gcalc;

namespace {

LieCtxPtr r2_trivial() {
  auto g = FinLieAlgebra::r2();
  return make_lie_context(g, GActionAlgebra::trivial(g));
}

// r2 acting on Q[z]: rho(e1) = -z d/dz, rho(e2) = d/dz.
LieCtxPtr r2_on_qz() {
  auto g = FinLieAlgebra::r2();
  APoly z = APoly::var(0, 0);
  GActionAlgebra A(g, 1, {{-z}, {APoly(Rat(1))}});
  return make_lie_context(g, std::move(A));
}

// sl2 acting on Q[z]: rho(h) = -2z d/dz, rho(e) = d/dz, rho(f) = -z^2 d/dz.
LieCtxPtr sl2_on_qz() {
  auto g = FinLieAlgebra::sl2();
  APoly z = APoly::var(0, 0);
  GActionAlgebra A(g, 1, {{Rat(-2) * z}, {APoly(Rat(1))}, {-(z * z)}});
  return make_lie_context(g, std::move(A));
}

LieChain basis_chain(const LieCtxPtr& ctx, std::vector<int> t,
                     APoly a = APoly(Rat(1))) {
  LieChain x(ctx, static_cast<int>(t.size()));
  x.add_term(t, a);
  return x;
}

LieCochain basis_cochain(const LieCtxPtr& ctx, std::vector<int> t,
                         APoly a = APoly(Rat(1))) {
  LieCochain om(ctx, static_cast<int>(t.size()));
  om.set_value(t, a);
  return om;
}

}  // namespace

TEST_CASE("structure constant validation") {
  // [a,b] = c, [a,c] = a violates Jacobi on (a,b,c)
  CHECK_THROWS_AS(FinLieAlgebra(3, {"a", "b", "c"},
                                {{{0, 1}, {{2, Rat(1)}}},
                                 {{0, 2}, {{0, Rat(1)}}}}),
                  InputError);
  CHECK_NOTHROW(FinLieAlgebra(3, {"a", "b", "c"},
                              {{{0, 1}, {{2, Rat(1)}}},
                               {{1, 2}, {{0, Rat(1)}}},
                               {{0, 2}, {{1, Rat(-1)}}}}));
  CHECK_NOTHROW(FinLieAlgebra::sl2());
  CHECK_NOTHROW(FinLieAlgebra::r2());
}

TEST_CASE("action validation") {
  auto g = FinLieAlgebra::r2();
  APoly z = APoly::var(0, 0);
  // wrong sign: [rho(e1), rho(e2)] != rho(e2)
  CHECK_THROWS_AS(GActionAlgebra(g, 1, {{z}, {APoly(Rat(1))}}), InputError);
  CHECK_NOTHROW(GActionAlgebra(g, 1, {{-z}, {APoly(Rat(1))}}));
}

TEST_CASE("cochain differential, r2 trivial coefficients") {
  auto ctx = r2_trivial();
  LieCochain e2dual = basis_cochain(ctx, {1});
  LieCochain d = cochain_d(e2dual);
  CHECK(d.eval({0, 1}) == APoly(Rat(-1)));

  LieCochain e1dual = basis_cochain(ctx, {0});
  CHECK(cochain_d(e1dual).is_zero());
}

TEST_CASE("d squared vanishes exhaustively") {
  for (const auto& ctx : {r2_trivial(), r2_on_qz(), sl2_on_qz()}) {
    for (const auto& om : basis_cochains(ctx, ctx->g.dim(), 2))
      CHECK(cochain_d(cochain_d(om)).is_zero());
  }
}

TEST_CASE("contraction") {
  auto ctx = r2_trivial();
  LieCochain om = basis_cochain(ctx, {0, 1});  // e1* ^ e2*
  CHECK(contract(basis_chain(ctx, {0}), om) == basis_cochain(ctx, {1}));
  // iota on a 0-cochain vanishes for h >= 1
  CHECK(contract(basis_chain(ctx, {0}), basis_cochain(ctx, {})).is_zero());
  // h = 2 sign: iota_{e1^e2}(e1*^e2*) = -1
  LieCochain full = contract(basis_chain(ctx, {0, 1}), om);
  CHECK(full.degree() == 0);
  CHECK(full.eval({}) == APoly(Rat(-1)));
}

TEST_CASE("lie derivative examples") {
  auto ctx = r2_trivial();
  CHECK(lie_derive(basis_chain(ctx, {1}), basis_cochain(ctx, {1})) ==
        basis_cochain(ctx, {0}));
  CHECK(lie_derive(basis_chain(ctx, {0}), basis_cochain(ctx, {1})) ==
        -basis_cochain(ctx, {1}));

  auto ctxz = r2_on_qz();
  APoly z = APoly::var(0, 0);
  LieCochain zero_cochain(ctxz, 0);
  zero_cochain.set_value({}, z);
  LieCochain lz = lie_derive(basis_chain(ctxz, {0}), zero_cochain);
  CHECK(lz.eval({}) == -z);
}

TEST_CASE("schouten bracket examples") {
  auto ctx = r2_trivial();
  // [e1, e1^e2] = e1^e2, [e2, e1^e2] = 0
  CHECK(chain_bracket(basis_chain(ctx, {0}), basis_chain(ctx, {0, 1})) ==
        basis_chain(ctx, {0, 1}));
  CHECK(chain_bracket(basis_chain(ctx, {1}), basis_chain(ctx, {0, 1}))
            .is_zero());

  // [f, X] = -X(f) for a vector field X
  auto ctxz = r2_on_qz();
  APoly z = APoly::var(0, 0);
  LieChain f(ctxz, 0);
  f.add_term({}, z);
  LieChain x = basis_chain(ctxz, {1});  // rho(e2) = d/dz
  LieChain b = chain_bracket(f, x);
  CHECK(b.degree() == 0);
  CHECK(b.terms().at({}) == APoly(Rat(-1)));

  // [1 (x) e1, z (x) e2] = z (x) [e1,e2] + e1(z) (x) e2 = 0
  LieChain ze2(ctxz, 1);
  ze2.add_term({1}, z);
  CHECK(chain_bracket(basis_chain(ctxz, {0}), ze2).is_zero());
}

TEST_CASE("wedge is superskew on generators") {
  auto ctx = r2_trivial();
  LieChain e1 = basis_chain(ctx, {0}), e2 = basis_chain(ctx, {1});
  CHECK(chain_wedge(e1, e2) == basis_chain(ctx, {0, 1}));
  CHECK(chain_wedge(e2, e1) == -basis_chain(ctx, {0, 1}));
  CHECK(chain_wedge(e1, e1).is_zero());
}

TEST_CASE("mixed algebroid is rejected") {
  auto c1 = r2_trivial(), c2 = r2_trivial();
  CHECK_THROWS_AS(chain_bracket(basis_chain(c1, {0}), basis_chain(c2, {1})),
                  MixedAlgebroid);
}

TEST_CASE("abelian algebra with trivial action has zero brackets") {
  auto g = FinLieAlgebra::abelian(3);
  auto ctx = make_lie_context(g, GActionAlgebra::trivial(g));
  for (const auto& x : basis_chains(ctx, 2, 0))
    for (const auto& y : basis_chains(ctx, 2, 0))
      CHECK(chain_bracket(x, y).is_zero());
}

TEST_CASE("lie derivative agrees with Cartan's formula") {
  for (const auto& ctx : {r2_on_qz(), sl2_on_qz()}) {
    auto chains = basis_chains(ctx, 2, 1);
    auto cochains = basis_cochains(ctx, 2, 1);
    for (const auto& x : chains)
      for (const auto& om : cochains) {
        LieCochain direct = lie_derive(x, om);
        LieCochain viad = contract(x, cochain_d(om));
        LieCochain dvia = cochain_d(contract(x, om));
        LieCochain cartan =
            (x.degree() % 2 == 0) ? viad + (-dvia) : viad + dvia;
        CHECK(direct == cartan);
      }
  }
}
