#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gcalc/calculus.hpp"
#include "gcalc/lie.hpp"

using namespace gcalc;

namespace {

LieCtxPtr r2_on_qz() {
  auto g = FinLieAlgebra::r2();
  APoly z = APoly::var(0, 0);
  GActionAlgebra A(g, 1, {{-z}, {APoly(Rat(1))}});
  return make_lie_context(g, std::move(A));
}

LieChain basis_chain(const LieCtxPtr& ctx, std::vector<int> t) {
  LieChain x(ctx, static_cast<int>(t.size()));
  x.add_term(t, APoly(Rat(1)));
  return x;
}

}  // namespace

TEST_CASE("gerstenhaber axioms pass for Delta_bullet(r2, Q[z])") {
  auto ctx = r2_on_qz();
  auto calc = build_lie_calculus(ctx);
  auto samples = basis_chains(ctx, 2, 1);
  Report rep =
      check_gerstenhaber_axioms<LieChain>(calc.gv, calc.wedge, calc.bracket,
                                          samples);
  CHECK(rep.all_pass());
}

TEST_CASE("sign-flipped bracket is caught by the Jacobi check") {
  auto ctx = r2_on_qz();
  auto calc = build_lie_calculus(ctx);
  std::function<LieChain(const LieChain&, const LieChain&)> bad =
      [&](const LieChain& x, const LieChain& y) {
        // flip the sign only when a 0-degree factor meets a vector field;
        // this breaks Jacobi/Leibniz but keeps degrees intact
        LieChain b = chain_bracket(x, y);
        if (x.degree() == 0 || y.degree() == 0) return -b;
        return b;
      };
  auto samples = basis_chains(ctx, 2, 1);
  Report rep = check_gerstenhaber_axioms<LieChain>(calc.gv, calc.wedge, bad,
                                                   samples);
  CHECK_FALSE(rep.all_pass());
  CHECK(rep.first_failure("bracket-jacobi") != nullptr);
}

TEST_CASE("calculus axioms pass for the r2 setting") {
  auto ctx = r2_on_qz();
  auto calc = build_lie_calculus(ctx);
  Report rep = check_calculus_axioms(calc, basis_chains(ctx, 2, 1),
                                     basis_cochains(ctx, 2, 1));
  CHECK(rep.all_pass());
  CHECK(rep.render_lines().find("PASS cartan") != std::string::npos);
}

TEST_CASE("doubled differential breaks Cartan but not iota identities") {
  auto ctx = r2_on_qz();
  auto calc = build_lie_calculus(ctx);
  calc.lie = [&](const LieChain& x, const LieCochain& om) {
    return lie_derive(x, om);
  };
  calc.d = [](const LieCochain& om) {
    LieCochain d = cochain_d(om);
    return d + d;
  };
  Report rep = check_calculus_axioms(calc, basis_chains(ctx, 1, 1),
                                     basis_cochains(ctx, 1, 1));
  CHECK_FALSE(rep.all_pass());
  CHECK(rep.first_failure("cartan") != nullptr);
  CHECK(rep.first_failure("iota-commute") == nullptr);
  CHECK(rep.first_failure("iota-module") == nullptr);
}

TEST_CASE("extend_contraction composes and the empty wedge is the identity") {
  auto ctx = r2_on_qz();
  auto iota1 = [&](const LieCochain& om) {
    return contract(basis_chain(ctx, {0}), om);
  };
  auto iota2 = [&](const LieCochain& om) {
    return contract(basis_chain(ctx, {1}), om);
  };
  auto id = extend_contraction<LieCochain>({});
  auto both = extend_contraction<LieCochain>({iota1, iota2});

  for (const auto& om : basis_cochains(ctx, 2, 1)) {
    CHECK(id(om) == om);
    CHECK(both(om) == contract(basis_chain(ctx, {0}),
                               contract(basis_chain(ctx, {1}), om)));
  }
  // matches the h=2 chain contraction exactly: the (-1)^{h(h-1)/2} factor
  // in the chain contraction is the factor-reversal sign of the composition
  LieCochain om(ctx, 2);
  om.set_value({0, 1}, APoly(Rat(1)));
  CHECK(both(om) == contract(basis_chain(ctx, {0, 1}), om));
  CHECK(both(om).eval({}) == APoly(Rat(-1)));
}

TEST_CASE("epsilon extension: eps=0 matches the built-in Lie derivative") {
  auto ctx = r2_on_qz();
  auto calc = build_lie_calculus(ctx);
  std::vector<Op<LieCochain>> iotas, lies;
  for (int i : {0, 1}) {
    iotas.push_back([ctx, i](const LieCochain& om) {
      LieChain x(ctx, 1);
      x.add_term({i}, APoly(Rat(1)));
      return contract(x, om);
    });
    lies.push_back([ctx, i](const LieCochain& om) {
      LieChain x(ctx, 1);
      x.add_term({i}, APoly(Rat(1)));
      return lie_derive(x, om);
    });
  }
  auto bracket_iota = [ctx](int i, int j) -> Op<LieCochain> {
    return [ctx, i, j](const LieCochain& om) {
      LieChain xi(ctx, 1), xj(ctx, 1);
      xi.add_term({i}, APoly(Rat(1)));
      xj.add_term({j}, APoly(Rat(1)));
      return contract(chain_bracket(xi, xj), om);
    };
  };
  auto ext = extend_lie_derivative_epsilon<LieCochain>(
      iotas, lies, bracket_iota, Rat(0), calc.ov);
  LieChain e12 = basis_chain(ctx, {0, 1});
  for (const auto& om : basis_cochains(ctx, 2, 1))
    CHECK(ext(om) == lie_derive(e12, om));
}

TEST_CASE("epsilon-right Leibniz: eps=0 for the complex, eps=1 adjoint") {
  auto ctx = r2_on_qz();
  auto calc = build_lie_calculus(ctx);
  auto gs = basis_chains(ctx, 2, 1);
  auto os = basis_cochains(ctx, 2, 1);

  Report complex_rule = check_epsilon_leibniz<LieChain, LieCochain>(
      calc.gv, calc.ov, calc.wedge, calc.bracket, calc.contract, calc.lie,
      Rat(0), gs, os);
  CHECK(complex_rule.all_pass());

  // Adjoint representation: iota_X = X ^ ., L_X = [X, .], eps = 1.
  std::function<LieChain(const LieChain&, const LieChain&)> adj_iota =
      chain_wedge;
  std::function<LieChain(const LieChain&, const LieChain&)> adj_lie =
      chain_bracket;
  Report adjoint_rule = check_epsilon_leibniz<LieChain, LieChain>(
      calc.gv, calc.gv, calc.wedge, calc.bracket, adj_iota, adj_lie, Rat(1),
      gs, gs);
  CHECK(adjoint_rule.all_pass());

  // the adjoint does NOT satisfy the eps=0 rule (the correction matters)
  Report wrong_eps = check_epsilon_leibniz<LieChain, LieChain>(
      calc.gv, calc.gv, calc.wedge, calc.bracket, adj_iota, adj_lie, Rat(0),
      gs, gs);
  CHECK_FALSE(wrong_eps.all_pass());
}

TEST_CASE("identity morphism passes; broken Psi fails") {
  auto ctx = r2_on_qz();
  auto calc = build_lie_calculus(ctx);
  std::function<LieChain(const LieChain&)> phi = [](const LieChain& x) {
    return x;
  };
  std::function<LieCochain(const LieCochain&)> psi =
      [](const LieCochain& om) { return om; };
  auto gs = basis_chains(ctx, 2, 1);
  auto os = basis_cochains(ctx, 2, 1);
  Report ok = check_morphism<LieChain, LieCochain, LieChain, LieCochain>(
      phi, psi, calc, calc, gs, os);
  CHECK(ok.all_pass());

  // composing Psi with a Lie derivative keeps it a chain map but breaks
  // contraction compatibility by iota_{[e1, X]}
  std::function<LieCochain(const LieCochain&)> bad =
      [&](const LieCochain& om) {
        LieChain e1(ctx, 1);
        e1.add_term({0}, APoly(Rat(1)));
        return lie_derive(e1, om);
      };
  Report broken = check_morphism<LieChain, LieCochain, LieChain, LieCochain>(
      phi, bad, calc, calc, gs, os);
  CHECK_FALSE(broken.all_pass());
  CHECK(broken.first_failure("iota-compatible") != nullptr);
  CHECK(broken.first_failure("psi-chainmap") == nullptr);
}

TEST_CASE("reduced calculus with del = 0 is the identity reduction") {
  auto ctx = r2_on_qz();
  auto calc = build_lie_calculus(ctx);
  Op<LieCochain> zero_del = [ctx](const LieCochain& om) {
    return LieCochain(ctx, om.degree());
  };
  auto os = basis_cochains(ctx, 2, 1);
  auto reduced = reduced_calculus<LieChain, LieCochain>(
      calc, zero_del,
      [](const LieCochain& a, const LieCochain& b) { return a == b; },
      [](const LieCochain& a) { return a.is_zero(); }, os);
  for (const auto& om : os) CHECK(reduced.ov.eq(reduced.d(om), cochain_d(om)));
  // every X is in G^del when del = 0
  for (const auto& x : basis_chains(ctx, 2, 1))
    CHECK(in_reduced_algebra(calc, zero_del, x, os));
}

TEST_CASE("reduced_calculus rejects a non-chain-map del") {
  auto ctx = r2_on_qz();
  auto calc = build_lie_calculus(ctx);
  // del = contraction by e1 does not commute with d here
  Op<LieCochain> bad_del = [ctx](const LieCochain& om) {
    LieChain x(ctx, 1);
    x.add_term({0}, APoly(Rat(1)));
    return contract(x, om);
  };
  auto os = basis_cochains(ctx, 2, 1);
  auto attempt = [&] {
    return reduced_calculus<LieChain, LieCochain>(
        calc, bad_del,
        [](const LieCochain& a, const LieCochain& b) { return a == b; },
        [](const LieCochain& a) { return a.is_zero(); }, os);
  };
  CHECK_THROWS_AS(attempt(), NotChainMap);
}

TEST_CASE("report rendering") {
  Report r;
  r.record("some-identity", "s0", true);
  r.record("some-identity", "s1", false, "off by sign");
  CHECK(r.render_lines() ==
        "PASS some-identity s0\nFAIL some-identity s1  # off by sign\n");
  CHECK(r.render_json().find("\"fail_count\": 1") != std::string::npos);
  CHECK(r.render_json().find("off by sign") != std::string::npos);
}
