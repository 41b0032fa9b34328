#include <gtest/gtest.h>

#include "bsq/solvers.hpp"
#include "support/acceptance.hpp"
#include "support/oracles.hpp"

namespace bsq {
namespace {

using Kind = StandardForm::Kind;

StandardForm make_sf(Kind kind, std::int64_t genus, std::vector<Element> constants) {
  StandardForm sf;
  sf.kind = kind;
  sf.genus = genus;
  sf.constants = std::move(constants);
  if (kind == Kind::orientable) {
    for (std::int64_t i = 1; i <= genus; ++i) {
      sf.handle_vars.push_back("x" + std::to_string(i));
      sf.handle_vars.push_back("y" + std::to_string(i));
    }
  } else if (kind == Kind::nonorientable) {
    for (std::int64_t i = 1; i <= genus; ++i) sf.handle_vars.push_back("x" + std::to_string(i));
  }
  for (std::size_t j = 1; j <= sf.constants.size(); ++j) sf.conjugators.push_back("z" + std::to_string(j));
  return sf;
}

Element el(const Group& G, std::int64_t num, std::int64_t exp, std::int64_t beta) {
  return G.make(canonicalize(G.base(), num, exp), beta);
}

void expect_solves(const Group& G, const StandardForm& sf, const Verdict& v) {
  ASSERT_TRUE(v.solvable) << v.case_tag;
  ASSERT_TRUE(v.solution);
  EXPECT_TRUE(evaluate(G, sf, *v.solution).is_identity());
}

TEST(Spherical, ExactCase) {
  const Group G(2);
  const auto sf = make_sf(Kind::spherical, 0, {G.a(), G.a(), G.a(-4)});
  const Verdict v = solve_spherical(G, sf);
  expect_solves(G, sf, v);
  EXPECT_EQ(v.case_tag, "spherical/exact");
  EXPECT_EQ(v.witnesses.at("exponents"), "1 1 0");
}

TEST(Spherical, PositivePowersNeverCancel) {
  const Group G(2);
  EXPECT_FALSE(solve_spherical(G, make_sf(Kind::spherical, 0, {G.a(), G.a(), G.a()})).solvable);
}

TEST(Spherical, CongruenceCase) {
  const Group G(2);
  const auto sf = make_sf(Kind::spherical, 0, {el(G, 1, 0, 1), el(G, 1, 0, -1)});
  const Verdict v = solve_spherical(G, sf);
  expect_solves(G, sf, v);
  EXPECT_EQ(v.case_tag, "spherical/congruence");
}

TEST(Spherical, UnbalancedTIsUnsolvable) {
  const Group G(3);
  EXPECT_FALSE(solve_spherical(G, make_sf(Kind::spherical, 0, {G.t(), G.a()})).solvable);
}

TEST(Orientable, Examples) {
  const Group G(3);
  {
    const auto sf = make_sf(Kind::orientable, 1, {G.a(2)});
    expect_solves(G, sf, solve_orientable(G, sf));
  }
  EXPECT_FALSE(solve_orientable(G, make_sf(Kind::orientable, 1, {G.a()})).solvable);
  const auto sf = make_sf(Kind::orientable, 2, {});
  const Verdict v = solve_orientable(G, sf);
  expect_solves(G, sf, v);
  for (const auto& [name, g] : *v.solution) EXPECT_TRUE(g.is_identity()) << name;
}

TEST(NonorientableGenus1, Examples) {
  {
    const Group G(2);
    const auto sf = make_sf(Kind::nonorientable, 1, {G.a()});
    expect_solves(G, sf, solve_nonorientable_genus1(G, sf));
  }
  {
    const Group G(3);
    EXPECT_FALSE(solve_nonorientable_genus1(G, make_sf(Kind::nonorientable, 1, {G.a()})).solvable);
  }
  const Group G(-1);
  const std::vector<Element> c{el(G, 1, 0, 1), el(G, 1, 0, 1)};
  const auto sf = make_sf(Kind::nonorientable, 1, c);
  const Verdict v = solve_nonorientable_genus1(G, sf);
  EXPECT_EQ(v.solvable, testing::genus1_oracle(-1, c));
  if (v.solvable) expect_solves(G, sf, v);
}

TEST(NonorientableGenus2Plus, Examples) {
  {
    const Group G(2);
    const auto sf = make_sf(Kind::nonorientable, 2, {G.a(-1)});
    expect_solves(G, sf, solve_nonorientable_genus2plus(G, sf));
  }
  const Group G(3);
  EXPECT_FALSE(solve_nonorientable_genus2plus(G, make_sf(Kind::nonorientable, 2, {G.a()})).solvable);
  const auto sf = make_sf(Kind::nonorientable, 2, {el(G, 2, 0, 2)});
  expect_solves(G, sf, solve_nonorientable_genus2plus(G, sf));
}

TEST(Solve, EndToEnd) {
  const Group G2(2);
  const Verdict v = solve(G2, "Z a z W a w V a^-4 v");
  ASSERT_TRUE(v.solvable);
  EXPECT_EQ(v.solution->at("z"), G2.t());
  EXPECT_EQ(v.solution->at("w"), G2.t());
  EXPECT_EQ(v.solution->at("v"), G2.identity());
  EXPECT_LE(v.size, v.bound);
  EXPECT_FALSE(solve(Group(3), "[x,y] U a u").solvable);
  EXPECT_EQ(solve(Group(3), "[x,y] U a u").case_tag, "orientable");
}

TEST(Solve, NonorientableMatchesBruteForce) {
  const Group G(2);
  const EquationAst ast = parse_equation("x a x a");
  const Verdict v = solve(G, ast);
  const auto sph = testing::spheres(G, 4);
  EXPECT_EQ(v.solvable, testing::brute_solution(G, ast, sph, 4).has_value());
  EXPECT_EQ(v.standard_form.kind, Kind::nonorientable);
}

TEST(Solve, ConstantOnlyEquations) {
  EXPECT_TRUE(solve(Group(2), "T a t a^-2").solvable);
  EXPECT_FALSE(solve(Group(2), "t a T").solvable);
}

TEST(Solve, CapExceededPropagates) {
  SearchCaps caps;
  caps.max_exponent = 1;
  EXPECT_THROW(solve(Group(2), "Z a z W a w V a^-4 v", caps), CapExceeded);
}

TEST(SolutionSize, Examples) {
  const Group G(2);
  EXPECT_EQ(solution_size(G, {}), 0);
  EXPECT_EQ(solution_size(G, {{"z", G.t()}}), 1);
}

TEST(DecideLinear, OnlyHighGenus) {
  const Group G(3);
  EXPECT_FALSE(decide_linear(G, parse_equation("Z a z")).has_value());
  EXPECT_FALSE(decide_linear(G, parse_equation("x x a")).has_value());
  EXPECT_EQ(decide_linear(G, parse_equation("[x,y] a^2")), true);
  EXPECT_EQ(decide_linear(G, parse_equation("[x,y] a")), false);
  EXPECT_EQ(decide_linear(G, parse_equation("x x y y a")), false);
  EXPECT_EQ(decide_linear(Group(2), parse_equation("x x y y a")), true);
}

// Over every short quadratic equation: the one-pass decision agrees with the
// normalizing solver, and solvable verdicts respect the cubic size bound.
TEST(SolverProperty, LinearDecisionAndSizeBound) {
  for (std::int64_t n : {2, 3, -2, 1, -1}) {
    const Group G(n);
    std::size_t linear = 0;
    testing::for_each_quadratic(6, [&](const EquationAst& ast) {
      const Verdict v = solve(G, ast);
      if (const auto d = decide_linear(G, ast)) {
        ++linear;
        EXPECT_EQ(*d, v.solvable) << n << ": " << to_string(ast.word);
      }
      if (v.solvable) {
        EXPECT_LE(v.size, v.bound) << n << ": " << to_string(ast.word);
      }
    });
    EXPECT_GT(linear, 1000u);
  }
}

// Random spherical and genus-1 standard forms against the exponent oracles.
TEST(SolverProperty, LowGenusAgainstOracles) {
  testing::Rng rng(8);
  for (std::int64_t n : {2, 3, -2, -3, -1}) {
    const Group G(n);
    for (int i = 0; i < 150; ++i) {
      std::vector<Element> c;
      const int k = static_cast<int>(testing::uniform(rng, 1, 3));
      for (int j = 0; j < k; ++j) c.push_back(el(G, testing::uniform(rng, -9, 9), 0, testing::uniform(rng, -2, 2)));
      const auto sph = make_sf(Kind::spherical, 0, c);
      const Verdict vs = solve_spherical(G, sph);
      EXPECT_EQ(vs.solvable, testing::spherical_oracle(n, c)) << n << " case " << i;
      if (vs.solvable) expect_solves(G, sph, vs);
      const auto g1 = make_sf(Kind::nonorientable, 1, c);
      const Verdict vg = solve_nonorientable_genus1(G, g1);
      EXPECT_EQ(vg.solvable, testing::genus1_oracle(n, c)) << n << " case " << i;
      if (vg.solvable) expect_solves(G, g1, vg);
    }
  }
}

}  // namespace
}  // namespace bsq
