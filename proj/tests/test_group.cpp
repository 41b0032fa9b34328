#include <gtest/gtest.h>

#include "bsq/equation.hpp"
#include "bsq/group.hpp"
#include "support/acceptance.hpp"
#include "support/oracles.hpp"

namespace bsq {
namespace {

Element el(const Group& G, std::int64_t num, std::int64_t exp, std::int64_t beta) {
  return G.make(canonicalize(G.base(), num, exp), beta);
}

TEST(Group, Multiplication) {
  const Group G(2);
  EXPECT_EQ(G.mul(G.t(), G.a()), el(G, 1, 1, 1));
  EXPECT_EQ(G.mul(G.identity(), el(G, 5, 2, 3)), el(G, 5, 2, 3));
  EXPECT_EQ(G.mul(el(G, 1, 0, 1), el(G, -2, 0, -1)), G.identity());
}

TEST(Group, Inverse) {
  EXPECT_EQ(Group(2).inv(el(Group(2), 1, 0, 1)), el(Group(2), -2, 0, -1));
  EXPECT_EQ(Group(2).inv(Group(2).identity()), Group(2).identity());
  EXPECT_EQ(Group(3).inv(Group(3).a()), el(Group(3), -1, 0, 0));
}

TEST(Group, EvalWord) {
  const Group G(2);
  EXPECT_EQ(G.eval_word(parse_word("t a t^-1")), el(G, 1, 1, 0));
  EXPECT_EQ(G.eval_word(Word{}), G.identity());
  EXPECT_EQ(G.eval_word(parse_word("t^2 a t^-2 a t^3")), el(G, 5, 2, 3));
  EXPECT_THROW(G.eval_word(parse_word("t x")), Error);
}

TEST(Group, DefiningRelation) {
  for (std::int64_t n : {2, 3, -2, -1, 1, 5}) {
    const Group G(n);
    EXPECT_EQ(G.conj(G.a(), G.t()), G.a(n)) << n;
  }
}

TEST(Group, ElementToWord) {
  const Group G(2);
  const Element g = el(G, 5, 2, 3);
  const Word w = G.element_to_word(g);
  EXPECT_EQ(G.eval_word(w), g);
  EXPECT_EQ(word_length(w), 9);
  EXPECT_TRUE(G.element_to_word(G.identity()).empty());
  const Element h = el(G, -3, 0, 0);
  const BigInt len = word_length(G.element_to_word(h));
  EXPECT_EQ(G.eval_word(G.element_to_word(h)), h);
  EXPECT_TRUE(testing::log_length_holds(2, h, len));
}

TEST(Group, ExpSums) {
  EXPECT_EQ(exp_sums(parse_word("t a t^-1 a t^3")), (ExpSums{2, 3}));
  EXPECT_EQ(exp_sums(Word{}), (ExpSums{0, 0}));
  EXPECT_EQ(exp_sums(parse_word("a^-1 t^-1")), (ExpSums{-1, -1}));
}

TEST(Group, DerivedSubgroup) {
  EXPECT_TRUE(Group(3).in_derived_subgroup(el(Group(3), 2, 0, 0)));
  EXPECT_FALSE(Group(3).in_derived_subgroup(el(Group(3), 1, 0, 0)));
  EXPECT_TRUE(Group(2).in_derived_subgroup(el(Group(2), 5, 2, 0)));
  EXPECT_FALSE(Group(2).in_derived_subgroup(el(Group(2), 5, 2, 1)));
  EXPECT_TRUE(Group(1).in_derived_subgroup(Group(1).identity()));
  EXPECT_FALSE(Group(1).in_derived_subgroup(Group(1).a()));
}

TEST(Group, SquaresSubgroup) {
  EXPECT_TRUE(Group(3).in_squares_subgroup(el(Group(3), 2, 0, 2)));
  EXPECT_FALSE(Group(3).in_squares_subgroup(el(Group(3), 1, 0, 2)));
  EXPECT_TRUE(Group(2).in_squares_subgroup(el(Group(2), -1, 0, 0)));
  EXPECT_FALSE(Group(2).in_squares_subgroup(el(Group(2), 0, 0, 1)));
}

TEST(Group, CommutatorExpress) {
  const Group G3(3);
  {
    const auto [x, y] = G3.commutator_express(el(G3, 2, 0, 0));
    EXPECT_EQ(G3.commutator(x, y), el(G3, 2, 0, 0));
  }
  const Group G2(2);
  {
    const auto [x, y] = G2.commutator_express(G2.identity());
    EXPECT_EQ(x, G2.identity());
    EXPECT_EQ(y, G2.identity());
  }
  // (1/2, 0) = [t, a^-1 t^-1]
  const auto [x, y] = G2.commutator_express(el(G2, 1, 1, 0));
  EXPECT_EQ(x, G2.t());
  EXPECT_EQ(y, G2.eval_word(parse_word("a^-1 t^-1")));
  EXPECT_EQ(G2.commutator(x, y), el(G2, 1, 1, 0));
  EXPECT_THROW(G3.commutator_express(G3.a()), Error);
}

TEST(Group, SquaresExpress) {
  const Group G2(2);
  {
    const auto [x, y] = G2.squares_express(el(G2, -1, 0, 0));
    EXPECT_EQ(G2.mul(G2.square(x), G2.square(y)), el(G2, -1, 0, 0));
  }
  {
    const auto [x, y] = G2.squares_express(G2.identity());
    EXPECT_EQ(x, G2.identity());
    EXPECT_EQ(y, G2.identity());
  }
  const Group G3(3);
  const auto [x, y] = G3.squares_express(el(G3, 2, 0, 2));
  EXPECT_EQ(G3.mul(G3.square(x), G3.square(y)), el(G3, 2, 0, 2));
  EXPECT_THROW(G3.squares_express(G3.a()), Error);
}

TEST(Group, ElementTextRoundTrip) {
  const Group G(-2);
  const Element g = el(G, 5, 2, -3);
  EXPECT_EQ(parse_element(G.base(), to_string(G.base(), g)), g);
  EXPECT_THROW(parse_element(G.base(), "(1, 2"), Error);
}

// Properties over random words: associativity, inverses, the matrix model.
TEST(GroupProperty, LawsOnRandomWords) {
  testing::Rng rng(11);
  for (std::int64_t n : {2, 3, -2, -3, 1, -1}) {
    const Group G(n);
    for (int i = 0; i < 200; ++i) {
      const std::string u = testing::random_letters(rng, testing::uniform(rng, 0, 12));
      const std::string v = testing::random_letters(rng, testing::uniform(rng, 0, 12));
      const std::string w = testing::random_letters(rng, testing::uniform(rng, 0, 12));
      const Element x = G.eval_word(testing::letters_to_word(u));
      const Element y = G.eval_word(testing::letters_to_word(v));
      const Element z = G.eval_word(testing::letters_to_word(w));
      EXPECT_EQ(G.mul(G.mul(x, y), z), G.mul(x, G.mul(y, z)));
      EXPECT_EQ(G.mul(x, G.inv(x)), G.identity());
      EXPECT_EQ(G.mul(G.inv(x), x), G.identity());
      EXPECT_TRUE(testing::matches(G, G.mul(x, y), testing::matrix_eval(n, u + v)));
      EXPECT_EQ(G.eval_word(G.element_to_word(x)), x);
      EXPECT_EQ(G.pow(x, 3), G.mul(x, G.mul(x, x)));
      EXPECT_EQ(G.pow(x, -2), G.inv(G.square(x)));
    }
  }
}

// Every element of the derived subgroup is one commutator; every element of
// the squares subgroup is a product of two squares.
TEST(GroupProperty, VerbalWidths) {
  testing::Rng rng(12);
  for (std::int64_t n : {2, 3, -2, 4, -3}) {
    const Group G(n);
    for (int i = 0; i < 200; ++i) {
      const Element x = G.eval_word(testing::letters_to_word(testing::random_letters(rng, 10)));
      const Element y = G.eval_word(testing::letters_to_word(testing::random_letters(rng, 10)));
      const Element c = G.commutator(x, y);
      ASSERT_TRUE(G.in_derived_subgroup(c));
      const auto [p, q] = G.commutator_express(c);
      EXPECT_EQ(G.commutator(p, q), c);
      const Element s = G.mul(G.square(x), G.square(y));
      ASSERT_TRUE(G.in_squares_subgroup(s));
      const auto [r, u] = G.squares_express(s);
      EXPECT_EQ(G.mul(G.square(r), G.square(u)), s);
    }
  }
}

}  // namespace
}  // namespace bsq
