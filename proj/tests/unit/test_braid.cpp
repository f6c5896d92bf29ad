#include <gtest/gtest.h>

#include "gg/braid.hpp"
#include "gg/errors.hpp"
#include "gg/quasimorphism.hpp"
#include "gg/random.hpp"

using namespace gg;

TEST(BraidWord, TextRoundTrip) {
  for (const char* s : {"3; 1 -2", "2;", "5; 4 -4 3 1 -1 2", "1;"}) {
    EXPECT_EQ(BraidWord::parse(s).str(), s);
  }
  Rng rng(1);
  for (int t = 0; t < 300; ++t) {
    const BraidWord w = random_word(rng, 2 + t % 5, 0, 20);
    EXPECT_EQ(BraidWord::parse(w.str()), w);
    EXPECT_EQ(BraidWord::parse(w.str()).str(), w.str());
  }
  EXPECT_EQ(BraidWord::parse("  3 ;1   -2 ").str(), "3; 1 -2");
}

TEST(BraidWord, ParseErrorsCarryColumn) {
  auto column = [](const char* s) {
    try {
      BraidWord::parse(s);
    } catch (const ParseError& e) {
      return static_cast<int>(e.column());
    }
    return -1;
  };
  EXPECT_EQ(column("3; 1 x"), 6);
  EXPECT_EQ(column("3; 1 3"), 6);
  EXPECT_EQ(column("3; 0"), 4);
  EXPECT_GT(column("; 1"), 0);
  EXPECT_GT(column("3 1 2"), 0);
  EXPECT_GT(column(""), 0);
}

TEST(BraidWord, ConstructorValidates) {
  EXPECT_THROW(BraidWord(0), std::invalid_argument);
  EXPECT_THROW(BraidWord(3, {3}), std::invalid_argument);
  EXPECT_THROW(BraidWord(3, {0}), std::invalid_argument);
}

TEST(BraidWord, FreeReduction) {
  EXPECT_EQ(reduce(BraidWord::parse("3; 1 2 -2 -1 2")).str(), "3; 2");
  EXPECT_EQ(reduce(BraidWord::parse("3; 1 -1 2 -2")).str(), "3;");
  EXPECT_EQ(reduce(BraidWord::parse("3; 1 2 1")).str(), "3; 1 2 1");
  Rng rng(2);
  for (int t = 0; t < 200; ++t) {
    const BraidWord w = random_word(rng, 4, 0, 30);
    const BraidWord r = w.reduced();
    EXPECT_EQ(r.reduced(), r);
    EXPECT_TRUE(compose(w, w.inverse()).empty());
    for (std::size_t k = 1; k < r.size(); ++k) EXPECT_NE(r.letters()[k], -r.letters()[k - 1]);
  }
}

TEST(BraidWord, PowerAndInverse) {
  const BraidWord w = BraidWord::parse("3; 1 -2");
  EXPECT_EQ(w.power(2).str(), "3; 1 -2 1 -2");
  EXPECT_EQ(w.power(-1), w.inverse());
  EXPECT_EQ(w.inverse().str(), "3; 2 -1");
  EXPECT_TRUE(w.power(0).empty());
  EXPECT_THROW(compose(w, BraidWord(4)), StrandMismatch);
}

TEST(Permutation, CyclesAndHomomorphism) {
  EXPECT_EQ(permutation(BraidWord::parse("3; 1 1")).str(), "id");
  EXPECT_EQ(permutation(BraidWord::parse("3; 1")).str(), "(1 2)");
  const StrandPermutation p = permutation(BraidWord::parse("3; 1 2"));
  EXPECT_EQ(p.image(1), 3);
  EXPECT_EQ(p.image(2), 1);
  EXPECT_EQ(p.image(3), 2);
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const BraidWord u = random_word(rng, 5, 0, 10), v = random_word(rng, 5, 0, 10);
    EXPECT_EQ(permutation(compose(u, v)), permutation(u) * permutation(v));
  }
}

TEST(Invariants, ExponentSumAndLinking) {
  EXPECT_EQ(exponent_sum(BraidWord::parse("3; 1 1 -2 1")), 2);
  EXPECT_DOUBLE_EQ(linking_number(BraidWord::parse("2; 1 1"), 1, 2), 1.0);
  EXPECT_DOUBLE_EQ(linking_number(BraidWord::parse("3; 1 1 -2 -2"), 1, 2), 1.0);
  EXPECT_DOUBLE_EQ(linking_number(BraidWord::parse("3; 1 1 -2 -2"), 2, 3), -1.0);
  EXPECT_DOUBLE_EQ(linking_number(BraidWord::parse("3; 1 1 -2 -2"), 1, 3), 0.0);
  // sigma_1 sigma_2^2 sigma_1^{-1}: strands 1 and 3 link.
  EXPECT_DOUBLE_EQ(linking_number(BraidWord::parse("3; 1 2 2 -1"), 1, 3), 1.0);
  EXPECT_THROW(linking_number(BraidWord::parse("3; 1"), 1, 2), NotPure);
  Rng rng(4);
  for (int t = 0; t < 100; ++t) {
    const BraidWord w = random_pure_word(rng, 4, 5);
    double total = 0;
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) total += linking_number(w, i, j);
    EXPECT_DOUBLE_EQ(2 * total, exponent_sum(w));
  }
}

TEST(Invariants, DeleteStrandsAndComponents) {
  const BraidWord w = BraidWord::parse("4; 1 1 3 3");
  EXPECT_EQ(delete_strands(w, {1, 2}).str(), "2; 1 1");
  EXPECT_EQ(delete_strands(w, {3, 4}).str(), "2; 1 1");
  EXPECT_TRUE(delete_strands(w, {1, 3}).empty());
  EXPECT_EQ(delete_strands(BraidWord::parse("3; 1 2 2 -1"), {1, 3}).str(), "2; 1 1");
  const auto comps = crossing_components(w);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(comps[0], (std::vector<int>{1, 2}));
  EXPECT_EQ(comps[1], (std::vector<int>{3, 4}));
  EXPECT_TRUE(crossing_components(BraidWord(3)).empty());
}
