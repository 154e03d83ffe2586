#include "keyseries/bounded_sequences.hpp"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"

namespace keyseries {
namespace {

std::vector<std::string> strings(const std::vector<AscSeq>& v) {
  std::vector<std::string> out;
  for (const auto& a : v) out.push_back(a.to_string());
  return out;
}

// Subsets of {1..n} of size l compared entrywise with the sorted w(1..l).
std::vector<AscSeq> brute_A(const Permutation& w, int l) {
  std::vector<int> top(w.values().begin(), w.values().begin() + l);
  std::sort(top.begin(), top.end());
  std::vector<AscSeq> out;
  int n = w.n();
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (std::popcount(s) != l) continue;
    AscSeq a(s << 1);
    bool ok = true;
    for (int j = 1; j <= l; ++j) ok = ok && a[j] <= top[j - 1];
    if (ok) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(BoundedSequences, UpperBound) {
  auto w = Permutation::parse("42531");
  EXPECT_EQ(w_upper(w, 2).to_string(), "24");
  EXPECT_EQ(w_upper(w, 3).to_string(), "245");
  EXPECT_EQ(w_upper(Permutation::identity(5), 4).to_string(), "1234");
}

TEST(BoundedSequences, GoldenSets) {
  auto w = Permutation::parse("42531");
  EXPECT_EQ(strings(enum_A(w, 3)),
            (std::vector<std::string>{"123", "124", "125", "134", "135", "145", "234", "235", "245"}));
  EXPECT_EQ(strings(enum_A(w, 2)), (std::vector<std::string>{"12", "13", "14", "23", "24"}));
  for (int l = 1; l <= 5; ++l) {
    ASSERT_EQ(enum_A(Permutation::identity(5), l).size(), 1u);
    EXPECT_EQ(enum_A(Permutation::identity(5), l)[0], AscSeq::range(1, l));
  }
}

TEST(BoundedSequences, SplitUnderAscent) {
  auto w = Permutation::parse("42531");
  auto s = split_A(w, 3, 2);
  EXPECT_EQ(strings(s.moved_part), (std::vector<std::string>{"245"}));
  EXPECT_EQ(strings(s.fixed_part),
            (std::vector<std::string>{"123", "124", "125", "134", "135", "145", "234", "235"}));
  EXPECT_TRUE(split_A(Permutation::identity(3), 2, 1).moved_part.empty());
}

TEST(BoundedSequences, SimpleImage) {
  EXPECT_EQ(si_image(AscSeq::parse("124"), 2).to_string(), "134");
  EXPECT_EQ(si_image(AscSeq::parse("123"), 2).to_string(), "123");
  EXPECT_EQ(si_image(AscSeq::parse("245"), 2).to_string(), "345");
}

TEST(BoundedSequences, Replace) {
  EXPECT_EQ(replace(AscSeq::parse("135"), 2, 4).to_string(), "145");
  EXPECT_EQ(replace(AscSeq::parse("135"), 1, 6).to_string(), "356");
  EXPECT_EQ(replace(AscSeq::parse("245"), 3, 1).to_string(), "124");
  EXPECT_THROW(replace(AscSeq::parse("135"), 1, 5), std::invalid_argument);
  EXPECT_THROW(replace(AscSeq::parse("135"), 4, 2), std::out_of_range);
}

TEST(BoundedSequences, MatchesBruteForce) {
  for (const auto& w : all_permutations(6))
    for (int l = 1; l <= 6; ++l) {
      ASSERT_EQ(enum_A(w, l), brute_A(w, l)) << w.to_string() << " l=" << l;
      EXPECT_TRUE(in_A(w, l, w_upper(w, l)));
    }
}

TEST(BoundedSequences, FullLengthIsSingleton) {
  for (const auto& w : all_permutations(5)) {
    ASSERT_EQ(enum_A(w, 5).size(), 1u);
    EXPECT_EQ(enum_A(w, 5)[0].to_string(), "12345");
  }
}

TEST(BoundedSequences, StableUnderEmbedding) {
  for (const auto& w : all_permutations(4))
    for (int l = 1; l <= 4; ++l) EXPECT_EQ(enum_A(w, l), enum_A(w.extended(6), l));
}

TEST(BoundedSequences, AscentDisjointUnion) {
  for (const auto& w : all_permutations(5))
    for (int i = 1; i < 5; ++i) {
      if (!w.is_ascent(i)) continue;
      auto siw = w.left_multiply(i);
      for (int l = 1; l <= 5; ++l) {
        auto split = split_A(w, l, i);
        std::vector<AscSeq> expected = enum_A(w, l);
        for (const auto& a : split.moved_part) {
          auto b = si_image(a, i);
          EXPECT_FALSE(in_A(w, l, b));
          expected.push_back(b);
        }
        std::sort(expected.begin(), expected.end());
        EXPECT_EQ(enum_A(siw, l), expected) << w.to_string() << " i=" << i << " l=" << l;
        for (const auto& a : split.fixed_part) EXPECT_TRUE(in_A(w, l, si_image(a, i)));
      }
    }
}

TEST(BoundedSequences, ReplacementClosure) {
  auto perms = all_permutations(6);
  std::mt19937 rng(11);
  int checked = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto& w = perms[rng() % perms.size()];
    int l = 1 + static_cast<int>(rng() % 6);
    const auto& A = enum_A(w, l);
    const auto& alpha = A[rng() % A.size()];
    int j = 1 + static_cast<int>(rng() % l);
    int r = 1 + static_cast<int>(rng() % w_upper(w, l)[j]);
    if (alpha.contains(r)) continue;
    EXPECT_TRUE(in_A(w, l, replace(alpha, j, r))) << w.to_string() << " " << alpha.to_string();
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(BoundedSequences, SizeDependsOnlyOnUpperBound) {
  for (const auto& w : all_permutations(5))
    for (const auto& u : all_permutations(5))
      for (int l = 1; l <= 5; ++l)
        if (w_upper(w, l) == w_upper(u, l)) EXPECT_EQ(enum_A(w, l).size(), enum_A(u, l).size());
}

}  // namespace
}  // namespace keyseries
