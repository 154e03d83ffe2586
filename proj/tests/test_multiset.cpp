#include "keyseries/multiset.hpp"

#include <algorithm>
#include <set>

#include "gtest/gtest.h"

namespace keyseries {
namespace {

const auto kW = Permutation::parse("42531");

std::vector<std::string> strings(const std::vector<MultiSet>& v) {
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(e.to_string());
  return out;
}

std::set<std::string> string_set(const std::vector<MultiSet>& v) {
  auto s = strings(v);
  return {s.begin(), s.end()};
}

TEST(MultiSet, Sums) {
  EXPECT_EQ(sum_seqs(AscSeq::parse("12"), AscSeq::parse("134")).to_string(), "11234");
  EXPECT_EQ(sum_seqs(AscSeq::parse("14"), AscSeq::parse("123")).to_string(), "11234");
  EXPECT_EQ(sum_seqs(AscSeq::parse("235"), AscSeq::parse("14")).to_string(), "12345");
  EXPECT_EQ(sum_seqs(AscSeq::parse("13"), AscSeq::parse("134")).to_string(), "11334");
}

TEST(MultiSet, Decomposition) {
  auto eta = MultiSet::parse("1122345");
  EXPECT_EQ(AscSeq(eta.eta1()).to_string(), "345");
  EXPECT_EQ(AscSeq(eta.eta2()).to_string(), "12");
  EXPECT_EQ(eta.size(), 7);
  EXPECT_EQ(eta.max_multiplicity(), 2);
  EXPECT_EQ(MultiSet::from_monomial(eta.monomial()), eta);
  EXPECT_EQ(MultiSet::parse("1,1,12").to_string(), "1,1,12");
  EXPECT_THROW(MultiSet::parse("11112"), std::overflow_error);
}

TEST(MultiSet, GoldenB23) {
  EXPECT_EQ(strings(enum_B(kW, 2, 3)),
            (std::vector<std::string>{"11234", "11235", "11245", "11345", "12234", "12235", "12245", "12334",
                                      "12335", "12344", "12345", "12445", "22345"}));
  std::set<std::string> extra;
  auto B = string_set(enum_B(kW, 2, 3));
  for (const auto& s : strings(enum_Btilde(kW, 2, 3)))
    if (!B.count(s)) extra.insert(s);
  EXPECT_EQ(extra, (std::set<std::string>{"11223", "11224", "11225", "11233", "11244", "11334", "11335", "11344",
                                          "11445", "12233", "12244", "22334", "22335", "22344", "22445"}));
}

TEST(MultiSet, BtildeSmallCases) {
  EXPECT_EQ(strings(enum_Btilde(Permutation::identity(4), 2, 3)), (std::vector<std::string>{"11223"}));
  EXPECT_EQ(strings(enum_Btilde(Permutation::parse("321"), 1, 1)),
            (std::vector<std::string>{"11", "12", "13", "22", "23", "33"}));
}

TEST(MultiSet, Membership) {
  EXPECT_TRUE(is_in_B(kW, 2, 3, MultiSet::parse("11234")));
  EXPECT_FALSE(is_in_B(kW, 2, 3, MultiSet::parse("11334")));
  EXPECT_TRUE(in_Btilde(kW, 2, 3, MultiSet::parse("11334")));
  EXPECT_TRUE(is_in_B(kW, 2, 3, MultiSet::parse("22345")));
}

TEST(MultiSet, RestrictedSets) {
  auto r = restricted_A(kW, 2, MultiSet::parse("11234"));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].to_string(), "12");
  EXPECT_EQ(r[1].to_string(), "13");
  EXPECT_EQ(r[2].to_string(), "14");
  EXPECT_EQ(restricted_A(kW, 3, MultiSet::parse("12345")).size(), 9u);
  EXPECT_TRUE(restricted_A(Permutation::identity(4), 2, MultiSet::parse("234")).empty());
}

TEST(MultiSet, Extremal) {
  // 12345 also splits as 245+13 and 145+23, so the extremes are 245/13 and 24/135.
  auto ex = extremal_presentation(kW, 2, 3, MultiSet::parse("12345"));
  ASSERT_TRUE(ex);
  EXPECT_EQ(ex->alpha_max.to_string(), "245");
  EXPECT_EQ(ex->beta_min.to_string(), "13");
  EXPECT_EQ(ex->beta_max.to_string(), "24");
  EXPECT_EQ(ex->alpha_min.to_string(), "135");

  ex = extremal_presentation(kW, 2, 3, MultiSet::parse("11334"));
  ASSERT_TRUE(ex);
  EXPECT_EQ(ex->alpha_max.to_string(), "134");
  EXPECT_EQ(ex->alpha_min.to_string(), "134");
  EXPECT_EQ(ex->beta_max.to_string(), "13");
  EXPECT_EQ(ex->beta_min.to_string(), "13");

  ex = extremal_presentation(Permutation::identity(3), 1, 2, MultiSet::parse("112"));
  ASSERT_TRUE(ex);
  EXPECT_EQ(ex->alpha_max.to_string(), "12");
  EXPECT_EQ(ex->beta_min.to_string(), "1");
}

TEST(MultiSet, Presentations) {
  auto pairs = [](const PresentationSet& ps) {
    std::vector<std::string> out;
    for (const auto& p : ps.pairs) out.push_back(p.alpha.to_string() + "+" + p.beta.to_string());
    return out;
  };
  // 12+134 = 14+123 and 235+14 = 135+24 are among the splittings; the lists are complete.
  EXPECT_EQ(pairs(presentations(kW, 2, 3, MultiSet::parse("11234"))),
            (std::vector<std::string>{"123+14", "124+13", "134+12"}));
  EXPECT_EQ(pairs(presentations(kW, 2, 3, MultiSet::parse("11334"))), (std::vector<std::string>{"134+13"}));
  EXPECT_EQ(pairs(presentations(kW, 2, 3, MultiSet::parse("12345"))),
            (std::vector<std::string>{"135+24", "145+23", "235+14", "245+13"}));
}

TEST(MultiSet, CriterionMatchesDefinition) {
  long long checked = 0;
  for (const auto& w : all_permutations(5))
    for (int l = 1; l <= 5; ++l)
      for (int k = 1; k <= l; ++k)
        for (const auto& eta : enum_Btilde(w, k, l)) {
          ASSERT_EQ(is_in_B(w, k, l, eta), is_in_B_direct(w, k, l, eta))
              << w.to_string() << " k=" << k << " l=" << l << " eta=" << eta.to_string();
          ++checked;
        }
  EXPECT_GT(checked, 10000);
}

TEST(MultiSet, IntervalPresentationsMatchEnumeration) {
  for (const auto& w : all_permutations(5))
    for (int l = 1; l <= 5; ++l)
      for (int k = 1; k <= l; ++k)
        for (const auto& eta : enum_Btilde(w, k, l)) {
          auto fast = presentations(w, k, l, eta);
          auto slow = presentations_bruteforce(w, k, l, eta);
          ASSERT_EQ(fast.pairs, slow.pairs) << w.to_string() << " k=" << k << " l=" << l << " eta=" << eta.to_string();
          for (const auto& p : fast.pairs) {
            EXPECT_EQ((eta.eta2() & ~p.alpha.mask()), 0u);
            EXPECT_EQ((eta.eta2() & ~p.beta.mask()), 0u);
            EXPECT_TRUE(eta.contains_seq(p.alpha));
            EXPECT_TRUE(eta.contains_seq(p.beta));
          }
        }
}

TEST(MultiSet, TwiceOccurringBound) {
  for (const auto& w : all_permutations(5))
    for (int l = 1; l <= 5; ++l)
      for (int k = 1; k <= l; ++k)
        for (const auto& eta : enum_Btilde(w, k, l)) {
          EXPECT_LE(std::popcount(eta.eta2()), k);
          EXPECT_EQ(eta.size(), k + l);
        }
}

TEST(MultiSet, AscentTransfer) {
  for (const auto& w : all_permutations(5))
    for (int i = 1; i < 5; ++i) {
      if (!w.is_ascent(i)) continue;
      auto siw = w.left_multiply(i);
      for (int l = 1; l <= 5; ++l)
        for (int k = 1; k <= l; ++k) {
          std::set<std::string> bt, b;
          for (const auto& eta : enum_Btilde(w, k, l)) {
            bt.insert(eta.to_string());
            bt.insert(eta.swapped(i).to_string());
          }
          for (const auto& eta : enum_B(w, k, l)) {
            b.insert(eta.to_string());
            b.insert(eta.swapped(i).to_string());
          }
          auto Al = moved_A(w, l, i), Ak = moved_A(w, k, i);
          for (const auto& a : Al)
            for (const auto& c : Ak) {
              MultiSet eta = sum_seqs(a, si_image(c, i));
              bt.insert(eta.to_string());
              if (!(k == l && si_image(c, i) == si_image(a, i))) b.insert(eta.to_string());
            }
          EXPECT_EQ(string_set(enum_Btilde(siw, k, l)), bt) << w.to_string() << " i=" << i;
          EXPECT_EQ(string_set(enum_B(siw, k, l)), b) << w.to_string() << " i=" << i << " k=" << k << " l=" << l;
        }
    }
}

TEST(MultiSet, TripleSums) {
  auto tau = MultiSet::parse("112234");
  auto c4123 = enum_C(Permutation::parse("4123"), 1, 2, 3);
  EXPECT_TRUE(std::count(c4123.c.begin(), c4123.c.end(), tau));

  auto c31425 = enum_C(Permutation::parse("31425"), 1, 2, 3);
  EXPECT_TRUE(std::count(c31425.c.begin(), c31425.c.end(), MultiSet::parse("112234")));
  EXPECT_TRUE(std::count(c31425.c.begin(), c31425.c.end(), MultiSet::parse("112334")));
  for (const auto& t : c31425.c) EXPECT_TRUE(std::count(c31425.c_tilde.begin(), c31425.c_tilde.end(), t));

  EXPECT_TRUE(enum_C(Permutation::identity(4), 1, 2, 3).c.empty());
}

}  // namespace
}  // namespace keyseries
