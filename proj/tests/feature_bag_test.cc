#include "unidive/feature_bag.h"

#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

namespace unidive {
namespace {

TEST(FeatureBagTest, EmptyBagIsUnderscore) {
  EXPECT_EQ(FeatureBag().ToString(), "_");
  EXPECT_TRUE(FeatureBag::Parse("_").empty());
}

TEST(FeatureBagTest, ParsesAndPrintsCanonicalText) {
  const FeatureBag bag = FeatureBag::Parse("Case=Nom|Person=1|PronType=Prs");
  EXPECT_EQ(bag.size(), 3u);
  EXPECT_TRUE(bag.Contains("Person", "1"));
  EXPECT_EQ(bag.ToString(), "Case=Nom|Person=1|PronType=Prs");
}

TEST(FeatureBagTest, SortsKeysCaseInsensitively) {
  bool canonical = true;
  const FeatureBag bag = FeatureBag::Parse("tense=Past|Mood=Ind|Case=Nom", &canonical);
  EXPECT_FALSE(canonical);
  EXPECT_EQ(bag.ToString(), "Case=Nom|Mood=Ind|tense=Past");
}

TEST(FeatureBagTest, LayeredKeySortsAfterItsBase) {
  FeatureBag bag;
  bag.Add("Person[psor]", "1");
  bag.Add("Person", "3");
  EXPECT_EQ(bag.ToString(), "Person=3|Person[psor]=1");
}

TEST(FeatureBagTest, MultipleValuesAreSortedAndDeduplicated) {
  FeatureBag bag;
  bag.Add("PronType", "Prs");
  bag.Add("PronType", "Int");
  bag.Add("PronType", "Prs");
  EXPECT_EQ(bag.ToString(), "PronType=Int,Prs");
  bool canonical = true;
  EXPECT_EQ(FeatureBag::Parse("PronType=Prs,Int", &canonical), bag);
  EXPECT_FALSE(canonical);
}

TEST(FeatureBagTest, SetReplacesValues) {
  FeatureBag bag = FeatureBag::Parse("Mood=Cnd,Ind");
  bag.Set("Mood", "Imp");
  EXPECT_EQ(bag.ToString(), "Mood=Imp");
  EXPECT_TRUE(bag.Erase("Mood"));
  EXPECT_FALSE(bag.Erase("Mood"));
  EXPECT_TRUE(bag.empty());
}

TEST(FeatureBagTest, RejectsMalformedText) {
  for (const char* bad : {"", "Case", "Case=", "=Nom", "Case=Nom|", "Case=Nom|Case=Acc",
                          "Case=No m", "1Case=Nom", "Case=Nom,,Acc", "Case:Nom"}) {
    EXPECT_THROW(FeatureBag::Parse(bad), std::invalid_argument) << bad;
  }
}

TEST(FeatureBagTest, KeyAndValueSyntax) {
  EXPECT_TRUE(FeatureBag::IsValidKey("Person[psor]"));
  EXPECT_FALSE(FeatureBag::IsValidKey("[psor]"));
  EXPECT_TRUE(FeatureBag::IsValidValue("1"));
  EXPECT_TRUE(FeatureBag::IsValidValue("CndGenPot"));
  EXPECT_FALSE(FeatureBag::IsValidValue("Cnd-Gen"));
}

// Random bags survive print-then-parse and print canonically.
TEST(FeatureBagProperty, RoundTripIsCanonical) {
  const std::vector<std::string> keys = {"Aspect", "case", "Mood", "Person", "Person[psor]",
                                         "polite", "Voice", "NumType"};
  const std::vector<std::string> values = {"1", "2", "Nom", "Acc", "Ind", "Past", "Zz"};
  std::mt19937 rng(20261019);
  for (int trial = 0; trial < 500; ++trial) {
    FeatureBag bag;
    const int n = std::uniform_int_distribution<int>(0, 5)(rng);
    for (int i = 0; i < n; ++i) {
      bag.Add(keys[rng() % keys.size()], values[rng() % values.size()]);
    }
    bool canonical = false;
    const FeatureBag again = FeatureBag::Parse(bag.ToString(), &canonical);
    EXPECT_TRUE(canonical) << bag.ToString();
    EXPECT_EQ(again, bag);
    EXPECT_EQ(again.ToString(), bag.ToString());
  }
}

}  // namespace
}  // namespace unidive
