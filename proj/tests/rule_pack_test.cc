#include "unidive/rule_pack.h"

#include <set>
#include <string>

#include <gtest/gtest.h>

namespace unidive {
namespace {

constexpr std::string_view kMinimalKorean =
    "#unidive-rules v1\n"
    "language ko\n"
    "functional ADV 더 또 다시\n"
    "functional DET 그 이 한\n";

std::string Pack(std::string_view body, std::string_view base = kMinimalKorean) {
  return std::string(base) + std::string(body);
}

// Loads `text` and returns the error message, or "" if it loaded.
std::string LoadError(const std::string& text, std::size_t* line = nullptr) {
  try {
    LoadRulePack(text);
  } catch (const RulePackError& e) {
    if (line) *line = e.line();
    return e.what();
  }
  return "";
}

TEST(RulePackTest, ShippedPackCoversEveryFamily) {
  const RulePack pack = LoadRulePackFile(ShippedKoreanPackPath());
  EXPECT_EQ(pack.language, "ko");
  EXPECT_GE(pack.rules.size(), 40u);
  std::set<std::string, FeatureNameLess> emitted;
  for (const Rule& r : pack.rules) {
    for (const Emission& e : r.emits) emitted.insert(e.key);
  }
  const FeatureInventory& inventory = DefaultFeatureInventory();
  EXPECT_EQ(inventory.size(), 13u);
  for (const auto& [key, values] : inventory) {
    EXPECT_TRUE(emitted.contains(key)) << key;
  }
  EXPECT_TRUE(pack.conjunctive_adverbs.contains("그러나"));
  EXPECT_EQ(pack.voice_lexicon.at("먹+히"), "Pass");
}

TEST(RulePackTest, ParsesRuleFields) {
  const RulePack pack = LoadRulePack(Pack(
      "rule r1 tag=EC morph=고 pos=final next1=있|계시/VX emit=Aspect=Prog priority=7\n"
      "rule r2 tag=EF|EC prev=았/EP stem=*/VV emit=Tense=Past,Mood=Ind priority=3\n"));
  ASSERT_EQ(pack.rules.size(), 2u);
  const Rule& r1 = pack.rules[0];
  EXPECT_EQ(r1.id, "r1");
  EXPECT_EQ(r1.position, Position::kFinal);
  EXPECT_TRUE(r1.periphrastic());
  ASSERT_EQ(r1.context.size(), 1u);
  EXPECT_EQ(r1.context[0].offset, 1);
  EXPECT_TRUE(r1.context[0].first_morpheme.Matches({"계시", MorphTag::VX}));
  EXPECT_FALSE(r1.context[0].first_morpheme.Matches({"계시", MorphTag::VV}));
  EXPECT_EQ(r1.priority, 7);
  EXPECT_EQ(r1.line, 5u);
  const Rule& r2 = pack.rules[1];
  EXPECT_FALSE(r2.periphrastic());
  ASSERT_TRUE(r2.stem.has_value());
  EXPECT_TRUE(r2.stem->Matches({"먹", MorphTag::VV}));
  EXPECT_EQ(r2.emits.size(), 2u);
}

TEST(RulePackTest, NonKoreanPackNeedsNoKoreanLexicon) {
  const RulePack pack = LoadRulePack(
      "#unidive-rules v1\nlanguage tr\n"
      "feature Evident Nfh\n"
      "rule nfh tag=EP morph=miş emit=Evident=Nfh priority=1\n");
  EXPECT_EQ(pack.language, "tr");
  EXPECT_EQ(pack.rules.size(), 1u);
}

TEST(RulePackTest, EmptyFileHasNoRules) {
  std::size_t line = 99;
  EXPECT_NE(LoadError("", &line).find("no rules"), std::string::npos);
  EXPECT_EQ(line, 0u);
  EXPECT_NE(LoadError(std::string(kMinimalKorean), &line).find("no rules"),
            std::string::npos);
}

TEST(RulePackTest, RejectsMissingHeader) {
  EXPECT_NE(LoadError("language ko\n").find("header"), std::string::npos);
}

TEST(RulePackTest, RejectsDuplicateIds) {
  std::size_t line = 0;
  const std::string err = LoadError(Pack("rule a tag=JKS emit=Case=Nom priority=1\n"
                                         "rule a tag=JKO emit=Case=Acc priority=1\n"),
                                    &line);
  EXPECT_NE(err.find("duplicate rule id 'a'"), std::string::npos) << err;
  EXPECT_EQ(line, 6u);
}

TEST(RulePackTest, RejectsUnknownFeatures) {
  EXPECT_NE(LoadError(Pack("rule a tag=JKS emit=Kase=Nom priority=1\n")).find("unknown feature key"),
            std::string::npos);
  EXPECT_NE(LoadError(Pack("rule a tag=JKS emit=Case=Nominative priority=1\n")).find("unknown value"),
            std::string::npos);
  EXPECT_NE(LoadError(Pack("rule a tag=VV emit=Mood=@voice priority=1\n")).find("@voice"),
            std::string::npos);
}

TEST(RulePackTest, RejectsSamePatternAndPriority) {
  const std::string err = LoadError(Pack("rule a tag=JKS morph=이|가 emit=Case=Nom priority=4\n"
                                         "rule b tag=JKS morph=가|이 emit=Case=Acc priority=4\n"));
  EXPECT_NE(err.find("rules 'a' and 'b' share a pattern and priority 4"), std::string::npos)
      << err;
  EXPECT_EQ(LoadError(Pack("rule a tag=JKS morph=이|가 emit=Case=Nom priority=4\n"
                           "rule b tag=JKS morph=가|이 emit=Case=Acc priority=5\n")),
            "");
}

TEST(RulePackTest, RejectsEqualPriorityOverlap) {
  const std::string err = LoadError(Pack("rule a tag=JKS emit=Case=Nom priority=4\n"
                                         "rule b tag=JKS|JKO morph=가 emit=Case=Acc priority=4\n"));
  EXPECT_NE(err.find("rules 'a' and 'b' can both emit Case on one morpheme at priority 4"),
            std::string::npos)
      << err;
  EXPECT_NE(LoadError(Pack("rule a tag=EF pos=final next1=*/SF emit=Mood=Ind priority=1\n"
                           "rule b tag=EF morph=어 next1=!/SF emit=Mood=Imp priority=1\n")),
            "");
}

TEST(RulePackTest, AcceptsEqualPriorityWhenDisjoint) {
  for (const char* body : {
           // Different surfaces on the same tag.
           "rule a tag=JKS morph=이 emit=Case=Nom priority=4\n"
           "rule b tag=JKS morph=가 emit=Case=Acc priority=4\n",
           // Different tags.
           "rule a tag=JKS emit=Case=Nom priority=4\nrule b tag=JKO emit=Case=Acc priority=4\n",
           // Same value.
           "rule a tag=JKS emit=Case=Nom priority=4\n"
           "rule b tag=JKS morph=가 emit=Case=Nom priority=4\n",
           // Disjoint lookahead.
           "rule a tag=EF next1=./SF emit=Mood=Ind priority=1\n"
           "rule b tag=EF next1=!/SF emit=Mood=Imp priority=1\n",
           // Disjoint stems and previous morphemes.
           "rule a tag=EF stem=보/VV emit=Evident=Fh priority=1\n"
           "rule b tag=EF stem=듣/VV emit=Evident=Nfh priority=1\n",
           "rule a tag=EC prev=이/VCP emit=Mood=CndGen priority=1\n"
           "rule b tag=EC prev=하/XSA emit=Mood=CndGenPot priority=1\n",
           // Medial never coincides with final.
           "rule a tag=EP pos=medial emit=Tense=Past priority=1\n"
           "rule b tag=EP pos=final emit=Tense=Pres priority=1\n",
           // Different passes: lookahead rules only fill open keys.
           "rule a tag=EF emit=Mood=Ind priority=1\n"
           "rule b tag=EF next1=?/SF emit=Mood=Int priority=1\n",
       }) {
    EXPECT_EQ(LoadError(Pack(body)), "") << body;
  }
}

TEST(RulePackTest, KoreanPackMustListFunctionalWords) {
  const std::string err = LoadError(
      "#unidive-rules v1\nlanguage ko\nfunctional ADV 더 또\nfunctional DET 그 이 한\n"
      "rule a tag=JKS emit=Case=Nom priority=1\n");
  EXPECT_NE(err.find("다시"), std::string::npos) << err;
}

TEST(RulePackTest, RejectsMalformedRules) {
  for (const char* body : {"rule a tag=QQ emit=Case=Nom priority=1\n",
                           "rule a tag=JKS emit=Case=Nom\n",
                           "rule a tag=JKS priority=1\n",
                           "rule a emit=Case=Nom priority=1\n",
                           "rule a tag=JKS next1=가 emit=Case=Nom priority=1\n",
                           "rule a tag=JKS pos=middle emit=Case=Nom priority=1\n",
                           "rule a tag=JKS color=red emit=Case=Nom priority=1\n",
                           "voice 먹+히 Sideways\n",
                           "frobnicate\n"}) {
    EXPECT_NE(LoadError(Pack(body)), "") << body;
  }
}

TEST(MorphMatcherTest, CanonicalTextIsOrderInsensitive) {
  const RulePack a = LoadRulePack(Pack("rule a tag=JKS|JKO morph=이|가 emit=Case=Nom priority=1\n"));
  const RulePack b = LoadRulePack(Pack("rule a tag=JKO|JKS morph=가|이 emit=Case=Nom priority=1\n"));
  EXPECT_EQ(a.rules[0].anchor.ToString(), b.rules[0].anchor.ToString());
  EXPECT_EQ(a.rules[0].PatternKey(), b.rules[0].PatternKey());
}

}  // namespace
}  // namespace unidive
