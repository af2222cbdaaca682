#include "unidive/eval.h"

#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "test_util.h"

namespace unidive {
namespace {

Sentence Sample() { return testing::ReadFixture("sample_gold.conllu").at(0); }

std::vector<ParsedRow> Perfect(const Sentence& s) {
  std::vector<ParsedRow> rows;
  for (const Token& t : s.tokens) rows.push_back({t.id, t.head, t.deprel});
  return rows;
}

EvalReport ScoreOne(const Sentence& gold, std::vector<ParsedRow> rows,
                    ScoreOptions options = {}) {
  const std::vector<std::vector<ParsedRow>> predicted = {std::move(rows)};
  return Score(std::span(&gold, 1), predicted, options);
}

TEST(ScoreTest, IdentityIsPerfect) {
  const EvalReport r = ScoreOne(Sample(), Perfect(Sample()));
  EXPECT_EQ(r.uas, 10000);
  EXPECT_EQ(r.las, 10000);
  EXPECT_EQ(r.total_tokens, 6u);
}

TEST(ScoreTest, WrongHeadCostsBoth) {
  auto rows = Perfect(Sample());
  rows[3].head = 1;  // gold 5
  const EvalReport r = ScoreOne(Sample(), rows);
  EXPECT_EQ(FormatHundredths(r.uas), "83.33");
  EXPECT_EQ(FormatHundredths(r.las), "83.33");
}

TEST(ScoreTest, WrongLabelCostsLasOnly) {
  auto rows = Perfect(Sample());
  rows[1].deprel = "conj";  // gold flat
  const EvalReport r = ScoreOne(Sample(), rows);
  EXPECT_EQ(FormatHundredths(r.uas), "100.00");
  EXPECT_EQ(FormatHundredths(r.las), "83.33");
}

TEST(ScoreTest, UnparsableOutputScoresZero) {
  const EvalReport r = ScoreOne(Sample(), FromItOutput("I cannot parse this sentence."));
  EXPECT_EQ(r.uas, 0);
  EXPECT_EQ(r.las, 0);
  EXPECT_EQ(r.missing_gold_rows, 6u);
}

TEST(ScoreTest, LabelMatchIsExact) {
  auto rows = Perfect(Sample());
  rows[0].deprel = "nsubj:pass";
  rows[2].deprel = "Conj";
  EXPECT_EQ(ScoreOne(Sample(), rows).both_correct, 4u);
}

TEST(ScoreTest, SurplusAndDuplicateRowsAreUnmatched) {
  auto rows = Perfect(Sample());
  rows.push_back({7, 5, "punct"});
  const EvalReport surplus = ScoreOne(Sample(), rows);
  EXPECT_EQ(surplus.unmatched_predicted_rows, 1u);
  EXPECT_EQ(surplus.uas, 10000);
  rows.push_back({2, 1, "flat"});  // same id twice: ambiguous, neither counts
  const EvalReport dup = ScoreOne(Sample(), rows);
  EXPECT_EQ(dup.unmatched_predicted_rows, 3u);
  EXPECT_EQ(dup.head_correct, 5u);
  EXPECT_EQ(dup.missing_gold_rows, 0u);
}

TEST(ScoreTest, PunctuationCanBeExcluded) {
  auto rows = Perfect(Sample());
  rows[5].head = 1;
  EXPECT_EQ(FormatHundredths(ScoreOne(Sample(), rows).uas), "83.33");
  const EvalReport r = ScoreOne(Sample(), rows, ScoreOptions{true});
  EXPECT_EQ(r.total_tokens, 5u);
  EXPECT_EQ(r.uas, 10000);
}

TEST(ScoreTest, SentenceCountMismatchThrows) {
  const Sentence gold = Sample();
  const std::vector<std::vector<ParsedRow>> none;
  EXPECT_THROW(Score(std::span(&gold, 1), none), std::invalid_argument);
}

TEST(PercentTest, RoundsHalfUp) {
  EXPECT_EQ(PercentHundredths(5, 6), 8333);
  EXPECT_EQ(PercentHundredths(2, 3), 6667);
  EXPECT_EQ(PercentHundredths(1, 32), 313);   // 3.125
  EXPECT_EQ(PercentHundredths(1, 160), 63);   // 0.625
  EXPECT_EQ(PercentHundredths(1, 8), 1250);
  EXPECT_EQ(PercentHundredths(0, 0), 0);
}

TEST(PercentTest, ParsesAndFormats) {
  EXPECT_EQ(ParseHundredths("50.24"), 5024);
  EXPECT_EQ(ParseHundredths("+14.09"), 1409);
  EXPECT_EQ(ParseHundredths("-0.5"), -50);
  EXPECT_EQ(ParseHundredths("100"), 10000);
  EXPECT_THROW(ParseHundredths("1.234"), std::invalid_argument);
  EXPECT_THROW(ParseHundredths("abc"), std::invalid_argument);
  EXPECT_EQ(FormatHundredths(-50), "-0.50");
  EXPECT_EQ(FormatHundredths(0, true), "+0.00");
  EXPECT_EQ(FormatHundredths(1409, true), "+14.09");
}

EvalReport Reference(std::size_t tokens, const char* uas, const char* las) {
  EvalReport r;
  r.total_tokens = tokens;
  r.uas = ParseHundredths(uas);
  r.las = ParseHundredths(las);
  return r;
}

TEST(CompareTest, ReproducesReferenceDeltas) {
  const DeltaReport udpipe = Compare(Reference(1000, "61.05", "50.24"),
                                     Reference(1000, "71.41", "64.33"));
  EXPECT_EQ(FormatHundredths(udpipe.las, true), "+14.09");
  EXPECT_EQ(FormatHundredths(udpipe.uas, true), "+10.36");
  const DeltaReport bllossom = Compare(Reference(1000, "88.30", "84.37"),
                                       Reference(1000, "89.16", "86.97"));
  EXPECT_EQ(FormatHundredths(bllossom.uas, true), "+0.86");
  EXPECT_EQ(FormatHundredths(bllossom.las, true), "+2.60");
}

TEST(CompareTest, IdenticalReportsHaveZeroDelta) {
  const EvalReport r = ScoreOne(Sample(), Perfect(Sample()));
  const DeltaReport d = Compare(r, r);
  EXPECT_EQ(d.uas, 0);
  EXPECT_EQ(d.las, 0);
}

TEST(CompareTest, TokenCountMismatchThrows) {
  EXPECT_THROW(Compare(Reference(10, "1.00", "1.00"), Reference(11, "1.00", "1.00")),
               std::invalid_argument);
}

TEST(ReportTest, HasKeyValueLines) {
  const std::string text = FormatReport(ScoreOne(Sample(), Perfect(Sample())));
  for (const char* line : {"total=6\n", "head_correct=6\n", "both_correct=6\n", "uas=100.00\n",
                           "las=100.00\n", "unmatched=0\n", "missing=0\n"}) {
    EXPECT_NE(text.find(line), std::string::npos) << line;
  }
}

// Random gold trees and perturbed predictions, scored two ways.
struct Case {
  Sentence gold;
  std::vector<ParsedRow> predicted;
};

Case RandomCase(std::mt19937& rng) {
  static const std::vector<std::string> labels = {"nsubj", "obj", "advmod", "root", "flat"};
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Case c;
  const int n = pick(1, 8);
  for (int i = 1; i <= n; ++i) {
    Token t;
    t.id = i;
    t.form = "w";
    t.head = pick(0, n);
    t.deprel = labels[static_cast<std::size_t>(pick(0, 4))];
    t.upos = pick(0, 5) == 0 ? Upos::PUNCT : Upos::NOUN;
    c.gold.tokens.push_back(t);
  }
  for (const Token& t : c.gold.tokens) {
    switch (pick(0, 6)) {
      case 0: continue;  // dropped row
      case 1: c.predicted.push_back({t.id, pick(0, n), t.deprel}); break;
      case 2: c.predicted.push_back({t.id, t.head, labels[static_cast<std::size_t>(pick(0, 4))]}); break;
      case 3: c.predicted.push_back({t.id, std::nullopt, t.deprel}); break;
      case 4: c.predicted.push_back({t.id, t.head, std::nullopt}); break;
      default: c.predicted.push_back({t.id, t.head, t.deprel}); break;
    }
  }
  const int extra = pick(0, 2);
  for (int k = 0; k < extra; ++k) c.predicted.push_back({pick(1, n + 3), pick(0, n), "dep"});
  std::shuffle(c.predicted.begin(), c.predicted.end(), rng);
  return c;
}

EvalCounts Oracle(const Case& c, bool exclude_punct) {
  EvalCounts out;
  for (const ParsedRow& row : c.predicted) {
    const auto same = std::count_if(c.predicted.begin(), c.predicted.end(),
                                    [&](const ParsedRow& r) { return r.id == row.id; });
    const bool in_range = row.id >= 1 && row.id <= static_cast<int>(c.gold.tokens.size());
    if (!in_range || same > 1) ++out.unmatched_predicted_rows;
  }
  for (const Token& t : c.gold.tokens) {
    if (exclude_punct && t.upos == Upos::PUNCT) continue;
    ++out.total_tokens;
    std::vector<const ParsedRow*> matches;
    for (const ParsedRow& row : c.predicted) {
      if (row.id == t.id) matches.push_back(&row);
    }
    if (matches.empty()) {
      ++out.missing_gold_rows;
      continue;
    }
    if (matches.size() > 1) continue;
    const ParsedRow& m = *matches[0];
    if (m.head.has_value() && *m.head == t.head) {
      ++out.head_correct;
      if (m.deprel.has_value() && *m.deprel == t.deprel) ++out.both_correct;
    }
  }
  return out;
}

TEST(ScoreProperty, MatchesBruteForceOracle) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const Case c = RandomCase(rng);
    for (bool exclude : {false, true}) {
      EXPECT_EQ(ScoreSentence(c.gold, c.predicted, ScoreOptions{exclude}), Oracle(c, exclude))
          << "trial " << trial;
    }
  }
}

TEST(ScoreProperty, FixingAHeadNeverHurts) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    Case c = RandomCase(rng);
    const EvalReport before = ScoreOne(c.gold, c.predicted);
    for (ParsedRow& row : c.predicted) {
      if (row.id > static_cast<int>(c.gold.tokens.size())) continue;
      const Token& t = c.gold.tokens[static_cast<std::size_t>(row.id) - 1];
      if (row.head != t.head) {
        row.head = t.head;
        break;
      }
    }
    const EvalReport after = ScoreOne(c.gold, c.predicted);
    EXPECT_GE(after.uas, before.uas);
    EXPECT_GE(after.las, before.las);
  }
}

TEST(ScoreProperty, RowOrderDoesNotMatter) {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    Case c = RandomCase(rng);
    const EvalReport base = ScoreOne(c.gold, c.predicted);
    for (int k = 0; k < 3; ++k) {
      std::shuffle(c.predicted.begin(), c.predicted.end(), rng);
      EXPECT_EQ(ScoreOne(c.gold, c.predicted), base);
    }
  }
}

}  // namespace
}  // namespace unidive
