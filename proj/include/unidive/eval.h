#ifndef UNIDIVE_EVAL_H_
#define UNIDIVE_EVAL_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unidive/conllu.h"
#include "unidive/it_convert.h"

namespace unidive {

struct ScoreOptions {
  // Skip gold tokens whose UPOS is PUNCT. Off by default: every token counts.
  bool exclude_punct = false;
};

// Additive counters; sentences are scored independently and summed.
struct EvalCounts {
  std::size_t total_tokens = 0;
  std::size_t head_correct = 0;
  std::size_t both_correct = 0;
  std::size_t unmatched_predicted_rows = 0;
  std::size_t missing_gold_rows = 0;

  EvalCounts& operator+=(const EvalCounts& other);
  friend bool operator==(const EvalCounts&, const EvalCounts&) = default;
};

// Percentages are kept in hundredths of a point so that rounding and
// differences are exact: 8333 means 83.33.
struct EvalReport {
  std::size_t total_tokens = 0;
  std::size_t head_correct = 0;
  std::size_t both_correct = 0;
  std::int64_t uas = 0;
  std::int64_t las = 0;
  std::size_t unmatched_predicted_rows = 0;
  std::size_t missing_gold_rows = 0;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

struct DeltaReport {
  std::int64_t uas = 0;  // hundredths, b - a
  std::int64_t las = 0;
};

// 100 * numerator / denominator rounded half-up to hundredths. Zero when
// the denominator is zero.
std::int64_t PercentHundredths(std::size_t numerator, std::size_t denominator);

// "83.33", "-0.50", or with `signed_form` "+14.09".
std::string FormatHundredths(std::int64_t hundredths, bool signed_form = false);

// Parses "50.24" or "+14.09" into hundredths. Throws std::invalid_argument.
std::int64_t ParseHundredths(std::string_view text);

// Rows align to gold tokens by id, so row order is irrelevant. Rows with ids
// outside the sentence count as unmatched. When several rows share an id,
// all of them count as unmatched and the token is scored wrong; a token
// with no row at all counts as missing.
EvalCounts ScoreSentence(const Sentence& gold, std::span<const ParsedRow> predicted,
                         const ScoreOptions& options = {});

EvalReport Finalize(const EvalCounts& counts);

// Throws std::invalid_argument when the sentence counts differ.
EvalReport Score(std::span<const Sentence> gold,
                 std::span<const std::vector<ParsedRow>> predicted,
                 const ScoreOptions& options = {});

// Signed change from `a` to `b`. Throws std::invalid_argument unless both
// cover the same number of tokens.
DeltaReport Compare(const EvalReport& a, const EvalReport& b);

// Human-readable table followed by key=value lines.
std::string FormatReport(const EvalReport& report);
std::string FormatDelta(const DeltaReport& delta);

}  // namespace unidive

#endif  // UNIDIVE_EVAL_H_
