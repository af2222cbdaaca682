#include "unidive/eval.h"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace unidive {

EvalCounts& EvalCounts::operator+=(const EvalCounts& other) {
  total_tokens += other.total_tokens;
  head_correct += other.head_correct;
  both_correct += other.both_correct;
  unmatched_predicted_rows += other.unmatched_predicted_rows;
  missing_gold_rows += other.missing_gold_rows;
  return *this;
}

std::int64_t PercentHundredths(std::size_t numerator, std::size_t denominator) {
  if (denominator == 0) return 0;
  const auto n = static_cast<std::int64_t>(numerator);
  const auto d = static_cast<std::int64_t>(denominator);
  return (20000 * n + d) / (2 * d);
}

std::string FormatHundredths(std::int64_t hundredths, bool signed_form) {
  std::string out;
  if (hundredths < 0) {
    out += '-';
  } else if (signed_form) {
    out += '+';
  }
  const std::int64_t magnitude = std::llabs(hundredths);
  out += std::to_string(magnitude / 100);
  out += '.';
  const std::int64_t frac = magnitude % 100;
  if (frac < 10) out += '0';
  out += std::to_string(frac);
  return out;
}

std::int64_t ParseHundredths(std::string_view text) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const std::size_t dot = text.find('.');
  const std::string_view whole = text.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? "" : text.substr(dot + 1);
  if (whole.empty() || frac.size() > 2) {
    throw std::invalid_argument("not a two-decimal percentage: '" + original + "'");
  }
  auto digits = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw std::invalid_argument("not a two-decimal percentage: '" + original + "'");
    }
    return v;
  };
  std::int64_t value = digits(whole) * 100;
  if (!frac.empty()) value += digits(frac) * (frac.size() == 1 ? 10 : 1);
  return negative ? -value : value;
}

EvalCounts ScoreSentence(const Sentence& gold, std::span<const ParsedRow> predicted,
                         const ScoreOptions& options) {
  const std::size_t n = gold.tokens.size();
  std::vector<const ParsedRow*> aligned(n, nullptr);
  std::vector<std::size_t> rows_per_id(n, 0);
  EvalCounts c;
  for (const ParsedRow& row : predicted) {
    if (row.id < 1 || static_cast<std::size_t>(row.id) > n) {
      ++c.unmatched_predicted_rows;
      continue;
    }
    const auto i = static_cast<std::size_t>(row.id) - 1;
    aligned[i] = &row;
    ++rows_per_id[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    // Several rows claiming one id are ambiguous: none of them is scored.
    if (rows_per_id[i] > 1) c.unmatched_predicted_rows += rows_per_id[i];
    const Token& t = gold.tokens[i];
    if (options.exclude_punct && t.upos == Upos::PUNCT) continue;
    ++c.total_tokens;
    if (rows_per_id[i] == 0) {
      ++c.missing_gold_rows;
      continue;
    }
    const ParsedRow* row = rows_per_id[i] == 1 ? aligned[i] : nullptr;
    if (row != nullptr && row->head && *row->head == t.head) {
      ++c.head_correct;
      if (row->deprel && *row->deprel == t.deprel) ++c.both_correct;
    }
  }
  return c;
}

EvalReport Finalize(const EvalCounts& c) {
  EvalReport r;
  r.total_tokens = c.total_tokens;
  r.head_correct = c.head_correct;
  r.both_correct = c.both_correct;
  r.uas = PercentHundredths(c.head_correct, c.total_tokens);
  r.las = PercentHundredths(c.both_correct, c.total_tokens);
  r.unmatched_predicted_rows = c.unmatched_predicted_rows;
  r.missing_gold_rows = c.missing_gold_rows;
  return r;
}

EvalReport Score(std::span<const Sentence> gold,
                 std::span<const std::vector<ParsedRow>> predicted,
                 const ScoreOptions& options) {
  if (gold.size() != predicted.size()) {
    throw std::invalid_argument("gold has " + std::to_string(gold.size()) +
                                " sentences but predictions have " +
                                std::to_string(predicted.size()));
  }
  EvalCounts total;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    total += ScoreSentence(gold[i], predicted[i], options);
  }
  return Finalize(total);
}

DeltaReport Compare(const EvalReport& a, const EvalReport& b) {
  if (a.total_tokens != b.total_tokens) {
    throw std::invalid_argument("reports cover different token counts (" +
                                std::to_string(a.total_tokens) + " vs " +
                                std::to_string(b.total_tokens) + ")");
  }
  return DeltaReport{b.uas - a.uas, b.las - a.las};
}

std::string FormatReport(const EvalReport& r) {
  std::ostringstream out;
  char line[96];
  std::snprintf(line, sizeof(line), "%-6s %9s %9s %7s\n", "metric", "correct", "total",
                "score");
  out << line;
  std::snprintf(line, sizeof(line), "%-6s %9zu %9zu %7s\n", "UAS", r.head_correct,
                r.total_tokens, FormatHundredths(r.uas).c_str());
  out << line;
  std::snprintf(line, sizeof(line), "%-6s %9zu %9zu %7s\n", "LAS", r.both_correct,
                r.total_tokens, FormatHundredths(r.las).c_str());
  out << line;
  out << '\n';
  out << "total=" << r.total_tokens << '\n';
  out << "head_correct=" << r.head_correct << '\n';
  out << "both_correct=" << r.both_correct << '\n';
  out << "uas=" << FormatHundredths(r.uas) << '\n';
  out << "las=" << FormatHundredths(r.las) << '\n';
  out << "unmatched=" << r.unmatched_predicted_rows << '\n';
  out << "missing=" << r.missing_gold_rows << '\n';
  return out.str();
}

std::string FormatDelta(const DeltaReport& d) {
  return "delta_uas=" + FormatHundredths(d.uas, true) + "\ndelta_las=" +
         FormatHundredths(d.las, true) + "\n";
}

}  // namespace unidive
