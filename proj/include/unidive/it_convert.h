#ifndef UNIDIVE_IT_CONVERT_H_
#define UNIDIVE_IT_CONVERT_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unidive/conllu.h"

namespace unidive {

inline constexpr std::string_view kDefaultInstruction =
    "아래의 문장을 의존구조문법에 맞게 분석해줘";

// Placeholders written into the HEAD and DEPREL cells of the input block.
inline constexpr std::string_view kHeadPlaceholder = "head";
inline constexpr std::string_view kRelPlaceholder = "rel";

// One instruction-tuning sample. The training text is
//
//   instruction + "\n" + input + "\n" + output
//
// where input and output are blocks of newline-terminated rows with eight
// tab-separated columns: ID FORM LEMMA UPOS XPOS FEATS HEAD DEPREL.
// `output_offset` is the index, in Unicode code points, of the first
// character of `output` in that text. Loss is applied from there on.
struct ITRecord {
  std::string instruction;
  std::string input;
  std::string output;
  std::size_t output_offset = 0;

  friend bool operator==(const ITRecord&, const ITRecord&) = default;
};

// Full training text under the convention above.
std::string ConcatenatedText(const ITRecord& record);

// Number of Unicode code points in a UTF-8 string.
std::size_t CodePointLength(std::string_view utf8);

// Throws std::invalid_argument for a sentence without tokens.
ITRecord ToItRecord(const Sentence& sentence,
                    std::string_view instruction = kDefaultInstruction);

// A row recovered from generated output. Head and deprel are absent when
// the cell is missing, a placeholder, or malformed.
struct ParsedRow {
  int id = 0;
  std::optional<int> head;
  std::optional<std::string> deprel;

  friend bool operator==(const ParsedRow&, const ParsedRow&) = default;
};

// Best-effort extraction: every line whose first field is a positive
// integer becomes a row. Fields are split on tabs, or on runs of whitespace
// when a line has fewer than eight tab-separated fields. Never throws.
std::vector<ParsedRow> FromItOutput(std::string_view output_text);

// One JSON object per line with fields instruction, input, output,
// output_offset in that order. Returns the number of lines written; throws
// std::runtime_error if the stream fails.
std::size_t EmitJsonl(std::span<const ITRecord> records, std::ostream& sink);

// Reads JSONL written by EmitJsonl. Throws FormatError.
std::vector<ITRecord> ReadJsonl(std::istream& in);

// Reads a predictions file for scoring: either JSONL whose objects carry
// the generated text in "output" (or "prediction"), or plain text with one
// block of rows per sentence separated by blank lines. CoNLL-U files are
// accepted by the plain-text path.
std::vector<std::vector<ParsedRow>> ReadPredictions(std::istream& in);

}  // namespace unidive

#endif  // UNIDIVE_IT_CONVERT_H_
