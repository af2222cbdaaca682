#ifndef UNIDIVE_CONLLU_H_
#define UNIDIVE_CONLLU_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "unidive/feature_bag.h"
#include "unidive/tags.h"

namespace unidive {

struct Morpheme {
  std::string surface;
  MorphTag tag = MorphTag::NA;

  friend bool operator==(const Morpheme&, const Morpheme&) = default;
};

// One syntactic word. The LEMMA and XPOS columns are split on `+` and paired
// positionally into `morphemes`.
struct Token {
  int id = 0;
  std::string form;
  std::vector<Morpheme> morphemes;
  Upos upos = Upos::X;
  FeatureBag feats;
  int head = 0;
  std::string deprel;
  std::string deps;
  std::string misc;

  // Raw LEMMA and XPOS columns, set only when their segment counts differ.
  // `morphemes` is empty in that case.
  struct Unaligned {
    std::string lemma;
    std::string xpos;
    friend bool operator==(const Unaligned&, const Unaligned&) = default;
  };
  std::optional<Unaligned> unaligned;

  // 1-based line in the source file; 0 for tokens built in code. Not part of
  // equality.
  std::size_t line = 0;

  std::string LemmaColumn() const;
  std::string XposColumn() const;

  friend bool operator==(const Token& a, const Token& b);
};

// A CoNLL-U line that is carried through untouched: multiword token ranges
// (`1-2`) and empty nodes (`1.1`). `position` is the number of syntactic
// words that precede it.
struct PassthroughLine {
  std::size_t position = 0;
  std::string text;
  friend bool operator==(const PassthroughLine&, const PassthroughLine&) = default;
};

struct Sentence {
  std::vector<std::string> comments;  // full lines, including the leading '#'
  std::vector<Token> tokens;
  std::vector<PassthroughLine> passthrough;
  std::size_t line = 0;  // line of the first row; not part of equality

  std::optional<std::string> SentId() const;
  std::optional<std::string> Text() const;
  // Sets or replaces the `# sent_id = ` comment.
  void SetSentId(std::string_view id);

  friend bool operator==(const Sentence& a, const Sentence& b);
};

struct Diagnostic {
  std::string sent_id;  // empty when the sentence has none
  int token_id = 0;     // 0 for sentence-level findings
  std::string rule;
  std::string message;
  std::size_t line = 0;

  std::string ToString() const;
};

// Malformed input that cannot be represented (bad column count, unknown tag,
// invalid FEATS, non-numeric id or head).
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Structurally readable input that violates a sentence or token invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct ReadOptions {
  // Unknown morpheme tags become NA with a warning instead of an error.
  bool lenient = false;
  // Drop a leading UTF-8 byte order mark instead of rejecting it.
  bool strip_bom = false;
};

// Streams sentences out of a CoNLL-U file one at a time. Reading is
// structural only; call ValidateSentence for the invariants.
class ConlluReader {
 public:
  explicit ConlluReader(std::istream& in, ReadOptions options = {});

  // Returns false at end of input. Throws FormatError.
  bool Next(Sentence& sentence);

  // Non-fatal findings: lenient tag remaps and re-sorted FEATS.
  std::vector<Diagnostic> TakeWarnings();

  std::size_t line() const { return line_; }

 private:
  Token ParseTokenLine(std::string_view line);

  std::istream& in_;
  ReadOptions options_;
  std::size_t line_ = 0;
  std::vector<Diagnostic> warnings_;
};

// Reads and validates a whole file. Throws FormatError or ValidationError.
std::vector<Sentence> ParseConllu(std::istream& in, ReadOptions options = {},
                                  std::vector<Diagnostic>* warnings = nullptr);
std::vector<Sentence> ParseConllu(std::string_view text, ReadOptions options = {},
                                  std::vector<Diagnostic>* warnings = nullptr);

// Canonical 10-column rendering of one sentence, blank line included.
std::string FormatSentence(const Sentence& sentence);
void WriteSentence(std::ostream& out, const Sentence& sentence);

// Validates, then renders. Throws ValidationError.
std::string SerializeConllu(std::span<const Sentence> sentences);

std::vector<Diagnostic> ValidateSentence(const Sentence& sentence);
std::vector<Diagnostic> Validate(std::span<const Sentence> sentences);

// Splits `text` on `sep`; an empty input yields one empty field.
std::vector<std::string_view> Split(std::string_view text, char sep);

}  // namespace unidive

#endif  // UNIDIVE_CONLLU_H_
