#ifndef UNIDIVE_CORRECT_H_
#define UNIDIVE_CORRECT_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "unidive/conllu.h"
#include "unidive/rule_pack.h"

namespace unidive {

// Output of external taggers for one token: an NER label and the tagger's
// own XPOS analysis. Either may be absent.
struct AuxAnnotation {
  std::string sent_id;
  int token_id = 0;
  std::optional<std::string> ner_label;
  std::optional<std::vector<MorphTag>> ext_xpos;
};

// Reads the tab-separated sidecar (sent_id, token_id, ner_label, ext_xpos)
// with `_` for absent fields. Throws FormatError.
std::vector<AuxAnnotation> ReadAuxSidecar(std::istream& in);

// Aux annotations grouped by sentence id.
class AuxIndex {
 public:
  AuxIndex() = default;
  explicit AuxIndex(std::vector<AuxAnnotation> entries);

  std::span<const AuxAnnotation> ForSentence(std::string_view sent_id) const;
  bool empty() const { return by_sentence_.empty(); }
  std::vector<std::string> SentenceIds() const;

 private:
  std::map<std::string, std::vector<AuxAnnotation>, std::less<>> by_sentence_;
};

enum class CorrectionField { kUpos, kXpos, kLemma };

std::string_view ToString(CorrectionField field);
std::optional<CorrectionField> ParseCorrectionField(std::string_view name);

// Net change of one column of one token. `rule_id` lists the rules that
// touched the column, joined with `+`.
struct CorrectionRecord {
  std::string sent_id;
  int token_id = 0;
  CorrectionField field = CorrectionField::kUpos;
  std::string original;
  std::string corrected;
  std::string rule_id;

  friend bool operator==(const CorrectionRecord&, const CorrectionRecord&) = default;
};

struct CorrectionResult {
  Sentence sentence;
  std::vector<CorrectionRecord> records;
};

// UPOS for a word-heading morpheme tag; nullopt for tags that never head a
// word (particles, endings, affixes, XR, NA).
std::optional<Upos> CanonicalUpos(MorphTag tag);

// UPOS from the lexical head: the first morpheme with a canonical UPOS,
// overridden by a later verbal (XSV) or adjectival (XSA) derivational
// suffix. nullopt when nothing in the word determines a category.
std::optional<Upos> LexicalUpos(std::span<const Morpheme> morphemes);

// Applies the correction rules in order: external-analysis and NER
// reconciliation, canonical UPOS, XR normalization, complement marker,
// conjunctive adverb, then canonical UPOS again over the final XPOS.
// Dependency columns are never modified. Throws std::invalid_argument when
// an aux entry does not resolve to a token of this sentence.
CorrectionResult CorrectSentence(const Sentence& sentence,
                                 std::span<const AuxAnnotation> aux,
                                 const RulePack& pack);

// Re-applies records to the uncorrected sentence. Throws
// std::invalid_argument when a record's original value does not match.
Sentence ApplyCorrections(const Sentence& original,
                          std::span<const CorrectionRecord> records);

struct ConversionRow {
  std::string original;
  std::string corrected;
  std::size_t count = 0;
  double ratio = 0.0;
};

struct ConversionStats {
  std::size_t total_tokens = 0;
  std::vector<ConversionRow> upos;
  std::vector<ConversionRow> xpos;
  std::vector<ConversionRow> lemma;

  std::size_t TotalCount() const;
};

// Groups records by (field, original, corrected); rows sorted by count
// descending, then original and corrected. Throws std::invalid_argument
// when total_tokens is zero or smaller than the number of corrected tokens.
ConversionStats AggregateStats(std::span<const CorrectionRecord> records,
                               std::size_t total_tokens);

// Side-by-side UPOS | XPOS table with ratios to 4 decimals. `top` limits
// the rows per side; 0 means all. LEMMA rows follow in their own section.
std::string FormatStatsTable(const ConversionStats& stats, std::size_t top = 0);

// Record log: one tab-separated record per line (sent_id, token_id, field,
// original, corrected, rule) after a `# total_tokens = N` line.
void WriteCorrectionLog(std::ostream& out, std::span<const CorrectionRecord> records,
                        std::optional<std::size_t> total_tokens);

struct CorrectionLog {
  std::vector<CorrectionRecord> records;
  std::optional<std::size_t> total_tokens;
};

CorrectionLog ReadCorrectionLog(std::istream& in);

}  // namespace unidive

#endif  // UNIDIVE_CORRECT_H_
