#ifndef UNIDIVE_RULE_PACK_H_
#define UNIDIVE_RULE_PACK_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "unidive/conllu.h"
#include "unidive/feature_bag.h"
#include "unidive/tags.h"

namespace unidive {

// Matches one morpheme by surface alternation and tag alternation. An empty
// list matches anything.
struct MorphMatcher {
  std::vector<std::string> surfaces;
  std::vector<MorphTag> tags;

  bool Matches(const Morpheme& m) const;
  // Canonical text, `surf|surf/TAG|TAG` with `*` for an empty side.
  std::string ToString() const;
};

enum class Position { kAny, kInitial, kFinal, kSole, kMedial };

std::string_view ToString(Position p);

// Condition on the first morpheme of the word `offset` positions ahead.
struct ContextCondition {
  int offset = 1;
  MorphMatcher first_morpheme;
};

// Value placeholder for emissions resolved through the voice lexicon.
inline constexpr std::string_view kVoiceLexiconValue = "@voice";

struct Emission {
  std::string key;
  std::string value;
};

// A declarative feature rule. The rule fires on every morpheme of a word
// that matches `anchor` at `position`, subject to the optional constraints.
// Rules with a non-empty `context` run in the periphrastic pass.
struct Rule {
  std::string id;
  MorphMatcher anchor;
  Position position = Position::kAny;
  std::optional<MorphMatcher> previous;  // morpheme just before the anchor
  std::optional<MorphMatcher> stem;      // first morpheme of the word
  std::vector<ContextCondition> context;
  std::vector<Emission> emits;
  int priority = 0;
  std::size_t line = 0;

  bool periphrastic() const { return !context.empty(); }
  // Everything that identifies the pattern (not the emissions).
  std::string PatternKey() const;
};

// Feature keys and values a pack may emit.
using FeatureInventory = std::map<std::string, std::set<std::string>, FeatureNameLess>;

// The Korean inventory: Aspect, Case, Evident, Mood, NumType, Number,
// Person, Person[psor], Polite, PronType, Tense, VerbForm, Voice.
const FeatureInventory& DefaultFeatureInventory();

struct RulePack {
  std::string language;
  std::vector<Rule> rules;
  std::map<Upos, std::set<std::string>> functional_words;
  // Keyed by `stem` or `stem+suffix`, e.g. `먹+히` -> Pass.
  std::map<std::string, std::string> voice_lexicon;
  std::set<std::string> conjunctive_adverbs;
  FeatureInventory inventory;
};

class RulePackError : public std::runtime_error {
 public:
  RulePackError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline constexpr std::string_view kRulePackHeader = "#unidive-rules v1";

// Parses and validates a rule pack. Throws RulePackError.
RulePack LoadRulePack(std::istream& in);
RulePack LoadRulePack(std::string_view text);
RulePack LoadRulePackFile(const std::filesystem::path& path);

// Location of the Korean pack that ships with the toolkit.
std::filesystem::path ShippedKoreanPackPath();

}  // namespace unidive

#endif  // UNIDIVE_RULE_PACK_H_
