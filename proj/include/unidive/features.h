#ifndef UNIDIVE_FEATURES_H_
#define UNIDIVE_FEATURES_H_

#include <optional>
#include <string>
#include <utility>

#include "unidive/conllu.h"
#include "unidive/rule_pack.h"

namespace unidive {

struct AssignOptions {
  bool periphrastic = true;     // run the lookahead pass
  bool transcribe = true;       // Case=<ending> for otherwise bare EC words
  bool mark_functional = true;  // Functional=Yes in MISC
};

// Recomputes every token's FEATS from its morphemes.
//
// Pass 1 applies word-internal rules. Pass 2 applies rules with a lookahead
// context and only fills keys pass 1 left unset. Within a pass, a key takes
// the value of the highest-priority matching rule. Packs cannot tie on one
// morpheme; a tie between rules on different morphemes of the word goes to
// the rule declared first. Words that end in an EC morpheme and received
// nothing get a transcription of the ending. Existing FEATS are discarded.
Sentence AssignFeatures(const Sentence& sentence, const RulePack& pack,
                        const AssignOptions& options = {});

// `Case=<romanized ending>` when the last morpheme is EC and the token
// carries no features yet.
std::optional<std::pair<std::string, std::string>> TranscribeEnding(const Token& token);

// True when the token's UPOS class lists its form as a functional word.
bool TagFunctional(const Token& token, const RulePack& pack);

// Looks up the voice lexicon starting at morpheme `index`: first the
// `stem+suffix` pair, then the single stem.
std::optional<std::string> LookupVoice(const Token& token, std::size_t index,
                                       const RulePack& pack);

}  // namespace unidive

#endif  // UNIDIVE_FEATURES_H_
