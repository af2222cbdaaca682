#include "unidive/features.h"

#include <map>

#include "unidive/romanize.h"

namespace unidive {
namespace {

constexpr std::string_view kFunctionalMisc = "Functional=Yes";

struct Candidate {
  std::string value;
  int priority = 0;
  std::size_t order = 0;
};

using Resolved = std::map<std::string, Candidate, FeatureNameLess>;

bool PositionMatches(Position p, std::size_t index, std::size_t count) {
  switch (p) {
    case Position::kAny: return true;
    case Position::kInitial: return index == 0;
    case Position::kFinal: return index + 1 == count;
    case Position::kSole: return count == 1;
    case Position::kMedial: return index > 0 && index + 1 < count;
  }
  return false;
}

bool ContextMatches(const Rule& rule, const Sentence& s, std::size_t word) {
  for (const ContextCondition& c : rule.context) {
    const std::size_t target = word + static_cast<std::size_t>(c.offset);
    if (target >= s.tokens.size()) return false;
    const Token& t = s.tokens[target];
    if (t.morphemes.empty() || !c.first_morpheme.Matches(t.morphemes.front())) {
      return false;
    }
  }
  return true;
}

bool RuleMatchesAt(const Rule& rule, const Sentence& s, std::size_t word,
                   std::size_t index) {
  const std::vector<Morpheme>& ms = s.tokens[word].morphemes;
  if (!rule.anchor.Matches(ms[index])) return false;
  if (!PositionMatches(rule.position, index, ms.size())) return false;
  if (rule.previous && (index == 0 || !rule.previous->Matches(ms[index - 1]))) {
    return false;
  }
  if (rule.stem && !rule.stem->Matches(ms.front())) return false;
  return ContextMatches(rule, s, word);
}

void Offer(Resolved& resolved, const std::string& key, std::string value,
           int priority, std::size_t order) {
  auto it = resolved.find(key);
  if (it == resolved.end()) {
    resolved.emplace(key, Candidate{std::move(value), priority, order});
    return;
  }
  Candidate& c = it->second;
  if (priority > c.priority || (priority == c.priority && order < c.order)) {
    c = Candidate{std::move(value), priority, order};
  }
}

Resolved RunPass(const Sentence& s, std::size_t word, const RulePack& pack,
                 bool periphrastic) {
  Resolved resolved;
  const Token& token = s.tokens[word];
  for (std::size_t r = 0; r < pack.rules.size(); ++r) {
    const Rule& rule = pack.rules[r];
    if (rule.periphrastic() != periphrastic) continue;
    for (std::size_t m = 0; m < token.morphemes.size(); ++m) {
      if (!RuleMatchesAt(rule, s, word, m)) continue;
      for (const Emission& e : rule.emits) {
        if (e.value == kVoiceLexiconValue) {
          if (std::optional<std::string> v = LookupVoice(token, m, pack)) {
            Offer(resolved, e.key, *v, rule.priority, r);
          }
        } else {
          Offer(resolved, e.key, e.value, rule.priority, r);
        }
      }
    }
  }
  return resolved;
}

std::string UpdateMisc(const std::string& misc, bool functional) {
  std::string out;
  if (!misc.empty()) {
    for (std::string_view item : Split(misc, '|')) {
      if (item == kFunctionalMisc) continue;
      if (!out.empty()) out += '|';
      out += item;
    }
  }
  if (functional) {
    if (!out.empty()) out += '|';
    out += kFunctionalMisc;
  }
  return out;
}

}  // namespace

std::optional<std::string> LookupVoice(const Token& token, std::size_t index,
                                       const RulePack& pack) {
  const std::vector<Morpheme>& ms = token.morphemes;
  if (index >= ms.size()) return std::nullopt;
  if (index + 1 < ms.size()) {
    auto it = pack.voice_lexicon.find(ms[index].surface + "+" + ms[index + 1].surface);
    if (it != pack.voice_lexicon.end()) return it->second;
  }
  auto it = pack.voice_lexicon.find(ms[index].surface);
  if (it != pack.voice_lexicon.end()) return it->second;
  // A lexicalized stem such as 먹히 matches the entry 먹+히.
  for (const auto& [key, value] : pack.voice_lexicon) {
    const std::size_t plus = key.find('+');
    if (plus == std::string::npos) continue;
    if (key.substr(0, plus) + key.substr(plus + 1) == ms[index].surface) return value;
  }
  return std::nullopt;
}

std::optional<std::pair<std::string, std::string>> TranscribeEnding(const Token& token) {
  if (token.morphemes.empty() || !token.feats.empty()) return std::nullopt;
  const Morpheme& last = token.morphemes.back();
  if (last.tag != MorphTag::EC) return std::nullopt;
  std::string roman = Romanize(last.surface);
  if (!FeatureBag::IsValidValue(roman)) return std::nullopt;
  return std::make_pair(std::string("Case"), std::move(roman));
}

bool TagFunctional(const Token& token, const RulePack& pack) {
  auto it = pack.functional_words.find(token.upos);
  return it != pack.functional_words.end() && it->second.contains(token.form);
}

Sentence AssignFeatures(const Sentence& sentence, const RulePack& pack,
                        const AssignOptions& options) {
  Sentence out = sentence;
  for (std::size_t w = 0; w < out.tokens.size(); ++w) {
    Token& token = out.tokens[w];
    FeatureBag bag;
    for (auto& [key, c] : RunPass(sentence, w, pack, /*periphrastic=*/false)) {
      bag.Set(key, c.value);
    }
    if (options.periphrastic) {
      for (auto& [key, c] : RunPass(sentence, w, pack, /*periphrastic=*/true)) {
        if (!bag.Contains(key)) bag.Set(key, c.value);
      }
    }
    token.feats = std::move(bag);
    if (options.transcribe) {
      if (auto t = TranscribeEnding(token)) token.feats.Set(t->first, t->second);
    }
    if (options.mark_functional) {
      token.misc = UpdateMisc(token.misc, TagFunctional(token, pack));
    }
  }
  return out;
}

}  // namespace unidive
