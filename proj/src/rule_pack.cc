#include "unidive/rule_pack.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#ifndef UNIDIVE_DATA_DIR
#define UNIDIVE_DATA_DIR "data"
#endif

namespace unidive {
namespace {

std::vector<std::string_view> Words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

std::string Join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

bool Disjoint(const MorphMatcher& a, const MorphMatcher& b) {
  const auto none_shared = [](const auto& x, const auto& y) {
    return !x.empty() && !y.empty() &&
           std::none_of(x.begin(), x.end(), [&](const auto& v) {
             return std::find(y.begin(), y.end(), v) != y.end();
           });
  };
  return none_shared(a.surfaces, b.surfaces) || none_shared(a.tags, b.tags);
}

bool Disjoint(const std::optional<MorphMatcher>& a, const std::optional<MorphMatcher>& b) {
  return a && b && Disjoint(*a, *b);
}

// Whether one morpheme can satisfy both rules at once. Medial excludes the
// other anchored positions; initial, final and sole coincide on one-morpheme
// words.
bool CanShareAnchor(const Rule& a, const Rule& b) {
  const bool a_medial = a.position == Position::kMedial;
  const bool b_medial = b.position == Position::kMedial;
  if (a_medial != b_medial && a.position != Position::kAny && b.position != Position::kAny) {
    return false;
  }
  if (Disjoint(a.anchor, b.anchor) || Disjoint(a.previous, b.previous) ||
      Disjoint(a.stem, b.stem)) {
    return false;
  }
  for (const ContextCondition& ca : a.context) {
    for (const ContextCondition& cb : b.context) {
      if (ca.offset == cb.offset && Disjoint(ca.first_morpheme, cb.first_morpheme)) return false;
    }
  }
  return true;
}

// The first key both rules emit with different values, if any. The voice
// lexicon value differs from every literal.
std::optional<std::string> ConflictingKey(const Rule& a, const Rule& b) {
  for (const Emission& ea : a.emits) {
    for (const Emission& eb : b.emits) {
      if (ea.key == eb.key && (ea.value != eb.value || ea.value == kVoiceLexiconValue)) {
        return ea.key;
      }
    }
  }
  return std::nullopt;
}

class Parser {
 public:
  RulePack Run(std::istream& in);

 private:
  [[noreturn]] void Fail(const std::string& message) const {
    throw RulePackError(line_, message);
  }

  std::vector<MorphTag> ParseTags(std::string_view text) const;
  std::vector<std::string> ParseSurfaces(std::string_view text) const;
  MorphMatcher ParseMatcher(std::string_view text) const;
  Position ParsePosition(std::string_view text) const;
  void ParseRule(const std::vector<std::string_view>& words);
  void Validate();

  RulePack pack_;
  std::size_t line_ = 0;
};

std::vector<MorphTag> Parser::ParseTags(std::string_view text) const {
  std::vector<MorphTag> tags;
  if (text == "*") return tags;
  for (std::string_view code : Split(text, '|')) {
    const std::optional<MorphTag> tag = ParseMorphTag(code);
    if (!tag) Fail("unknown tag code '" + std::string(code) + "'");
    tags.push_back(*tag);
  }
  return tags;
}

std::vector<std::string> Parser::ParseSurfaces(std::string_view text) const {
  std::vector<std::string> surfaces;
  if (text == "*") return surfaces;
  for (std::string_view s : Split(text, '|')) {
    if (s.empty()) Fail("empty surface in alternation '" + std::string(text) + "'");
    surfaces.emplace_back(s);
  }
  return surfaces;
}

MorphMatcher Parser::ParseMatcher(std::string_view text) const {
  const std::size_t slash = text.rfind('/');
  if (slash == std::string_view::npos) {
    Fail("morpheme pattern '" + std::string(text) + "' needs the form SURFACE/TAGS");
  }
  MorphMatcher m;
  m.surfaces = ParseSurfaces(text.substr(0, slash));
  m.tags = ParseTags(text.substr(slash + 1));
  return m;
}

Position Parser::ParsePosition(std::string_view text) const {
  if (text == "any") return Position::kAny;
  if (text == "initial") return Position::kInitial;
  if (text == "final") return Position::kFinal;
  if (text == "sole") return Position::kSole;
  if (text == "medial") return Position::kMedial;
  Fail("unknown position '" + std::string(text) + "'");
}

void Parser::ParseRule(const std::vector<std::string_view>& words) {
  if (words.size() < 2) Fail("rule needs an id");
  Rule rule;
  rule.id = std::string(words[1]);
  rule.line = line_;
  bool has_tag = false;
  bool has_priority = false;
  for (std::size_t i = 2; i < words.size(); ++i) {
    const std::string_view field = words[i];
    const std::size_t eq = field.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      Fail("expected key=value, found '" + std::string(field) + "'");
    }
    const std::string_view key = field.substr(0, eq);
    const std::string_view value = field.substr(eq + 1);
    if (key == "tag") {
      rule.anchor.tags = ParseTags(value);
      has_tag = true;
    } else if (key == "morph") {
      rule.anchor.surfaces = ParseSurfaces(value);
    } else if (key == "pos") {
      rule.position = ParsePosition(value);
    } else if (key == "prev") {
      rule.previous = ParseMatcher(value);
    } else if (key == "stem") {
      rule.stem = ParseMatcher(value);
    } else if (key == "next1" || key == "next2") {
      rule.context.push_back(ContextCondition{key == "next1" ? 1 : 2, ParseMatcher(value)});
    } else if (key == "emit") {
      for (std::string_view item : Split(value, ',')) {
        const std::size_t feq = item.find('=');
        if (feq == std::string_view::npos) {
          Fail("emission '" + std::string(item) + "' must be Key=Value");
        }
        rule.emits.push_back(
            Emission{std::string(item.substr(0, feq)), std::string(item.substr(feq + 1))});
      }
    } else if (key == "priority") {
      int p = 0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), p);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        Fail("priority must be an integer, found '" + std::string(value) + "'");
      }
      rule.priority = p;
      has_priority = true;
    } else {
      Fail("unknown rule field '" + std::string(key) + "'");
    }
  }
  if (!has_tag) Fail("rule '" + rule.id + "' has no tag pattern");
  if (!has_priority) Fail("rule '" + rule.id + "' has no priority");
  if (rule.emits.empty()) Fail("rule '" + rule.id + "' emits nothing");
  std::sort(rule.context.begin(), rule.context.end(),
            [](const ContextCondition& a, const ContextCondition& b) {
              return a.offset < b.offset;
            });
  pack_.rules.push_back(std::move(rule));
}

RulePack Parser::Run(std::istream& in) {
  pack_.inventory = DefaultFeatureInventory();
  std::string raw;
  bool header = false;
  while (std::getline(in, raw)) {
    ++line_;
    const std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (!header) {
      if (line != kRulePackHeader) {
        Fail("expected header '" + std::string(kRulePackHeader) + "'");
      }
      header = true;
      continue;
    }
    if (line.front() == '#') continue;
    const std::vector<std::string_view> words = Words(line);
    const std::string_view directive = words[0];
    if (directive == "rule") {
      ParseRule(words);
    } else if (directive == "language") {
      if (words.size() != 2) Fail("language takes one argument");
      pack_.language = std::string(words[1]);
    } else if (directive == "feature") {
      if (words.size() < 3) Fail("feature needs a key and at least one value");
      if (!FeatureBag::IsValidKey(words[1])) {
        Fail("invalid feature key '" + std::string(words[1]) + "'");
      }
      auto& values = pack_.inventory[std::string(words[1])];
      for (std::size_t i = 2; i < words.size(); ++i) {
        if (!FeatureBag::IsValidValue(words[i])) {
          Fail("invalid feature value '" + std::string(words[i]) + "'");
        }
        values.emplace(words[i]);
      }
    } else if (directive == "functional") {
      if (words.size() < 3) Fail("functional needs a UPOS and at least one form");
      const std::optional<Upos> upos = ParseUpos(words[1]);
      if (!upos) Fail("unknown UPOS '" + std::string(words[1]) + "'");
      for (std::size_t i = 2; i < words.size(); ++i) {
        pack_.functional_words[*upos].emplace(words[i]);
      }
    } else if (directive == "conjadv") {
      if (words.size() < 2) Fail("conjadv needs at least one form");
      for (std::size_t i = 1; i < words.size(); ++i) {
        pack_.conjunctive_adverbs.emplace(words[i]);
      }
    } else if (directive == "voice") {
      if (words.size() != 3) Fail("voice takes a stem key and a value");
      if (!pack_.inventory["Voice"].contains(std::string(words[2]))) {
        Fail("unknown Voice value '" + std::string(words[2]) + "'");
      }
      const auto [it, inserted] =
          pack_.voice_lexicon.emplace(std::string(words[1]), std::string(words[2]));
      if (!inserted) Fail("duplicate voice entry '" + it->first + "'");
    } else {
      Fail("unknown directive '" + std::string(directive) + "'");
    }
  }
  if (!header) {
    line_ = 0;
    Fail("no rules");
  }
  Validate();
  return std::move(pack_);
}

void Parser::Validate() {
  if (pack_.rules.empty()) {
    line_ = 0;
    Fail("no rules");
  }
  std::unordered_map<std::string, const Rule*> ids;
  std::map<std::pair<std::string, int>, const Rule*> patterns;
  for (const Rule& rule : pack_.rules) {
    line_ = rule.line;
    if (!ids.emplace(rule.id, &rule).second) {
      Fail("duplicate rule id '" + rule.id + "'");
    }
    for (const Emission& e : rule.emits) {
      auto it = pack_.inventory.find(e.key);
      if (it == pack_.inventory.end()) {
        Fail("rule '" + rule.id + "': unknown feature key '" + e.key + "'");
      }
      if (e.value == kVoiceLexiconValue) {
        if (e.key != "Voice") Fail("rule '" + rule.id + "': @voice only applies to Voice");
        continue;
      }
      if (!it->second.contains(e.value)) {
        Fail("rule '" + rule.id + "': unknown value '" + e.value + "' for " + e.key);
      }
    }
    const auto [it, inserted] =
        patterns.emplace(std::make_pair(rule.PatternKey(), rule.priority), &rule);
    if (!inserted) {
      Fail("rules '" + it->second->id + "' and '" + rule.id +
           "' share a pattern and priority " + std::to_string(rule.priority));
    }
  }
  // Equal priorities must never have to break a tie on one morpheme.
  for (std::size_t j = 0; j < pack_.rules.size(); ++j) {
    const Rule& later = pack_.rules[j];
    for (std::size_t i = 0; i < j; ++i) {
      const Rule& earlier = pack_.rules[i];
      if (earlier.priority != later.priority ||
          earlier.periphrastic() != later.periphrastic() || !CanShareAnchor(earlier, later)) {
        continue;
      }
      if (const auto key = ConflictingKey(earlier, later)) {
        line_ = later.line;
        Fail("rules '" + earlier.id + "' and '" + later.id + "' can both emit " + *key +
             " on one morpheme at priority " + std::to_string(later.priority));
      }
    }
  }
  if (pack_.language == "ko") {
    line_ = 0;
    const auto require = [&](Upos upos, std::initializer_list<const char*> forms) {
      const auto& have = pack_.functional_words[upos];
      for (const char* f : forms) {
        if (!have.contains(f)) {
          Fail(std::string("Korean pack lacks functional ") +
               std::string(ToString(upos)) + " '" + f + "'");
        }
      }
    };
    require(Upos::ADV, {"더", "또", "다시"});
    require(Upos::DET, {"그", "이", "한"});
  }
}

}  // namespace

bool MorphMatcher::Matches(const Morpheme& m) const {
  if (!tags.empty() && std::find(tags.begin(), tags.end(), m.tag) == tags.end()) {
    return false;
  }
  if (!surfaces.empty() &&
      std::find(surfaces.begin(), surfaces.end(), m.surface) == surfaces.end()) {
    return false;
  }
  return true;
}

std::string MorphMatcher::ToString() const {
  std::vector<std::string> sorted_surfaces = surfaces;
  std::sort(sorted_surfaces.begin(), sorted_surfaces.end());
  std::vector<std::string> tag_names;
  for (MorphTag t : tags) tag_names.emplace_back(unidive::ToString(t));
  std::sort(tag_names.begin(), tag_names.end());
  return (sorted_surfaces.empty() ? "*" : Join(sorted_surfaces, '|')) + "/" +
         (tag_names.empty() ? "*" : Join(tag_names, '|'));
}

std::string_view ToString(Position p) {
  switch (p) {
    case Position::kAny: return "any";
    case Position::kInitial: return "initial";
    case Position::kFinal: return "final";
    case Position::kSole: return "sole";
    case Position::kMedial: return "medial";
  }
  return "any";
}

std::string Rule::PatternKey() const {
  std::string key = anchor.ToString();
  key += " pos=";
  key += ToString(position);
  if (previous) key += " prev=" + previous->ToString();
  if (stem) key += " stem=" + stem->ToString();
  for (const ContextCondition& c : context) {
    key += " next" + std::to_string(c.offset) + "=" + c.first_morpheme.ToString();
  }
  return key;
}

const FeatureInventory& DefaultFeatureInventory() {
  static const FeatureInventory inventory = {
      {"Aspect", {"Hab", "Perf", "Prog"}},
      {"Case", {"Abl", "Acc", "Conj", "Dat", "Disj", "Gen", "Ins", "Loc", "Nom"}},
      {"Evident", {"Fh", "Infer", "Nfh", "Rep"}},
      {"Mood",
       {"Cnd", "CndGen", "CndGenPot", "CndPot", "Des", "Imp", "Ind", "Int", "Nec", "Opt",
        "Pot"}},
      {"NumType", {"Card"}},
      {"Number", {"Plur"}},
      {"Person", {"1", "2", "3"}},
      {"Person[psor]", {"1", "2", "3"}},
      {"Polite", {"Elev", "Form", "Humb"}},
      {"PronType", {"Art", "Dem", "Ind", "Int", "Prs", "Rcp"}},
      {"Tense", {"Past", "Pres"}},
      {"VerbForm", {"Conv", "Fin", "Part", "Vnoun"}},
      {"Voice", {"Cau", "CauPass", "Pass", "Rcp", "Rfl"}},
  };
  return inventory;
}

RulePackError::RulePackError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : message),
      line_(line) {}

RulePack LoadRulePack(std::istream& in) { return Parser().Run(in); }

RulePack LoadRulePack(std::string_view text) {
  std::istringstream in{std::string(text)};
  return LoadRulePack(in);
}

RulePack LoadRulePackFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw RulePackError(0, "cannot open rule pack " + path.string());
  return LoadRulePack(in);
}

std::filesystem::path ShippedKoreanPackPath() {
  return std::filesystem::path(UNIDIVE_DATA_DIR) / "ko.rules";
}

}  // namespace unidive
