#include "unidive/conllu.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace unidive {
namespace {

constexpr std::string_view kBom = "\xEF\xBB\xBF";
constexpr std::string_view kSentIdPrefix = "# sent_id = ";
constexpr std::string_view kTextPrefix = "# text = ";
constexpr std::size_t kColumns = 10;

std::optional<int> ParseInt(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::string Blank(std::string_view text) {
  return text == "_" ? std::string() : std::string(text);
}

std::string_view OrUnderscore(std::string_view text) {
  return text.empty() ? std::string_view("_") : text;
}

std::optional<std::string> CommentValue(const std::vector<std::string>& comments,
                                        std::string_view prefix) {
  for (const std::string& c : comments) {
    if (c.starts_with(prefix)) return c.substr(prefix.size());
  }
  return std::nullopt;
}

Diagnostic MakeDiagnostic(const Sentence& s, const Token* t, std::string rule,
                          std::string message) {
  Diagnostic d;
  d.sent_id = s.SentId().value_or("");
  d.token_id = t != nullptr ? t->id : 0;
  d.rule = std::move(rule);
  d.message = std::move(message);
  d.line = t != nullptr ? t->line : s.line;
  return d;
}

}  // namespace

std::vector<std::string_view> Split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string Token::LemmaColumn() const {
  if (unaligned) return unaligned->lemma;
  std::string out;
  for (std::size_t i = 0; i < morphemes.size(); ++i) {
    if (i > 0) out += '+';
    out += morphemes[i].surface;
  }
  return out.empty() ? "_" : out;
}

std::string Token::XposColumn() const {
  if (unaligned) return unaligned->xpos;
  std::string out;
  for (std::size_t i = 0; i < morphemes.size(); ++i) {
    if (i > 0) out += '+';
    out += ToString(morphemes[i].tag);
  }
  return out.empty() ? "_" : out;
}

bool operator==(const Token& a, const Token& b) {
  return a.id == b.id && a.form == b.form && a.morphemes == b.morphemes &&
         a.upos == b.upos && a.feats == b.feats && a.head == b.head &&
         a.deprel == b.deprel && a.deps == b.deps && a.misc == b.misc &&
         a.unaligned == b.unaligned;
}

std::optional<std::string> Sentence::SentId() const {
  return CommentValue(comments, kSentIdPrefix);
}

std::optional<std::string> Sentence::Text() const {
  return CommentValue(comments, kTextPrefix);
}

void Sentence::SetSentId(std::string_view id) {
  std::string line = std::string(kSentIdPrefix) + std::string(id);
  for (std::string& c : comments) {
    if (c.starts_with(kSentIdPrefix)) {
      c = std::move(line);
      return;
    }
  }
  comments.insert(comments.begin(), std::move(line));
}

bool operator==(const Sentence& a, const Sentence& b) {
  return a.comments == b.comments && a.tokens == b.tokens &&
         a.passthrough == b.passthrough;
}

std::string Diagnostic::ToString() const {
  std::ostringstream out;
  if (line > 0) out << "line " << line << ": ";
  if (!sent_id.empty()) out << "sentence " << sent_id << ": ";
  if (token_id > 0) out << "token " << token_id << ": ";
  out << "[" << rule << "] " << message;
  return out.str();
}

FormatError::FormatError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message),
      line_(line) {}

ValidationError::ValidationError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(diagnostics.empty() ? "validation failed"
                                             : diagnostics.front().ToString()),
      diagnostics_(std::move(diagnostics)) {}

ConlluReader::ConlluReader(std::istream& in, ReadOptions options)
    : in_(in), options_(options) {}

std::vector<Diagnostic> ConlluReader::TakeWarnings() {
  std::vector<Diagnostic> out;
  out.swap(warnings_);
  return out;
}

Token ConlluReader::ParseTokenLine(std::string_view line) {
  const std::vector<std::string_view> cols = Split(line, '\t');
  Token token;
  token.line = line_;

  const std::optional<int> id = ParseInt(cols[0]);
  if (!id || *id < 1) {
    throw FormatError(line_, "invalid token id '" + std::string(cols[0]) + "'");
  }
  token.id = *id;
  token.form = Blank(cols[1]);

  const std::optional<Upos> upos = ParseUpos(cols[3]);
  if (!upos) {
    throw FormatError(line_, "unknown UPOS '" + std::string(cols[3]) + "'");
  }
  token.upos = *upos;

  std::vector<MorphTag> tags;
  if (cols[4] != "_") {
    for (std::string_view code : Split(cols[4], '+')) {
      std::optional<MorphTag> tag = ParseMorphTag(code);
      if (!tag) {
        if (!options_.lenient) {
          throw FormatError(line_, "unknown morpheme tag '" + std::string(code) + "'");
        }
        Diagnostic d;
        d.token_id = token.id;
        d.rule = "unknown-tag";
        d.message = "morpheme tag '" + std::string(code) + "' mapped to NA";
        d.line = line_;
        warnings_.push_back(std::move(d));
        tag = MorphTag::NA;
      }
      tags.push_back(*tag);
    }
  }

  std::vector<std::string_view> lemmas;
  if (cols[2] != "_") {
    lemmas = Split(cols[2], '+');
  } else if (tags.size() == 1 && cols[1] == "_") {
    lemmas.push_back(cols[2]);  // the word is a literal underscore
  }

  if (lemmas.size() != tags.size()) {
    token.unaligned = Token::Unaligned{std::string(cols[2]), std::string(cols[4])};
  } else {
    for (std::size_t i = 0; i < tags.size(); ++i) {
      if (lemmas[i].empty()) {
        throw FormatError(line_, "empty morpheme in lemma '" + std::string(cols[2]) + "'");
      }
      token.morphemes.push_back(Morpheme{std::string(lemmas[i]), tags[i]});
    }
  }

  try {
    bool canonical = true;
    token.feats = FeatureBag::Parse(cols[5], &canonical);
    if (!canonical) {
      Diagnostic d;
      d.token_id = token.id;
      d.rule = "feats-order";
      d.message = "FEATS not in canonical order; rewritten as " + token.feats.ToString();
      d.line = line_;
      warnings_.push_back(std::move(d));
    }
  } catch (const std::invalid_argument& e) {
    throw FormatError(line_, std::string("invalid FEATS: ") + e.what());
  }

  const std::optional<int> head = ParseInt(cols[6]);
  if (!head || *head < 0) {
    throw FormatError(line_, "invalid head '" + std::string(cols[6]) + "'");
  }
  token.head = *head;
  token.deprel = Blank(cols[7]);
  token.deps = Blank(cols[8]);
  token.misc = Blank(cols[9]);
  return token;
}

bool ConlluReader::Next(Sentence& sentence) {
  sentence = Sentence{};
  std::string line;
  bool started = false;
  while (std::getline(in_, line)) {
    ++line_;
    std::string_view view = line;
    if (line_ == 1 && view.starts_with(kBom)) {
      if (!options_.strip_bom) {
        throw FormatError(line_, "byte order mark not allowed (use strip_bom)");
      }
      view.remove_prefix(kBom.size());
    }
    if (view.empty()) {
      if (started) return true;
      continue;
    }
    if (!started) {
      started = true;
      sentence.line = line_;
    }
    if (view.front() == '#') {
      if (!sentence.tokens.empty() || !sentence.passthrough.empty()) {
        throw FormatError(line_, "comment line inside token rows");
      }
      sentence.comments.emplace_back(view);
      continue;
    }
    const std::size_t columns = Split(view, '\t').size();
    if (columns != kColumns) {
      throw FormatError(line_, "expected " + std::to_string(kColumns) +
                                   " tab-separated columns, found " +
                                   std::to_string(columns));
    }
    const std::string_view id = view.substr(0, view.find('\t'));
    if (id.find('-') != std::string_view::npos ||
        id.find('.') != std::string_view::npos) {
      sentence.passthrough.push_back(
          PassthroughLine{sentence.tokens.size(), std::string(view)});
      continue;
    }
    sentence.tokens.push_back(ParseTokenLine(view));
  }
  return started;
}

std::vector<Sentence> ParseConllu(std::istream& in, ReadOptions options,
                                  std::vector<Diagnostic>* warnings) {
  ConlluReader reader(in, options);
  std::vector<Sentence> sentences;
  std::vector<Diagnostic> problems;
  Sentence sentence;
  while (reader.Next(sentence)) {
    std::vector<Diagnostic> found = ValidateSentence(sentence);
    problems.insert(problems.end(), found.begin(), found.end());
    sentences.push_back(std::move(sentence));
  }
  if (warnings != nullptr) *warnings = reader.TakeWarnings();
  if (!problems.empty()) throw ValidationError(std::move(problems));
  return sentences;
}

std::vector<Sentence> ParseConllu(std::string_view text, ReadOptions options,
                                  std::vector<Diagnostic>* warnings) {
  std::istringstream in{std::string(text)};
  return ParseConllu(in, options, warnings);
}

std::string FormatSentence(const Sentence& sentence) {
  std::string out;
  for (const std::string& c : sentence.comments) {
    out += c;
    out += '\n';
  }
  std::size_t next_passthrough = 0;
  auto flush_passthrough = [&](std::size_t position) {
    while (next_passthrough < sentence.passthrough.size() &&
           sentence.passthrough[next_passthrough].position <= position) {
      out += sentence.passthrough[next_passthrough].text;
      out += '\n';
      ++next_passthrough;
    }
  };
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    flush_passthrough(i);
    const Token& t = sentence.tokens[i];
    out += std::to_string(t.id);
    out += '\t';
    out += OrUnderscore(t.form);
    out += '\t';
    out += t.LemmaColumn();
    out += '\t';
    out += ToString(t.upos);
    out += '\t';
    out += t.XposColumn();
    out += '\t';
    out += t.feats.ToString();
    out += '\t';
    out += std::to_string(t.head);
    out += '\t';
    out += OrUnderscore(t.deprel);
    out += '\t';
    out += OrUnderscore(t.deps);
    out += '\t';
    out += OrUnderscore(t.misc);
    out += '\n';
  }
  flush_passthrough(sentence.tokens.size());
  out += '\n';
  return out;
}

void WriteSentence(std::ostream& out, const Sentence& sentence) {
  out << FormatSentence(sentence);
}

std::string SerializeConllu(std::span<const Sentence> sentences) {
  std::vector<Diagnostic> problems = Validate(sentences);
  if (!problems.empty()) throw ValidationError(std::move(problems));
  std::string out;
  for (const Sentence& s : sentences) out += FormatSentence(s);
  return out;
}

std::vector<Diagnostic> ValidateSentence(const Sentence& s) {
  std::vector<Diagnostic> found;
  const std::size_t n = s.tokens.size();
  if (n == 0) {
    found.push_back(MakeDiagnostic(s, nullptr, "empty-sentence", "sentence has no tokens"));
    return found;
  }

  int roots = 0;
  bool heads_in_range = true;
  for (std::size_t i = 0; i < n; ++i) {
    const Token& t = s.tokens[i];
    if (t.id != static_cast<int>(i + 1)) {
      found.push_back(MakeDiagnostic(s, &t, "non-contiguous-ids",
                                     "expected id " + std::to_string(i + 1) +
                                         ", found " + std::to_string(t.id)));
    }
    if (t.unaligned) {
      found.push_back(MakeDiagnostic(
          s, &t, "morpheme-tag-misalignment",
          "morpheme/tag misalignment: lemma '" + t.unaligned->lemma +
              "' vs XPOS '" + t.unaligned->xpos + "'"));
    }
    for (const Morpheme& m : t.morphemes) {
      if (m.surface.empty() || m.surface.find_first_of("+\t") != std::string::npos) {
        found.push_back(MakeDiagnostic(s, &t, "morpheme-surface",
                                       "invalid morpheme surface '" + m.surface + "'"));
      }
    }
    for (const auto& [key, values] : t.feats.entries()) {
      bool ok = FeatureBag::IsValidKey(key) && !values.empty();
      for (const std::string& v : values) ok = ok && FeatureBag::IsValidValue(v);
      if (!ok) {
        found.push_back(MakeDiagnostic(s, &t, "feats-syntax",
                                       "invalid feature entry '" + key + "'"));
      }
    }
    if (t.head < 0 || t.head > static_cast<int>(n)) {
      heads_in_range = false;
      found.push_back(MakeDiagnostic(s, &t, "head-out-of-range",
                                     "head " + std::to_string(t.head) +
                                         " outside 0.." + std::to_string(n)));
    }
    if (t.head == 0) ++roots;
    if ((t.head == 0) != (t.deprel == "root")) {
      found.push_back(MakeDiagnostic(
          s, &t, "root-deprel",
          t.head == 0 ? "head 0 requires deprel 'root', found '" + t.deprel + "'"
                      : "deprel 'root' requires head 0"));
    }
  }
  if (roots == 0) {
    found.push_back(MakeDiagnostic(s, nullptr, "no-root", "no token has head 0"));
  } else if (roots > 1) {
    found.push_back(MakeDiagnostic(s, nullptr, "multiple-roots",
                                   std::to_string(roots) + " tokens have head 0"));
  }

  // Walk each token up the head chain; a chain longer than n is a cycle.
  // Each cycle is reported once, at its lowest id.
  if (heads_in_range) {
    std::vector<int> state(n + 1, 0);  // 0 unknown, 1 reaches root, 2 does not
    state[0] = 1;
    auto up = [&](std::size_t c) { return static_cast<std::size_t>(s.tokens[c - 1].head); };
    for (std::size_t start = 1; start <= n; ++start) {
      std::size_t current = start;
      std::size_t steps = 0;
      while (state[current] == 0 && steps <= n) {
        current = up(current);
        ++steps;
      }
      const int verdict = state[current] == 1 ? 1 : 2;
      if (state[current] == 0) {
        std::size_t lowest = current;
        for (std::size_t c = up(current); c != current; c = up(c)) lowest = std::min(lowest, c);
        found.push_back(MakeDiagnostic(s, &s.tokens[lowest - 1], "cycle",
                                       "head chain does not reach the root"));
      }
      for (std::size_t c = start; state[c] == 0; c = up(c)) state[c] = verdict;
    }
  }
  return found;
}

std::vector<Diagnostic> Validate(std::span<const Sentence> sentences) {
  std::vector<Diagnostic> found;
  for (const Sentence& s : sentences) {
    std::vector<Diagnostic> d = ValidateSentence(s);
    found.insert(found.end(), d.begin(), d.end());
  }
  return found;
}

}  // namespace unidive
