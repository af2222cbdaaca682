#include "unidive/correct.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <stdexcept>

namespace unidive {
namespace {

constexpr std::string_view kRuleExtAnalysis = "ext-analysis";
constexpr std::string_view kRuleNer = "ner-reconcile";
constexpr std::string_view kRuleCanonical = "canonical-upos";
constexpr std::string_view kRuleXr = "xr-normalize";
constexpr std::string_view kRuleComplement = "complement-marker";
constexpr std::string_view kRuleConjAdv = "conjunctive-adverb";

constexpr std::string_view kTotalTokensPrefix = "# total_tokens = ";

bool IsNominal(MorphTag t) {
  return t == MorphTag::NNG || t == MorphTag::NNP || t == MorphTag::NNB ||
         t == MorphTag::NP || t == MorphTag::NR;
}

std::optional<int> ParseInt(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// Per-field list of rules that touched a token, in application order.
struct Touched {
  std::vector<std::string_view> upos;
  std::vector<std::string_view> xpos;
  std::vector<std::string_view> lemma;
};

void Note(std::vector<std::string_view>& rules, std::string_view rule) {
  if (std::find(rules.begin(), rules.end(), rule) == rules.end()) rules.push_back(rule);
}

std::string JoinRules(const std::vector<std::string_view>& rules) {
  std::string out;
  for (std::string_view r : rules) {
    if (!out.empty()) out += '+';
    out += r;
  }
  return out;
}

void SetUpos(Token& t, Upos upos, std::string_view rule, Touched& touched) {
  if (t.upos == upos) return;
  t.upos = upos;
  Note(touched.upos, rule);
}

void SetTag(Token& t, std::size_t index, MorphTag tag, std::string_view rule,
            Touched& touched) {
  if (t.morphemes[index].tag == tag) return;
  t.morphemes[index].tag = tag;
  Note(touched.xpos, rule);
}

std::size_t HeadMorpheme(const Token& t) {
  std::size_t i = 0;
  while (i + 1 < t.morphemes.size() && t.morphemes[i].tag == MorphTag::XPN) ++i;
  return i;
}

void ApplyExternalAnalysis(Token& t, const AuxAnnotation& aux, Touched& touched) {
  if (!aux.ext_xpos || aux.ext_xpos->empty() || t.morphemes.empty()) return;
  const std::vector<MorphTag>& ext = *aux.ext_xpos;
  if (ext.size() == t.morphemes.size()) {
    for (std::size_t i = 0; i < ext.size(); ++i) {
      SetTag(t, i, ext[i], kRuleExtAnalysis, touched);
    }
  } else if (ext.size() == 1 && IsNominal(ext[0]) && !t.form.empty()) {
    // The tagger reads the whole word as one noun: merge the segments.
    t.morphemes.assign(1, Morpheme{t.form, ext[0]});
    Note(touched.lemma, kRuleExtAnalysis);
    Note(touched.xpos, kRuleExtAnalysis);
  }
}

void ApplyNer(Token& t, const AuxAnnotation& aux, Touched& touched) {
  if (t.morphemes.empty()) return;
  const std::size_t head = HeadMorpheme(t);
  const MorphTag tag = t.morphemes[head].tag;
  if (tag == MorphTag::NNG && aux.ner_label) {
    SetTag(t, head, MorphTag::NNP, kRuleNer, touched);
    SetUpos(t, Upos::PROPN, kRuleNer, touched);
  } else if (tag == MorphTag::NNP && !aux.ner_label) {
    SetTag(t, head, MorphTag::NNG, kRuleNer, touched);
    SetUpos(t, Upos::NOUN, kRuleNer, touched);
  }
}

void ApplyCanonicalUpos(Token& t, Touched& touched) {
  if (std::optional<Upos> upos = LexicalUpos(t.morphemes)) {
    SetUpos(t, *upos, kRuleCanonical, touched);
  }
}

void ApplyXr(Token& t, Touched& touched) {
  const std::vector<Morpheme>& ms = t.morphemes;
  if (ms.empty() || ms[0].tag != MorphTag::XR) return;
  const bool standalone = ms.size() == 1;
  const bool derived = ms.size() > 1 && (ms[1].tag == MorphTag::XSA ||
                                         ms[1].tag == MorphTag::XSN ||
                                         ms[1].tag == MorphTag::XSV);
  if (standalone || derived) SetTag(t, 0, MorphTag::NNG, kRuleXr, touched);
}

const Token* ComplementHead(const Sentence& s, std::size_t word) {
  const Token& t = s.tokens[word];
  if (t.head > 0 && t.head <= static_cast<int>(s.tokens.size())) {
    return &s.tokens[static_cast<std::size_t>(t.head) - 1];
  }
  for (std::size_t j = word + 1; j < s.tokens.size(); ++j) {
    const Token& c = s.tokens[j];
    if (!c.morphemes.empty() && IsPredicate(c.morphemes.front().tag)) return &c;
  }
  return nullptr;
}

void ApplyComplement(const Sentence& s, std::size_t word, Token& t, Touched& touched) {
  std::optional<std::size_t> particle;
  for (std::size_t i = t.morphemes.size(); i-- > 0;) {
    if (IsParticle(t.morphemes[i].tag)) {
      particle = i;
      break;
    }
  }
  if (!particle) return;
  const Morpheme& m = t.morphemes[*particle];
  if (m.tag != MorphTag::JKS || (m.surface != "이" && m.surface != "가")) return;
  const Token* head = ComplementHead(s, word);
  if (head == nullptr || head->morphemes.empty()) return;
  const std::string& lemma = head->morphemes.front().surface;
  if (lemma == "되" || lemma == "아니") {
    SetTag(t, *particle, MorphTag::JKC, kRuleComplement, touched);
  }
}

void ApplyConjunctiveAdverb(Token& t, const RulePack& pack, Touched& touched) {
  if (t.morphemes.empty() || t.morphemes.front().tag != MorphTag::MAG) return;
  if (pack.conjunctive_adverbs.contains(t.form)) {
    SetTag(t, 0, MorphTag::MAJ, kRuleConjAdv, touched);
  }
}

// Rebuilds morphemes from LEMMA and XPOS column text.
void SetMorphemeColumns(Token& t, std::string_view lemma, std::string_view xpos) {
  t.morphemes.clear();
  t.unaligned.reset();
  if (lemma == "_" && xpos == "_") return;
  const std::vector<std::string_view> surfaces = Split(lemma, '+');
  const std::vector<std::string_view> tags = Split(xpos, '+');
  if (surfaces.size() != tags.size()) {
    throw std::invalid_argument("replayed LEMMA '" + std::string(lemma) +
                                "' and XPOS '" + std::string(xpos) + "' do not align");
  }
  for (std::size_t i = 0; i < tags.size(); ++i) {
    const std::optional<MorphTag> tag = ParseMorphTag(tags[i]);
    if (!tag) throw std::invalid_argument("unknown tag '" + std::string(tags[i]) + "'");
    t.morphemes.push_back(Morpheme{std::string(surfaces[i]), *tag});
  }
}

double RoundHalfUp(double value, int decimals) {
  const double scale = std::pow(10.0, decimals);
  return std::floor(value * scale + 0.5) / scale;
}

std::string FormatRatio(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", RoundHalfUp(ratio, 4));
  return buf;
}

void AppendRow(std::string& out, const ConversionRow* row) {
  if (row == nullptr) {
    out += "\t\t\t";
    return;
  }
  out += row->original;
  out += '\t';
  out += row->corrected;
  out += '\t';
  out += std::to_string(row->count);
  out += '\t';
  out += FormatRatio(row->ratio);
}

}  // namespace

std::vector<AuxAnnotation> ReadAuxSidecar(std::istream& in) {
  std::vector<AuxAnnotation> entries;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty() || line.front() == '#') continue;
    const std::vector<std::string_view> cols = Split(line, '\t');
    if (cols.size() != 4) {
      throw FormatError(number, "aux sidecar expects 4 tab-separated columns, found " +
                                    std::to_string(cols.size()));
    }
    AuxAnnotation a;
    a.sent_id = std::string(cols[0]);
    const std::optional<int> id = ParseInt(cols[1]);
    if (!id || *id < 1) {
      throw FormatError(number, "invalid token id '" + std::string(cols[1]) + "'");
    }
    a.token_id = *id;
    if (cols[2] != "_" && !cols[2].empty()) a.ner_label = std::string(cols[2]);
    if (cols[3] != "_" && !cols[3].empty()) {
      std::vector<MorphTag> tags;
      for (std::string_view code : Split(cols[3], '+')) {
        const std::optional<MorphTag> tag = ParseMorphTag(code);
        if (!tag) throw FormatError(number, "unknown tag '" + std::string(code) + "'");
        tags.push_back(*tag);
      }
      a.ext_xpos = std::move(tags);
    }
    entries.push_back(std::move(a));
  }
  return entries;
}

AuxIndex::AuxIndex(std::vector<AuxAnnotation> entries) {
  for (AuxAnnotation& a : entries) {
    by_sentence_[a.sent_id].push_back(std::move(a));
  }
}

std::span<const AuxAnnotation> AuxIndex::ForSentence(std::string_view sent_id) const {
  auto it = by_sentence_.find(sent_id);
  if (it == by_sentence_.end()) return {};
  return it->second;
}

std::vector<std::string> AuxIndex::SentenceIds() const {
  std::vector<std::string> ids;
  for (const auto& [id, entries] : by_sentence_) ids.push_back(id);
  return ids;
}

std::string_view ToString(CorrectionField field) {
  switch (field) {
    case CorrectionField::kUpos: return "UPOS";
    case CorrectionField::kXpos: return "XPOS";
    case CorrectionField::kLemma: return "LEMMA";
  }
  return "UPOS";
}

std::optional<CorrectionField> ParseCorrectionField(std::string_view name) {
  if (name == "UPOS") return CorrectionField::kUpos;
  if (name == "XPOS") return CorrectionField::kXpos;
  if (name == "LEMMA") return CorrectionField::kLemma;
  return std::nullopt;
}

std::optional<Upos> CanonicalUpos(MorphTag tag) {
  switch (tag) {
    case MorphTag::NNG:
    case MorphTag::NNB:
    case MorphTag::NR: return Upos::NOUN;
    case MorphTag::NNP: return Upos::PROPN;
    case MorphTag::NP: return Upos::PRON;
    case MorphTag::VV: return Upos::VERB;
    case MorphTag::VA: return Upos::ADJ;
    case MorphTag::VX: return Upos::AUX;
    case MorphTag::VCP:
    case MorphTag::VCN: return Upos::ADJ;
    case MorphTag::MM: return Upos::DET;
    case MorphTag::MAG:
    case MorphTag::MAJ: return Upos::ADV;
    case MorphTag::IC: return Upos::INTJ;
    case MorphTag::SN: return Upos::NUM;
    case MorphTag::SF:
    case MorphTag::SP:
    case MorphTag::SS:
    case MorphTag::SE:
    case MorphTag::SO: return Upos::PUNCT;
    case MorphTag::SW: return Upos::SYM;
    case MorphTag::SL:
    case MorphTag::SH: return Upos::X;
    default: return std::nullopt;
  }
}

std::optional<Upos> LexicalUpos(std::span<const Morpheme> morphemes) {
  std::optional<Upos> upos;
  std::size_t i = 0;
  for (; i < morphemes.size(); ++i) {
    upos = CanonicalUpos(morphemes[i].tag);
    if (upos) break;
  }
  // Derivational suffixes decide the category of what precedes them.
  const std::size_t from = upos ? i + 1 : 0;
  for (std::size_t j = from; j < morphemes.size(); ++j) {
    if (morphemes[j].tag == MorphTag::XSV) upos = Upos::VERB;
    if (morphemes[j].tag == MorphTag::XSA) upos = Upos::ADJ;
  }
  return upos;
}

CorrectionResult CorrectSentence(const Sentence& sentence,
                                 std::span<const AuxAnnotation> aux,
                                 const RulePack& pack) {
  const std::string sent_id = sentence.SentId().value_or("");
  std::vector<const AuxAnnotation*> by_token(sentence.tokens.size(), nullptr);
  for (const AuxAnnotation& a : aux) {
    if (a.sent_id != sent_id || a.token_id < 1 ||
        a.token_id > static_cast<int>(sentence.tokens.size())) {
      throw std::invalid_argument("unresolvable aux reference: sentence '" + a.sent_id +
                                  "' token " + std::to_string(a.token_id));
    }
    by_token[static_cast<std::size_t>(a.token_id) - 1] = &a;
  }

  CorrectionResult result{sentence, {}};
  Sentence& out = result.sentence;
  std::vector<Touched> touched(out.tokens.size());

  for (std::size_t w = 0; w < out.tokens.size(); ++w) {
    Token& t = out.tokens[w];
    if (t.unaligned) continue;
    if (const AuxAnnotation* a = by_token[w]) {
      ApplyExternalAnalysis(t, *a, touched[w]);
      ApplyNer(t, *a, touched[w]);
    }
    ApplyCanonicalUpos(t, touched[w]);
    ApplyXr(t, touched[w]);
  }
  // The complement rule reads head words, so it runs on the settled XPOS.
  for (std::size_t w = 0; w < out.tokens.size(); ++w) {
    if (out.tokens[w].unaligned) continue;
    ApplyComplement(out, w, out.tokens[w], touched[w]);
  }
  for (std::size_t w = 0; w < out.tokens.size(); ++w) {
    Token& t = out.tokens[w];
    if (t.unaligned) continue;
    ApplyConjunctiveAdverb(t, pack, touched[w]);
    ApplyCanonicalUpos(t, touched[w]);
  }

  for (std::size_t w = 0; w < out.tokens.size(); ++w) {
    const Token& before = sentence.tokens[w];
    const Token& after = out.tokens[w];
    auto emit = [&](CorrectionField field, std::string original, std::string corrected,
                    const std::vector<std::string_view>& rules) {
      if (original == corrected) return;
      result.records.push_back(CorrectionRecord{sent_id, after.id, field,
                                                std::move(original), std::move(corrected),
                                                JoinRules(rules)});
    };
    emit(CorrectionField::kUpos, std::string(ToString(before.upos)),
         std::string(ToString(after.upos)), touched[w].upos);
    emit(CorrectionField::kXpos, before.XposColumn(), after.XposColumn(), touched[w].xpos);
    emit(CorrectionField::kLemma, before.LemmaColumn(), after.LemmaColumn(),
         touched[w].lemma);
  }
  return result;
}

Sentence ApplyCorrections(const Sentence& original,
                          std::span<const CorrectionRecord> records) {
  Sentence out = original;
  struct Columns {
    std::string upos, xpos, lemma;
    bool changed = false;
  };
  std::vector<Columns> columns(out.tokens.size());
  for (std::size_t i = 0; i < out.tokens.size(); ++i) {
    const Token& t = out.tokens[i];
    columns[i] = Columns{std::string(ToString(t.upos)), t.XposColumn(), t.LemmaColumn()};
  }
  for (const CorrectionRecord& r : records) {
    if (r.token_id < 1 || r.token_id > static_cast<int>(out.tokens.size())) {
      throw std::invalid_argument("record refers to missing token " +
                                  std::to_string(r.token_id));
    }
    Columns& c = columns[static_cast<std::size_t>(r.token_id) - 1];
    std::string& value = r.field == CorrectionField::kUpos   ? c.upos
                         : r.field == CorrectionField::kXpos ? c.xpos
                                                             : c.lemma;
    if (value != r.original) {
      throw std::invalid_argument("record for token " + std::to_string(r.token_id) +
                                  " expects " + std::string(ToString(r.field)) + " '" +
                                  r.original + "', found '" + value + "'");
    }
    value = r.corrected;
    c.changed = true;
  }
  for (std::size_t i = 0; i < out.tokens.size(); ++i) {
    if (!columns[i].changed) continue;
    Token& t = out.tokens[i];
    const std::optional<Upos> upos = ParseUpos(columns[i].upos);
    if (!upos) throw std::invalid_argument("unknown UPOS '" + columns[i].upos + "'");
    t.upos = *upos;
    SetMorphemeColumns(t, columns[i].lemma, columns[i].xpos);
  }
  return out;
}

std::size_t ConversionStats::TotalCount() const {
  std::size_t n = 0;
  for (const auto* rows : {&upos, &xpos, &lemma}) {
    for (const ConversionRow& r : *rows) n += r.count;
  }
  return n;
}

ConversionStats AggregateStats(std::span<const CorrectionRecord> records,
                               std::size_t total_tokens) {
  if (total_tokens == 0) throw std::invalid_argument("total token count is zero");
  std::set<std::pair<std::string, int>> corrected_tokens;
  std::map<std::tuple<CorrectionField, std::string, std::string>, std::size_t> counts;
  for (const CorrectionRecord& r : records) {
    corrected_tokens.emplace(r.sent_id, r.token_id);
    ++counts[{r.field, r.original, r.corrected}];
  }
  if (corrected_tokens.size() > total_tokens) {
    throw std::invalid_argument("total token count " + std::to_string(total_tokens) +
                                " is below the " + std::to_string(corrected_tokens.size()) +
                                " corrected tokens");
  }
  ConversionStats stats;
  stats.total_tokens = total_tokens;
  for (const auto& [key, count] : counts) {
    const auto& [field, original, corrected] = key;
    ConversionRow row{original, corrected, count,
                      static_cast<double>(count) / static_cast<double>(total_tokens)};
    switch (field) {
      case CorrectionField::kUpos: stats.upos.push_back(std::move(row)); break;
      case CorrectionField::kXpos: stats.xpos.push_back(std::move(row)); break;
      case CorrectionField::kLemma: stats.lemma.push_back(std::move(row)); break;
    }
  }
  for (auto* rows : {&stats.upos, &stats.xpos, &stats.lemma}) {
    std::stable_sort(rows->begin(), rows->end(),
                     [](const ConversionRow& a, const ConversionRow& b) {
                       return a.count > b.count;
                     });
  }
  return stats;
}

std::string FormatStatsTable(const ConversionStats& stats, std::size_t top) {
  auto limit = [&](const std::vector<ConversionRow>& rows) {
    return top == 0 ? rows.size() : std::min(top, rows.size());
  };
  const std::size_t upos_rows = limit(stats.upos);
  const std::size_t xpos_rows = limit(stats.xpos);
  std::string out =
      "upos_original\tupos_corrected\tupos_count\tupos_ratio\t"
      "xpos_original\txpos_corrected\txpos_count\txpos_ratio\n";
  for (std::size_t i = 0; i < std::max(upos_rows, xpos_rows); ++i) {
    AppendRow(out, i < upos_rows ? &stats.upos[i] : nullptr);
    out += '\t';
    AppendRow(out, i < xpos_rows ? &stats.xpos[i] : nullptr);
    out += '\n';
  }
  const std::size_t lemma_rows = limit(stats.lemma);
  if (lemma_rows > 0) {
    out += "\nlemma_original\tlemma_corrected\tlemma_count\tlemma_ratio\n";
    for (std::size_t i = 0; i < lemma_rows; ++i) {
      AppendRow(out, &stats.lemma[i]);
      out += '\n';
    }
  }
  return out;
}

void WriteCorrectionLog(std::ostream& out, std::span<const CorrectionRecord> records,
                        std::optional<std::size_t> total_tokens) {
  if (total_tokens) out << kTotalTokensPrefix << *total_tokens << '\n';
  out << "# sent_id\ttoken_id\tfield\toriginal\tcorrected\trule\n";
  for (const CorrectionRecord& r : records) {
    out << (r.sent_id.empty() ? "_" : r.sent_id) << '\t' << r.token_id << '\t'
        << ToString(r.field) << '\t' << r.original << '\t' << r.corrected << '\t'
        << r.rule_id << '\n';
  }
}

CorrectionLog ReadCorrectionLog(std::istream& in) {
  CorrectionLog log;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    if (line.starts_with(kTotalTokensPrefix)) {
      const std::optional<int> n = ParseInt(std::string_view(line).substr(kTotalTokensPrefix.size()));
      if (!n || *n < 0) throw FormatError(number, "invalid total_tokens line");
      log.total_tokens = static_cast<std::size_t>(*n);
      continue;
    }
    if (line.front() == '#') continue;
    const std::vector<std::string_view> cols = Split(line, '\t');
    if (cols.size() != 6) {
      throw FormatError(number, "record log expects 6 tab-separated columns, found " +
                                    std::to_string(cols.size()));
    }
    CorrectionRecord r;
    r.sent_id = cols[0] == "_" ? std::string() : std::string(cols[0]);
    const std::optional<int> id = ParseInt(cols[1]);
    if (!id || *id < 1) throw FormatError(number, "invalid token id");
    r.token_id = *id;
    const std::optional<CorrectionField> field = ParseCorrectionField(cols[2]);
    if (!field) throw FormatError(number, "unknown field '" + std::string(cols[2]) + "'");
    r.field = *field;
    r.original = std::string(cols[3]);
    r.corrected = std::string(cols[4]);
    if (r.original == r.corrected) {
      throw FormatError(number, "record does not change its field");
    }
    r.rule_id = std::string(cols[5]);
    log.records.push_back(std::move(r));
  }
  return log;
}

}  // namespace unidive
