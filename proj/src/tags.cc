#include "unidive/tags.h"

#include <algorithm>

namespace unidive {
namespace {

constexpr std::array<std::string_view, kMorphTagCount> kMorphTagNames = {
    "NNG", "NNP", "NNB", "NP",  "NR",  "VV",  "VA",  "VX",  "VCP",
    "VCN", "MM",  "MAG", "MAJ", "IC",  "JKS", "JKC", "JKG", "JKO",
    "JKB", "JKV", "JKQ", "JX",  "JC",  "EP",  "EF",  "EC",  "ETN",
    "ETM", "XPN", "XSN", "XSV", "XSA", "XR",  "SF",  "SP",  "SS",
    "SE",  "SO",  "SW",  "SL",  "SH",  "SN",  "NA",
};

constexpr std::array<std::string_view, kUposCount> kUposNames = {
    "NOUN",  "PROPN", "VERB", "ADJ",  "ADV",  "PRON", "DET",   "NUM", "AUX",
    "CCONJ", "SCONJ", "ADP",  "PART", "INTJ", "PUNCT", "SYM", "X",
};

constexpr std::array<MorphTag, kMorphTagCount> MakeAllTags() {
  std::array<MorphTag, kMorphTagCount> tags{};
  for (std::size_t i = 0; i < kMorphTagCount; ++i) {
    tags[i] = static_cast<MorphTag>(i);
  }
  return tags;
}

constexpr std::array<MorphTag, kMorphTagCount> kAllTags = MakeAllTags();

}  // namespace

std::optional<MorphTag> ParseMorphTag(std::string_view code) {
  auto it = std::find(kMorphTagNames.begin(), kMorphTagNames.end(), code);
  if (it == kMorphTagNames.end()) return std::nullopt;
  return static_cast<MorphTag>(it - kMorphTagNames.begin());
}

std::string_view ToString(MorphTag tag) {
  return kMorphTagNames[static_cast<std::size_t>(tag)];
}

bool IsParticle(MorphTag tag) {
  return tag >= MorphTag::JKS && tag <= MorphTag::JC;
}

bool IsPredicate(MorphTag tag) {
  return tag >= MorphTag::VV && tag <= MorphTag::VCN;
}

std::optional<Upos> ParseUpos(std::string_view name) {
  auto it = std::find(kUposNames.begin(), kUposNames.end(), name);
  if (it == kUposNames.end()) return std::nullopt;
  return static_cast<Upos>(it - kUposNames.begin());
}

std::string_view ToString(Upos upos) {
  return kUposNames[static_cast<std::size_t>(upos)];
}

const std::array<MorphTag, kMorphTagCount>& AllMorphTags() { return kAllTags; }

}  // namespace unidive
