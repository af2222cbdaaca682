#ifndef UNIDIVE_TAGS_H_
#define UNIDIVE_TAGS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace unidive {

// Sejong morpheme tag inventory. NA marks an unanalyzable morpheme and is
// also the fallback for unknown codes when parsing leniently.
enum class MorphTag : std::uint8_t {
  NNG, NNP, NNB, NP, NR,
  VV, VA, VX, VCP, VCN,
  MM, MAG, MAJ, IC,
  JKS, JKC, JKG, JKO, JKB, JKV, JKQ, JX, JC,
  EP, EF, EC, ETN, ETM,
  XPN, XSN, XSV, XSA, XR,
  SF, SP, SS, SE, SO, SW, SL, SH, SN,
  NA,
};

inline constexpr std::size_t kMorphTagCount = 43;

std::optional<MorphTag> ParseMorphTag(std::string_view code);
std::string_view ToString(MorphTag tag);

// True for the particle tags (JK*, JX, JC).
bool IsParticle(MorphTag tag);
// True for VV, VA, VX, VCP, VCN.
bool IsPredicate(MorphTag tag);

// The 17 universal part-of-speech tags.
enum class Upos : std::uint8_t {
  NOUN, PROPN, VERB, ADJ, ADV, PRON, DET, NUM, AUX,
  CCONJ, SCONJ, ADP, PART, INTJ, PUNCT, SYM, X,
};

inline constexpr std::size_t kUposCount = 17;

std::optional<Upos> ParseUpos(std::string_view name);
std::string_view ToString(Upos upos);

const std::array<MorphTag, kMorphTagCount>& AllMorphTags();

}  // namespace unidive

#endif  // UNIDIVE_TAGS_H_
