#ifndef UNIDIVE_ROMANIZE_H_
#define UNIDIVE_ROMANIZE_H_

#include <string>
#include <string_view>

namespace unidive {

// Revised Romanization of Korean for short morpheme strings. Handles
// precomposed syllables and standalone compatibility jamo (the `ㄴ` of
// `ㄴ데`), with liaison, nasal and lateral assimilation, and aspiration
// across syllable boundaries. Non-Hangul code points are dropped.
std::string Romanize(std::string_view utf8);

// Decodes UTF-8 into code points; invalid bytes decode as U+FFFD.
std::u32string DecodeUtf8(std::string_view utf8);

}  // namespace unidive

#endif  // UNIDIVE_ROMANIZE_H_
