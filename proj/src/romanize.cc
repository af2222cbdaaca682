#include "unidive/romanize.h"

#include <array>
#include <optional>
#include <vector>

namespace unidive {
namespace {

constexpr char32_t kSyllableBase = 0xAC00;
constexpr char32_t kSyllableLast = 0xD7A3;
constexpr int kMedials = 21;
constexpr int kFinals = 28;

// Initial consonant index (0..18) in syllable order.
enum Initial {
  kG, kKk, kN, kD, kTt, kR, kM, kB, kPp, kS, kSs, kSilent, kJ, kJj, kCh, kK, kT, kP, kH,
};

constexpr std::array<const char*, 19> kInitialRoman = {
    "g", "kk", "n", "d", "tt", "r", "m", "b", "pp", "s",
    "ss", "", "j", "jj", "ch", "k", "t", "p", "h",
};

constexpr std::array<const char*, 21> kMedialRoman = {
    "a", "ae", "ya", "yae", "eo", "e", "yeo", "ye", "o", "wa", "wae",
    "oe", "yo", "u", "wo", "we", "wi", "yu", "eu", "ui", "i",
};

// Final consonant (batchim) index 0..27: romanization before a consonant or
// at the end of a word.
constexpr std::array<const char*, 28> kFinalRoman = {
    "", "k", "k", "k", "n", "n", "n", "t", "l", "k", "m", "l", "l", "l",
    "p", "l", "m", "p", "p", "t", "t", "ng", "t", "t", "k", "t", "p", "t",
};

// For each final, the consonant that stays in the coda and the initial that
// moves to the next syllable when it begins with ㅇ. -1 means nothing moves.
struct Liaison {
  int stays;     // final index left behind
  int moves;     // Initial index carried over, or -1
};

constexpr std::array<Liaison, 28> kLiaison = {{
    {0, -1},      // none
    {0, kG},      // ㄱ
    {0, kKk},     // ㄲ
    {1, kS},      // ㄳ
    {0, kN},      // ㄴ
    {4, kJ},      // ㄵ
    {4, -1},      // ㄶ (ㅎ drops)
    {0, kD},      // ㄷ
    {0, kR},      // ㄹ
    {8, kG},      // ㄺ
    {8, kM},      // ㄻ
    {8, kB},      // ㄼ
    {8, kS},      // ㄽ
    {8, kT},      // ㄾ
    {8, kP},      // ㄿ
    {8, -1},      // ㅀ (ㅎ drops)
    {0, kM},      // ㅁ
    {0, kB},      // ㅂ
    {17, kS},     // ㅄ
    {0, kS},      // ㅅ
    {0, kSs},     // ㅆ
    {21, -1},     // ㅇ stays as ng
    {0, kJ},      // ㅈ
    {0, kCh},     // ㅊ
    {0, kK},      // ㅋ
    {0, kT},      // ㅌ
    {0, kP},      // ㅍ
    {0, -1},      // ㅎ drops
}};

// Standalone compatibility jamo U+3131..U+314E.
std::optional<const char*> JamoRoman(char32_t c) {
  static constexpr std::array<const char*, 30> kJamo = {
      "g",  "kk", "ks", "n",  "nj", "nh", "d",  "tt", "l", "lg",
      "lm", "lb", "ls", "lt", "lp", "lh", "m",  "b",  "pp", "bs",
      "s",  "ss", "",   "j",  "jj", "ch", "k",  "t",  "p", "h",
  };
  if (c >= 0x3131 && c <= 0x314E) return kJamo[c - 0x3131];
  return std::nullopt;
}

struct Syllable {
  int initial;
  int medial;
  int final;
};

// Coda class of a final for assimilation purposes.
enum class Coda { kNone, kVelar, kDental, kLabial, kNasalN, kNasalM, kNg, kLiquid, kH };

Coda CodaClass(int final) {
  switch (kFinalRoman[final][0]) {
    case '\0': return Coda::kNone;
    case 'k': return Coda::kVelar;
    case 't': return final == 27 ? Coda::kH : Coda::kDental;
    case 'p': return Coda::kLabial;
    case 'n': return final == 21 ? Coda::kNg : Coda::kNasalN;
    case 'm': return Coda::kNasalM;
    case 'l': return Coda::kLiquid;
  }
  return Coda::kNone;
}

}  // namespace

std::u32string DecodeUtf8(std::string_view s) {
  std::u32string out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    int extra = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      cp = c;
    } else if ((c >> 5) == 0x6) {
      cp = c & 0x1F;
      extra = 1;
    } else if ((c >> 4) == 0xE) {
      cp = c & 0x0F;
      extra = 2;
    } else if ((c >> 3) == 0x1E) {
      cp = c & 0x07;
      extra = 3;
    } else {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    bool ok = true;
    for (int k = 1; k <= extra; ++k) {
      if (i + k >= s.size()) {
        ok = false;
        break;
      }
      const unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc >> 6) != 0x2) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string Romanize(std::string_view utf8) {
  const std::u32string text = DecodeUtf8(utf8);
  std::string out;

  // Group runs of syllables; jamo and other characters break runs.
  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t c = text[i];
    if (c < kSyllableBase || c > kSyllableLast) {
      if (auto jamo = JamoRoman(c)) out += *jamo;
      ++i;
      continue;
    }
    std::vector<Syllable> run;
    while (i < text.size() && text[i] >= kSyllableBase && text[i] <= kSyllableLast) {
      const int index = static_cast<int>(text[i] - kSyllableBase);
      run.push_back(Syllable{index / (kMedials * kFinals),
                             (index / kFinals) % kMedials, index % kFinals});
      ++i;
    }

    // Resolve boundary effects left to right, rewriting the next initial.
    for (std::size_t k = 0; k < run.size(); ++k) {
      Syllable& cur = run[k];
      std::string coda;
      if (k + 1 < run.size()) {
        Syllable& next = run[k + 1];
        const Coda cls = CodaClass(cur.final);
        if (cur.final != 0 && next.initial == kSilent) {
          const Liaison& l = kLiaison[cur.final];
          if (l.moves >= 0) next.initial = l.moves;
          coda = kFinalRoman[l.stays];
        } else if (cur.final == 27 /* ㅎ */ &&
                   (next.initial == kG || next.initial == kD || next.initial == kJ)) {
          next.initial = next.initial == kG ? kK : next.initial == kD ? kT : kCh;
        } else if ((cls == Coda::kVelar || cls == Coda::kDental || cls == Coda::kLabial) &&
                   next.initial == kH) {
          next.initial = cls == Coda::kVelar ? kK : cls == Coda::kDental ? kT : kP;
        } else if ((cls == Coda::kVelar || cls == Coda::kDental || cls == Coda::kLabial) &&
                   (next.initial == kN || next.initial == kM)) {
          coda = cls == Coda::kVelar ? "ng" : cls == Coda::kDental ? "n" : "m";
        } else if (next.initial == kR &&
                   (cls == Coda::kLiquid || cls == Coda::kNasalN)) {
          coda = "l";
          next.initial = -1;  // rendered as "l"
        } else if (cls != Coda::kNone && next.initial == kR) {
          next.initial = kN;
          coda = cls == Coda::kVelar ? "ng" : cls == Coda::kLabial ? "m"
                                                                   : kFinalRoman[cur.final];
        } else if (cls == Coda::kLiquid && next.initial == kN) {
          coda = "l";
          next.initial = -1;
        } else {
          coda = kFinalRoman[cur.final];
        }
      } else {
        coda = kFinalRoman[cur.final];
      }

      if (cur.initial == -1) {
        out += "l";
      } else if (k == 0 && cur.initial == kR) {
        out += "r";
      } else {
        out += kInitialRoman[cur.initial];
      }
      out += kMedialRoman[cur.medial];
      out += coda;
    }
  }
  return out;
}

}  // namespace unidive
