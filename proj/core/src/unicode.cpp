#include "galt/unicode.hpp"

namespace galt::unicode {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

bool in(char32_t cp, char32_t lo, char32_t hi) noexcept { return cp >= lo && cp <= hi; }

}  // namespace

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto b0 = static_cast<unsigned char>(text[i]);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int extra = 0;
    char32_t cp = 0;
    char32_t min_cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      extra = 1; cp = b0 & 0x1F; min_cp = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      extra = 2; cp = b0 & 0x0F; min_cp = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      extra = 3; cp = b0 & 0x07; min_cp = 0x10000;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    bool ok = i + static_cast<std::size_t>(extra) < n;
    for (int k = 1; ok && k <= extra; ++k) {
      const auto b = static_cast<unsigned char>(text[i + k]);
      if ((b & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (b & 0x3F);
    }
    if (!ok || cp < min_cp || cp > 0x10FFFF || in(cp, 0xD800, 0xDFFF)) {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(extra) + 1;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) append_utf8(out, cp);
  return out;
}

bool is_space(char32_t cp) noexcept {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return in(cp, 0x2000, 0x200A);
  }
}

bool is_word_char(char32_t cp) noexcept {
  if (cp < 0x80) {
    return in(cp, U'a', U'z') || in(cp, U'A', U'Z') || in(cp, U'0', U'9');
  }
  if (cp < 0xC0) {
    // Latin-1 punctuation and symbols; the feminine/masculine ordinals and
    // micro sign are letters.
    return cp == 0xAA || cp == 0xB5 || cp == 0xBA;
  }
  if (cp == 0xD7 || cp == 0xF7) return false;
  if (in(cp, 0x02C2, 0x02C5) || in(cp, 0x02D2, 0x02DF)) return false;  // modifier symbols
  if (cp == 0x037E || cp == 0x0387) return false;                      // Greek punctuation
  if (in(cp, 0x055A, 0x055F) || cp == 0x0589) return false;            // Armenian
  if (in(cp, 0x0600, 0x060F) || cp == 0x061B || cp == 0x061F || in(cp, 0x066A, 0x066D)) return false;
  if (cp == 0x0964 || cp == 0x0965) return false;                      // danda
  if (in(cp, 0x2000, 0x2BFF)) return false;  // punctuation, currency, arrows, math, box drawing
  if (in(cp, 0x2E00, 0x2E7F)) return false;
  if (in(cp, 0x3000, 0x303F)) return false;  // CJK symbols and punctuation
  if (in(cp, 0xFE10, 0xFE1F) || in(cp, 0xFE30, 0xFE6F)) return false;
  if (in(cp, 0xFF00, 0xFF0F) || in(cp, 0xFF1A, 0xFF20) || in(cp, 0xFF3B, 0xFF40) ||
      in(cp, 0xFF5B, 0xFF65)) {
    return false;
  }
  if (in(cp, 0xFFF0, 0xFFFF)) return false;  // specials, including U+FFFD
  if (in(cp, 0x1F000, 0x1FAFF)) return false;  // emoji and pictographs
  if (in(cp, 0xE000, 0xF8FF)) return false;    // private use
  return !is_space(cp);
}

char32_t to_lower(char32_t cp) noexcept {
  if (in(cp, U'A', U'Z')) return cp + 0x20;
  if (cp < 0xC0) return cp;
  if (in(cp, 0xC0, 0xDE) && cp != 0xD7) return cp + 0x20;
  if (in(cp, 0x0100, 0x017F)) {
    if (cp == 0x0130) return U'i';
    if (cp == 0x0178) return 0xFF;
    if (in(cp, 0x0139, 0x0148) || in(cp, 0x0179, 0x017E)) {
      return (cp % 2 == 1) ? cp + 1 : cp;
    }
    if (cp == 0x0138 || cp == 0x0149 || cp == 0x017F) return cp;
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  // Greek
  if (cp == 0x0386) return 0x03AC;
  if (in(cp, 0x0388, 0x038A)) return cp + 0x25;
  if (cp == 0x038C) return 0x03CC;
  if (in(cp, 0x038E, 0x038F)) return cp + 0x3F;
  if (in(cp, 0x0391, 0x03AB) && cp != 0x03A2) return cp + 0x20;
  // Cyrillic
  if (in(cp, 0x0400, 0x040F)) return cp + 0x50;
  if (in(cp, 0x0410, 0x042F)) return cp + 0x20;
  return cp;
}

}  // namespace galt::unicode
