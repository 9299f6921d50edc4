#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace tt {

// Minimal UTF-8 layer. Decoding is lenient: malformed bytes are passed
// through as single code points so dirty scraped text never aborts a run.

inline size_t utf8_decode(std::string_view s, size_t i, uint32_t& cp) {
  const auto b0 = static_cast<uint8_t>(s[i]);
  auto cont = [&](size_t k) {
    return i + k < s.size() && (static_cast<uint8_t>(s[i + k]) & 0xc0) == 0x80;
  };
  if (b0 < 0x80) {
    cp = b0;
    return 1;
  }
  if ((b0 & 0xe0) == 0xc0 && cont(1)) {
    cp = (uint32_t(b0 & 0x1f) << 6) | (static_cast<uint8_t>(s[i + 1]) & 0x3f);
    return 2;
  }
  if ((b0 & 0xf0) == 0xe0 && cont(1) && cont(2)) {
    cp = (uint32_t(b0 & 0x0f) << 12) | (uint32_t(static_cast<uint8_t>(s[i + 1]) & 0x3f) << 6) |
         (static_cast<uint8_t>(s[i + 2]) & 0x3f);
    return 3;
  }
  if ((b0 & 0xf8) == 0xf0 && cont(1) && cont(2) && cont(3)) {
    cp = (uint32_t(b0 & 0x07) << 18) | (uint32_t(static_cast<uint8_t>(s[i + 1]) & 0x3f) << 12) |
         (uint32_t(static_cast<uint8_t>(s[i + 2]) & 0x3f) << 6) |
         (static_cast<uint8_t>(s[i + 3]) & 0x3f);
    return 4;
  }
  cp = b0;  // malformed: treat the byte itself as a code point
  return 1;
}

inline void utf8_append(std::string& out, uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  } else {
    out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
  }
}

inline std::vector<uint32_t> utf8_codepoints(std::string_view s) {
  std::vector<uint32_t> cps;
  cps.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    uint32_t cp;
    i += utf8_decode(s, i, cp);
    cps.push_back(cp);
  }
  return cps;
}

inline size_t utf8_length(std::string_view s) {
  size_t n = 0, i = 0;
  while (i < s.size()) {
    uint32_t cp;
    i += utf8_decode(s, i, cp);
    ++n;
  }
  return n;
}

// Lowercasing covers ASCII and the Latin-1 supplement, which is all the
// bundled Portuguese/English data needs; other scripts pass through.
inline uint32_t lower_codepoint(uint32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0x00c0 && cp <= 0x00de && cp != 0x00d7) return cp + 0x20;
  return cp;
}

inline std::string utf8_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    uint32_t cp;
    i += utf8_decode(s, i, cp);
    utf8_append(out, lower_codepoint(cp));
  }
  return out;
}

// Strips Latin-1 diacritics from an already lowercased code point.
inline uint32_t fold_diacritic(uint32_t cp) {
  switch (cp) {
    case 0x00e0: case 0x00e1: case 0x00e2: case 0x00e3: case 0x00e4: case 0x00e5: return 'a';
    case 0x00e7: return 'c';
    case 0x00e8: case 0x00e9: case 0x00ea: case 0x00eb: return 'e';
    case 0x00ec: case 0x00ed: case 0x00ee: case 0x00ef: return 'i';
    case 0x00f1: return 'n';
    case 0x00f2: case 0x00f3: case 0x00f4: case 0x00f5: case 0x00f6: return 'o';
    case 0x00f9: case 0x00fa: case 0x00fb: case 0x00fc: return 'u';
    case 0x00fd: case 0x00ff: return 'y';
    default: return cp;
  }
}

inline std::string utf8_fold_diacritics(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    uint32_t cp;
    i += utf8_decode(s, i, cp);
    utf8_append(out, fold_diacritic(cp));
  }
  return out;
}

// Non-ASCII code points that still separate tokens (smart quotes, dashes,
// ellipsis and friends). Anything else above 0x7f counts as a word char.
inline bool is_unicode_punct(uint32_t cp) {
  switch (cp) {
    case 0x00a1: case 0x00ab: case 0x00b7: case 0x00bb: case 0x00bf:
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2015:
    case 0x2018: case 0x2019: case 0x201a: case 0x201b:
    case 0x201c: case 0x201d: case 0x201e: case 0x201f:
    case 0x2022: case 0x2026: case 0x2039: case 0x203a:
      return true;
    default:
      return false;
  }
}

inline std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && (static_cast<unsigned char>(s[b]) <= ' ')) ++b;
  while (e > b && (static_cast<unsigned char>(s[e - 1]) <= ' ')) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace tt
