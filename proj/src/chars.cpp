#include "patternforge/chars.hpp"

#include <algorithm>
#include <array>
#include <locale.h>
#include <wctype.h>

namespace patternforge {

namespace {

// First code point of each BMP run of ten decimal digits outside ASCII.
constexpr std::array<char32_t, 36> kDigitZeros = {
    0x0660, 0x06F0, 0x07C0, 0x0966, 0x09E6, 0x0A66, 0x0AE6, 0x0B66, 0x0BE6,
    0x0C66, 0x0CE6, 0x0D66, 0x0DE6, 0x0E50, 0x0ED0, 0x0F20, 0x1040, 0x1090,
    0x17E0, 0x1810, 0x1946, 0x19D0, 0x1A80, 0x1A90, 0x1B50, 0x1BB0, 0x1C40,
    0x1C50, 0xA620, 0xA8D0, 0xA900, 0xA9D0, 0xA9F0, 0xAA50, 0xABF0, 0xFF10};

bool is_unicode_digit(char32_t c) noexcept {
  auto it = std::upper_bound(kDigitZeros.begin(), kDigitZeros.end(), c);
  if (it == kDigitZeros.begin()) return false;
  return c - *(it - 1) < 10;
}

locale_t unicode_ctype() noexcept {
  static const locale_t loc = [] {
    locale_t l = newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(nullptr));
    if (l == static_cast<locale_t>(nullptr)) {
      l = newlocale(LC_CTYPE_MASK, "C.utf8", static_cast<locale_t>(nullptr));
    }
    return l;
  }();
  return loc;
}

constexpr char32_t kEscapeBase = 0xDC00;

}  // namespace

CharKind classify_char(char32_t c) noexcept {
  if (c < 0x80) {
    if (c >= '0' && c <= '9') return CharKind::Digit;
    if (c >= 'A' && c <= 'Z') return CharKind::Upper;
    if (c >= 'a' && c <= 'z') return CharKind::Lower;
    return CharKind::Symbol;
  }
  if (c >= 0xD800 && c <= 0xDFFF) return CharKind::Symbol;
  if (is_unicode_digit(c)) return CharKind::Digit;
  // Without a Unicode ctype locale, non-ASCII letters fall back to Symbol.
  locale_t loc = unicode_ctype();
  if (loc == static_cast<locale_t>(nullptr)) return CharKind::Symbol;
  const auto wc = static_cast<wint_t>(c);
  if (iswupper_l(wc, loc)) return CharKind::Upper;
  if (iswlower_l(wc, loc)) return CharKind::Lower;
  return CharKind::Symbol;
}

const char* to_string(CharKind kind) noexcept {
  switch (kind) {
    case CharKind::Digit: return "digit";
    case CharKind::Upper: return "upper";
    case CharKind::Lower: return "lower";
    case CharKind::Symbol: return "symbol";
  }
  return "symbol";
}

char32_t next_code_point(std::string_view text, std::size_t& pos) noexcept {
  const auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  std::size_t extra = 0;
  char32_t cp = 0;
  char32_t min_value = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
    min_value = 0x80;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
    min_value = 0x800;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
    min_value = 0x10000;
  } else {
    ++pos;
    return kEscapeBase + lead;
  }
  if (pos + extra >= text.size()) {
    ++pos;
    return kEscapeBase + lead;
  }
  for (std::size_t i = 1; i <= extra; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kEscapeBase + lead;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min_value || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kEscapeBase + lead;
  }
  pos += extra + 1;
  return cp;
}

std::u32string decode_utf8(std::string_view text) {
  std::u32string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) out.push_back(next_code_point(text, pos));
  return out;
}

void append_utf8(std::string& out, char32_t c) {
  if (c >= kEscapeBase + 0x80 && c <= kEscapeBase + 0xFF) {
    out.push_back(static_cast<char>(c - kEscapeBase));
  } else if (c < 0x80) {
    out.push_back(static_cast<char>(c));
  } else if (c < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (c >> 6)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else if (c < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (c >> 12)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (c >> 18)));
    out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
  }
}

std::string encode_utf8(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) append_utf8(out, c);
  return out;
}

}  // namespace patternforge
