#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace patternforge {

// The four character kinds every pattern constraint is phrased in.
enum class CharKind : std::uint8_t { Digit = 0, Upper = 1, Lower = 2, Symbol = 3 };

inline constexpr std::size_t kCharKindCount = 4;

// Decimal digits, uppercase and lowercase letters by Unicode category; every
// other code point (punctuation, whitespace, marks, uncased letters) is Symbol.
CharKind classify_char(char32_t c) noexcept;

const char* to_string(CharKind kind) noexcept;

// Decodes one code point starting at byte offset `pos` and advances `pos`.
// Bytes that do not start a well-formed UTF-8 sequence decode to
// U+DC80..U+DCFF (one per byte), so encoding the result restores the input
// byte-for-byte.
char32_t next_code_point(std::string_view text, std::size_t& pos) noexcept;

std::u32string decode_utf8(std::string_view text);
void append_utf8(std::string& out, char32_t c);
std::string encode_utf8(std::u32string_view text);

}  // namespace patternforge
