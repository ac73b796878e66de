#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "patternforge/chars.hpp"

namespace patternforge {

// A set of character kinds. Digit/Upper/Lower may be combined; AnyType stands
// alone and accepts every character.
class CharClass {
 public:
  static CharClass of(CharKind kind);
  static CharClass any() noexcept { return CharClass(kAnyBit); }
  // A union containing Symbol collapses to AnyType: the dialect has no
  // symbol class.
  static CharClass from_kinds(bool digit, bool upper, bool lower, bool symbol);

  bool is_any() const noexcept { return bits_ == kAnyBit; }
  bool contains(CharKind kind) const noexcept;
  bool accepts(char32_t c) const noexcept;
  // \d, [A-Z], [a-z], ., or a merged bracket class ordered digit, upper, lower.
  std::string render() const;
  std::uint8_t bits() const noexcept { return bits_; }

  friend bool operator==(CharClass, CharClass) = default;

 private:
  static constexpr std::uint8_t kAnyBit = 0x8;
  explicit CharClass(std::uint8_t bits) noexcept : bits_(bits) {}
  std::uint8_t bits_;
};

struct Exactly {
  std::size_t count;
  friend bool operator==(const Exactly&, const Exactly&) = default;
};
struct Star {
  friend bool operator==(const Star&, const Star&) = default;
};
using Quantifier = std::variant<Exactly, Star>;

struct Literal {
  std::string text;
  friend bool operator==(const Literal&, const Literal&) = default;
};

struct ClassRun {
  CharClass cls;
  Quantifier quant;
  friend bool operator==(const ClassRun&, const ClassRun&) = default;
};

// One character out of a fixed set (at least two members, sorted).
struct CharSet {
  std::u32string chars;
  friend bool operator==(const CharSet&, const CharSet&) = default;
};

// One string out of a fixed non-empty set (sorted, distinct).
struct Alternation {
  std::vector<std::string> choices;
  friend bool operator==(const Alternation&, const Alternation&) = default;
};

using PatternElement = std::variant<Literal, ClassRun, CharSet, Alternation>;

struct PatternAST {
  std::vector<PatternElement> elements;
  friend bool operator==(const PatternAST&, const PatternAST&) = default;
};

// Escapes the dialect metacharacters \ . + * ? ( ) [ ] { } | ^ $.
std::string escape_literal(std::string_view text);

std::string render_regex(const PatternAST& ast);

// Whole-string matcher compiled from a PatternAST. Runs a position-set
// simulation, so matching is O(length * elements) with no backtracking.
class Matcher {
 public:
  explicit Matcher(const PatternAST& ast);

  bool matches(std::u32string_view text) const;
  bool matches_utf8(std::string_view text) const;

 private:
  enum class StepKind : std::uint8_t { Literal, Class, ClassStar, Set, Alternation };
  struct Step {
    StepKind kind;
    CharClass cls = CharClass::any();
    std::size_t count = 0;
    std::u32string text;
    std::vector<std::u32string> choices;
  };
  std::vector<Step> steps_;
  bool deterministic_ = true;
};

bool full_match(const PatternAST& ast, std::string_view record);

}  // namespace patternforge
