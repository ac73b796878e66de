#include "patternforge/pattern.hpp"

#include <algorithm>

#include "patternforge/errors.hpp"

namespace patternforge {

namespace {

constexpr std::uint8_t kind_bit(CharKind kind) noexcept {
  return static_cast<std::uint8_t>(1u << static_cast<unsigned>(kind));
}

constexpr std::string_view kMetaChars = "\\.+*?()[]{}|^$";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void append_escaped(std::string& out, char32_t c, bool in_brackets) {
  const bool meta = c < 0x80 && (kMetaChars.find(static_cast<char>(c)) != std::string_view::npos ||
                                 (in_brackets && c == '-'));
  if (meta) out.push_back('\\');
  append_utf8(out, c);
}

}  // namespace

CharClass CharClass::of(CharKind kind) {
  if (kind == CharKind::Symbol) return any();
  return CharClass(kind_bit(kind));
}

CharClass CharClass::from_kinds(bool digit, bool upper, bool lower, bool symbol) {
  if (symbol || !(digit || upper || lower)) return any();
  std::uint8_t bits = 0;
  if (digit) bits |= kind_bit(CharKind::Digit);
  if (upper) bits |= kind_bit(CharKind::Upper);
  if (lower) bits |= kind_bit(CharKind::Lower);
  return CharClass(bits);
}

bool CharClass::contains(CharKind kind) const noexcept {
  if (is_any()) return true;
  return (bits_ & kind_bit(kind)) != 0;
}

bool CharClass::accepts(char32_t c) const noexcept {
  if (is_any()) return true;
  return contains(classify_char(c));
}

std::string CharClass::render() const {
  if (is_any()) return ".";
  const bool digit = contains(CharKind::Digit);
  const bool upper = contains(CharKind::Upper);
  const bool lower = contains(CharKind::Lower);
  const int members = int(digit) + int(upper) + int(lower);
  if (members == 1) {
    if (digit) return "\\d";
    return upper ? "[A-Z]" : "[a-z]";
  }
  std::string out = "[";
  if (digit) out += "0-9";
  if (upper) out += "A-Z";
  if (lower) out += "a-z";
  out += "]";
  return out;
}

std::string escape_literal(std::string_view text) {
  std::string out;
  out.reserve(text.size() + 4);
  std::size_t pos = 0;
  while (pos < text.size()) append_escaped(out, next_code_point(text, pos), false);
  return out;
}

std::string render_regex(const PatternAST& ast) {
  std::string out;
  for (const auto& element : ast.elements) {
    std::visit(Overloaded{
                   [&](const Literal& lit) { out += escape_literal(lit.text); },
                   [&](const ClassRun& run) {
                     out += run.cls.render();
                     if (const auto* exact = std::get_if<Exactly>(&run.quant)) {
                       if (exact->count != 1) out += "{" + std::to_string(exact->count) + "}";
                     } else {
                       out += "*";
                     }
                   },
                   [&](const CharSet& set) {
                     out += "[";
                     for (char32_t c : set.chars) append_escaped(out, c, true);
                     out += "]";
                   },
                   [&](const Alternation& alt) {
                     if (alt.choices.size() == 1) {
                       out += escape_literal(alt.choices.front());
                       return;
                     }
                     out += "(?:";
                     for (std::size_t i = 0; i < alt.choices.size(); ++i) {
                       if (i > 0) out += "|";
                       out += escape_literal(alt.choices[i]);
                     }
                     out += ")";
                   },
               },
               element);
  }
  return out;
}

Matcher::Matcher(const PatternAST& ast) {
  for (const auto& element : ast.elements) {
    Step step{};
    std::visit(Overloaded{
                   [&](const Literal& lit) {
                     step.kind = StepKind::Literal;
                     step.text = decode_utf8(lit.text);
                   },
                   [&](const ClassRun& run) {
                     step.cls = run.cls;
                     if (const auto* exact = std::get_if<Exactly>(&run.quant)) {
                       step.kind = StepKind::Class;
                       step.count = exact->count;
                     } else {
                       step.kind = StepKind::ClassStar;
                       deterministic_ = false;
                     }
                   },
                   [&](const CharSet& set) {
                     step.kind = StepKind::Set;
                     step.text = set.chars;
                   },
                   [&](const Alternation& alt) {
                     step.kind = StepKind::Alternation;
                     if (alt.choices.empty()) throw InternalError("alternation without choices");
                     for (const auto& choice : alt.choices) step.choices.push_back(decode_utf8(choice));
                     if (step.choices.size() > 1) deterministic_ = false;
                   },
               },
               element);
    steps_.push_back(std::move(step));
  }
}

bool Matcher::matches(std::u32string_view text) const {
  const std::size_t n = text.size();
  if (deterministic_) {
    std::size_t pos = 0;
    for (const auto& step : steps_) {
      switch (step.kind) {
        case StepKind::Literal:
          if (text.substr(pos, step.text.size()) != step.text) return false;
          pos += step.text.size();
          break;
        case StepKind::Class:
          if (n - pos < step.count) return false;
          for (std::size_t i = 0; i < step.count; ++i) {
            if (!step.cls.accepts(text[pos + i])) return false;
          }
          pos += step.count;
          break;
        case StepKind::Set:
          if (pos >= n || step.text.find(text[pos]) == std::u32string::npos) return false;
          ++pos;
          break;
        case StepKind::Alternation:
          if (text.substr(pos, step.choices.front().size()) != step.choices.front()) return false;
          pos += step.choices.front().size();
          break;
        case StepKind::ClassStar:
          throw InternalError("star step in deterministic matcher");
      }
    }
    return pos == n;
  }

  // reachable[p] is true when some way of matching the steps so far ends at p.
  std::vector<char> reachable(n + 1, 0);
  std::vector<char> next(n + 1, 0);
  reachable[0] = 1;
  for (const auto& step : steps_) {
    std::fill(next.begin(), next.end(), 0);
    bool any = false;
    for (std::size_t p = 0; p <= n; ++p) {
      if (step.kind == StepKind::ClassStar) {
        if (reachable[p] || (p > 0 && next[p - 1] && step.cls.accepts(text[p - 1]))) {
          next[p] = 1;
          any = true;
        }
        continue;
      }
      if (!reachable[p]) continue;
      switch (step.kind) {
        case StepKind::Literal:
          if (text.substr(p, step.text.size()) == step.text) {
            next[p + step.text.size()] = 1;
            any = true;
          }
          break;
        case StepKind::Class: {
          if (n - p < step.count) break;
          bool ok = true;
          for (std::size_t i = 0; i < step.count && ok; ++i) ok = step.cls.accepts(text[p + i]);
          if (ok) {
            next[p + step.count] = 1;
            any = true;
          }
          break;
        }
        case StepKind::Set:
          if (p < n && step.text.find(text[p]) != std::u32string::npos) {
            next[p + 1] = 1;
            any = true;
          }
          break;
        case StepKind::Alternation:
          for (const auto& choice : step.choices) {
            if (text.substr(p, choice.size()) == choice) {
              next[p + choice.size()] = 1;
              any = true;
            }
          }
          break;
        case StepKind::ClassStar:
          break;
      }
    }
    if (!any) return false;
    reachable.swap(next);
  }
  return reachable[n] != 0;
}

bool Matcher::matches_utf8(std::string_view text) const { return matches(decode_utf8(text)); }

bool full_match(const PatternAST& ast, std::string_view record) {
  return Matcher(ast).matches_utf8(record);
}

}  // namespace patternforge
