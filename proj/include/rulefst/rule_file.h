#ifndef RULEFST_RULE_FILE_H_
#define RULEFST_RULE_FILE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rulefst/features.h"

namespace rulefst {

enum class Mode { kChar, kToken, kItem };

std::string ModeName(Mode mode);
std::optional<Mode> ParseMode(std::string_view text);

// Pattern as written in a rule file: symbols and item descriptions are still
// names.
struct Pattern {
  enum class Kind { kEpsilon, kSymbol, kItem, kAny, kConcat, kUnion, kStar, kPlus, kOptional };

  Kind kind = Kind::kEpsilon;
  std::string symbol;
  ItemDescription item;
  std::vector<Pattern> children;
  int line = 0;
  int column = 0;

  // Structural equality; source positions are ignored.
  bool SameShape(const Pattern &other) const;
};

// One element of a right-hand side: a symbol or an item description.
struct RhsElement {
  std::string symbol;
  std::optional<ItemDescription> bundle;
  int line = 0;
  int column = 0;
};

struct RuleText {
  Pattern left;
  Pattern focus;
  Pattern right;
  std::vector<RhsElement> rhs;
  int line = 0;
  int column = 0;
};

// Parsed rule file.  Rules are numbered 1..n in file order.
//
//   file      := { directive | rule }
//   directive := "%mode" (char|token|item) | "%alphabet" symbol* ";"?   (one line)
//   rule      := [regex] "/" regex "/" [regex] "->" rhs ";"
//   regex     := concat { "|" concat }
//   concat    := { postfix }
//   postfix   := atom { "*" | "+" | "?" }
//   atom      := symbol | "." | "(" regex ")" | "[" { feature "=" value { "|" value } } "]"
//   rhs       := { symbol | "[" ... "]" }
//
// "#" starts a comment that runs to the end of the line.
struct RuleFile {
  std::optional<Mode> mode;
  int mode_line = 0;
  std::vector<std::string> alphabet;
  std::vector<RuleText> rules;

  // Declared mode, else item if any item description occurs, else token.
  Mode EffectiveMode() const;
  bool UsesItemSyntax() const;
  bool SameShape(const RuleFile &other) const;
};

// Throws ParseError with line and column.
RuleFile ParseRuleFile(std::string_view text);

// Canonical text; ParseRuleFile(PrintRuleFile(f)) has the same shape as f.
std::string PrintRuleFile(const RuleFile &file);
std::string PrintPattern(const Pattern &pattern);
std::string PrintRule(const RuleText &rule);

}  // namespace rulefst

#endif  // RULEFST_RULE_FILE_H_
