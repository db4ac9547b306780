#include "rulefst/rule_file.h"

#include <cctype>
#include <string_view>

#include "rulefst/error.h"

namespace rulefst {

std::string ModeName(Mode mode) {
  switch (mode) {
    case Mode::kChar:
      return "char";
    case Mode::kToken:
      return "token";
    case Mode::kItem:
      return "item";
  }
  return "token";
}

std::optional<Mode> ParseMode(std::string_view text) {
  if (text == "char") return Mode::kChar;
  if (text == "token") return Mode::kToken;
  if (text == "item") return Mode::kItem;
  return std::nullopt;
}

bool Pattern::SameShape(const Pattern &other) const {
  if (kind != other.kind || symbol != other.symbol || !(item == other.item) ||
      children.size() != other.children.size()) {
    return false;
  }
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (!children[i].SameShape(other.children[i])) return false;
  }
  return true;
}

namespace {

bool UsesItems(const Pattern &p) {
  if (p.kind == Pattern::Kind::kItem) return true;
  for (const Pattern &c : p.children) {
    if (UsesItems(c)) return true;
  }
  return false;
}

bool IsSpecial(char c) {
  switch (c) {
    case '/':
    case ';':
    case '(':
    case ')':
    case '|':
    case '*':
    case '+':
    case '?':
    case '.':
    case '[':
    case ']':
    case '=':
    case '#':
      return true;
    default:
      return false;
  }
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RuleFile Parse() {
    while (true) {
      SkipSpace();
      if (AtEnd()) break;
      if (Peek() == '%') {
        ParseDirective();
      } else {
        file_.rules.push_back(ParseRule());
      }
    }
    return std::move(file_);
  }

 private:
  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek() const { return AtEnd() ? '\0' : text_[pos_]; }
  bool LooksAt(std::string_view s) const { return text_.substr(pos_, s.size()) == s; }

  void Advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  // At end of input, errors point just past the last non-blank character.
  [[noreturn]] void Fail(const std::string &what) const {
    if (!AtEnd()) throw ParseError(what, line_, column_);
    std::size_t end = text_.size();
    while (end > 0 && IsSpace(text_[end - 1])) --end;
    int line = 1;
    int column = 1;
    for (std::size_t k = 0; k < end; ++k) {
      if (text_[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(what, line, column);
  }

  [[noreturn]] static void FailAt(const std::string &what, int line, int column) {
    throw ParseError(what, line, column);
  }

  // Skips whitespace and comments.  With `stay_on_line`, stops at a newline.
  void SkipSpace(bool stay_on_line = false) {
    while (!AtEnd()) {
      char c = Peek();
      if (c == '#') {
        while (!AtEnd() && Peek() != '\n') Advance();
      } else if (IsSpace(c)) {
        if (stay_on_line && c == '\n') return;
        Advance();
      } else {
        return;
      }
    }
  }

  bool AtSymbolChar() const {
    if (AtEnd()) return false;
    char c = Peek();
    if (IsSpace(c) || IsSpecial(c)) return false;
    if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') return false;
    return true;
  }

  std::string ReadName() {
    std::string out;
    while (AtSymbolChar()) {
      out += Peek();
      Advance();
    }
    return out;
  }

  void ParseDirective() {
    int line = line_;
    int column = column_;
    Advance();  // '%'
    std::string name = ReadName();
    if (name == "mode") {
      SkipSpace(true);
      int value_column = column_;
      std::string value = ReadName();
      auto mode = ParseMode(value);
      if (!mode) FailAt("unknown mode '" + value + "' (expected char, token or item)", line,
                        value_column);
      if (file_.mode) {
        FailAt("duplicate mode declaration (first on line " +
                   std::to_string(file_.mode_line) + ")",
               line, column);
      }
      if (*mode != Mode::kItem && saw_items_) {
        FailAt("mode " + value + " declared after item syntax was used", line, column);
      }
      if (*mode == Mode::kItem && saw_symbols_) {
        FailAt("mode item declared after bare symbols were used", line, column);
      }
      file_.mode = mode;
      file_.mode_line = line;
    } else if (name == "alphabet") {
      while (true) {
        SkipSpace(true);
        if (AtEnd() || Peek() == '\n') break;
        if (Peek() == ';') {
          Advance();
          continue;
        }
        if (!AtSymbolChar()) Fail("expected a symbol in %alphabet");
        file_.alphabet.push_back(ReadName());
      }
    } else {
      FailAt("unknown directive '%" + name + "'", line, column);
    }
    SkipSpace(true);
    if (!AtEnd() && Peek() != '\n') Fail("unexpected text after directive");
  }

  RuleText ParseRule() {
    RuleText rule;
    rule.line = line_;
    rule.column = column_;
    rule.left = ParseRegex();
    Expect('/', "expected '/' before the focus");
    rule.focus = ParseRegex();
    Expect('/', "expected '/' after the focus");
    rule.right = ParseRegex();
    SkipSpace();
    if (!LooksAt("->")) Fail("expected '->'");
    Advance();
    Advance();
    while (true) {
      SkipSpace();
      if (AtEnd()) Fail("expected ';' at the end of the rule");
      if (Peek() == ';') {
        Advance();
        break;
      }
      RhsElement element;
      element.line = line_;
      element.column = column_;
      if (Peek() == '[') {
        element.bundle = ParseItemDescription();
      } else if (AtSymbolChar()) {
        element.symbol = ReadName();
        NoteSymbol();
      } else {
        Fail(std::string("unexpected '") + Peek() + "' in right-hand side");
      }
      rule.rhs.push_back(std::move(element));
    }
    return rule;
  }

  void Expect(char c, const std::string &what) {
    SkipSpace();
    if (Peek() != c) Fail(what);
    Advance();
  }

  Pattern Make(Pattern::Kind kind, int line, int column) {
    Pattern p;
    p.kind = kind;
    p.line = line;
    p.column = column;
    return p;
  }

  Pattern ParseRegex() {
    SkipSpace();
    int line = line_, column = column_;
    std::vector<Pattern> alternatives{ParseConcat()};
    while (true) {
      SkipSpace();
      if (Peek() != '|') break;
      Advance();
      alternatives.push_back(ParseConcat());
    }
    if (alternatives.size() == 1) return std::move(alternatives.front());
    Pattern p = Make(Pattern::Kind::kUnion, line, column);
    p.children = std::move(alternatives);
    return p;
  }

  Pattern ParseConcat() {
    SkipSpace();
    int line = line_, column = column_;
    std::vector<Pattern> items;
    while (true) {
      SkipSpace();
      if (AtEnd()) break;
      char c = Peek();
      if (!(c == '(' || c == '[' || c == '.' || AtSymbolChar())) break;
      items.push_back(ParsePostfix());
    }
    if (items.empty()) return Make(Pattern::Kind::kEpsilon, line, column);
    if (items.size() == 1) return std::move(items.front());
    Pattern p = Make(Pattern::Kind::kConcat, line, column);
    p.children = std::move(items);
    return p;
  }

  Pattern ParsePostfix() {
    int line = line_, column = column_;
    Pattern atom = ParseAtom();
    while (true) {
      SkipSpace();
      Pattern::Kind kind;
      if (Peek() == '*') {
        kind = Pattern::Kind::kStar;
      } else if (Peek() == '+') {
        kind = Pattern::Kind::kPlus;
      } else if (Peek() == '?') {
        kind = Pattern::Kind::kOptional;
      } else {
        break;
      }
      Advance();
      Pattern p = Make(kind, line, column);
      p.children.push_back(std::move(atom));
      atom = std::move(p);
    }
    return atom;
  }

  Pattern ParseAtom() {
    int line = line_, column = column_;
    char c = Peek();
    if (c == '(') {
      Advance();
      Pattern inner = ParseRegex();
      Expect(')', "expected ')'");
      return inner;
    }
    if (c == '.') {
      Advance();
      return Make(Pattern::Kind::kAny, line, column);
    }
    if (c == '[') {
      Pattern p = Make(Pattern::Kind::kItem, line, column);
      p.item = ParseItemDescription();
      return p;
    }
    Pattern p = Make(Pattern::Kind::kSymbol, line, column);
    p.symbol = ReadName();
    NoteSymbol();
    return p;
  }

  void NoteSymbol() {
    if (file_.mode == Mode::kItem) Fail("bare symbol in item mode");
    saw_symbols_ = true;
  }

  ItemDescription ParseItemDescription() {
    if (file_.mode && *file_.mode != Mode::kItem) {
      Fail("item syntax in " + ModeName(*file_.mode) + " mode");
    }
    saw_items_ = true;
    Advance();  // '['
    ItemDescription d;
    while (true) {
      SkipSpace();
      if (AtEnd()) Fail("expected ']'");
      if (Peek() == ']') {
        Advance();
        return d;
      }
      if (!AtSymbolChar()) Fail("expected a feature name");
      std::string feature = ReadName();
      if (d.constraints.count(feature)) {
        Fail("feature '" + feature + "' constrained twice");
      }
      SkipSpace();
      if (Peek() != '=') Fail("expected '=' after feature '" + feature + "'");
      Advance();
      auto &values = d.constraints[feature];
      while (true) {
        SkipSpace();
        if (!AtSymbolChar()) Fail("expected a value for feature '" + feature + "'");
        values.insert(ReadName());
        SkipSpace();
        if (Peek() != '|') break;
        Advance();
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  bool saw_items_ = false;
  bool saw_symbols_ = false;
  RuleFile file_;
};

std::string PrintItem(const ItemDescription &d) {
  std::string out = "[";
  bool first = true;
  for (const auto &[feature, values] : d.constraints) {
    if (!first) out += ' ';
    first = false;
    out += feature + "=";
    bool first_value = true;
    for (const auto &v : values) {
      if (!first_value) out += '|';
      first_value = false;
      out += v;
    }
  }
  return out + "]";
}

bool IsAtomic(const Pattern &p) {
  return p.kind == Pattern::Kind::kSymbol || p.kind == Pattern::Kind::kItem ||
         p.kind == Pattern::Kind::kAny;
}

std::string Print(const Pattern &p, bool top) {
  switch (p.kind) {
    case Pattern::Kind::kEpsilon:
      return top ? "" : "()";
    case Pattern::Kind::kSymbol:
      return p.symbol;
    case Pattern::Kind::kAny:
      return ".";
    case Pattern::Kind::kItem:
      return PrintItem(p.item);
    case Pattern::Kind::kStar:
    case Pattern::Kind::kPlus:
    case Pattern::Kind::kOptional: {
      const Pattern &child = p.children.front();
      std::string inner = Print(child, false);
      bool wrap = !IsAtomic(child) && child.kind != Pattern::Kind::kEpsilon;
      if (wrap) inner = "(" + inner + ")";
      char op = p.kind == Pattern::Kind::kStar ? '*'
                : p.kind == Pattern::Kind::kPlus ? '+'
                                                 : '?';
      return inner + op;
    }
    case Pattern::Kind::kConcat: {
      std::string out;
      for (const Pattern &child : p.children) {
        if (!out.empty()) out += ' ';
        std::string s = Print(child, false);
        bool wrap = child.kind == Pattern::Kind::kConcat ||
                    child.kind == Pattern::Kind::kUnion;
        out += wrap ? "(" + s + ")" : s;
      }
      return out;
    }
    case Pattern::Kind::kUnion: {
      std::string out;
      for (const Pattern &child : p.children) {
        if (!out.empty()) out += " | ";
        std::string s = Print(child, false);
        bool wrap = child.kind == Pattern::Kind::kUnion;
        out += wrap ? "(" + s + ")" : s;
      }
      return top ? out : "(" + out + ")";
    }
  }
  return "";
}

}  // namespace

Mode RuleFile::EffectiveMode() const {
  if (mode) return *mode;
  return UsesItemSyntax() ? Mode::kItem : Mode::kToken;
}

bool RuleFile::UsesItemSyntax() const {
  for (const RuleText &rule : rules) {
    if (UsesItems(rule.left) || UsesItems(rule.focus) || UsesItems(rule.right)) {
      return true;
    }
    for (const RhsElement &e : rule.rhs) {
      if (e.bundle) return true;
    }
  }
  return false;
}

bool RuleFile::SameShape(const RuleFile &other) const {
  if (mode != other.mode || alphabet != other.alphabet ||
      rules.size() != other.rules.size()) {
    return false;
  }
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const RuleText &a = rules[i];
    const RuleText &b = other.rules[i];
    if (!a.left.SameShape(b.left) || !a.focus.SameShape(b.focus) ||
        !a.right.SameShape(b.right) || a.rhs.size() != b.rhs.size()) {
      return false;
    }
    for (std::size_t k = 0; k < a.rhs.size(); ++k) {
      if (a.rhs[k].symbol != b.rhs[k].symbol || a.rhs[k].bundle != b.rhs[k].bundle) {
        return false;
      }
    }
  }
  return true;
}

RuleFile ParseRuleFile(std::string_view text) { return Parser(text).Parse(); }

std::string PrintPattern(const Pattern &pattern) { return Print(pattern, true); }

namespace {

std::string PrintContext(const Pattern &p) {
  if (p.kind == Pattern::Kind::kUnion) return "(" + PrintPattern(p) + ")";
  return PrintPattern(p);
}

}  // namespace

std::string PrintRule(const RuleText &rule) {
  std::string out;
  std::string left = PrintContext(rule.left);
  if (!left.empty()) out += left + " ";
  out += "/ " + PrintPattern(rule.focus) + " /";
  std::string right = PrintContext(rule.right);
  if (!right.empty()) out += " " + right;
  out += " ->";
  for (const RhsElement &e : rule.rhs) {
    out += " ";
    out += e.bundle ? PrintItem(*e.bundle) : e.symbol;
  }
  return out + " ;";
}

std::string PrintRuleFile(const RuleFile &file) {
  std::string out;
  if (file.mode) out += "%mode " + ModeName(*file.mode) + "\n";
  if (!file.alphabet.empty()) {
    out += "%alphabet";
    for (const auto &s : file.alphabet) out += " " + s;
    out += "\n";
  }
  for (const RuleText &rule : file.rules) out += PrintRule(rule) + "\n";
  return out;
}

}  // namespace rulefst
