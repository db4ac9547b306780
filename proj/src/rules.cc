#include "rulefst/rules.h"

#include <algorithm>
#include <set>

#include "rulefst/algorithms.h"
#include "rulefst/error.h"

namespace rulefst {
namespace {

void CollectSymbols(const Pattern &p, std::set<std::string> &out) {
  if (p.kind == Pattern::Kind::kSymbol) out.insert(p.symbol);
  for (const Pattern &c : p.children) CollectSymbols(c, out);
}

void CheckModeSyntax(const Pattern &p, Mode mode) {
  if (p.kind == Pattern::Kind::kItem && mode != Mode::kItem) {
    throw ParseError("item syntax in " + ModeName(mode) + " mode", p.line, p.column);
  }
  if (p.kind == Pattern::Kind::kSymbol && mode == Mode::kItem) {
    throw ParseError("bare symbol '" + p.symbol + "' in item mode", p.line,
                     p.column);
  }
  for (const Pattern &c : p.children) CheckModeSyntax(c, mode);
}

class Resolver {
 public:
  explicit Resolver(RuleSet &rules) : rules_(rules) {}

  Regex Convert(const Pattern &p) const {
    switch (p.kind) {
      case Pattern::Kind::kEpsilon:
        return Regex::Epsilon();
      case Pattern::Kind::kSymbol:
        return Regex::Symbol(*rules_.symbols.Find(p.symbol), p.symbol);
      case Pattern::Kind::kAny:
        if (rules_.schema) return ExpandItemDescription(*rules_.schema, {});
        return Regex::Leaf(rules_.input_alphabet, ".");
      case Pattern::Kind::kItem:
        return ExpandItemDescription(*rules_.schema, p.item);
      case Pattern::Kind::kConcat:
      case Pattern::Kind::kUnion: {
        std::vector<Regex> children;
        for (const Pattern &c : p.children) children.push_back(Convert(c));
        return p.kind == Pattern::Kind::kConcat ? Regex::Concat(std::move(children))
                                                : Regex::Union(std::move(children));
      }
      case Pattern::Kind::kStar:
        return Regex::Star(Convert(p.children.front()));
      case Pattern::Kind::kPlus:
        return Regex::Plus(Convert(p.children.front()));
      case Pattern::Kind::kOptional:
        return Regex::Optional(Convert(p.children.front()));
    }
    return Regex::Epsilon();
  }

 private:
  RuleSet &rules_;
};

}  // namespace

RuleSet ResolveRules(const RuleFile &file, std::optional<Mode> mode_override) {
  RuleSet rules;
  rules.mode = mode_override ? *mode_override : file.EffectiveMode();
  for (const RuleText &rule : file.rules) {
    CheckModeSyntax(rule.left, rules.mode);
    CheckModeSyntax(rule.focus, rules.mode);
    CheckModeSyntax(rule.right, rules.mode);
    for (const RhsElement &e : rule.rhs) {
      if (e.bundle && rules.mode != Mode::kItem) {
        throw ParseError("item syntax in " + ModeName(rules.mode) + " mode",
                         e.line, e.column);
      }
      if (!e.bundle && rules.mode == Mode::kItem) {
        throw ParseError("bare symbol '" + e.symbol + "' in item mode", e.line,
                         e.column);
      }
    }
  }

  std::vector<AssignmentBundle> rhs_bundles;
  try {
    if (rules.mode == Mode::kItem) {
      if (!file.alphabet.empty()) {
        throw CompileError("%alphabet is not used in item mode");
      }
      rules.schema = BuildSchema(file, rules.symbols);
      rules.input_alphabet = rules.schema->Alphabet();
      std::set<AssignmentBundle> bundles{AssignmentBundle{}};
      for (const RuleText &rule : file.rules) {
        for (const RhsElement &e : rule.rhs) {
          bundles.insert(BundleFromDescription(*e.bundle));
        }
      }
      for (const AssignmentBundle &b : bundles) {
        rules.bundles.emplace(rules.symbols.Add(b.SymbolName(), kOutputSymbol), b);
      }
    } else {
      std::set<std::string> inputs(file.alphabet.begin(), file.alphabet.end());
      std::set<std::string> outputs;
      for (const RuleText &rule : file.rules) {
        CollectSymbols(rule.left, inputs);
        CollectSymbols(rule.focus, inputs);
        CollectSymbols(rule.right, inputs);
        for (const RhsElement &e : rule.rhs) outputs.insert(e.symbol);
      }
      for (const auto &name : inputs) {
        rules.input_alphabet.push_back(rules.symbols.Add(name, kInputSymbol));
      }
      for (const auto &name : outputs) rules.symbols.Add(name, kOutputSymbol);
    }
  } catch (const CompileError &) {
    throw;
  } catch (const Error &e) {
    throw CompileError(e.what());
  }

  Resolver resolver(rules);
  for (const RuleText &text : file.rules) {
    Rule rule;
    rule.index = rules.rules.size() + 1;
    rule.text = PrintRule(text);
    const std::string where =
        "rule " + std::to_string(rule.index) + " (line " + std::to_string(text.line) + ")";
    rule.left = resolver.Convert(text.left);
    rule.focus = resolver.Convert(text.focus);
    rule.right = resolver.Convert(text.right);
    Dfsa focus = CompileRegex(rule.focus, rules.input_alphabet);
    rule.focus_len = FixedLengthOf(focus, where);
    if (rule.focus_len == 0) {
      throw CompileError(where + ": focus matches only the empty string "
                         "(insertion rules are not supported)");
    }
    if (rules.mode == Mode::kItem) {
      std::size_t items = rule.focus_len / rules.UnitLength();
      if (text.rhs.size() > items) {
        throw CompileError(where + ": right-hand side has " +
                           std::to_string(text.rhs.size()) +
                           " bundles but the focus spans " +
                           std::to_string(items) + " item(s)");
      }
      for (const RhsElement &e : text.rhs) {
        rule.psi.push_back(*rules.symbols.Find(BundleFromDescription(*e.bundle).SymbolName()));
      }
      SymbolId empty = *rules.symbols.Find(AssignmentBundle{}.SymbolName());
      rule.psi.resize(items, empty);
    } else {
      for (const RhsElement &e : text.rhs) {
        rule.psi.push_back(*rules.symbols.Find(e.symbol));
      }
    }
    rules.rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<std::string> UncoveredUnits(const RuleSet &rules) {
  std::vector<Dfsa> covering;
  for (const Rule &rule : rules.rules) {
    if (rule.focus_len != rules.UnitLength()) continue;
    if (!CompileRegex(rule.left, rules.input_alphabet).Accepts({})) continue;
    if (!CompileRegex(rule.right, rules.input_alphabet).Accepts({})) continue;
    covering.push_back(CompileRegex(rule.focus, rules.input_alphabet));
  }

  std::vector<std::string> uncovered;
  if (rules.mode != Mode::kItem) {
    for (SymbolId a : rules.input_alphabet) {
      SymbolId unit[] = {a};
      bool covered = std::any_of(covering.begin(), covering.end(),
                                 [&](const Dfsa &d) { return d.Accepts(unit); });
      if (!covered) uncovered.push_back(rules.symbols.Name(a));
    }
    return uncovered;
  }

  Fst all;
  for (const Dfsa &d : covering) all = Union(all, ToFst(d));
  Dfsa covered = Optimize(all);
  Dfsa units = CompileRegex(ExpandItemDescription(*rules.schema, {}),
                            rules.input_alphabet);
  if (IsSubset(units, covered)) return uncovered;

  // Find one encoded item outside the covered set.
  const FeatureSchema &schema = *rules.schema;
  std::vector<std::size_t> choice(schema.size(), 0);
  while (true) {
    std::vector<SymbolId> encoded;
    std::string name = "[";
    for (std::size_t i = 0; i < schema.size(); ++i) {
      const FeatureInfo &info = schema.feature(i);
      std::size_t c = choice[i];
      SymbolId id = c < info.value_ids.size() ? info.value_ids[c] : info.unseen;
      encoded.push_back(id);
      if (i) name += ' ';
      name += rules.symbols.Name(id);
    }
    if (!covered.Accepts(encoded)) {
      uncovered.push_back(name + "]");
      return uncovered;
    }
    std::size_t i = 0;
    for (; i < schema.size(); ++i) {
      if (++choice[i] <= schema.feature(i).value_ids.size()) break;
      choice[i] = 0;
    }
    if (i == schema.size()) return uncovered;
  }
}

void CompleteWithIdentity(RuleSet &rules) {
  std::vector<std::string> uncovered = UncoveredUnits(rules);
  if (uncovered.empty()) return;
  if (rules.mode == Mode::kItem) {
    Rule rule;
    rule.index = rules.rules.size() + 1;
    rule.focus = ExpandItemDescription(*rules.schema, {});
    rule.focus_len = rules.UnitLength();
    rule.psi = {*rules.symbols.Find(AssignmentBundle{}.SymbolName())};
    rule.text = "/ [] / -> [] ;";
    rule.generated = true;
    rules.rules.push_back(std::move(rule));
    return;
  }
  for (const std::string &name : uncovered) {
    SymbolId id = rules.symbols.Add(name, kOutputSymbol);
    Rule rule;
    rule.index = rules.rules.size() + 1;
    rule.focus = Regex::Symbol(id, name);
    rule.focus_len = 1;
    rule.psi = {id};
    rule.text = "/ " + name + " / -> " + name + " ;";
    rule.generated = true;
    rules.rules.push_back(std::move(rule));
  }
}

}  // namespace rulefst
