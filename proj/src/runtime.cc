#include "rulefst/runtime.h"

#include <algorithm>

#include "rulefst/error.h"
#include "rulefst/regex.h"

namespace rulefst {
namespace {

std::size_t CountInputSymbols(const SymbolTable &symbols, std::span<const SymbolId> s,
                              std::size_t end) {
  std::size_t n = 0;
  for (std::size_t k = 0; k < end && k < s.size(); ++k) {
    if (!symbols.IsMarker(s[k])) ++n;
  }
  return n;
}

// Which marker starts each rewrite step of a fully marked string.
std::vector<std::size_t> ConsumedMarkers(const CompiledRuleset &compiled,
                                         std::span<const SymbolId> marked) {
  std::vector<std::size_t> by_marker(compiled.symbols.size(), 0);
  std::vector<std::size_t> focus_len(compiled.rules.size() + 1, 0);
  for (const CompiledRule &rule : compiled.rules) {
    by_marker[rule.marker] = rule.index;
    focus_len[rule.index] = rule.focus_len;
  }
  std::vector<std::size_t> consumed;
  std::size_t k = 0;
  while (k < marked.size()) {
    if (!compiled.symbols.IsMarker(marked[k])) break;
    std::size_t index = by_marker[marked[k]];
    consumed.push_back(index);
    std::size_t remaining = focus_len[index];
    ++k;
    while (k < marked.size() && remaining > 0) {
      if (!compiled.symbols.IsMarker(marked[k])) --remaining;
      ++k;
    }
  }
  return consumed;
}

void ApplyBundles(const std::map<SymbolId, AssignmentBundle> &bundles,
                  std::span<const SymbolId> output, std::vector<Item> &items) {
  if (output.size() != items.size()) {
    throw Error("item rewrite produced " + std::to_string(output.size()) +
                " bundles for " + std::to_string(items.size()) + " items");
  }
  for (std::size_t k = 0; k < items.size(); ++k) {
    for (const auto &[feature, value] : bundles.at(output[k]).assignments) {
      items[k].Set(feature, value);
    }
  }
}

}  // namespace

std::vector<SymbolId> EncodeSymbols(const SymbolTable &symbols,
                                    std::span<const std::string> names) {
  std::vector<SymbolId> out;
  out.reserve(names.size());
  for (std::size_t k = 0; k < names.size(); ++k) {
    auto id = symbols.Find(names[k]);
    if (!id || !symbols.IsInput(*id)) throw UnknownSymbol(names[k], k);
    out.push_back(*id);
  }
  return out;
}

Output ApplyStaged(const CompiledRuleset &compiled, std::span<const SymbolId> input,
                   TraceRecord *trace) {
  for (std::size_t k = 0; k < input.size(); ++k) {
    SymbolId a = input[k];
    if (a < 0 || static_cast<std::size_t>(a) >= compiled.symbols.size() ||
        !compiled.symbols.IsInput(a)) {
      throw UnknownSymbol(a == kEpsilon ? "-" : std::to_string(a), k);
    }
  }
  Output s(input.begin(), input.end());
  for (const CompiledRule &rule : compiled.rules) {
    s = ApplyDfst(rule.pre_mark, s, Direction::kReversed);
    if (trace) trace->snapshots.push_back({"pre_mark " + std::to_string(rule.index), s});
    s = ApplyDfst(rule.check_left_context, s, Direction::kForward);
    if (trace) {
      trace->snapshots.push_back({"check_left_cxt " + std::to_string(rule.index), s});
    }
  }
  Output out;
  try {
    out = ApplyDfst(compiled.rewrite, s, Direction::kForward);
  } catch (const StuckState &e) {
    throw NoMarkerAtPosition(CountInputSymbols(compiled.symbols, s, e.position()));
  }
  if (trace) {
    trace->consumed = ConsumedMarkers(compiled, s);
    trace->snapshots.push_back({"rewrite", out});
  }
  return out;
}

std::vector<std::vector<bool>> OracleSurvivors(const RuleSet &rules,
                                               std::span<const SymbolId> input) {
  const std::size_t n = input.size();
  const std::size_t num_rules = rules.rules.size();
  std::vector<std::vector<bool>> survives(num_rules, std::vector<bool>(n + 1, false));
  for (std::size_t i = 0; i < num_rules; ++i) {
    const Rule &rule = rules.rules[i];
    const std::size_t len = rule.focus_len;
    auto focus = PatternMatchPositions(CompileRegex(rule.focus, rules.input_alphabet), input);
    auto left = PatternMatchPositions(CompileRegex(rule.left, rules.input_alphabet), input);
    auto right = PatternMatchPositions(CompileRegex(rule.right, rules.input_alphabet), input);
    std::vector<bool> left_ends(n + 1, false);
    std::vector<bool> right_starts(n + 1, false);
    for (const auto &[b, e] : left) left_ends[e] = true;
    for (const auto &[b, e] : right) right_starts[b] = true;
    for (std::size_t p = 0; p + len <= n; ++p) {
      if (!focus.count({p, p + len})) continue;
      if (!left_ends[p] || !right_starts[p + len]) continue;
      bool blocked = false;
      for (std::size_t j = 0; j < i && !blocked; ++j) {
        for (std::size_t q = p + 1; q < p + len; ++q) {
          if (survives[j][q]) {
            blocked = true;
            break;
          }
        }
      }
      survives[i][p] = !blocked;
    }
  }
  return survives;
}

Output OracleApply(const RuleSet &rules, std::span<const SymbolId> input) {
  const std::size_t n = input.size();
  const std::size_t num_rules = rules.rules.size();
  auto survives = OracleSurvivors(rules, input);
  Output out;
  std::size_t p = 0;
  while (p < n) {
    std::size_t chosen = num_rules;
    for (std::size_t i = 0; i < num_rules; ++i) {
      if (survives[i][p]) {
        chosen = i;
        break;
      }
    }
    if (chosen == num_rules) throw NoMarkerAtPosition(p);
    const Rule &rule = rules.rules[chosen];
    out.insert(out.end(), rule.psi.begin(), rule.psi.end());
    p += rule.focus_len;
  }
  return out;
}

std::vector<Item> ApplyItems(const CompiledRuleset &compiled, std::span<const Item> items) {
  if (!compiled.schema) throw Error("ApplyItems needs an item-mode rule set");
  Output encoded;
  for (const Item &item : items) {
    auto symbols = EncodeItem(*compiled.schema, item);
    encoded.insert(encoded.end(), symbols.begin(), symbols.end());
  }
  Output output = ApplyStaged(compiled, encoded);
  std::vector<Item> result(items.begin(), items.end());
  ApplyBundles(compiled.bundles, output, result);
  return result;
}

std::vector<Item> OracleApplyItems(const RuleSet &rules, std::span<const Item> items) {
  if (!rules.schema) throw Error("OracleApplyItems needs an item-mode rule set");
  Output encoded;
  for (const Item &item : items) {
    auto symbols = EncodeItem(*rules.schema, item);
    encoded.insert(encoded.end(), symbols.begin(), symbols.end());
  }
  Output output = OracleApply(rules, encoded);
  std::vector<Item> result(items.begin(), items.end());
  ApplyBundles(rules.bundles, output, result);
  return result;
}

}  // namespace rulefst
