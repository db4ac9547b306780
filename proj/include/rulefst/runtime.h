#ifndef RULEFST_RUNTIME_H_
#define RULEFST_RUNTIME_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rulefst/compiler.h"
#include "rulefst/features.h"
#include "rulefst/rules.h"

namespace rulefst {

// Intermediate strings of one staged run.
struct TraceRecord {
  struct Snapshot {
    std::string stage;  // "pre_mark 1", "check_left_cxt 1", ..., "rewrite"
    Output symbols;
  };
  // 2n + 1 entries for n rules.
  std::vector<Snapshot> snapshots;
  // Rule index whose marker the rewrite consumed, one per rewrite step.
  std::vector<std::size_t> consumed;
};

// Maps names to input symbols.  Throws UnknownSymbol for names outside Sigma.
std::vector<SymbolId> EncodeSymbols(const SymbolTable &symbols,
                                    std::span<const std::string> names);

// For each rule: pre_mark right to left, then check_left_cxt left to right;
// finally rewrite.  Linear in rules x input length.  Throws UnknownSymbol and
// NoMarkerAtPosition.
Output ApplyStaged(const CompiledRuleset &compiled, std::span<const SymbolId> input,
                   TraceRecord *trace = nullptr);

// survivors[i][p]: rule i + 1 places a surviving marker before input[p] (see
// OracleApply).
std::vector<std::vector<bool>> OracleSurvivors(const RuleSet &rules,
                                               std::span<const SymbolId> input);

// Reference interpreter built only on PatternMatchPositions.  Rule i
// survives at p iff its focus matches input[p, p + len) with no surviving
// higher-priority position strictly inside, some left-context match ends at
// p and some right-context match starts at p + len.  Rewriting then scans
// left to right taking the lowest surviving rule index at each position.
Output OracleApply(const RuleSet &rules, std::span<const SymbolId> input);

// Item mode: encodes each item, runs ApplyStaged, and writes the bundle
// produced for each position back onto the corresponding item.
std::vector<Item> ApplyItems(const CompiledRuleset &compiled, std::span<const Item> items);

// Same as ApplyItems but through OracleApply.
std::vector<Item> OracleApplyItems(const RuleSet &rules, std::span<const Item> items);

}  // namespace rulefst

#endif  // RULEFST_RUNTIME_H_
