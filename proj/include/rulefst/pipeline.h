#ifndef RULEFST_PIPELINE_H_
#define RULEFST_PIPELINE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rulefst/compiler.h"
#include "rulefst/runtime.h"

namespace rulefst {

// Parse, resolve and compile rule-file text.
CompiledRuleset CompileRulesText(std::string_view text, const CompileOptions &options = {},
                                 std::optional<Mode> mode = std::nullopt);

// Parse and resolve rule-file text for the reference interpreter.
RuleSet LoadRuleSet(std::string_view text, bool complete_with_identity = false,
                    std::optional<Mode> mode = std::nullopt);

// One line of char or token input to one line of space-joined output.
std::string ApplyLine(const CompiledRuleset &compiled, std::string_view line,
                      bool split_chars = false);
std::string OracleLine(const RuleSet &rules, std::string_view line, bool split_chars = false);

// Runs the composed transducer instead of the staged pipeline.  Throws Error
// if the rule set was compiled without --compose.
Output ApplyComposed(const CompiledRuleset &compiled, std::span<const SymbolId> input);

struct StageSize {
  std::string name;
  std::size_t states = 0;
  std::size_t transitions = 0;
};

std::vector<StageSize> StageSizes(const CompiledRuleset &compiled);
std::string InspectText(const CompiledRuleset &compiled);
std::string TraceText(const CompiledRuleset &compiled, std::span<const SymbolId> input,
                      const TraceRecord &trace);

}  // namespace rulefst

#endif  // RULEFST_PIPELINE_H_
