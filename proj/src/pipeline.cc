#include "rulefst/pipeline.h"

#include <sstream>

#include "rulefst/error.h"
#include "rulefst/rule_file.h"
#include "rulefst/text_io.h"

namespace rulefst {
namespace {

std::string Names(const SymbolTable &symbols, std::span<const SymbolId> ids) {
  std::string out;
  for (SymbolId id : ids) {
    if (!out.empty()) out += ' ';
    out += symbols.Name(id);
  }
  return out;
}

}  // namespace

CompiledRuleset CompileRulesText(std::string_view text, const CompileOptions &options,
                                 std::optional<Mode> mode) {
  return CompileRuleset(ResolveRules(ParseRuleFile(text), mode), options);
}

RuleSet LoadRuleSet(std::string_view text, bool complete_with_identity,
                    std::optional<Mode> mode) {
  RuleSet rules = ResolveRules(ParseRuleFile(text), mode);
  if (complete_with_identity) CompleteWithIdentity(rules);
  return rules;
}

std::string ApplyLine(const CompiledRuleset &compiled, std::string_view line,
                      bool split_chars) {
  auto names = SplitInputLine(line, compiled.mode, split_chars);
  auto input = EncodeSymbols(compiled.symbols, names);
  return JoinOutput(compiled.symbols, ApplyStaged(compiled, input));
}

std::string OracleLine(const RuleSet &rules, std::string_view line, bool split_chars) {
  auto names = SplitInputLine(line, rules.mode, split_chars);
  auto input = EncodeSymbols(rules.symbols, names);
  return JoinOutput(rules.symbols, OracleApply(rules, input));
}

Output ApplyComposed(const CompiledRuleset &compiled, std::span<const SymbolId> input) {
  if (!compiled.composed) throw Error("rule set was compiled without composition");
  return ApplyFunctional(*compiled.composed, input);
}

std::vector<StageSize> StageSizes(const CompiledRuleset &compiled) {
  std::vector<StageSize> sizes;
  for (const CompiledRule &rule : compiled.rules) {
    std::string index = std::to_string(rule.index);
    sizes.push_back({"pre_mark " + index, rule.pre_mark.NumStates(),
                     rule.pre_mark.NumTransitions()});
    sizes.push_back({"check_left_cxt " + index, rule.check_left_context.NumStates(),
                     rule.check_left_context.NumTransitions()});
  }
  sizes.push_back({"rewrite", compiled.rewrite.NumStates(), compiled.rewrite.NumTransitions()});
  if (compiled.composed) {
    sizes.push_back(
        {"composed", compiled.composed->NumStates(), compiled.composed->NumArcs()});
  }
  return sizes;
}

std::string InspectText(const CompiledRuleset &compiled) {
  std::ostringstream os;
  std::size_t inputs = compiled.symbols.WithKind(kInputSymbol).size();
  std::size_t outputs = compiled.symbols.WithKind(kOutputSymbol).size();
  std::size_t markers = compiled.symbols.WithKind(kMarkerSymbol).size();
  os << "mode " << ModeName(compiled.mode) << "\n";
  os << "symbols " << compiled.symbols.size() << " (input " << inputs << ", output "
     << outputs << ", marker " << markers << ")\n";
  if (compiled.schema) {
    for (const FeatureInfo &f : compiled.schema->features()) {
      os << "feature " << f.name << " values " << f.values.size() << " + #\n";
    }
  }
  for (const CompiledRule &rule : compiled.rules) {
    os << "rule " << rule.index << (rule.generated ? " (generated)" : "") << "\t"
       << rule.text << "\n";
  }
  std::size_t states = 0;
  std::size_t transitions = 0;
  for (const StageSize &stage : StageSizes(compiled)) {
    os << "stage " << stage.name << "\tstates " << stage.states << "\ttransitions "
       << stage.transitions << "\n";
    if (stage.name != "composed") {
      states += stage.states;
      transitions += stage.transitions;
    }
  }
  os << "staged total\tstates " << states << "\ttransitions " << transitions << "\n";
  return os.str();
}

std::string TraceText(const CompiledRuleset &compiled, std::span<const SymbolId> input,
                      const TraceRecord &trace) {
  std::ostringstream os;
  os << "input\t" << Names(compiled.symbols, input) << "\n";
  for (const auto &snapshot : trace.snapshots) {
    os << snapshot.stage << "\t" << Names(compiled.symbols, snapshot.symbols) << "\n";
  }
  os << "consumed";
  for (std::size_t index : trace.consumed) os << ' ' << index;
  os << "\n";
  return os.str();
}

}  // namespace rulefst
