#ifndef RULEFST_RULES_H_
#define RULEFST_RULES_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rulefst/features.h"
#include "rulefst/regex.h"
#include "rulefst/rule_file.h"
#include "rulefst/symbols.h"

namespace rulefst {

// lambda / phi / rho -> psi with priority `index` (1 is highest).
struct Rule {
  std::size_t index = 0;
  Regex left;
  Regex focus;
  Regex right;
  Output psi;
  // Length of every focus match, in symbols (K symbols per item in item mode).
  std::size_t focus_len = 0;
  // Canonical source text, for diagnostics and inspect output.
  std::string text;
  // Appended by CompleteWithIdentity rather than written by the user.
  bool generated = false;
};

struct RuleSet {
  Mode mode = Mode::kToken;
  SymbolTable symbols;
  // Sigma, ascending.
  std::vector<SymbolId> input_alphabet;
  std::optional<FeatureSchema> schema;
  // Output symbol -> assignments, item mode only.
  std::map<SymbolId, AssignmentBundle> bundles;
  std::vector<Rule> rules;

  // Symbols per input unit: 1, or K in item mode.
  std::size_t UnitLength() const { return schema ? schema->size() : 1; }
};

// Turns parsed rules into symbol-level rules.  `mode_override` replaces the
// file's effective mode.  Input symbols are interned in name order, then
// output symbols, so the numbering does not depend on rule order.  Throws
// ParseError for syntax that does not fit the mode and CompileError for
// semantic problems (variable-length or empty foci, oversize item RHS).
RuleSet ResolveRules(const RuleFile &file,
                     std::optional<Mode> mode_override = std::nullopt);

// Units (symbols, or encoded items in item mode) at which no rule is
// guaranteed to insert a marker.  A unit counts as covered when some rule
// with a single-unit focus accepts it and both contexts accept epsilon.
// Returns a readable name for each uncovered unit (at most one witness in
// item mode).
std::vector<std::string> UncoveredUnits(const RuleSet &rules);

// Appends /mu/ -> mu for every uncovered symbol (char and token mode), or a
// single /[]/ -> [] catch-all in item mode.
void CompleteWithIdentity(RuleSet &rules);

}  // namespace rulefst

#endif  // RULEFST_RULES_H_
