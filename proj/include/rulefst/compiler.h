#ifndef RULEFST_COMPILER_H_
#define RULEFST_COMPILER_H_

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rulefst/algorithms.h"
#include "rulefst/features.h"
#include "rulefst/machine.h"
#include "rulefst/rules.h"

namespace rulefst {

// ---- Auxiliary constructions ----

// Accepts w iff deleting every marker of `markers` from w leaves a word of
// L(beta).  Adds a self-loop per marker on every state.  Throws Error if a
// marker is also a label of beta.
Dfsa AcceptIgnoring(const Dfsa &beta, std::span<const SymbolId> markers);

// Like AcceptIgnoring, but markers after the last symbol of the match are not
// accepted.  Each final state q is split into q (final, no marker loops) and
// a non-final q' that takes over q's transitions and the marker loops, with
// an epsilon arc q -> q'.
Fst AcceptIgnoringNonfin(const Dfsa &beta, std::span<const SymbolId> markers);

// Maps every word of L(beta) to gamma: beta's arcs output nothing and each
// final state gets an epsilon arc emitting gamma into a new final state.
Fst Replace(const Dfsa &beta, const Output &gamma);

// Inserts `marker` after every prefix of the input that ends with a match of
// beta (a type 1 marker transducer over `alphabet`).
Fst MarkRegex(const Dfsa &beta, SymbolId marker, std::span<const SymbolId> alphabet);

// Copies `marker` when the marker-free text before it ends with a match of
// beta and deletes it otherwise.  Other symbols pass through unchanged.
Dfst LeftContextFilter(const Dfsa &beta, SymbolId marker,
                       std::span<const SymbolId> alphabet);

// ---- Rule assembly ----

// Compiled lambda, phi and rho of one rule.
struct RulePatterns {
  Dfsa left;
  Dfsa focus;
  Dfsa right;
};

RulePatterns CompilePatterns(const Rule &rule, std::span<const SymbolId> sigma);

// Inserts `marker` before every match of phi . AcceptIgnoring(rho, earlier),
// where `earlier` are the markers of higher-priority rules.  The returned
// machine reads the string reversed: apply it with Direction::kReversed.
Dfst BuildPreMark(const RulePatterns &patterns, SymbolId marker,
                  std::span<const SymbolId> sigma,
                  std::span<const SymbolId> earlier);

// Deletes `marker` wherever lambda (markers of `earlier` ignored) does not
// end right before it.
Dfst BuildCheckLeftContext(const RulePatterns &patterns, SymbolId marker,
                           std::span<const SymbolId> sigma,
                           std::span<const SymbolId> earlier);

struct RewriteFocus {
  Dfsa focus;
  SymbolId marker = kEpsilon;
  Output psi;
};

// (Union_i Replace(<_i . AcceptIgnoringNonfin(phi_i, markers >= i), psi_i))*,
// made deterministic.  `foci` is in priority order.  Throws CompileError if
// the union cannot be made deterministic.
Dfst BuildRewrite(std::span<const RewriteFocus> foci);

// ---- Compiled rule sets ----

struct CompiledRule {
  std::size_t index = 0;
  SymbolId marker = kEpsilon;
  std::size_t focus_len = 0;
  Output psi;
  std::string text;
  bool generated = false;
  // Runs right-to-left (stored over reversed strings).
  Dfst pre_mark;
  Dfst check_left_context;

  bool operator==(const CompiledRule &other) const = default;
};

struct CompiledRuleset {
  Mode mode = Mode::kToken;
  SymbolTable symbols;
  std::optional<FeatureSchema> schema;
  std::map<SymbolId, AssignmentBundle> bundles;
  std::vector<CompiledRule> rules;
  Dfst rewrite;
  // pre_mark_1 . check_1 . ... . pre_mark_n . check_n . rewrite, if requested.
  std::optional<Fst> composed;

  std::vector<SymbolId> InputAlphabet() const {
    return symbols.WithKind(kInputSymbol);
  }
  std::size_t UnitLength() const { return schema ? schema->size() : 1; }

  bool operator==(const CompiledRuleset &other) const = default;
};

struct CompileOptions {
  bool complete_with_identity = false;
  bool compose = false;
  // When false, a non-total rule set compiles and fails at apply time with
  // NoMarkerAtPosition instead of NonTotalRuleset here.
  bool require_total = true;
};

// Marker for rule i is named "<i".
std::string MarkerName(std::size_t index);

// Throws FocusNotFixedLength (from ResolveRules), NonTotalRuleset, or
// CompileError.
CompiledRuleset CompileRuleset(RuleSet rules, const CompileOptions &options = {});

// Composes all stages into one transducer whose relation is the staged
// pipeline.
Fst ComposeStages(const CompiledRuleset &compiled);

}  // namespace rulefst

#endif  // RULEFST_COMPILER_H_
