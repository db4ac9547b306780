#include "rulefst/compiler.h"

#include <algorithm>
#include <set>

#include "rulefst/error.h"

namespace rulefst {
namespace {

std::vector<SymbolId> Merge(std::span<const SymbolId> a, std::span<const SymbolId> b) {
  std::vector<SymbolId> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void CheckDisjoint(const Dfsa &beta, std::span<const SymbolId> markers) {
  std::set<SymbolId> marker_set(markers.begin(), markers.end());
  for (std::size_t q = 0; q < beta.NumStates(); ++q) {
    for (const auto &[label, target] : beta.Transitions(static_cast<StateId>(q))) {
      if (marker_set.count(label)) {
        throw Error("marker " + std::to_string(label) +
                    " is also a symbol of the pattern alphabet");
      }
    }
  }
}

// Minimal complete acceptor for alphabet* . beta.
Dfsa SuffixMatcher(const Dfsa &beta, std::span<const SymbolId> alphabet) {
  Fst pattern = Concat(ToFst(Universal(alphabet)), ToFst(beta));
  return Complete(Optimize(pattern), alphabet);
}

}  // namespace

Dfsa AcceptIgnoring(const Dfsa &beta, std::span<const SymbolId> markers) {
  CheckDisjoint(beta, markers);
  Dfsa out = beta;
  for (std::size_t q = 0; q < out.NumStates(); ++q) {
    for (SymbolId m : markers) out.SetTransition(static_cast<StateId>(q), m, static_cast<StateId>(q));
  }
  return out;
}

Fst AcceptIgnoringNonfin(const Dfsa &beta, std::span<const SymbolId> markers) {
  CheckDisjoint(beta, markers);
  Fst out;
  const std::size_t n = beta.NumStates();
  for (std::size_t q = 0; q < n; ++q) out.AddState();
  auto add_loops = [&](StateId q) {
    for (SymbolId m : markers) out.AddArc(q, FstArc{m, {}, q});
  };
  for (std::size_t i = 0; i < n; ++i) {
    auto q = static_cast<StateId>(i);
    if (!beta.IsFinal(q)) {
      for (const auto &[label, target] : beta.Transitions(q)) {
        out.AddArc(q, FstArc{label, {}, target});
      }
      add_loops(q);
      continue;
    }
    out.SetFinal(q);
    StateId split = out.AddState();
    out.AddArc(q, FstArc{kEpsilon, {}, split});
    for (const auto &[label, target] : beta.Transitions(q)) {
      out.AddArc(split, FstArc{label, {}, target});
    }
    add_loops(split);
  }
  if (beta.Initial() != kNoState) out.SetInitial(beta.Initial());
  return Trim(out);
}

Fst Replace(const Dfsa &beta, const Output &gamma) {
  Fst out;
  const std::size_t n = beta.NumStates();
  for (std::size_t q = 0; q < n; ++q) out.AddState();
  StateId final_state = out.AddState();
  for (std::size_t i = 0; i < n; ++i) {
    auto q = static_cast<StateId>(i);
    for (const auto &[label, target] : beta.Transitions(q)) {
      out.AddArc(q, FstArc{label, {}, target});
    }
    if (beta.IsFinal(q)) out.AddArc(q, FstArc{kEpsilon, gamma, final_state});
  }
  out.SetFinal(final_state);
  if (beta.Initial() != kNoState) out.SetInitial(beta.Initial());
  return Trim(out);
}

Fst MarkRegex(const Dfsa &beta, SymbolId marker, std::span<const SymbolId> alphabet) {
  const Dfsa matcher = SuffixMatcher(beta, alphabet);
  const Dfst id = IdentityOf(matcher);
  const std::size_t n = id.NumStates();
  Fst out;
  for (std::size_t q = 0; q < n; ++q) out.AddState();
  for (std::size_t i = 0; i < n; ++i) {
    auto q = static_cast<StateId>(i);
    StateId from = q;
    if (id.IsFinal(q)) {
      // Split q: the copy q' inherits q's transitions and is final.
      from = out.AddState();
      out.SetFinal(from);
      out.AddArc(q, FstArc{kEpsilon, {marker}, from});
    } else {
      out.SetFinal(q);
    }
    for (const auto &[label, arc] : id.Transitions(q)) {
      out.AddArc(from, FstArc{label, arc.output, arc.target});
    }
  }
  out.SetInitial(id.Initial());
  return Trim(out);
}

Dfst LeftContextFilter(const Dfsa &beta, SymbolId marker,
                       std::span<const SymbolId> alphabet) {
  Dfst out = IdentityOf(SuffixMatcher(beta, alphabet));
  for (std::size_t i = 0; i < out.NumStates(); ++i) {
    auto q = static_cast<StateId>(i);
    Output copy = out.IsFinal(q) ? Output{marker} : Output{};
    out.SetTransition(q, marker, q, std::move(copy));
  }
  for (std::size_t i = 0; i < out.NumStates(); ++i) {
    out.SetFinal(static_cast<StateId>(i));
  }
  return Trim(out);
}

RulePatterns CompilePatterns(const Rule &rule, std::span<const SymbolId> sigma) {
  return RulePatterns{CompileRegex(rule.left, sigma), CompileRegex(rule.focus, sigma),
                      CompileRegex(rule.right, sigma)};
}

Dfst BuildPreMark(const RulePatterns &patterns, SymbolId marker,
                  std::span<const SymbolId> sigma, std::span<const SymbolId> earlier) {
  Dfsa right = AcceptIgnoring(patterns.right, earlier);
  Dfsa pattern = Optimize(Concat(ToFst(patterns.focus), ToFst(right)));
  Dfsa reversed = Optimize(Reverse(ToFst(pattern)));
  std::vector<SymbolId> extended = Merge(sigma, earlier);
  return ToDfst(MarkRegex(reversed, marker, extended));
}

Dfst BuildCheckLeftContext(const RulePatterns &patterns, SymbolId marker,
                           std::span<const SymbolId> sigma,
                           std::span<const SymbolId> earlier) {
  std::vector<SymbolId> extended = Merge(sigma, earlier);
  return LeftContextFilter(AcceptIgnoring(patterns.left, earlier), marker, extended);
}

Dfst BuildRewrite(std::span<const RewriteFocus> foci) {
  Fst alternatives;
  for (std::size_t i = 0; i < foci.size(); ++i) {
    std::vector<SymbolId> later;
    for (std::size_t j = i; j < foci.size(); ++j) later.push_back(foci[j].marker);
    Fst marked = Concat(ToFst(SymbolAcceptor(foci[i].marker)),
                        AcceptIgnoringNonfin(foci[i].focus, later));
    alternatives = Union(alternatives, Replace(Optimize(marked), foci[i].psi));
  }
  try {
    return ToDfst(Closure(alternatives));
  } catch (const CompileError &) {
    throw;
  } catch (const Error &e) {
    throw CompileError(std::string("internal error: rewrite transducer is not "
                                   "deterministic: ") + e.what());
  }
}

std::string MarkerName(std::size_t index) { return "<" + std::to_string(index); }

CompiledRuleset CompileRuleset(RuleSet rules, const CompileOptions &options) {
  if (options.complete_with_identity) CompleteWithIdentity(rules);
  if (options.require_total) {
    auto uncovered = UncoveredUnits(rules);
    if (!uncovered.empty()) {
      std::string list;
      for (const auto &u : uncovered) list += (list.empty() ? "" : ", ") + u;
      throw NonTotalRuleset("rule set is not total; no default rule covers: " + list +
                                " (add default rules or use --complete-with-identity)",
                            uncovered);
    }
  }

  CompiledRuleset compiled;
  compiled.mode = rules.mode;
  compiled.symbols = rules.symbols;
  compiled.schema = rules.schema;
  compiled.bundles = rules.bundles;
  const std::vector<SymbolId> &sigma = rules.input_alphabet;

  std::vector<SymbolId> markers;
  for (const Rule &rule : rules.rules) {
    try {
      markers.push_back(compiled.symbols.Add(MarkerName(rule.index), kMarkerSymbol));
    } catch (const Error &e) {
      throw CompileError(e.what());
    }
  }

  std::vector<RewriteFocus> foci;
  for (std::size_t i = 0; i < rules.rules.size(); ++i) {
    const Rule &rule = rules.rules[i];
    RulePatterns patterns = CompilePatterns(rule, sigma);
    std::span<const SymbolId> earlier(markers.data(), i);
    CompiledRule c;
    c.index = rule.index;
    c.marker = markers[i];
    c.focus_len = rule.focus_len;
    c.psi = rule.psi;
    c.text = rule.text;
    c.generated = rule.generated;
    c.pre_mark = BuildPreMark(patterns, c.marker, sigma, earlier);
    c.check_left_context = BuildCheckLeftContext(patterns, c.marker, sigma, earlier);
    compiled.rules.push_back(std::move(c));
    foci.push_back(RewriteFocus{std::move(patterns.focus), markers[i], rule.psi});
  }
  compiled.rewrite = BuildRewrite(foci);
  if (options.compose) compiled.composed = ComposeStages(compiled);
  return compiled;
}

Fst ComposeStages(const CompiledRuleset &compiled) {
  std::optional<Fst> result;
  auto push = [&](const Fst &stage) {
    result = result ? Compose(*result, stage) : Trim(stage);
  };
  for (const CompiledRule &rule : compiled.rules) {
    push(Reverse(ToFst(rule.pre_mark)));
    push(ToFst(rule.check_left_context));
  }
  push(ToFst(compiled.rewrite));
  return *result;
}

}  // namespace rulefst
