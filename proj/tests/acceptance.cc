// Acceptance report: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "rulefst/algorithms.h"
#include "rulefst/compiler.h"
#include "rulefst/error.h"
#include "rulefst/pipeline.h"
#include "rulefst/regex.h"
#include "rulefst/text_io.h"
#include "support/oracles.h"

#ifndef RULEFST_RULES_DIR
#define RULEFST_RULES_DIR "rules"
#endif

namespace rulefst {
namespace {

using Clock = std::chrono::steady_clock;
using testing::AllStrings;
using testing::Rng;

std::string ReadRules(const std::string &name) {
  std::ifstream in(std::string(RULEFST_RULES_DIR) + "/" + name);
  if (!in) throw Error("cannot read " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Result {
  bool pass = true;
  std::string detail;

  void Expect(bool ok, const std::string &what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

Result Golden() {
  Result r;
  auto start = Clock::now();
  CompiledRuleset c =
      CompileRulesText(ReadRules("spanish_c.rules"), {.complete_with_identity = true});
  const std::pair<const char *, const char *> cases[] = {
      {"a s c i e n d a", "a s i e n d a"},
      {"c e n a r", "s e n a r"},
      {"o c h o", "o ch o"},
  };
  for (const auto &[in, out] : cases) {
    std::string got = ApplyLine(c, in);
    r.Expect(got == out, std::string(in) + " gave " + got);
  }
  double secs = Seconds(start);
  r.Expect(secs < 1.0, "took " + std::to_string(secs) + "s");
  if (r.pass) r.detail = "3 exact outputs in " + std::to_string(secs) + "s";
  return r;
}

Result Overlap() {
  Result r;
  CompiledRuleset c =
      CompileRulesText(ReadRules("overlap.rules"), {.complete_with_identity = true});
  Output ab = EncodeSymbols(c.symbols, SplitInputLine("ab", Mode::kChar, false));
  TraceRecord trace;
  Output out = ApplyStaged(c, ab, &trace);
  // Snapshot after the second rule's marking stage.
  const auto &after_rules = trace.snapshots[3];
  r.Expect(after_rules.stage == "check_left_cxt 2", "unexpected stage " + after_rules.stage);
  std::string marked = c.symbols.Render(after_rules.symbols);
  r.Expect(marked == "<1 a <2 b", "marked " + marked);
  std::string full = c.symbols.Render(trace.snapshots[trace.snapshots.size() - 2].symbols);
  r.Expect(JoinOutput(c.symbols, out) == "X", "ab gave " + JoinOutput(c.symbols, out));
  std::string b = ApplyLine(c, "b");
  r.Expect(b == "Y", "b gave " + b);
  if (r.pass) {
    r.detail = "after rule 2: <1 a <2 b; with identity default: " + full + "; ab -> X, b -> Y";
  }
  return r;
}

Result Acceptors() {
  Result r;
  constexpr SymbolId a = 0, hash = 1;
  const std::vector<SymbolId> sigma = {a};
  const std::vector<SymbolId> markers = {hash};
  Dfsa astar = CompileRegex(Regex::Star(Regex::Symbol(a)), sigma);
  Fst nonfin = AcceptIgnoringNonfin(astar, markers);
  Dfsa ignoring = AcceptIgnoring(astar, markers);
  r.Expect(testing::NfaAccepts(nonfin, Output{a, a, a, a}), "nonfin rejects aaaa");
  r.Expect(testing::NfaAccepts(nonfin, Output{hash, hash, a, hash, a, a}), "nonfin rejects ##a#aa");
  r.Expect(!testing::NfaAccepts(nonfin, Output{a, a, a, hash, hash, hash}), "nonfin accepts aaa###");
  r.Expect(ignoring.Accepts(Output{a, a, a, hash, hash, hash}), "ignoring rejects aaa###");
  if (r.pass) r.detail = "aaaa, ##a#aa accepted; aaa### rejected by nonfin, accepted by ignoring";
  return r;
}

Result Homograph() {
  Result r;
  CompiledRuleset c =
      CompileRulesText(ReadRules("suspects.rules"), {.complete_with_identity = true});
  auto seqs = ParseItemSequences(
      "name=the pos=dt\nname=terror pos=nn\nname=suspects pos=vbz\nname=that pos=in\n"
      "name=were pos=vbd\nname=in pos=in\nname=court pos=nn\n\n"
      "name=suspects\nname=that\n\n"
      "name=suspects\n");
  auto sentence = ApplyItems(c, seqs[0]);
  r.Expect(sentence.size() == 7, "item count changed");
  for (std::size_t k = 0; k < sentence.size(); ++k) {
    auto sense = sentence[k].Get("sense");
    if (k == 2) {
      r.Expect(sense == "1", "item 3 sense " + sense.value_or("unset"));
    } else {
      r.Expect(!sense, "item " + std::to_string(k + 1) + " got a sense");
    }
  }
  auto variant = ApplyItems(c, seqs[1]);
  r.Expect(variant[0].Get("sense") == "2", "suspects that: " + FormatItem(variant[0]));
  auto bare = ApplyItems(c, seqs[2]);
  r.Expect(bare[0].Get("sense") == "1", "bare suspects: " + FormatItem(bare[0]));
  if (r.pass) r.detail = "item 3 sense=1; suspects that -> sense=2; suspects -> sense=1";
  return r;
}

Result OracleEquivalence() {
  Result r;
  auto start = Clock::now();
  Rng rng(8001);
  const std::vector<std::string> letters = {"a", "b", "c", "d"};
  int pairs = 0;
  int rulesets = 0;
  int composed = 0;
  while (pairs < 2000) {
    std::vector<std::string> alphabet(letters.begin(), letters.begin() + rng.Uniform(2, 4));
    std::string text = testing::RandomRuleFile(rng, alphabet);
    CompiledRuleset c;
    try {
      c = CompileRulesText(text, {.complete_with_identity = true, .compose = rng.Coin(0.75)});
    } catch (const FocusNotFixedLength &) {
      continue;
    }
    ++rulesets;
    RuleSet rules = LoadRuleSet(text, true);
    for (int k = 0; k < 10; ++k) {
      Output input;
      for (int n = rng.Uniform(0, 10); n > 0; --n) {
        input.push_back(*c.symbols.Find(rng.Pick(alphabet)));
      }
      Output staged = ApplyStaged(c, input);
      r.Expect(staged == OracleApply(rules, input), "staged != oracle for " + text);
      auto brute = testing::BruteRewrite(rules, input);
      r.Expect(brute && *brute == staged, "staged != direct rewrite for " + text);
      if (c.composed) {
        r.Expect(ApplyFunctional(*c.composed, input) == staged, "composed != staged for " + text);
        ++composed;
      }
      ++pairs;
    }
  }
  double secs = Seconds(start);
  r.Expect(secs < 60.0, "took " + std::to_string(secs) + "s");
  if (r.pass) {
    r.detail = std::to_string(pairs) + " pairs over " + std::to_string(rulesets) +
               " rule sets (" + std::to_string(composed) + " also composed), 0 mismatches in " +
               std::to_string(secs) + "s";
  }
  return r;
}

std::uint64_t Power(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

Result Functionality() {
  Result r;
  std::uint64_t total = 0;
  for (const char *name : {"spanish_c.rules", "overlap.rules"}) {
    CompiledRuleset c =
        CompileRulesText(ReadRules(name), {.complete_with_identity = true, .compose = true});
    const std::vector<SymbolId> sigma = c.InputAlphabet();
    auto census = testing::FunctionalCensus(*c.composed, [&](std::size_t) { return sigma; }, 6);
    std::uint64_t expected = 0;
    for (std::size_t n = 0; n <= 6; ++n) expected += Power(sigma.size(), n);
    r.Expect(census.inputs == expected && census.single == expected,
             std::string(name) + ": some input lacks exactly one output");
    total += census.inputs;
  }
  CompiledRuleset c = CompileRulesText(ReadRules("suspects.rules"),
                                       {.complete_with_identity = true, .compose = true});
  const std::size_t k = c.UnitLength();
  std::vector<std::vector<SymbolId>> slots(k);
  std::uint64_t per_item = 1;
  for (std::size_t f = 0; f < k; ++f) {
    slots[f] = c.schema->feature(f).value_ids;
    slots[f].push_back(c.schema->feature(f).unseen);
    per_item *= slots[f].size();
  }
  auto census =
      testing::FunctionalCensus(*c.composed, [&](std::size_t p) { return slots[p % k]; }, 6 * k);
  std::uint64_t whole = 0;
  for (std::size_t n = 0; n <= 6; ++n) whole += Power(per_item, n);
  r.Expect(census.multiple == 0 && census.single == whole,
           "suspects.rules: some item sequence lacks exactly one output");
  total += whole;
  if (r.pass) {
    r.detail = std::to_string(total) +
               " inputs (all strings up to length 6; up to 6 whole items), one output each";
  }
  return r;
}

Result MachineAlgorithms() {
  Result r;
  Rng rng(8002);
  constexpr SymbolId a = 0, b = 1, c = 2, x = 3, y = 4;
  const std::vector<SymbolId> ab = {a, b};
  const std::vector<SymbolId> abc = {a, b, c};
  const std::vector<SymbolId> xy = {x, y};
  int checks = 0;
  for (int round = 0; round < 200; ++round) {
    std::vector<SymbolId> sigma(abc.begin(), abc.begin() + rng.Uniform(1, 3));
    Fst nfa = testing::RandomFst(rng, rng.Uniform(1, 6), sigma, sigma, 0.25, 0, true);
    Dfsa det = Determinize(nfa);
    Dfsa min = Minimize(det);
    for (const Output &s : AllStrings(sigma, 7)) {
      bool expected = testing::NfaAccepts(nfa, s);
      r.Expect(det.Accepts(s) == expected, "determinize changed the language");
      r.Expect(min.Accepts(s) == expected, "minimize changed the language");
      ++checks;
    }
    r.Expect(min.NumStates() == testing::BruteMinimalStates(det, sigma), "minimize not minimal");
  }
  for (int round = 0; round < 100; ++round) {
    Fst t = testing::RandomFst(rng, rng.Uniform(1, 5), ab, xy, 0.2, 2);
    Fst rev = Reverse(t);
    for (const Output &s : AllStrings(ab, 6)) {
      std::set<Output> expected;
      for (const Output &o : testing::RelationImage(t, s)) {
        expected.insert(Output(o.rbegin(), o.rend()));
      }
      r.Expect(testing::RelationImage(rev, Output(s.rbegin(), s.rend())) == expected,
               "reverse is not the reversed relation");
      ++checks;
    }
  }
  for (int round = 0; round < 100; ++round) {
    Fst t1 = testing::RandomFst(rng, rng.Uniform(1, 8), ab, xy, 0.2, 2);
    Fst t2 = testing::RandomFst(rng, rng.Uniform(1, 8), xy, abc, 0.2, 1);
    Fst composed = Compose(t1, t2);
    for (const Output &s : AllStrings(ab, 5)) {
      std::set<Output> expected;
      for (const Output &mid : testing::RelationImage(t1, s)) {
        auto image = testing::RelationImage(t2, mid);
        expected.insert(image.begin(), image.end());
      }
      r.Expect(testing::RelationImage(composed, s) == expected, "compose is not relational");
      ++checks;
    }
  }
  if (r.pass) {
    r.detail = std::to_string(checks) + " brute-force comparisons (determinize, minimize, " +
               "reverse, compose)";
  }
  return r;
}

int Run() {
  const std::pair<const char *, std::function<Result()>> criteria[] = {
      {"golden outputs of the Spanish c rules", Golden},
      {"marker trace of the overlapping rule pair", Overlap},
      {"accept_ignoring and accept_ignoring_nonfin", Acceptors},
      {"homograph disambiguation", Homograph},
      {"staged, oracle and composed agree on random rule sets", OracleEquivalence},
      {"corpus machines are functional", Functionality},
      {"machine algorithms match brute-force simulators", MachineAlgorithms},
  };
  int failed = 0;
  int index = 0;
  for (const auto &[name, check] : criteria) {
    ++index;
    Result r;
    try {
      r = check();
    } catch (const std::exception &e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (!r.pass) ++failed;
    std::printf("criterion %d: %s  %s (%s)\n", index, r.pass ? "PASS" : "FAIL", name,
                r.detail.c_str());
  }
  std::printf(
      "criterion 8: NOT REPRODUCIBLE  full-size grapheme-to-phoneme grammar and its machine size "
      "(rule set not available); covered by criteria 1-7\n");
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace rulefst

int main() { return rulefst::Run(); }
