#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rulefst/error.h"
#include "rulefst/pipeline.h"
#include "rulefst/text_io.h"
#include "support/oracles.h"

#ifndef RULEFST_RULES_DIR
#define RULEFST_RULES_DIR "rules"
#endif

namespace rulefst {
namespace {

using testing::Rng;

std::string ReadRules(const std::string &name) {
  std::ifstream in(std::string(RULEFST_RULES_DIR) + "/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Output Tokens(const SymbolTable &symbols, const std::string &text) {
  Output out;
  std::istringstream in(text);
  for (std::string t; in >> t;) out.push_back(*symbols.Find(t));
  return out;
}

const char *kOverlap = "/ a b / -> X ;\n/ b / -> Y ;\n";

TEST_CASE("Spanish examples") {
  std::string text = ReadRules("spanish_c.rules");
  CompiledRuleset c = CompileRulesText(text, {.complete_with_identity = true});
  RuleSet rules = LoadRuleSet(text, true);
  const std::vector<std::pair<std::string, std::string>> golden = {
      {"a s c i e n d a", "a s i e n d a"},
      {"c e n a r", "s e n a r"},
      {"o c h o", "o ch o"},
      {"c a s a", "k a s a"},
  };
  for (const auto &[in, out] : golden) {
    CHECK(ApplyLine(c, in) == out);
    CHECK(OracleLine(rules, in) == out);
  }
}

TEST_CASE("overlapping rule pair") {
  CompiledRuleset c = CompileRulesText(kOverlap, {.complete_with_identity = true});
  RuleSet rules = LoadRuleSet(kOverlap, true);
  for (const auto &[in, out] : std::vector<std::pair<std::string, std::string>>{
           {"a b", "X"}, {"b", "Y"}, {"b a b", "Y X"}, {"a", "a"}}) {
    CHECK(ApplyLine(c, in) == out);
    CHECK(OracleLine(rules, in) == out);
  }
  TraceRecord trace;
  ApplyStaged(c, Tokens(c.symbols, "a b"), &trace);
  REQUIRE(trace.snapshots.size() == 2 * c.rules.size() + 1);
  CHECK(trace.snapshots[3].stage == "check_left_cxt 2");
  CHECK(c.symbols.Render(trace.snapshots[3].symbols) == "<1 a <2 b");
  CHECK(trace.consumed == std::vector<std::size_t>{1});
}

TEST_CASE("a lower-priority focus never fires across an earlier marker") {
  const char *text = "/ b / -> Y ;\n/ a b / -> X ;\n";
  CompiledRuleset c = CompileRulesText(text, {.complete_with_identity = true});
  RuleSet rules = LoadRuleSet(text, true);
  CHECK(ApplyLine(c, "a b") == OracleLine(rules, "a b"));
  CHECK(ApplyLine(c, "a b") == "a Y");
}

TEST_CASE("identity rules return the input") {
  CompiledRuleset c = CompileRulesText("%alphabet a b c\n", {.complete_with_identity = true});
  CHECK(ApplyLine(c, "c a b b a") == "c a b b a");
}

TEST_CASE("runtime errors") {
  CompiledRuleset c = CompileRulesText("%alphabet a b\n/ a / -> X ;\n", {.require_total = false});
  RuleSet rules = LoadRuleSet("%alphabet a b\n/ a / -> X ;\n");
  try {
    ApplyLine(c, "a a b a");
    FAIL("expected NoMarkerAtPosition");
  } catch (const NoMarkerAtPosition &e) {
    CHECK(e.position() == 2);
  }
  try {
    OracleLine(rules, "a a b a");
    FAIL("expected NoMarkerAtPosition");
  } catch (const NoMarkerAtPosition &e) {
    CHECK(e.position() == 2);
  }
  try {
    ApplyLine(c, "a q");
    FAIL("expected UnknownSymbol");
  } catch (const UnknownSymbol &e) {
    CHECK(e.position() == 1);
  }
  // Output-only and marker symbols are not valid input.
  CHECK_THROWS_AS(ApplyLine(c, "X"), UnknownSymbol);
  CHECK_THROWS_AS(ApplyLine(c, "<1"), UnknownSymbol);
}

TEST_CASE("homograph example") {
  std::string text = ReadRules("suspects.rules");
  CompiledRuleset c = CompileRulesText(text, {.complete_with_identity = true});
  RuleSet rules = LoadRuleSet(text, true);
  auto sequences = ParseItemSequences(
      "name=the pos=dt\nname=terror pos=nn\nname=suspects pos=vbz\nname=that pos=in\n"
      "name=were pos=vbd\nname=in pos=in\nname=court pos=nn\n\n"
      "name=suspects pos=nns\nname=that pos=in\n\n"
      "name=suspects\n\n"
      "name=that\nname=suspects\n");
  REQUIRE(sequences.size() == 4);
  std::vector<std::vector<Item>> results;
  for (const auto &items : sequences) {
    auto staged = ApplyItems(c, items);
    CHECK(staged == OracleApplyItems(rules, items));
    REQUIRE(staged.size() == items.size());
    results.push_back(staged);
  }
  CHECK(results[0][2].Get("sense") == "1");
  for (std::size_t k = 0; k < 7; ++k) {
    if (k != 2) CHECK_FALSE(results[0][k].Get("sense"));
    CHECK(results[0][k].Get("name") == sequences[0][k].Get("name"));
  }
  CHECK(results[1][0].Get("sense") == "2");
  CHECK(results[2][0].Get("sense") == "1");
  CHECK(results[3][1].Get("sense") == "2");
  CHECK_FALSE(results[3][0].Get("sense"));
}

TEST_CASE("multi-item foci write bundles positionally") {
  const char *text = "%mode item\n/ [pos=d] [pos=n] / -> [np=b] [np=e] ;\n/ [pos=n] / -> [np=s] ;\n";
  CompiledRuleset c = CompileRulesText(text, {.complete_with_identity = true});
  std::vector<Item> items = {{{"pos", "d"}}, {{"pos", "n"}}, {{"pos", "n"}}, {{"pos", "v"}}};
  auto out = ApplyItems(c, items);
  CHECK(out[0].Get("np") == "b");
  CHECK(out[1].Get("np") == "e");
  CHECK(out[2].Get("np") == "s");
  CHECK_FALSE(out[3].Get("np"));
  // A short right-hand side is padded with empty bundles.
  const char *padded = "%mode item\n/ [pos=d] [pos=n] / -> [np=b] ;\n";
  CompiledRuleset p = CompileRulesText(padded, {.complete_with_identity = true});
  auto out2 = ApplyItems(p, items);
  CHECK(out2[0].Get("np") == "b");
  CHECK_FALSE(out2[1].Get("np"));
}

TEST_CASE("item features overwrite in place") {
  CompiledRuleset c = CompileRulesText("%mode item\n/ [f=a] / -> [g=new] ;\n",
                                       {.complete_with_identity = true});
  auto out = ApplyItems(c, std::vector<Item>{{{"g", "old"}, {"f", "a"}}});
  CHECK(out[0].features() ==
        std::vector<std::pair<std::string, std::string>>{{"g", "new"}, {"f", "a"}});
}

// ---- properties ----

struct RandomCase {
  std::string text;
  std::vector<std::string> inputs;
};

RandomCase MakeCase(Rng &rng) {
  static const std::vector<std::string> letters = {"a", "b", "c", "d"};
  std::vector<std::string> alphabet(letters.begin(), letters.begin() + rng.Uniform(2, 4));
  RandomCase rc;
  rc.text = testing::RandomRuleFile(rng, alphabet);
  for (int k = 0; k < 8; ++k) {
    std::string line;
    for (int n = rng.Uniform(0, 10); n > 0; --n) line += rng.Pick(alphabet) + " ";
    rc.inputs.push_back(line);
  }
  return rc;
}

TEST_CASE("property: staged, oracle, brute force and composed agree") {
  Rng rng(5001);
  int pairs = 0;
  int rulesets = 0;
  while (pairs < 3000) {
    RandomCase rc = MakeCase(rng);
    CompiledRuleset c;
    try {
      c = CompileRulesText(rc.text, {.complete_with_identity = true, .compose = true});
    } catch (const FocusNotFixedLength &) {
      continue;
    }
    ++rulesets;
    RuleSet rules = LoadRuleSet(rc.text, true);
    CAPTURE(rc.text);
    for (const std::string &line : rc.inputs) {
      CAPTURE(line);
      Output input = EncodeSymbols(c.symbols, SplitInputLine(line, c.mode, false));
      TraceRecord trace;
      Output staged = ApplyStaged(c, input, &trace);
      REQUIRE(staged == OracleApply(rules, input));
      auto brute = testing::BruteRewrite(rules, input);
      REQUIRE(brute);
      REQUIRE(staged == *brute);
      REQUIRE(ApplyFunctional(*c.composed, input) == staged);

      // Marker-strip identity and marker soundness.
      auto survivors = OracleSurvivors(rules, input);
      for (std::size_t k = 0; k + 1 < trace.snapshots.size(); ++k) {
        Output stripped;
        for (SymbolId x : trace.snapshots[k].symbols) {
          if (!c.symbols.IsMarker(x)) stripped.push_back(x);
        }
        REQUIRE(stripped == input);
      }
      const Output &marked = trace.snapshots[trace.snapshots.size() - 2].symbols;
      std::vector<std::vector<std::size_t>> at(input.size() + 1);
      std::size_t pos = 0;
      for (SymbolId x : marked) {
        if (c.symbols.IsMarker(x)) {
          at[pos].push_back(static_cast<std::size_t>(std::stoul(c.symbols.Name(x).substr(1))));
        } else {
          ++pos;
        }
      }
      for (std::size_t p = 0; p <= input.size(); ++p) {
        REQUIRE(std::is_sorted(at[p].begin(), at[p].end()));
        for (std::size_t i = 0; i < c.rules.size(); ++i) {
          bool present = std::count(at[p].begin(), at[p].end(), i + 1) > 0;
          REQUIRE(present == survivors[i][p]);
        }
      }
      // The rewrite consumes the lowest marker at each step.
      std::size_t step = 0;
      for (std::size_t p = 0; p < input.size(); ++step) {
        REQUIRE(step < trace.consumed.size());
        REQUIRE(!at[p].empty());
        REQUIRE(trace.consumed[step] == at[p].front());
        p += c.rules[trace.consumed[step] - 1].focus_len;
      }
      REQUIRE(step == trace.consumed.size());
      ++pairs;
    }
  }
  MESSAGE(pairs << " pairs over " << rulesets << " rule sets");
  CHECK(pairs >= 1000);
}

TEST_CASE("property: apply_items keeps item count and order") {
  Rng rng(5002);
  std::string text = ReadRules("suspects.rules");
  CompiledRuleset c = CompileRulesText(text, {.complete_with_identity = true});
  RuleSet rules = LoadRuleSet(text, true);
  const std::vector<std::string> names = {"that", "suspects", "terror", "the", "dog"};
  const std::vector<std::string> tags = {"dt", "cd", "nn", "vbz"};
  for (int round = 0; round < 300; ++round) {
    std::vector<Item> items;
    for (int k = rng.Uniform(0, 8); k > 0; --k) {
      Item item;
      if (rng.Coin(0.9)) item.Set("name", rng.Pick(names));
      if (rng.Coin(0.7)) item.Set("pos", rng.Pick(tags));
      items.push_back(item);
    }
    auto out = ApplyItems(c, items);
    REQUIRE(out == OracleApplyItems(rules, items));
    REQUIRE(out.size() == items.size());
    for (std::size_t k = 0; k < items.size(); ++k) {
      for (const auto &[f, v] : items[k].features()) REQUIRE(out[k].Get(f) == v);
    }
  }
}

}  // namespace
}  // namespace rulefst
