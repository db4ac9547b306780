// rulefst: compile rewrite rules to transducers and apply them.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rulefst/error.h"
#include "rulefst/fsttext.h"
#include "rulefst/pipeline.h"
#include "rulefst/ruleset_io.h"
#include "rulefst/text_io.h"

namespace {

using namespace rulefst;

constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitCompile = 3;
constexpr int kExitApply = 4;

class IoError : public Error {
 public:
  using Error::Error;
};

std::string ReadFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string ReadInput(const std::string &path, const std::string &text) {
  if (!text.empty()) return text;
  if (!path.empty() && path != "-") return ReadFile(path);
  return std::string(std::istreambuf_iterator<char>(std::cin), {});
}

std::vector<std::string> Lines(const std::string &text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::optional<Mode> ModeOption(const std::string &text) {
  if (text.empty()) return std::nullopt;
  return ParseMode(text);
}

struct InputOptions {
  std::string input;
  std::string text;
  bool split_chars = false;
};

void AddInputOptions(CLI::App *app, InputOptions &options) {
  app->add_option("--input,-i", options.input, "Input file (default: stdin)");
  app->add_option("--text,-t", options.text, "Literal input instead of a file");
  app->add_flag("--split-chars", options.split_chars,
                "Split each input line into single characters");
}

CompiledRuleset LoadCompiled(const std::string &path) {
  return DeserializeRuleset(ReadFile(path));
}

int RunApplyItems(const std::string &text, const auto &apply) {
  bool first = true;
  for (const auto &items : ParseItemSequences(text)) {
    if (!first) std::cout << "\n";
    first = false;
    std::cout << FormatItems(apply(items));
  }
  return 0;
}

int RunApply(const CompiledRuleset &compiled, const InputOptions &options, bool composed) {
  std::string text = ReadInput(options.input, options.text);
  if (compiled.mode == Mode::kItem) {
    return RunApplyItems(text, [&](const std::vector<Item> &items) {
      if (!composed) return ApplyItems(compiled, items);
      Output encoded;
      for (const Item &item : items) {
        auto symbols = EncodeItem(*compiled.schema, item);
        encoded.insert(encoded.end(), symbols.begin(), symbols.end());
      }
      Output output = ApplyComposed(compiled, encoded);
      std::vector<Item> result = items;
      for (std::size_t k = 0; k < result.size() && k < output.size(); ++k) {
        for (const auto &[f, v] : compiled.bundles.at(output[k]).assignments) {
          result[k].Set(f, v);
        }
      }
      return result;
    });
  }
  for (const std::string &line : Lines(text)) {
    if (composed) {
      auto input =
          EncodeSymbols(compiled.symbols, SplitInputLine(line, compiled.mode, options.split_chars));
      std::cout << JoinOutput(compiled.symbols, ApplyComposed(compiled, input)) << "\n";
    } else {
      std::cout << ApplyLine(compiled, line, options.split_chars) << "\n";
    }
  }
  return 0;
}

int RunTrace(const CompiledRuleset &compiled, const InputOptions &options) {
  std::string text = ReadInput(options.input, options.text);
  std::vector<Output> inputs;
  if (compiled.mode == Mode::kItem) {
    for (const auto &items : ParseItemSequences(text)) {
      Output encoded;
      for (const Item &item : items) {
        auto symbols = EncodeItem(*compiled.schema, item);
        encoded.insert(encoded.end(), symbols.begin(), symbols.end());
      }
      inputs.push_back(std::move(encoded));
    }
  } else {
    for (const std::string &line : Lines(text)) {
      inputs.push_back(EncodeSymbols(
          compiled.symbols, SplitInputLine(line, compiled.mode, options.split_chars)));
    }
  }
  bool first = true;
  for (const Output &input : inputs) {
    if (!first) std::cout << "\n";
    first = false;
    TraceRecord trace;
    try {
      ApplyStaged(compiled, input, &trace);
    } catch (const ApplyError &) {
      std::cout << TraceText(compiled, input, trace);
      throw;
    }
    std::cout << TraceText(compiled, input, trace);
  }
  return 0;
}

int RunOracle(const RuleSet &rules, const InputOptions &options) {
  std::string text = ReadInput(options.input, options.text);
  if (rules.mode == Mode::kItem) {
    return RunApplyItems(
        text, [&](const std::vector<Item> &items) { return OracleApplyItems(rules, items); });
  }
  for (const std::string &line : Lines(text)) {
    std::cout << OracleLine(rules, line, options.split_chars) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Compile ordered rewrite rules into finite-state transducers"};
  app.require_subcommand(1);

  std::string rules_path;
  std::string artifact_path;
  std::string output_path;
  std::string mode_text;
  bool complete = false;
  bool compose = false;
  bool allow_partial = false;
  bool use_composed = false;
  std::string dump_stage;
  InputOptions input;

  auto check_mode = [](const std::string &text) {
    return ParseMode(text) ? std::string() : "mode must be char, token or item";
  };

  CLI::App *compile = app.add_subcommand("compile", "Compile a rule file");
  compile->add_option("rules", rules_path, "Rule file")->required();
  compile->add_option("-o,--output", output_path, "Compiled rule set")->required();
  compile->add_option("--mode", mode_text, "Override the rule file mode")->check(check_mode);
  compile->add_flag("--complete-with-identity", complete,
                    "Add identity rules for symbols no rule covers");
  compile->add_flag("--compose", compose, "Also build the composed transducer");
  compile->add_flag("--allow-partial", allow_partial,
                    "Skip the totality check; uncovered input fails at apply time");

  CLI::App *apply = app.add_subcommand("apply", "Apply a compiled rule set");
  apply->add_option("artifact", artifact_path, "Compiled rule set")->required();
  apply->add_flag("--composed", use_composed, "Run the composed transducer");
  AddInputOptions(apply, input);

  CLI::App *inspect = app.add_subcommand("inspect", "Print stage sizes");
  inspect->add_option("artifact", artifact_path, "Compiled rule set")->required();
  inspect->add_option("--dump", dump_stage,
                      "Print one stage as FSTTEXT (e.g. 'rewrite', 'pre_mark 1')");

  CLI::App *trace = app.add_subcommand("trace", "Print intermediate strings");
  trace->add_option("artifact", artifact_path, "Compiled rule set")->required();
  AddInputOptions(trace, input);

  CLI::App *oracle = app.add_subcommand("oracle", "Run the reference interpreter");
  oracle->add_option("rules", rules_path, "Rule file")->required();
  oracle->add_option("--mode", mode_text, "Override the rule file mode")->check(check_mode);
  oracle->add_flag("--complete-with-identity", complete,
                   "Add identity rules for symbols no rule covers");
  AddInputOptions(oracle, input);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*compile) {
      CompileOptions options;
      options.complete_with_identity = complete;
      options.compose = compose;
      options.require_total = !allow_partial;
      CompiledRuleset compiled =
          CompileRulesText(ReadFile(rules_path), options, ModeOption(mode_text));
      std::ofstream out(output_path, std::ios::binary);
      if (!out) throw IoError("cannot write '" + output_path + "'");
      out << SerializeRuleset(compiled);
      return 0;
    }
    if (*apply) return RunApply(LoadCompiled(artifact_path), input, use_composed);
    if (*inspect) {
      CompiledRuleset compiled = LoadCompiled(artifact_path);
      if (dump_stage.empty()) {
        std::cout << InspectText(compiled);
        return 0;
      }
      if (dump_stage == "rewrite") {
        std::cout << MachineToText(compiled.rewrite, compiled.symbols);
        return 0;
      }
      if (dump_stage == "composed" && compiled.composed) {
        std::cout << MachineToText(*compiled.composed, compiled.symbols);
        return 0;
      }
      for (const CompiledRule &rule : compiled.rules) {
        std::string index = std::to_string(rule.index);
        if (dump_stage == "pre_mark " + index) {
          std::cout << MachineToText(rule.pre_mark, compiled.symbols, Direction::kReversed);
          return 0;
        }
        if (dump_stage == "check_left_cxt " + index) {
          std::cout << MachineToText(rule.check_left_context, compiled.symbols);
          return 0;
        }
      }
      std::cerr << "rulefst: no stage named '" << dump_stage << "'\n";
      return kExitUsage;
    }
    if (*trace) return RunTrace(LoadCompiled(artifact_path), input);
    if (*oracle) {
      return RunOracle(LoadRuleSet(ReadFile(rules_path), complete, ModeOption(mode_text)),
                       input);
    }
  } catch (const ParseError &e) {
    std::cerr << "rulefst: parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const FormatError &e) {
    std::cerr << "rulefst: bad compiled rule set: " << e.what() << "\n";
    return kExitParse;
  } catch (const IoError &e) {
    std::cerr << "rulefst: " << e.what() << "\n";
    return kExitParse;
  } catch (const CompileError &e) {
    std::cerr << "rulefst: compile error: " << e.what() << "\n";
    return kExitCompile;
  } catch (const ApplyError &e) {
    std::cerr << "rulefst: apply error: " << e.what() << "\n";
    return kExitApply;
  } catch (const Error &e) {
    std::cerr << "rulefst: error: " << e.what() << "\n";
    return kExitApply;
  }
  return 0;
}
