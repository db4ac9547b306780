#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rulefst/error.h"
#include "rulefst/pipeline.h"
#include "rulefst/ruleset_io.h"
#include "rulefst/text_io.h"

namespace py = pybind11;
using namespace rulefst;

namespace {

std::optional<Mode> ToMode(const std::optional<std::string> &text) {
  if (!text) return std::nullopt;
  auto mode = ParseMode(*text);
  if (!mode) throw py::value_error("mode must be 'char', 'token' or 'item'");
  return mode;
}

Item ToItem(const py::dict &d) {
  Item item;
  for (auto [key, value] : d) item.Set(py::str(key).cast<std::string>(), py::str(value).cast<std::string>());
  return item;
}

py::dict FromItem(const Item &item) {
  py::dict d;
  for (const auto &[feature, value] : item.features()) d[py::str(feature)] = value;
  return d;
}

std::vector<Item> ToItems(const py::list &items) {
  std::vector<Item> out;
  for (auto item : items) out.push_back(ToItem(item.cast<py::dict>()));
  return out;
}

py::list FromItems(const std::vector<Item> &items) {
  py::list out;
  for (const Item &item : items) out.append(FromItem(item));
  return out;
}

std::vector<std::string> Names(const SymbolTable &symbols, const Output &ids) {
  std::vector<std::string> out;
  for (SymbolId id : ids) out.push_back(symbols.Name(id));
  return out;
}

}  // namespace

PYBIND11_MODULE(_rulefst, m) {
  m.doc() = "Compile ordered rewrite rules into finite-state transducers.";

  auto base = py::register_exception<Error>(m, "RulefstError");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<CompileError>(m, "CompileError", base.ptr());
  py::register_exception<ApplyError>(m, "ApplyError", base.ptr());

  py::class_<CompiledRuleset>(m, "Ruleset")
      .def_property_readonly("mode", [](const CompiledRuleset &c) { return ModeName(c.mode); })
      .def_property_readonly("num_rules", [](const CompiledRuleset &c) { return c.rules.size(); })
      .def_property_readonly("has_composed",
                             [](const CompiledRuleset &c) { return c.composed.has_value(); })
      .def(
          "apply",
          [](const CompiledRuleset &c, const std::vector<std::string> &tokens, bool composed) {
            auto input = EncodeSymbols(c.symbols, tokens);
            return Names(c.symbols, composed ? ApplyComposed(c, input) : ApplyStaged(c, input));
          },
          py::arg("tokens"), py::arg("composed") = false,
          "Rewrite a list of input symbols; returns the output symbols.")
      .def("apply_line", &ApplyLine, py::arg("line"), py::arg("split_chars") = false,
           "Rewrite one line of text; returns space-joined output symbols.")
      .def(
          "apply_items",
          [](const CompiledRuleset &c, const py::list &items) {
            return FromItems(ApplyItems(c, ToItems(items)));
          },
          py::arg("items"), "Rewrite a list of feature dicts (item mode).")
      .def(
          "trace",
          [](const CompiledRuleset &c, const std::vector<std::string> &tokens) {
            auto input = EncodeSymbols(c.symbols, tokens);
            TraceRecord trace;
            ApplyStaged(c, input, &trace);
            std::vector<std::pair<std::string, std::vector<std::string>>> out;
            for (const auto &s : trace.snapshots) out.emplace_back(s.stage, Names(c.symbols, s.symbols));
            return py::make_tuple(out, trace.consumed);
          },
          py::arg("tokens"),
          "Returns ([(stage, symbols), ...], consumed rule indices).")
      .def("stage_sizes",
           [](const CompiledRuleset &c) {
             std::vector<std::tuple<std::string, std::size_t, std::size_t>> out;
             for (const StageSize &s : StageSizes(c)) out.emplace_back(s.name, s.states, s.transitions);
             return out;
           })
      .def("inspect", &InspectText)
      .def("serialize", &SerializeRuleset)
      .def("__eq__", [](const CompiledRuleset &a, const CompiledRuleset &b) { return a == b; });

  m.def(
      "compile",
      [](const std::string &text, std::optional<std::string> mode, bool complete_with_identity,
         bool compose, bool require_total) {
        CompileOptions options;
        options.complete_with_identity = complete_with_identity;
        options.compose = compose;
        options.require_total = require_total;
        return CompileRulesText(text, options, ToMode(mode));
      },
      py::arg("rules"), py::arg("mode") = py::none(), py::arg("complete_with_identity") = false,
      py::arg("compose") = false, py::arg("require_total") = true,
      "Compile rule-file text into a Ruleset.");
  m.def("load", &DeserializeRuleset, py::arg("text"), "Read a serialized Ruleset.");
  m.def(
      "oracle",
      [](const std::string &text, const std::vector<std::string> &tokens,
         std::optional<std::string> mode, bool complete_with_identity) {
        RuleSet rules = LoadRuleSet(text, complete_with_identity, ToMode(mode));
        return Names(rules.symbols, OracleApply(rules, EncodeSymbols(rules.symbols, tokens)));
      },
      py::arg("rules"), py::arg("tokens"), py::arg("mode") = py::none(),
      py::arg("complete_with_identity") = false,
      "Rewrite tokens with the reference interpreter.");
  m.def(
      "oracle_items",
      [](const std::string &text, const py::list &items, bool complete_with_identity) {
        RuleSet rules = LoadRuleSet(text, complete_with_identity, Mode::kItem);
        return FromItems(OracleApplyItems(rules, ToItems(items)));
      },
      py::arg("rules"), py::arg("items"), py::arg("complete_with_identity") = false);
  m.def("parse_items", [](const std::string &text) {
    py::list out;
    for (const auto &seq : ParseItemSequences(text)) out.append(FromItems(seq));
    return out;
  });
}
