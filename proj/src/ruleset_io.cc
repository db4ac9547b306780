#include "rulefst/ruleset_io.h"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "rulefst/error.h"
#include "rulefst/fsttext.h"

namespace rulefst {
namespace {

constexpr std::string_view kChecksumTag = "CHECKSUM ";

std::string JoinIds(const std::vector<SymbolId> &ids) {
  if (ids.empty()) return "-";
  std::string out;
  for (SymbolId id : ids) {
    if (!out.empty()) out += ' ';
    out += std::to_string(id);
  }
  return out;
}

long ParseCount(TextReader &reader, std::string_view text) {
  long value = -1;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
    reader.Fail("expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

SymbolId ParseSymbolId(TextReader &reader, const SymbolTable &symbols,
                       std::string_view text) {
  long id = ParseCount(reader, text);
  if (id >= static_cast<long>(symbols.size())) reader.Fail("symbol id out of range");
  return static_cast<SymbolId>(id);
}

std::vector<SymbolId> ParseIds(TextReader &reader, const SymbolTable &symbols,
                               const std::string &text) {
  std::vector<SymbolId> ids;
  if (text == "-") return ids;
  for (const auto &field : SplitSpaces(text)) {
    ids.push_back(ParseSymbolId(reader, symbols, field));
  }
  return ids;
}

template <typename M>
M ExpectMachine(TextReader &reader, SymbolTable &symbols, Direction direction) {
  TextMachine text = ReadMachine(reader, symbols);
  if (!std::holds_alternative<M>(text.machine) || text.direction != direction) {
    reader.Fail("unexpected machine kind or direction");
  }
  return std::get<M>(std::move(text.machine));
}

}  // namespace

std::uint64_t Fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string SerializeRuleset(const CompiledRuleset &compiled) {
  std::ostringstream os;
  os << "FSTTEXT 1 ruleset\n";
  os << "MODE " << ModeName(compiled.mode) << "\n";
  WriteSymbols(os, compiled.symbols);
  if (compiled.schema) {
    os << "SCHEMA\n";
    for (const FeatureInfo &f : compiled.schema->features()) {
      os << f.name << '\t' << JoinIds(f.value_ids) << '\t' << f.unseen << '\n';
    }
    os << "BUNDLES\n";
    for (const auto &[id, bundle] : compiled.bundles) {
      os << id << '\t';
      if (bundle.assignments.empty()) {
        os << '-';
      } else {
        for (std::size_t k = 0; k < bundle.assignments.size(); ++k) {
          if (k) os << ' ';
          os << bundle.assignments[k].first << '=' << bundle.assignments[k].second;
        }
      }
      os << '\n';
    }
  }
  os << "RULES\n";
  for (const CompiledRule &rule : compiled.rules) {
    os << rule.index << '\t' << rule.marker << '\t' << rule.focus_len << '\t'
       << JoinIds(rule.psi) << '\t' << (rule.generated ? 1 : 0) << '\t' << rule.text
       << '\n';
  }
  for (const CompiledRule &rule : compiled.rules) {
    os << "MACHINE pre_mark " << rule.index << '\n';
    WriteMachine(os, rule.pre_mark, compiled.symbols, Direction::kReversed, false);
    os << "MACHINE check_left_cxt " << rule.index << '\n';
    WriteMachine(os, rule.check_left_context, compiled.symbols, Direction::kForward,
                 false);
  }
  os << "MACHINE rewrite\n";
  WriteMachine(os, compiled.rewrite, compiled.symbols, Direction::kForward, false);
  if (compiled.composed) {
    os << "MACHINE composed\n";
    WriteMachine(os, *compiled.composed, compiled.symbols, Direction::kForward, false);
  }
  std::string body = os.str();
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(Fnv1a64(body)));
  return body + std::string(kChecksumTag) + hex + "\n";
}

CompiledRuleset DeserializeRuleset(std::string_view text) {
  {
    TextReader head(text);
    if (head.AtEnd()) throw FormatError("empty ruleset file");
    auto fields = SplitSpaces(head.Peek());
    if (fields.size() != 3 || fields[0] != "FSTTEXT" || fields[2] != "ruleset") {
      throw FormatError("line 1: missing 'FSTTEXT <version> ruleset' header");
    }
    if (fields[1] != "1") {
      throw VersionError("unsupported FSTTEXT version '" + fields[1] + "'");
    }
  }
  std::size_t tag = text.rfind(kChecksumTag);
  if (tag == std::string_view::npos || (tag != 0 && text[tag - 1] != '\n')) {
    throw ChecksumError("missing CHECKSUM line (truncated file?)");
  }
  std::string_view body = text.substr(0, tag);
  std::string_view stated = text.substr(tag + kChecksumTag.size());
  while (!stated.empty() && (stated.back() == '\n' || stated.back() == '\r')) {
    stated.remove_suffix(1);
  }
  std::uint64_t expected = 0;
  auto [ptr, ec] = std::from_chars(stated.data(), stated.data() + stated.size(),
                                   expected, 16);
  if (stated.size() != 16 || ec != std::errc() || ptr != stated.data() + stated.size()) {
    throw FormatError("malformed CHECKSUM line");
  }
  if (Fnv1a64(body) != expected) {
    throw ChecksumError("checksum mismatch: file is corrupted or was edited");
  }

  TextReader reader(body);
  reader.Next();
  CompiledRuleset compiled;
  {
    const std::string &line = reader.Next();
    auto mode = line.rfind("MODE ", 0) == 0 ? ParseMode(line.substr(5)) : std::nullopt;
    if (!mode) reader.Fail("expected 'MODE <char|token|item>'");
    compiled.mode = *mode;
  }
  ReadSymbols(reader, compiled.symbols);
  const SymbolTable &symbols = compiled.symbols;

  if (!reader.AtEnd() && reader.Peek() == "SCHEMA") {
    reader.Next();
    std::vector<FeatureInfo> features;
    while (!reader.AtEnd() && reader.Peek() != "BUNDLES") {
      auto fields = SplitTabs(reader.Next());
      if (fields.size() != 3) reader.Fail("malformed schema line");
      FeatureInfo info;
      info.name = fields[0];
      info.value_ids = ParseIds(reader, symbols, fields[1]);
      info.unseen = ParseSymbolId(reader, symbols, fields[2]);
      const std::string prefix = info.name + "=";
      for (SymbolId id : info.value_ids) {
        const std::string &name = symbols.Name(id);
        if (name.rfind(prefix, 0) != 0) reader.Fail("value symbol does not match feature");
        info.values.push_back(name.substr(prefix.size()));
      }
      features.push_back(std::move(info));
    }
    compiled.schema = FeatureSchema::FromInfo(std::move(features));
    reader.Expect("BUNDLES");
    while (!reader.AtEnd() && reader.Peek() != "RULES") {
      auto fields = SplitTabs(reader.Next());
      if (fields.size() != 2) reader.Fail("malformed bundle line");
      SymbolId id = ParseSymbolId(reader, symbols, fields[0]);
      AssignmentBundle bundle;
      if (fields[1] != "-") {
        for (const auto &pair : SplitSpaces(fields[1])) {
          std::size_t eq = pair.find('=');
          if (eq == std::string::npos) reader.Fail("malformed assignment");
          bundle.assignments.emplace_back(pair.substr(0, eq), pair.substr(eq + 1));
        }
      }
      if (symbols.Name(id) != bundle.SymbolName()) {
        reader.Fail("bundle does not match its symbol name");
      }
      compiled.bundles.emplace(id, std::move(bundle));
    }
  }

  reader.Expect("RULES");
  while (!reader.AtEnd() && reader.Peek().rfind("MACHINE ", 0) != 0) {
    auto fields = SplitTabs(reader.Next());
    if (fields.size() != 6) reader.Fail("malformed rule line");
    CompiledRule rule;
    rule.index = static_cast<std::size_t>(ParseCount(reader, fields[0]));
    rule.marker = ParseSymbolId(reader, symbols, fields[1]);
    rule.focus_len = static_cast<std::size_t>(ParseCount(reader, fields[2]));
    rule.psi = ParseIds(reader, symbols, fields[3]);
    if (fields[4] != "0" && fields[4] != "1") reader.Fail("malformed generated flag");
    rule.generated = fields[4] == "1";
    rule.text = fields[5];
    if (rule.index != compiled.rules.size() + 1) reader.Fail("rules out of order");
    if (!symbols.IsMarker(rule.marker)) reader.Fail("rule marker is not a marker symbol");
    compiled.rules.push_back(std::move(rule));
  }

  for (CompiledRule &rule : compiled.rules) {
    const std::string index = std::to_string(rule.index);
    reader.Expect("MACHINE pre_mark " + index);
    rule.pre_mark = ExpectMachine<Dfst>(reader, compiled.symbols, Direction::kReversed);
    reader.Expect("MACHINE check_left_cxt " + index);
    rule.check_left_context =
        ExpectMachine<Dfst>(reader, compiled.symbols, Direction::kForward);
  }
  reader.Expect("MACHINE rewrite");
  compiled.rewrite = ExpectMachine<Dfst>(reader, compiled.symbols, Direction::kForward);
  if (!reader.AtEnd()) {
    reader.Expect("MACHINE composed");
    compiled.composed = ExpectMachine<Fst>(reader, compiled.symbols, Direction::kForward);
  }
  if (!reader.AtEnd()) reader.Fail("trailing content");
  return compiled;
}

}  // namespace rulefst
