#include "rulefst/fsttext.h"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <tuple>

#include "rulefst/error.h"

namespace rulefst {
namespace {

struct ArcLine {
  StateId src;
  StateId dst;
  SymbolId input;
  Output output;

  auto Key() const { return std::tie(src, input, output, dst); }
};

std::vector<ArcLine> CollectArcs(const AnyMachine &machine) {
  std::vector<ArcLine> arcs;
  std::visit(
      [&](const auto &m) {
        using M = std::decay_t<decltype(m)>;
        for (std::size_t q = 0; q < m.NumStates(); ++q) {
          auto s = static_cast<StateId>(q);
          if constexpr (std::is_same_v<M, Dfsa>) {
            for (const auto &[label, target] : m.Transitions(s)) {
              arcs.push_back({s, target, label, {}});
            }
          } else if constexpr (std::is_same_v<M, Dfst>) {
            for (const auto &[label, arc] : m.Transitions(s)) {
              arcs.push_back({s, arc.target, label, arc.output});
            }
          } else {
            for (const FstArc &arc : m.Arcs(s)) {
              arcs.push_back({s, arc.target, arc.input, arc.output});
            }
          }
        }
      },
      machine);
  std::sort(arcs.begin(), arcs.end(), [](const ArcLine &a, const ArcLine &b) {
    return a.Key() < b.Key();
  });
  return arcs;
}

const char *KindName(const AnyMachine &machine) {
  switch (machine.index()) {
    case 0:
      return "dfsa";
    case 1:
      return "fst";
    default:
      return "dfst";
  }
}

long ParseNumber(TextReader &reader, std::string_view text) {
  long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value < 0) {
    reader.Fail("expected a non-negative integer, got '" + std::string(text) +
                "'");
  }
  return value;
}

SymbolId ResolveSymbol(TextReader &reader, const SymbolTable &symbols,
                       std::string_view name) {
  if (name == "-") return kEpsilon;
  auto id = symbols.Find(name);
  if (!id) reader.Fail("unknown symbol '" + std::string(name) + "'");
  return *id;
}

}  // namespace

std::vector<std::string> SplitTabs(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::vector<std::string> SplitSpaces(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

TextReader::TextReader(std::string_view text) {
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      lines_.emplace_back(text.substr(start));
      break;
    }
    lines_.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
}

const std::string &TextReader::Peek() const {
  if (AtEnd()) Fail("unexpected end of input");
  return lines_[next_];
}

const std::string &TextReader::Next() {
  const std::string &line = Peek();
  ++next_;
  return line;
}

void TextReader::Expect(std::string_view expected) {
  if (AtEnd() || Peek() != expected) {
    Fail("expected '" + std::string(expected) + "'");
  }
  ++next_;
}

void TextReader::Fail(const std::string &what) const {
  throw FormatError("FSTTEXT line " + std::to_string(next_ + 1) + ": " + what);
}

void WriteSymbols(std::ostream &os, const SymbolTable &symbols) {
  os << "SYMS\n";
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    auto id = static_cast<SymbolId>(i);
    os << id << '\t' << symbols.Name(id) << '\t'
       << SymbolTable::KindName(symbols.Kinds(id)) << '\n';
  }
}

void WriteMachine(std::ostream &os, const AnyMachine &machine,
                  const SymbolTable &symbols, Direction direction,
                  bool include_symbols) {
  std::size_t num_states = 0;
  std::vector<StateId> initials;
  std::vector<StateId> finals;
  std::visit(
      [&](const auto &m) {
        using M = std::decay_t<decltype(m)>;
        num_states = m.NumStates();
        if constexpr (std::is_same_v<M, Fst>) {
          initials = m.Initials();
        } else if (m.Initial() != kNoState) {
          initials.push_back(m.Initial());
        }
        finals = m.Finals();
      },
      machine);

  os << "FSTTEXT 1 " << KindName(machine) << ' '
     << (direction == Direction::kForward ? "forward" : "reversed") << '\n';
  os << "STATES " << num_states << '\n';
  if (include_symbols) WriteSymbols(os, symbols);
  os << "ARCS\n";
  for (const ArcLine &arc : CollectArcs(machine)) {
    os << arc.src << '\t' << arc.dst << '\t' << symbols.Name(arc.input) << '\t'
       << (arc.output.empty() ? "-" : symbols.Render(arc.output)) << '\n';
  }
  os << "INITIAL\n";
  for (StateId q : initials) os << q << '\n';
  os << "FINAL\n";
  for (StateId q : finals) os << q << '\n';
  os << "END\n";
}

std::string MachineToText(const AnyMachine &machine, const SymbolTable &symbols,
                          Direction direction) {
  std::ostringstream os;
  WriteMachine(os, machine, symbols, direction, true);
  return os.str();
}

void ReadSymbols(TextReader &reader, SymbolTable &symbols) {
  reader.Expect("SYMS");
  if (symbols.size() != 0) reader.Fail("symbol table already populated");
  while (!reader.AtEnd() && reader.Peek().find('\t') != std::string::npos) {
    auto fields = SplitTabs(reader.Peek());
    if (fields.size() != 3) reader.Fail("malformed symbol line");
    long id = ParseNumber(reader, fields[0]);
    auto kinds = SymbolTable::ParseKind(fields[2]);
    if (!kinds) reader.Fail("unknown symbol kind '" + fields[2] + "'");
    if (id != static_cast<long>(symbols.size())) {
      reader.Fail("symbol ids must be dense and ascending");
    }
    try {
      symbols.Add(fields[1], *kinds);
    } catch (const Error &e) {
      reader.Fail(e.what());
    }
    if (static_cast<long>(symbols.size()) != id + 1) {
      reader.Fail("duplicate symbol '" + fields[1] + "'");
    }
    reader.Next();
  }
}

TextMachine ReadMachine(TextReader &reader, SymbolTable &symbols) {
  auto header = SplitSpaces(reader.Next());
  if (header.size() != 4 || header[0] != "FSTTEXT") {
    reader.Fail("missing FSTTEXT header");
  }
  if (header[1] != "1") {
    throw VersionError("unsupported FSTTEXT version '" + header[1] + "'");
  }
  const std::string &kind = header[2];
  if (kind != "dfsa" && kind != "fst" && kind != "dfst") {
    reader.Fail("unknown machine kind '" + kind + "'");
  }
  Direction direction;
  if (header[3] == "forward") {
    direction = Direction::kForward;
  } else if (header[3] == "reversed") {
    direction = Direction::kReversed;
  } else {
    reader.Fail("unknown direction '" + header[3] + "'");
  }
  auto states_line = SplitSpaces(reader.Next());
  if (states_line.size() != 2 || states_line[0] != "STATES") {
    reader.Fail("expected STATES");
  }
  long num_states = ParseNumber(reader, states_line[1]);
  if (!reader.AtEnd() && reader.Peek() == "SYMS") ReadSymbols(reader, symbols);

  std::vector<ArcLine> arcs;
  reader.Expect("ARCS");
  while (reader.Peek() != "INITIAL") {
    auto fields = SplitTabs(reader.Next());
    if (fields.size() != 4) reader.Fail("malformed arc line");
    ArcLine arc;
    arc.src = static_cast<StateId>(ParseNumber(reader, fields[0]));
    arc.dst = static_cast<StateId>(ParseNumber(reader, fields[1]));
    if (arc.src >= num_states || arc.dst >= num_states) {
      reader.Fail("arc refers to a state out of range");
    }
    arc.input = ResolveSymbol(reader, symbols, fields[2]);
    if (fields[3] != "-") {
      for (const auto &name : SplitSpaces(fields[3])) {
        SymbolId id = ResolveSymbol(reader, symbols, name);
        if (id == kEpsilon) reader.Fail("epsilon inside an output string");
        arc.output.push_back(id);
      }
    }
    arcs.push_back(std::move(arc));
  }
  auto read_states = [&](std::string_view terminator) {
    std::vector<StateId> states;
    while (reader.Peek() != terminator) {
      long q = ParseNumber(reader, reader.Next());
      if (q >= num_states) reader.Fail("state out of range");
      states.push_back(static_cast<StateId>(q));
    }
    return states;
  };
  reader.Expect("INITIAL");
  auto initials = read_states("FINAL");
  reader.Expect("FINAL");
  auto finals = read_states("END");
  reader.Expect("END");

  TextMachine result;
  result.direction = direction;
  if (kind == "fst") {
    Fst fst;
    for (long q = 0; q < num_states; ++q) fst.AddState();
    for (auto &arc : arcs) {
      fst.AddArc(arc.src, FstArc{arc.input, std::move(arc.output), arc.dst});
    }
    for (StateId q : initials) fst.SetInitial(q);
    for (StateId q : finals) fst.SetFinal(q);
    result.machine = std::move(fst);
    return result;
  }
  if (initials.size() != 1) reader.Fail("deterministic machine needs one initial state");
  auto check_arc = [&](const ArcLine &arc) {
    if (arc.input == kEpsilon) reader.Fail("epsilon arc in a deterministic machine");
  };
  if (kind == "dfsa") {
    Dfsa dfsa;
    for (long q = 0; q < num_states; ++q) dfsa.AddState();
    for (const auto &arc : arcs) {
      check_arc(arc);
      if (!arc.output.empty()) reader.Fail("acceptor arc with output");
      if (dfsa.Next(arc.src, arc.input) != kNoState) reader.Fail("duplicate transition");
      dfsa.SetTransition(arc.src, arc.input, arc.dst);
    }
    dfsa.SetInitial(initials.front());
    for (StateId q : finals) dfsa.SetFinal(q);
    result.machine = std::move(dfsa);
  } else {
    Dfst dfst;
    for (long q = 0; q < num_states; ++q) dfst.AddState();
    for (auto &arc : arcs) {
      check_arc(arc);
      if (dfst.Find(arc.src, arc.input) != nullptr) reader.Fail("duplicate transition");
      dfst.SetTransition(arc.src, arc.input, arc.dst, std::move(arc.output));
    }
    dfst.SetInitial(initials.front());
    for (StateId q : finals) dfst.SetFinal(q);
    result.machine = std::move(dfst);
  }
  return result;
}

TextMachine MachineFromText(std::string_view text, SymbolTable &symbols) {
  TextReader reader(text);
  TextMachine machine = ReadMachine(reader, symbols);
  if (!reader.AtEnd()) reader.Fail("trailing data after END");
  return machine;
}

}  // namespace rulefst
