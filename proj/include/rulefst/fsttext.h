#ifndef RULEFST_FSTTEXT_H_
#define RULEFST_FSTTEXT_H_

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rulefst/algorithms.h"
#include "rulefst/machine.h"
#include "rulefst/symbols.h"

namespace rulefst {

// FSTTEXT 1: a line-oriented, tab-separated machine format.
//
//   FSTTEXT 1 <dfsa|fst|dfst> <forward|reversed>
//   STATES <n>
//   SYMS                        (optional when the table is shared)
//   <id> TAB <name> TAB <kind>
//   ARCS
//   <src> TAB <dst> TAB <insym or -> TAB <space-joined outsyms or ->
//   INITIAL
//   <state>
//   FINAL
//   <state>
//   END
//
// Arcs are emitted sorted by (src, insym id, outsyms, dst), so reading and
// re-writing a machine reproduces the same bytes.

using AnyMachine = std::variant<Dfsa, Fst, Dfst>;

struct TextMachine {
  AnyMachine machine;
  Direction direction = Direction::kForward;
};

void WriteSymbols(std::ostream &os, const SymbolTable &symbols);
void WriteMachine(std::ostream &os, const AnyMachine &machine,
                  const SymbolTable &symbols,
                  Direction direction = Direction::kForward,
                  bool include_symbols = true);
std::string MachineToText(const AnyMachine &machine, const SymbolTable &symbols,
                          Direction direction = Direction::kForward);

// Line cursor with 1-based line numbers for diagnostics.
class TextReader {
 public:
  explicit TextReader(std::string_view text);

  bool AtEnd() const { return next_ >= lines_.size(); }
  const std::string &Peek() const;
  const std::string &Next();
  // Consumes a line that must equal `expected`.
  void Expect(std::string_view expected);
  int line_number() const { return static_cast<int>(next_); }

  [[noreturn]] void Fail(const std::string &what) const;

 private:
  std::vector<std::string> lines_;
  std::size_t next_ = 0;
};

std::vector<std::string> SplitTabs(std::string_view line);
std::vector<std::string> SplitSpaces(std::string_view text);

// Reads the SYMS block into `symbols` (which must be empty).
void ReadSymbols(TextReader &reader, SymbolTable &symbols);

// Reads one machine.  If the text carries a SYMS block it is loaded into
// `symbols`; otherwise names are resolved against the existing table.
TextMachine ReadMachine(TextReader &reader, SymbolTable &symbols);
TextMachine MachineFromText(std::string_view text, SymbolTable &symbols);

}  // namespace rulefst

#endif  // RULEFST_FSTTEXT_H_
