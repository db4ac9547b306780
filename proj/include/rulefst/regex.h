#ifndef RULEFST_REGEX_H_
#define RULEFST_REGEX_H_

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rulefst/machine.h"
#include "rulefst/symbols.h"

namespace rulefst {

// Regular expression over symbol classes.
struct Regex {
  enum class Kind { kEpsilon, kLeaf, kConcat, kUnion, kStar, kPlus, kOptional, kAny };

  Kind kind = Kind::kEpsilon;
  // Leaf class, sorted and unique.
  std::vector<SymbolId> symbols;
  std::vector<Regex> children;
  // Source text of a leaf, for diagnostics only.
  std::string label;

  static Regex Epsilon() { return Regex{}; }
  static Regex Leaf(std::vector<SymbolId> symbols, std::string label = {});
  static Regex Symbol(SymbolId id, std::string label = {});
  static Regex Concat(std::vector<Regex> children);
  static Regex Union(std::vector<Regex> children);
  static Regex Star(Regex child);
  static Regex Plus(Regex child);
  static Regex Optional(Regex child);
  static Regex Any();

  bool operator==(const Regex &other) const = default;
};

// Thompson construction, subset construction, minimization.  Throws
// CompileError for an empty leaf class or a symbol outside `alphabet`.
Dfsa CompileRegex(const Regex &regex, std::span<const SymbolId> alphabet);

// Length shared by every string of L(dfsa).  Throws FocusNotFixedLength with
// two witness lengths if lengths vary, CompileError for the empty language.
// `what` prefixes the diagnostic.
std::size_t FixedLengthOf(const Dfsa &dfsa, const std::string &what = "pattern");

// All (p, q) with input[p, q) in L(dfsa).
std::set<std::pair<std::size_t, std::size_t>> PatternMatchPositions(
    const Dfsa &dfsa, std::span<const SymbolId> input);

}  // namespace rulefst

#endif  // RULEFST_REGEX_H_
