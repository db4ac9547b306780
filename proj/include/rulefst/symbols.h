#ifndef RULEFST_SYMBOLS_H_
#define RULEFST_SYMBOLS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rulefst {

using SymbolId = std::int32_t;
using StateId = std::int32_t;

// Reserved label for epsilon; never interned in a SymbolTable.
inline constexpr SymbolId kEpsilon = -1;

// Output strings are plain symbol sequences; the empty vector is epsilon.
using Output = std::vector<SymbolId>;

enum SymbolKind : unsigned {
  kInputSymbol = 1u << 0,
  kOutputSymbol = 1u << 1,
  kMarkerSymbol = 1u << 2,
};

// Interned alphabet.  Ids are dense from zero.  A name may be both an input
// and an output symbol, but marker symbols never share a name with either.
class SymbolTable {
 public:
  // Interns `name` (or extends the kinds of an existing entry).  Throws Error
  // on names that cannot be serialized or on a marker/non-marker clash.
  SymbolId Add(std::string_view name, unsigned kinds);

  std::optional<SymbolId> Find(std::string_view name) const;
  const std::string &Name(SymbolId id) const;
  unsigned Kinds(SymbolId id) const { return kinds_.at(id); }

  bool IsMarker(SymbolId id) const { return Kinds(id) & kMarkerSymbol; }
  bool IsInput(SymbolId id) const { return Kinds(id) & kInputSymbol; }
  bool IsOutput(SymbolId id) const { return Kinds(id) & kOutputSymbol; }

  std::size_t size() const { return names_.size(); }

  // All ids carrying any of `kinds`, ascending.
  std::vector<SymbolId> WithKind(unsigned kinds) const;

  // Joins names with single spaces; epsilon prints as "-".
  std::string Render(const std::vector<SymbolId> &ids) const;

  static std::string KindName(unsigned kinds);
  static std::optional<unsigned> ParseKind(std::string_view text);

  bool operator==(const SymbolTable &other) const {
    return names_ == other.names_ && kinds_ == other.kinds_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<unsigned> kinds_;
  std::unordered_map<std::string, SymbolId> ids_;
};

}  // namespace rulefst

#endif  // RULEFST_SYMBOLS_H_
