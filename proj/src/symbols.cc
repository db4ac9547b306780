#include "rulefst/symbols.h"

#include "rulefst/error.h"

namespace rulefst {

SymbolId SymbolTable::Add(std::string_view name, unsigned kinds) {
  if (name.empty() || name == "-") {
    throw Error("invalid symbol name '" + std::string(name) + "'");
  }
  for (char c : name) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      throw Error("symbol name contains whitespace: '" + std::string(name) +
                  "'");
    }
  }
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) {
    unsigned &existing = kinds_[it->second];
    bool was_marker = existing & kMarkerSymbol;
    bool is_marker = kinds & kMarkerSymbol;
    if (was_marker != is_marker) {
      throw Error("symbol '" + std::string(name) +
                  "' is used both as a marker and as an alphabet symbol");
    }
    existing |= kinds;
    return it->second;
  }
  auto id = static_cast<SymbolId>(names_.size());
  names_.emplace_back(name);
  kinds_.push_back(kinds);
  ids_.emplace(std::string(name), id);
  return id;
}

std::optional<SymbolId> SymbolTable::Find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string &SymbolTable::Name(SymbolId id) const {
  static const std::string kEpsilonName = "-";
  if (id == kEpsilon) return kEpsilonName;
  return names_.at(static_cast<std::size_t>(id));
}

std::vector<SymbolId> SymbolTable::WithKind(unsigned kinds) const {
  std::vector<SymbolId> out;
  for (std::size_t i = 0; i < kinds_.size(); ++i) {
    if (kinds_[i] & kinds) out.push_back(static_cast<SymbolId>(i));
  }
  return out;
}

std::string SymbolTable::Render(const std::vector<SymbolId> &ids) const {
  std::string out;
  for (SymbolId id : ids) {
    if (!out.empty()) out += ' ';
    out += Name(id);
  }
  return out;
}

std::string SymbolTable::KindName(unsigned kinds) {
  if (kinds & kMarkerSymbol) return "marker";
  if ((kinds & kInputSymbol) && (kinds & kOutputSymbol)) return "input,output";
  if (kinds & kInputSymbol) return "input";
  if (kinds & kOutputSymbol) return "output";
  return "none";
}

std::optional<unsigned> SymbolTable::ParseKind(std::string_view text) {
  if (text == "marker") return kMarkerSymbol;
  if (text == "input,output") return kInputSymbol | kOutputSymbol;
  if (text == "input") return kInputSymbol;
  if (text == "output") return kOutputSymbol;
  if (text == "none") return 0u;
  return std::nullopt;
}

}  // namespace rulefst
