#include "rulefst/text_io.h"

#include <algorithm>
#include <cctype>

#include "rulefst/error.h"

namespace rulefst {
namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::size_t CodePointLength(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xe) return 3;
  if ((lead >> 3) == 0x1e) return 4;
  return 1;
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t k = 0;
  while (k < text.size()) {
    while (k < text.size() && IsSpace(text[k])) ++k;
    std::size_t start = k;
    while (k < text.size() && !IsSpace(text[k])) ++k;
    if (k > start) out.emplace_back(text.substr(start, k - start));
  }
  return out;
}

}  // namespace

std::vector<std::string> SplitInputLine(std::string_view line, Mode mode,
                                        bool split_chars) {
  bool has_space = std::any_of(line.begin(), line.end(), IsSpace);
  if (!split_chars && (mode != Mode::kChar || has_space)) return SplitWhitespace(line);
  std::vector<std::string> out;
  std::size_t k = 0;
  while (k < line.size()) {
    if (IsSpace(line[k])) {
      ++k;
      continue;
    }
    std::size_t len = std::min(CodePointLength(line[k]), line.size() - k);
    out.emplace_back(line.substr(k, len));
    k += len;
  }
  return out;
}

std::string JoinOutput(const SymbolTable &symbols, const Output &output) {
  std::string out;
  for (SymbolId id : output) {
    if (!out.empty()) out += ' ';
    out += symbols.Name(id);
  }
  return out;
}

std::vector<std::vector<Item>> ParseItemSequences(std::string_view text) {
  std::vector<std::vector<Item>> sequences;
  std::vector<Item> current;
  int line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    start = nl + 1;
    ++line_number;
    auto fields = SplitWhitespace(line);
    if (!fields.empty() && fields[0][0] == '#') continue;
    if (fields.empty()) {
      if (!current.empty()) sequences.push_back(std::move(current));
      current.clear();
      continue;
    }
    Item item;
    if (!(fields.size() == 1 && (fields[0] == "[]" || fields[0] == "-"))) {
      for (const std::string &field : fields) {
        std::size_t eq = field.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == field.size()) {
          throw ParseError("expected feature=value, got '" + field + "'", line_number,
                           static_cast<int>(line.find(field)) + 1);
        }
        std::string feature = field.substr(0, eq);
        if (item.Get(feature)) {
          throw ParseError("feature '" + feature + "' given twice", line_number,
                           static_cast<int>(line.find(field)) + 1);
        }
        item.Set(feature, field.substr(eq + 1));
      }
    }
    current.push_back(std::move(item));
  }
  if (!current.empty()) sequences.push_back(std::move(current));
  return sequences;
}

std::string FormatItem(const Item &item) {
  if (item.empty()) return "[]";
  std::string out;
  for (const auto &[feature, value] : item.features()) {
    if (!out.empty()) out += ' ';
    out += feature + "=" + value;
  }
  return out;
}

std::string FormatItems(const std::vector<Item> &items) {
  std::string out;
  for (const Item &item : items) out += FormatItem(item) + "\n";
  return out;
}

}  // namespace rulefst
