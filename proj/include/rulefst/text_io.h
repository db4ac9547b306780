#ifndef RULEFST_TEXT_IO_H_
#define RULEFST_TEXT_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "rulefst/features.h"
#include "rulefst/rule_file.h"
#include "rulefst/symbols.h"

namespace rulefst {

// Splits one input line into symbol names.  Whitespace-separated by default;
// per character (UTF-8 code point) when `split_chars` is set, or in char mode
// when the line has no whitespace at all.
std::vector<std::string> SplitInputLine(std::string_view line, Mode mode,
                                        bool split_chars);

// Output symbol names joined with single spaces.
std::string JoinOutput(const SymbolTable &symbols, const Output &output);

// Item text: one item per line as space-separated feature=value pairs (a
// line of just "[]" or "-" is the empty item); blank lines separate
// sequences; '#' starts a comment line.  Throws ParseError.
std::vector<std::vector<Item>> ParseItemSequences(std::string_view text);

// Inverse of ParseItemSequences for one sequence (no trailing blank line).
std::string FormatItems(const std::vector<Item> &items);
std::string FormatItem(const Item &item);

}  // namespace rulefst

#endif  // RULEFST_TEXT_IO_H_
