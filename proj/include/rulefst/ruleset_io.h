#ifndef RULEFST_RULESET_IO_H_
#define RULEFST_RULESET_IO_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "rulefst/compiler.h"

namespace rulefst {

// A compiled rule set in one FSTTEXT 1 container:
//
//   FSTTEXT 1 ruleset
//   MODE <char|token|item>
//   SYMS ...                       shared by every machine below
//   SCHEMA                         item mode: <feature> TAB <value ids> TAB <# id>
//   BUNDLES                        item mode: <symbol id> TAB <f=v ...|->
//   RULES                          <index> TAB <marker> TAB <focus len> TAB
//                                  <psi|-> TAB <0|1 generated> TAB <text>
//   MACHINE pre_mark <i>           followed by an FSTTEXT machine without SYMS
//   MACHINE check_left_cxt <i>
//   MACHINE rewrite
//   MACHINE composed               optional
//   CHECKSUM <16 hex digits>       FNV-1a 64 of every byte before this line
//
// Writing a loaded container reproduces it byte for byte.

std::uint64_t Fnv1a64(std::string_view bytes);

std::string SerializeRuleset(const CompiledRuleset &compiled);

// Throws VersionError, ChecksumError, or FormatError.
CompiledRuleset DeserializeRuleset(std::string_view text);

}  // namespace rulefst

#endif  // RULEFST_RULESET_IO_H_
