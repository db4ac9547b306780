#ifndef RULEFST_ERROR_H_
#define RULEFST_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rulefst {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rule text or artifact text that could not be read.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Malformed or corrupted FSTTEXT data.
class FormatError : public Error {
 public:
  using Error::Error;
};

class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

class ChecksumError : public FormatError {
 public:
  using FormatError::FormatError;
};

// Anything that prevents a rule set from being compiled.
class CompileError : public Error {
 public:
  using Error::Error;
};

class FocusNotFixedLength : public CompileError {
 public:
  FocusNotFixedLength(const std::string &where, std::size_t first,
                      std::size_t second)
      : CompileError(where + ": focus is not fixed-length (accepts strings of "
                     "length " + std::to_string(first) + " and " +
                     std::to_string(second) + ")"),
        first_(first),
        second_(second) {}

  std::size_t first_witness() const { return first_; }
  std::size_t second_witness() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

class NonTotalRuleset : public CompileError {
 public:
  NonTotalRuleset(const std::string &what, std::vector<std::string> uncovered)
      : CompileError(what), uncovered_(std::move(uncovered)) {}

  const std::vector<std::string> &uncovered() const { return uncovered_; }

 private:
  std::vector<std::string> uncovered_;
};

// Errors raised while running a machine or a compiled rule set on input.
class ApplyError : public Error {
 public:
  ApplyError(const std::string &what, std::size_t position)
      : Error(what), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownSymbol : public ApplyError {
 public:
  UnknownSymbol(const std::string &name, std::size_t position)
      : ApplyError("unknown symbol '" + name + "' at position " +
                       std::to_string(position),
                   position),
        name_(name) {}

  const std::string &name() const { return name_; }

 private:
  std::string name_;
};

// The input left a deterministic machine without a transition.
class StuckState : public ApplyError {
 public:
  StuckState(const std::string &what, std::size_t position)
      : ApplyError(what + " (stuck at input position " +
                       std::to_string(position) + ")",
                   position) {}
};

// No accepting path exists; position is the end of the longest viable prefix.
class InputNotAccepted : public ApplyError {
 public:
  explicit InputNotAccepted(std::size_t position)
      : ApplyError("input not accepted; longest viable prefix ends at " +
                       std::to_string(position),
                   position) {}
};

class NoMarkerAtPosition : public ApplyError {
 public:
  explicit NoMarkerAtPosition(std::size_t position)
      : ApplyError("no rule applies at input position " +
                       std::to_string(position) +
                       " (rule set is not total)",
                   position) {}
};

}  // namespace rulefst

#endif  // RULEFST_ERROR_H_
