#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stackup {

/// Malformed input text (instance, solution, digraph or LP files).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what), line_(0) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A node, memory or time budget was exhausted, or an input exceeds a hard size guard.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller broke an operation's precondition (exhausted sequence, bad index, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The decision search admitted no complete path under the given open-pallet cut.
class NotFoundUnderCut : public std::runtime_error {
 public:
  explicit NotFoundUnderCut(int cut)
      : std::runtime_error("no processing within cut " + std::to_string(cut)), cut_(cut) {}

  int cut() const noexcept { return cut_; }

 private:
  int cut_;
};

}  // namespace stackup
