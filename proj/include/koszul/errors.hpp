#ifndef KOSZUL_ERRORS_HPP
#define KOSZUL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace koszul {

/// Malformed user input (spec files, tree text, CLI arguments).
class InputError : public std::runtime_error {
public:
  InputError(const std::string &what, int line = 0, int column = 0)
      : std::runtime_error(format(what, line, column)), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  static std::string format(const std::string &what, int line, int column) {
    if (line <= 0)
      return what;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
  }
  int line_;
  int column_;
};

/// A vector-form operation whose exact result exceeds the truncation bounds.
class TruncationOverflow : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace koszul

#endif // KOSZUL_ERRORS_HPP
