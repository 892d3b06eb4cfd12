#ifndef GEM_ERRORS_HPP
#define GEM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gem {

// A request whose search space or domain exceeds the configured limits.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed structure literal or out-of-range index.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Formula text that does not lex/parse, or is ill-sorted.
class SyntaxError : public std::runtime_error {
 public:
  enum class Kind { kSyntax, kSort };

  SyntaxError(Kind kind, std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                           (kind == Kind::kSort ? "sort error: " : "syntax error: ") + what),
        kind_(kind),
        line_(line),
        column_(column),
        message_(what) {}

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  // The message without the position prefix.
  const std::string& message() const { return message_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

// Unbound variable or an atom that cannot be evaluated.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown theory/obligation name and similar lookups.
class LookupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gem

#endif  // GEM_ERRORS_HPP
