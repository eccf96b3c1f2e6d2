#pragma once

#include <stdexcept>
#include <string>

namespace qlin {

/* Error taxonomy.
 *
 * Everything thrown by this library derives from qlin::Error.  Input and
 * contract violations get their own types so callers can react precisely.
 * Falsification is different in kind: it means an exact identity that the
 * code re-checks at runtime did not hold, i.e. an internal bug, never a
 * malformed input.
 */

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

#define QLIN_ERROR_TYPE(Name)                              \
  class Name : public Error {                              \
   public:                                                 \
    explicit Name(const std::string& what_arg)             \
        : Error(std::string(#Name) + ": " + what_arg) {}   \
  };

QLIN_ERROR_TYPE(NotPrime)
QLIN_ERROR_TYPE(NotIrreducible)
QLIN_ERROR_TYPE(DegreeMismatch)
QLIN_ERROR_TYPE(FieldMismatch)
QLIN_ERROR_TYPE(DivisionByZero)
QLIN_ERROR_TYPE(NotInTower)
QLIN_ERROR_TYPE(FieldTooSmall)
QLIN_ERROR_TYPE(DuplicateAbscissa)
QLIN_ERROR_TYPE(TooFewPoints)
QLIN_ERROR_TYPE(NotMonic)
QLIN_ERROR_TYPE(NoRelation)
QLIN_ERROR_TYPE(InsufficientTerms)
QLIN_ERROR_TYPE(InsufficientSeeds)
QLIN_ERROR_TYPE(DegreeTooLarge)
QLIN_ERROR_TYPE(InvalidInstance)
QLIN_ERROR_TYPE(Unsupported)
QLIN_ERROR_TYPE(Falsification)

#undef QLIN_ERROR_TYPE

class ParseError : public Error {
 public:
  std::size_t line;
  std::size_t column;
  ParseError(std::size_t line_no, std::size_t col_no, const std::string& what_arg)
      : Error("ParseError at " + std::to_string(line_no) + ":" +
              std::to_string(col_no) + ": " + what_arg),
        line(line_no),
        column(col_no) {}
};

}  // namespace qlin
