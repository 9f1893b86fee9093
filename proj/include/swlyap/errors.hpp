#pragma once

#include <stdexcept>
#include <string>

namespace swlyap {

// Base for every error raised by the library. Callers that only need to
// distinguish "bad input / domain violation" from programming errors can
// catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SWLYAP_DEFINE_ERROR(Name)            \
  class Name : public Error {                \
   public:                                   \
    using Error::Error;                      \
  }

SWLYAP_DEFINE_ERROR(OverflowError);
SWLYAP_DEFINE_ERROR(DegenerateBasisError);
SWLYAP_DEFINE_ERROR(DegenerateError);
SWLYAP_DEFINE_ERROR(UnclassifiableError);
SWLYAP_DEFINE_ERROR(DomainError);
SWLYAP_DEFINE_ERROR(SingularMatrixError);
SWLYAP_DEFINE_ERROR(NoSingularError);
SWLYAP_DEFINE_ERROR(NoSolutionError);
SWLYAP_DEFINE_ERROR(TraceError);
SWLYAP_DEFINE_ERROR(IoError);

#undef SWLYAP_DEFINE_ERROR

// Input parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace swlyap
