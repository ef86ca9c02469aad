#pragma once

#include <stdexcept>
#include <string>

namespace rwc {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
  virtual const char* kind() const noexcept { return "Error"; }
};

#define RWC_DEFINE_ERROR(Name)                                          \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    const char* kind() const noexcept override { return #Name; }        \
  };

RWC_DEFINE_ERROR(PoleError)
RWC_DEFINE_ERROR(DomainError)
RWC_DEFINE_ERROR(OverflowRisk)
RWC_DEFINE_ERROR(TruncationError)
RWC_DEFINE_ERROR(ResolutionError)
RWC_DEFINE_ERROR(ContourError)
RWC_DEFINE_ERROR(ConvergenceError)
RWC_DEFINE_ERROR(SchemaError)
RWC_DEFINE_ERROR(InvariantError)
RWC_DEFINE_ERROR(IoError)
RWC_DEFINE_ERROR(UsageError)

#undef RWC_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& what, long line)
      : Error("ParseError: line " + std::to_string(line) + ": " + what), line_(line) {}
  const char* kind() const noexcept override { return "ParseError"; }
  long line() const noexcept { return line_; }

 private:
  long line_;
};

}  // namespace rwc
