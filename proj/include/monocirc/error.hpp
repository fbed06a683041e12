#pragma once

#include <stdexcept>
#include <string>

namespace monocirc {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed circuit, bad word length, missing oracle, broken tally promise.
class CircuitError : public Error {
  public:
    using Error::Error;
};

/// Invalid machine description or configuration-graph construction failure.
class MachineError : public Error {
  public:
    using Error::Error;
};

class CompileError : public Error {
  public:
    using Error::Error;
};

class ReductionError : public Error {
  public:
    using Error::Error;
};

/// A file or JSON document does not match the expected schema. The message
/// names the offending field.
class FormatError : public Error {
  public:
    using Error::Error;
};

}  // namespace monocirc
