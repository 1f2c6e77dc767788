#pragma once

#include <stdexcept>
#include <string>

namespace smv {

// Base for all library errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Record violates an ingestion invariant (length mismatch, non-finite score,
// label missing from the label set).
struct ValidationError : Error {
  using Error::Error;
};

// Coverage requested on a map with no attribution mass (or no positive mass
// for the positive-only variant).
struct ZeroMassError : Error {
  using Error::Error;
};

struct InvalidWindowError : Error {
  using Error::Error;
};

struct WindowTooLargeError : Error {
  using Error::Error;
};

struct EmptyCandidateError : Error {
  using Error::Error;
};

struct DegenerateSampleError : Error {
  using Error::Error;
};

struct NoSpansError : Error {
  using Error::Error;
};

struct InsufficientRecordsError : Error {
  using Error::Error;
};

// Malformed input file; carries a 1-based line number when known.
struct ParseError : Error {
  ParseError(const std::string& what, size_t line_no = 0)
      : Error(line_no ? "line " + std::to_string(line_no) + ": " + what : what),
        line(line_no) {}
  size_t line;
};

struct ArityMismatchError : Error {
  using Error::Error;
};

struct NoTemplateForArityError : Error {
  using Error::Error;
};

struct DatasetMismatchError : Error {
  using Error::Error;
};

struct EndpointError : Error {
  using Error::Error;
};

struct AuthError : Error {
  using Error::Error;
};

struct NoMentionsError : Error {
  using Error::Error;
};

struct AlignmentError : Error {
  using Error::Error;
};

}  // namespace smv
