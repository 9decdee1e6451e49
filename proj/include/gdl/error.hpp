#pragma once

#include <stdexcept>
#include <string>

namespace gdl {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Position or interval outside the structure's domain.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Malformed input to a builder (unsorted points, empty documents, ...).
class BuildError : public Error {
 public:
  using Error::Error;
};

// Edit script that cannot be replayed.
class ScriptError : public Error {
 public:
  using Error::Error;
};

// Structural grammar violation (cycles, bad rule references).
class GrammarError : public Error {
 public:
  using Error::Error;
};

// Auxiliary arrays disagree with the data they describe.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// A value outside the declared domain, e.g. a document id above D.
class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Serialized data failed validation (bad magic, checksum, truncation).
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace gdl
