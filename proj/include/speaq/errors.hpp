#pragma once

#include <stdexcept>
#include <string>

namespace speaq {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No bijection avoids every forbidden entry of a cost matrix.
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Brute-force enumeration requested for a matrix larger than the cap.
class SizeExceededError : public Error {
 public:
  using Error::Error;
};

/// The requested group count cannot be populated by the distribution.
class EmptyGroupError : public Error {
 public:
  using Error::Error;
};

/// Predicate id or query index outside any group.
class UnknownIdError : public Error {
 public:
  using Error::Error;
};

/// Class id outside the probability vector's class space.
class UnknownClassError : public Error {
 public:
  using Error::Error;
};

/// More ground truths than query capacity in some assignment domain.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A null GT where a real triplet is required.
class NullGtError : public Error {
 public:
  using Error::Error;
};

/// Paired lists whose lengths must agree do not.
class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

/// Malformed file content; the message names the offending line or record.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input with illegal values or unknown keys.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure (missing file, unwritable directory).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace speaq
