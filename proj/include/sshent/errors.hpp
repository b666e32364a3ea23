#pragma once

#include <stdexcept>
#include <string>

namespace sshent {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A requested parameter point has |h(k)| (or a single-particle level) at zero.
class GaplessError : public Error {
 public:
  using Error::Error;
};

/// Momentum-space routines need translation invariance.
class DisorderUnsupported : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class OddDimension : public Error {
 public:
  using Error::Error;
};

/// The filled/empty boundary falls inside a degenerate pair of levels.
class DegenerateFillError : public Error {
 public:
  using Error::Error;
};

/// A density matrix violates trace, hermiticity or positivity beyond tolerance.
class InvalidState : public Error {
 public:
  using Error::Error;
};

class NoRoot : public Error {
 public:
  using Error::Error;
};

class ParityError : public Error {
 public:
  using Error::Error;
};

class WindowError : public Error {
 public:
  using Error::Error;
};

class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

/// Invalid model or run configuration (bad field values, wrong family).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace sshent
