#pragma once

#include <stdexcept>
#include <string>

namespace hanfuse {

enum class ErrorKind {
  // file / table ingestion
  IoError,
  MalformedLine,
  InvalidCode,
  NotSingleChar,
  InvalidSyllable,
  BadHeader,
  DimensionMismatch,
  ParseFloatError,
  EmptyIntersection,
  // encoders
  UnknownCharacter,
  InvalidLetter,
  UnknownInitial,
  // similarity / augmentation
  KTooLarge,
  EmptyNeighborPool,
  // corpus / tagger
  UnknownTagFormat,
  EmptyCorpus,
  EmptySentence,
  LengthMismatch,
  ShapeMismatch,
  StrategyMismatch,
  TagNotInTagSet,
  BadCheckpoint,
  // runtime numerics (maps to exit code 3 in the CLI)
  NumericFailure,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

// Table lookups either throw (Strict) or fall back to a zero vector (Lenient).
enum class Mode { Strict, Lenient };

}  // namespace hanfuse
