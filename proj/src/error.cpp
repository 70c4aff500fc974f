#include "hanfuse/error.hpp"

namespace hanfuse {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::InvalidCode: return "InvalidCode";
    case ErrorKind::NotSingleChar: return "NotSingleChar";
    case ErrorKind::InvalidSyllable: return "InvalidSyllable";
    case ErrorKind::BadHeader: return "BadHeader";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParseFloatError: return "ParseFloatError";
    case ErrorKind::EmptyIntersection: return "EmptyIntersection";
    case ErrorKind::UnknownCharacter: return "UnknownCharacter";
    case ErrorKind::InvalidLetter: return "InvalidLetter";
    case ErrorKind::UnknownInitial: return "UnknownInitial";
    case ErrorKind::KTooLarge: return "KTooLarge";
    case ErrorKind::EmptyNeighborPool: return "EmptyNeighborPool";
    case ErrorKind::UnknownTagFormat: return "UnknownTagFormat";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::EmptySentence: return "EmptySentence";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::StrategyMismatch: return "StrategyMismatch";
    case ErrorKind::TagNotInTagSet: return "TagNotInTagSet";
    case ErrorKind::BadCheckpoint: return "BadCheckpoint";
    case ErrorKind::NumericFailure: return "NumericFailure";
  }
  return "Error";
}

}  // namespace hanfuse
