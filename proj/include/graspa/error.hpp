#pragma once

#include <stdexcept>
#include <string>

namespace graspa {

/// Categories for everything that can go wrong while loading or scoring
/// benchmark data. Tests dispatch on the kind, messages carry the element
/// path or file context for humans.
enum class ErrorKind {
  Io,
  Syntax,
  Schema,
  Semantic,
  Format,
  DegenerateMesh,
  CyclicKinematics,
  OutOfBoard,
  EmptyRegion,
  UnknownJoint,
  InitialPenetration,
  TrialCountMismatch,
  Range,
  Modality,
  LengthMismatch,
  Usage,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Io: return "io";
    case ErrorKind::Syntax: return "syntax";
    case ErrorKind::Schema: return "schema";
    case ErrorKind::Semantic: return "semantic";
    case ErrorKind::Format: return "format";
    case ErrorKind::DegenerateMesh: return "degenerate-mesh";
    case ErrorKind::CyclicKinematics: return "cyclic-kinematics";
    case ErrorKind::OutOfBoard: return "out-of-board";
    case ErrorKind::EmptyRegion: return "empty-region";
    case ErrorKind::UnknownJoint: return "unknown-joint";
    case ErrorKind::InitialPenetration: return "initial-penetration";
    case ErrorKind::TrialCountMismatch: return "trial-count-mismatch";
    case ErrorKind::Range: return "range";
    case ErrorKind::Modality: return "modality";
    case ErrorKind::LengthMismatch: return "length-mismatch";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

}  // namespace graspa
