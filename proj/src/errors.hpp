#pragma once

#include <stdexcept>
#include <string>

namespace voxplore {

enum class Err {
  InvalidDims,
  InvalidParams,
  InvalidArgument,
  OriginOutOfBounds,
  PoseInsideObstacle,
  KeyOutOfRange,
  ScanOutOfBounds,
  NoPath,
  StartNotFree,
  GoalNotFree,
  DegenerateDistance,
  CorrectionFailed,
  ParseError,
  ValidationError,
  FrameMismatch,
  ScenarioInvalid,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void raise(Err code, const std::string& what) { throw Error(code, what); }

inline const char* err_name(Err code) {
  switch (code) {
    case Err::InvalidDims: return "InvalidDims";
    case Err::InvalidParams: return "InvalidParams";
    case Err::InvalidArgument: return "InvalidArgument";
    case Err::OriginOutOfBounds: return "OriginOutOfBounds";
    case Err::PoseInsideObstacle: return "PoseInsideObstacle";
    case Err::KeyOutOfRange: return "KeyOutOfRange";
    case Err::ScanOutOfBounds: return "ScanOutOfBounds";
    case Err::NoPath: return "NoPath";
    case Err::StartNotFree: return "StartNotFree";
    case Err::GoalNotFree: return "GoalNotFree";
    case Err::DegenerateDistance: return "DegenerateDistance";
    case Err::CorrectionFailed: return "CorrectionFailed";
    case Err::ParseError: return "ParseError";
    case Err::ValidationError: return "ValidationError";
    case Err::FrameMismatch: return "FrameMismatch";
    case Err::ScenarioInvalid: return "ScenarioInvalid";
    case Err::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace voxplore
