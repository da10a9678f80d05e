#pragma once

#include <stdexcept>
#include <string>

namespace gisim {

enum class Errc {
  InvalidArgument,
  DisconnectedResult,
  NodeSetMismatch,
  GenerationFailed,
  BudgetExceeded,
  NoSemiProperModel,
  ModelNotProper,
  StrategyInapplicable,
  SpecsNotIndependent,
  NotIsomorphic,
  EncodingOverflow,
  UsageError,
  ParseError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::DisconnectedResult: return "DisconnectedResult";
    case Errc::NodeSetMismatch: return "NodeSetMismatch";
    case Errc::GenerationFailed: return "GenerationFailed";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NoSemiProperModel: return "NoSemiProperModel";
    case Errc::ModelNotProper: return "ModelNotProper";
    case Errc::StrategyInapplicable: return "StrategyInapplicable";
    case Errc::SpecsNotIndependent: return "SpecsNotIndependent";
    case Errc::NotIsomorphic: return "NotIsomorphic";
    case Errc::EncodingOverflow: return "EncodingOverflow";
    case Errc::UsageError: return "UsageError";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace gisim
