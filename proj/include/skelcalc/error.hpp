#pragma once

#include <stdexcept>
#include <string>

namespace skc {

enum class ErrorKind {
  InvalidDecoration,
  DisconnectedFromS,
  NonTreeAttachment,
  UnknownVertex,
  UnknownBranch,
  NotAPath,
  CoreNotContained,
  NotOpenSubcomplex,
  NotATree,
  DegenerateSingleVertex,
  ComponentNotTree,
  GenusZeroProjectiveComponent,
  IndexOutOfRange,
  InvalidRank,
  HypothesisFailed,
  InvalidW,
  BudgetExceeded,
  InfeasibleParams,
  GammaDoesNotContainSkeleton,
  ParseError,
  ValidationError,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& what)
      : std::runtime_error(std::string(kind_name(k)) + ": " + what), kind_(k) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace skc
