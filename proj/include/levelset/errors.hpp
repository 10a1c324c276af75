#pragma once

#include <stdexcept>
#include <string>

namespace levelset {

// Every engine error carries a stable name as the message prefix so the CLI
// can surface it on exit.
class Error : public std::runtime_error {
 public:
  Error(const std::string& name, const std::string& detail)
      : std::runtime_error(detail.empty() ? name : name + ": " + detail),
        name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define LEVELSET_DEFINE_ERROR(Name)                         \
  class Name : public Error {                               \
   public:                                                  \
    explicit Name(const std::string& detail = std::string{}) \
        : Error(#Name, detail) {}                           \
  };

LEVELSET_DEFINE_ERROR(DepthLimitExceeded)
LEVELSET_DEFINE_ERROR(CubeBudgetExceeded)
LEVELSET_DEFINE_ERROR(OracleFailure)
LEVELSET_DEFINE_ERROR(InvalidGridPoint)
LEVELSET_DEFINE_ERROR(OutOfCube)
LEVELSET_DEFINE_ERROR(UnknownSmoothness)
LEVELSET_DEFINE_ERROR(AccuracyTooLarge)
LEVELSET_DEFINE_ERROR(NoLevelSetSampler)
LEVELSET_DEFINE_ERROR(DegenerateInput)
LEVELSET_DEFINE_ERROR(EmptyInflatedSet)
LEVELSET_DEFINE_ERROR(NondeterministicAlgorithm)
LEVELSET_DEFINE_ERROR(NoUnqueriedCell)
LEVELSET_DEFINE_ERROR(ConfigError)

#undef LEVELSET_DEFINE_ERROR

}  // namespace levelset
