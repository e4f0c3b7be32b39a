#pragma once

#include <stdexcept>
#include <string>

namespace orbitobs {

// Exit-code contract shared by the library and the CLI:
//   0 success, 1 invalid input, 2 budget exhaustion, 3 internal invariant violation.
enum class ErrorKind {
    invalid_input = 1,
    budget_exhausted = 2,
    internal = 3,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define ORBITOBS_DEFINE_ERROR(Name, Kind)                                        \
    class Name : public Error {                                                  \
    public:                                                                      \
        explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
    }

ORBITOBS_DEFINE_ERROR(ZeroInput, invalid_input);
ORBITOBS_DEFINE_ERROR(RootOfUnityInput, invalid_input);
ORBITOBS_DEFINE_ERROR(BadReductionPrime, invalid_input);
ORBITOBS_DEFINE_ERROR(PreperiodicPoint, invalid_input);
ORBITOBS_DEFINE_ERROR(UnsupportedCase, invalid_input);
ORBITOBS_DEFINE_ERROR(TorsionPoint, invalid_input);
ORBITOBS_DEFINE_ERROR(SingularReduction, invalid_input);
ORBITOBS_DEFINE_ERROR(FactorizationTimeout, budget_exhausted);
ORBITOBS_DEFINE_ERROR(InsufficientWitnesses, budget_exhausted);
ORBITOBS_DEFINE_ERROR(CoordinateOverflow, budget_exhausted);
ORBITOBS_DEFINE_ERROR(InternalInvariantViolation, internal);

#undef ORBITOBS_DEFINE_ERROR

} // namespace orbitobs
