#pragma once

#include <stdexcept>
#include <string>

namespace mhrev {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define MHREV_DEFINE_ERROR(Name)            \
  struct Name : Error {                     \
    using Error::Error;                     \
  }

MHREV_DEFINE_ERROR(InvariantViolation);
MHREV_DEFINE_ERROR(ReducibleChain);
MHREV_DEFINE_ERROR(NonPositiveStationary);
MHREV_DEFINE_ERROR(NotStationary);
MHREV_DEFINE_ERROR(DimensionMismatch);
MHREV_DEFINE_ERROR(NotSelfAdjoint);
MHREV_DEFINE_ERROR(NoConvergence);
MHREV_DEFINE_ERROR(PreconditionViolated);
MHREV_DEFINE_ERROR(ReconstructionMismatch);
MHREV_DEFINE_ERROR(ZeroGap);
MHREV_DEFINE_ERROR(SingularResolvent);
MHREV_DEFINE_ERROR(BadTruncation);
MHREV_DEFINE_ERROR(AssumptionViolated);
MHREV_DEFINE_ERROR(DegenerateSet);
MHREV_DEFINE_ERROR(TooLarge);
MHREV_DEFINE_ERROR(BadParams);
MHREV_DEFINE_ERROR(NotReversibleBase);
MHREV_DEFINE_ERROR(ParseError);

#undef MHREV_DEFINE_ERROR

}  // namespace mhrev
