#pragma once

#include <stdexcept>
#include <string>

namespace qnm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define QNM_DEFINE_ERROR(NAME)                  \
  struct NAME : Error {                         \
    using Error::Error;                         \
  };

QNM_DEFINE_ERROR(NotHermitian)
QNM_DEFINE_ERROR(NotPSD)
QNM_DEFINE_ERROR(NotState)
QNM_DEFINE_ERROR(UnsupportedRHS)
QNM_DEFINE_ERROR(BadSubsystem)
QNM_DEFINE_ERROR(DimensionMismatch)
QNM_DEFINE_ERROR(DimensionGuard)
QNM_DEFINE_ERROR(ModelEvaluation)
QNM_DEFINE_ERROR(DegenerateSpectrum)
QNM_DEFINE_ERROR(GaugeAlignment)
QNM_DEFINE_ERROR(StepTooLarge)
QNM_DEFINE_ERROR(KernelMismatch)
QNM_DEFINE_ERROR(NotRateOnly)
QNM_DEFINE_ERROR(ZeroRate)
QNM_DEFINE_ERROR(NotHermitianJumps)
QNM_DEFINE_ERROR(NotShortTime)
QNM_DEFINE_ERROR(NotDistinguishable)
QNM_DEFINE_ERROR(DarkChannel)
QNM_DEFINE_ERROR(BadIndex)
QNM_DEFINE_ERROR(OddN)
QNM_DEFINE_ERROR(GridTooCoarse)
QNM_DEFINE_ERROR(FitDegenerate)
QNM_DEFINE_ERROR(BudgetExceeded)
QNM_DEFINE_ERROR(ConfigError)

#undef QNM_DEFINE_ERROR

}  // namespace qnm
