#pragma once

#include <stdexcept>
#include <string>

namespace qflab {

// Exit-code classes used by the CLI: 2 config, 3 numeric, 4 budget.
enum class ErrorClass { Config = 2, Numeric = 3, Budget = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), cls_(cls), kind_(std::move(kind)) {}
  ErrorClass error_class() const { return cls_; }
  const std::string& kind() const { return kind_; }

 private:
  ErrorClass cls_;
  std::string kind_;
};

#define QFLAB_ERROR(NAME, CLASS)                                   \
  class NAME : public Error {                                      \
   public:                                                         \
    explicit NAME(const std::string& what)                         \
        : Error(ErrorClass::CLASS, #NAME, what) {}                 \
  };

QFLAB_ERROR(ConfigError, Config)
QFLAB_ERROR(BudgetExceeded, Budget)

QFLAB_ERROR(DegenerateMetric, Numeric)
QFLAB_ERROR(CoincidentValues, Numeric)
QFLAB_ERROR(OrientationViolation, Numeric)
QFLAB_ERROR(ConstructionFailure, Numeric)
QFLAB_ERROR(NonConvergent, Numeric)
QFLAB_ERROR(InsufficientOverlap, Numeric)
QFLAB_ERROR(NotContracting, Numeric)
QFLAB_ERROR(MaxIterExceeded, Numeric)
QFLAB_ERROR(DegenerateNormalization, Numeric)
QFLAB_ERROR(DegenerateProbes, Numeric)
QFLAB_ERROR(EquivarianceViolation, Numeric)
QFLAB_ERROR(NotPositive, Numeric)
QFLAB_ERROR(ChartMismatch, Numeric)
QFLAB_ERROR(ConsistencyFailure, Numeric)
QFLAB_ERROR(CriticalPoint, Numeric)
QFLAB_ERROR(RouteMismatch, Numeric)
QFLAB_ERROR(FlowEscape, Numeric)
QFLAB_ERROR(DegenerateChart, Numeric)
QFLAB_ERROR(SingularShift, Numeric)
QFLAB_ERROR(NotPositiveDefinite, Numeric)

#undef QFLAB_ERROR

}  // namespace qflab
