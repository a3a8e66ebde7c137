#pragma once

#include <stdexcept>

namespace snsqkd {

/// The observations or intensity pair violate a precondition of the analytic
/// decoy bounds (ratio condition, non-positive denominator, infeasible LP).
/// Callers treat the offending candidate as infeasible rather than fatal.
class validity_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A series or solver failed to converge within its policy limits, or a
/// truncated state's tail weight exceeds the allowed budget.
class numeric_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace snsqkd
