#pragma once

#include <stdexcept>
#include <string>

namespace bathsense {

/// Raised when an integral cannot be brought within tolerance inside the
/// panel budget, or when a panel can no longer be subdivided.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double error_estimate)
      : std::runtime_error(what), error_estimate_(error_estimate) {}

  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double error_estimate_;
};

}  // namespace bathsense
