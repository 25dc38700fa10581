#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "irsbf/model.hpp"

namespace irsbf {

class PowerIterationError : public std::runtime_error {
 public:
  explicit PowerIterationError(double last_estimate)
      : std::runtime_error("power iteration did not converge (last estimate " +
                           std::to_string(last_estimate) + ")"),
        last_estimate_(last_estimate) {}
  double last_estimate() const noexcept { return last_estimate_; }

 private:
  double last_estimate_;
};

struct EigenPair {
  double value = 0.0;
  CVec vector;
  int iterations = 0;
};

inline constexpr std::uint64_t kPowerIterationSeed = 0x5eedf00dULL;

/// Dominant eigenpair of a Hermitian PSD matrix. Stops when the Rayleigh
/// quotient changes by less than tol relative. `start` (if non-empty and
/// nonzero) replaces the seeded random start vector.
EigenPair dominant_eigenpair(const CMat& a, double tol, int max_iter,
                             const CVec& start = CVec(),
                             std::uint64_t seed = kPowerIterationSeed);

double lambda_max_power_iteration(const CMat& omega, double tol = 1e-10, int max_iter = 10000);

}  // namespace irsbf
