#pragma once

// Geometric Fock-number weights produced by tracing a Minkowski one-particle
// state over the unobserved Rindler wedge, with exact tail bounds.

#include <cstddef>
#include <vector>

namespace unruhqi {

/// Dimensionless acceleration parameter omega = E/a.  Large omega is the
/// inertial limit, omega -> 0+ is infinite acceleration.
class AccelerationParam {
 public:
  explicit AccelerationParam(double omega);

  double omega() const noexcept { return omega_; }

  /// Boltzmann-like ratio exp(-2 pi omega).
  double ratio() const noexcept;

  friend bool operator==(const AccelerationParam&, const AccelerationParam&) = default;

 private:
  double omega_;
};

struct TruncationPolicy {
  double epsilon = 1e-12;
  std::size_t hard_cap = 512;

  /// Throws DomainError unless 0 < epsilon < 1 and hard_cap >= 1.
  void validate() const;
};

struct FockWeightSeries {
  AccelerationParam omega;
  std::size_t cutoff = 0;
  std::vector<double> weights;  // w_0 .. w_cutoff
  double tail_bound = 0.0;      // exact mass of w_{cutoff+1} ...

  double captured_mass() const;
};

/// w_n = (1 - x)^2 x^n (n + 1),  x = exp(-2 pi omega).
double fock_weight(std::size_t n, AccelerationParam omega);

/// Exact tail sum_{n > cutoff} w_n = x^(N+1) ((N+1)(1-x) + 1).
double fock_tail(std::size_t cutoff, AccelerationParam omega);

/// Smallest cutoff whose exact tail is <= policy.epsilon.  Throws
/// TruncationError when that cutoff would exceed policy.hard_cap.
FockWeightSeries weight_series(AccelerationParam omega, const TruncationPolicy& policy = {});

/// Series truncated at a fixed cutoff, ignoring any tail requirement.
FockWeightSeries weight_series_at(AccelerationParam omega, std::size_t cutoff);

}  // namespace unruhqi
