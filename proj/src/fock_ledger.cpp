#include "unruhqi/fock_ledger.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "unruhqi/errors.hpp"

namespace unruhqi {

AccelerationParam::AccelerationParam(double omega) : omega_(omega) {
  if (!std::isfinite(omega) || omega <= 0.0) {
    throw DomainError("acceleration parameter omega must be finite and positive, got " +
                      std::to_string(omega));
  }
}

double AccelerationParam::ratio() const noexcept {
  return std::exp(-2.0 * std::numbers::pi * omega_);
}

void TruncationPolicy::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw DomainError("truncation epsilon must lie in (0, 1)");
  }
  if (hard_cap < 1) throw DomainError("truncation hard_cap must be >= 1");
}

double FockWeightSeries::captured_mass() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

double fock_weight(std::size_t n, AccelerationParam omega) {
  const double x = omega.ratio();
  // 1 - x loses digits for small omega; expm1 keeps them.
  const double one_minus_x = -std::expm1(-2.0 * std::numbers::pi * omega.omega());
  const double n_real = static_cast<double>(n);
  return one_minus_x * one_minus_x * std::pow(x, n_real) * (n_real + 1.0);
}

double fock_tail(std::size_t cutoff, AccelerationParam omega) {
  const double x = omega.ratio();
  const double one_minus_x = -std::expm1(-2.0 * std::numbers::pi * omega.omega());
  const double m = static_cast<double>(cutoff) + 1.0;
  return std::pow(x, m) * (m * one_minus_x + 1.0);
}

FockWeightSeries weight_series_at(AccelerationParam omega, std::size_t cutoff) {
  FockWeightSeries series{omega, cutoff, {}, fock_tail(cutoff, omega)};
  series.weights.reserve(cutoff + 1);
  for (std::size_t n = 0; n <= cutoff; ++n) series.weights.push_back(fock_weight(n, omega));
  return series;
}

FockWeightSeries weight_series(AccelerationParam omega, const TruncationPolicy& policy) {
  policy.validate();
  // The tail is strictly decreasing in the cutoff, so a linear scan finds the
  // smallest admissible one.
  for (std::size_t n = 0; n <= policy.hard_cap; ++n) {
    if (fock_tail(n, omega) <= policy.epsilon) return weight_series_at(omega, n);
  }
  const double achievable = fock_tail(policy.hard_cap, omega);
  throw TruncationError("Fock series for omega=" + std::to_string(omega.omega()) +
                            " needs a cutoff above hard_cap=" + std::to_string(policy.hard_cap) +
                            "; achievable tail " + std::to_string(achievable),
                        achievable);
}

}  // namespace unruhqi
