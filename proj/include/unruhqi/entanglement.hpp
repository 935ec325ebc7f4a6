#pragma once

#include <array>
#include <string>
#include <vector>

#include "unruhqi/densops.hpp"
#include "unruhqi/state_factory.hpp"

namespace unruhqi {

/// Trace-norm negativity ||rho^PT|| - 1.  `value` is clamped at zero, `raw`
/// keeps the sign of the floating-point result.
struct Negativity {
  double value = 0.0;
  double raw = 0.0;
};

/// All factors belonging to a party in a layout: the party's own factor and
/// its Fock factor when present.
std::vector<std::string> party_factors(const SubsystemLayout& layout, const std::string& party);

/// log2 ||rho^PT||, transposing every factor of `party`.
double log_negativity(const LabeledOperator& rho, const std::string& party);

Negativity trace_norm_negativity(const LabeledOperator& rho, const std::string& party);

/// Blockwise evaluation: sum_k w_k ||block_k^PT|| - 1.  Valid because every
/// block is diagonal in the Fock indices on both sides.
Negativity trace_norm_negativity(const BlockedDensity& b, const std::string& party);
double log_negativity(const BlockedDensity& b, const std::string& party);

/// Smallest eigenvalue of the partial transpose (sign flips at the PPT border).
double min_pt_eigenvalue(const LabeledOperator& rho, const std::string& party);

struct TangleReport {
  std::array<std::string, 3> parties{"A", "B", "C"};
  double pi_a = 0.0, pi_b = 0.0, pi_c = 0.0;
  double n_a_bc = 0.0, n_b_ac = 0.0, n_c_ab = 0.0;  // one-tangles
  double n_ab = 0.0, n_ac = 0.0, n_bc = 0.0;        // pairwise
  double pi = 0.0;
};

/// pi-tangle from trace-norm negativities; one-tangles on the full state,
/// pairwise terms on the two-party reductions.
TangleReport pi_tangle(const BlockedDensity& b);
TangleReport pi_tangle(const LabeledOperator& rho);

}  // namespace unruhqi
