#pragma once

// Density operators of helicity-entangled photon states seen by uniformly
// accelerated observers, after tracing the unobserved Rindler region.
//
// All traced states are diagonal in the Fock indices, so they are stored
// blockwise: one small helicity matrix per Fock (multi-)index together with
// its geometric weight.

#include <cstddef>
#include <string>
#include <vector>

#include "unruhqi/densops.hpp"
#include "unruhqi/fock_ledger.hpp"

namespace unruhqi {

enum class MomentumSign { Plus, Minus };
enum class Spin { Up, Down };

struct HelicityLabel {
  MomentumSign momentum_sign;
  Spin spin;

  std::string to_string() const;
  friend bool operator==(const HelicityLabel&, const HelicityLabel&) = default;
};

/// Werner mixing weight p in [0, 1].
class MixingProbability {
 public:
  explicit MixingProbability(double p);
  double value() const noexcept { return p_; }

 private:
  double p_;
};

/// Unruh-mode weights |q_R|^2 and |q_L|^2 = 1 - |q_R|^2.
class UnruhWeights {
 public:
  explicit UnruhWeights(double qR_sq);
  double qR_sq() const noexcept { return qR_sq_; }
  double qL_sq() const noexcept { return 1.0 - qR_sq_; }

 private:
  double qR_sq_;
};

struct FockBlock {
  std::vector<std::size_t> fock_index;  // one entry per Fock factor
  double weight = 0.0;
  Matrix block;  // unit-trace helicity matrix
};

struct BlockedDensity {
  SubsystemLayout helicity_layout;
  std::vector<std::string> fock_owners;  // helicity factor owning each Fock index entry
  std::vector<std::size_t> fock_extent;  // number of Fock levels per entry
  std::vector<FockBlock> terms;          // several terms may share a Fock index
  double tail_bound = 0.0;               // mass dropped by truncation

  double captured_mass() const;
  std::size_t dense_dim() const;
  /// Terms sharing a Fock index merged into one, ordered by index.
  BlockedDensity coalesced() const;
};

/// Name of the Fock factor belonging to helicity factor `party` in dense layouts.
std::string fock_factor_name(const std::string& party);

/// Helicity block of the bipartite Werner state over (A, B):
/// (1-p)/4 I + p |psi><psi|,  psi = (|up,down> + |down,up>)/sqrt 2.
Matrix bipartite_helicity_block(MixingProbability p);

/// Tripartite analogue over (A, B, C):
/// (1-p)/8 I + p |psi><psi|,  psi = (|up,down,down> + |down,up,up>)/sqrt 2.
Matrix tripartite_helicity_block(MixingProbability p);

/// Basis labels ("A+↑ B−↓", ...) for the helicity space of a blocked density.
std::vector<std::string> helicity_basis_labels(const SubsystemLayout& helicity_layout);

BlockedDensity bipartite_werner(AccelerationParam omega, MixingProbability p,
                                const TruncationPolicy& policy = {});

BlockedDensity tripartite_werner(AccelerationParam omega_b, AccelerationParam omega_c,
                                 MixingProbability p, const TruncationPolicy& policy = {});

/// Alice-Bob state beyond the single-mode approximation.  For every n the
/// |q_L|^2 family sits at Bob's Fock index n and the |q_R|^2 family at n + 1;
/// no q_L q_R coherences are kept.
BlockedDensity unruh_bipartite(AccelerationParam omega, UnruhWeights weights, MixingProbability p,
                               const TruncationPolicy& policy = {});

/// Same family with every block forced to a given Fock cutoff (test/oracle use).
BlockedDensity bipartite_werner_at(AccelerationParam omega, MixingProbability p, std::size_t cutoff);
BlockedDensity tripartite_werner_at(AccelerationParam omega_b, AccelerationParam omega_c,
                                    MixingProbability p, std::size_t cutoff);
BlockedDensity unruh_bipartite_at(AccelerationParam omega, UnruhWeights weights, MixingProbability p,
                                  std::size_t cutoff);

/// Fock indices summed out: sum_k w_k block_k / captured mass.  Throws
/// OperatorError if blocks differ in shape.
DensityOperator effective_matrix(const BlockedDensity& b);

inline constexpr std::size_t kDefaultDenseCap = 4096;

/// Full operator on Fock ⊗ helicity factors.  Each party X with a Fock index
/// gets a factor fock_factor_name(X) placed just before X.  Normalized by the
/// captured mass.  Throws LayoutError when the dimension exceeds `cap`.
DensityOperator dense_expand(const BlockedDensity& b, std::size_t cap = kDefaultDenseCap);

/// Union of weight-scaled block spectra (normalized weights), descending.
Spectrum blocked_spectrum(const BlockedDensity& b);

/// Von Neumann entropy computed blockwise.
double blocked_entropy(const BlockedDensity& b);

/// Traces out helicity factor `party` and its Fock index, if any.
BlockedDensity trace_out(const BlockedDensity& b, const std::string& party);

/// Gap between the block-diagonal beyond-single-mode matrix and a literal trace over
/// region II of the Unruh one-particle state, which also carries
/// q_L q_R coherences between region-I Fock levels n and n + 2.
struct UnruhTraceGap {
  double trace_norm_gap = 0.0;
  double hs_gap = 0.0;
  double max_coherence = 0.0;
  std::size_t cutoff = 0;
};
UnruhTraceGap unruh_literal_trace_gap(AccelerationParam omega, UnruhWeights weights,
                                      MixingProbability p, const TruncationPolicy& policy = {});

}  // namespace unruhqi
