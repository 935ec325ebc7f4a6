#pragma once

// Quantum discord: closed forms for X-states and Werner mixtures, brute-force
// minimization over projective qubit measurements, global (multipartite)
// discord and geometric discord in Hilbert-Schmidt and trace norm.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "unruhqi/densops.hpp"
#include "unruhqi/state_factory.hpp"

namespace unruhqi {

/// Rank-1 projective qubit measurement with outcome states
///   |+> =  cos(theta/2)|up> + e^{i phi} sin(theta/2)|down>
///   |-> = -e^{-i phi} sin(theta/2)|up> + cos(theta/2)|down>
/// The Bloch axis of |+> is (sin theta cos phi, sin theta sin phi, cos theta).
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;

  /// Columns are |+> and |->.
  Eigen::Matrix2cd unitary() const;
  std::array<Eigen::Matrix2cd, 2> projectors() const;
};

struct GridSpec {
  std::size_t theta_steps = 61;
  std::size_t phi_steps = 61;
  std::size_t refinement_rounds = 3;
  double shrink_factor = 0.25;

  void validate() const;
};

enum class DiscordMethod { ClosedForm, BruteForce };

struct CorrelationReport {
  double mutual_information = 0.0;
  double discord = 0.0;
  std::optional<double> geometric_2norm;
  std::optional<double> geometric_1norm;
  MeasurementBasis minimizing_basis;
  DiscordMethod method = DiscordMethod::BruteForce;
};

struct Collapse {
  std::array<double, 2> probabilities{};
  /// Conditional state of the unmeasured factors; empty when p_i < 1e-14.
  std::array<std::optional<DensityOperator>, 2> conditional;
};

inline constexpr double kNegligibleProbability = 1e-14;

/// Measures `factor` (a qubit) of rho in `basis`.
Collapse measure_and_collapse(const DensityOperator& rho, const std::string& factor,
                              const MeasurementBasis& basis);

/// p0 S(rho_{rest|0}) + p1 S(rho_{rest|1}).
double conditional_entropy(const DensityOperator& rho, const std::string& factor,
                           const MeasurementBasis& basis);

/// D(rest|factor) = S(factor) - S(rho) + min_basis conditional_entropy.
CorrelationReport discord_bruteforce(const DensityOperator& rho, const std::string& measured_factor,
                                     const GridSpec& grid = {});

/// Two-qubit X-state with real off-diagonals, basis order |A B> rightmost fastest.
struct XStateParams {
  double rho11 = 0, rho22 = 0, rho33 = 0, rho44 = 0;
  double rho14 = 0, rho23 = 0;

  /// Throws OperatorError unless rho is a two-qubit X-state with real
  /// off-diagonals (other entries below 1e-10).
  static XStateParams from_operator(const DensityOperator& rho);
  Matrix to_matrix() const;
};

/// Intermediates of one measurement candidate (k = cos^2(theta/2), l = 1-k,
/// mu the phase-dependent weight in beta).
struct XStateCandidate {
  double k = 0, l = 0, mu = 0;
  double p0 = 0, p1 = 0;
  double theta0 = 0, theta1 = 0;
  double beta = 0;
  double conditional_entropy = 0;
  MeasurementBasis basis;
};

/// Evaluates the conditional entropy of measuring B for given (k, mu).
XStateCandidate evaluate_xstate_candidate(const XStateParams& x, double k, double mu);

struct XStateDiscord {
  CorrelationReport report;
  std::vector<XStateCandidate> candidates;  // k=l=1/2 (mu = 0 and mu = 1/4), k = 0, k = 1
  std::size_t best = 0;
};

XStateDiscord xstate_discord(const XStateParams& x);

/// Closed form cross-checked by brute force.  `beaten_by` is the amount by
/// which brute force undercuts every candidate (0 when the closed form holds).
struct CheckedXStateDiscord {
  XStateDiscord closed_form;
  CorrelationReport brute_force;
  double beaten_by = 0.0;
  bool closed_form_optimal(double tol = 1e-4) const { return beaten_by <= tol; }
};
CheckedXStateDiscord xstate_discord_checked(const XStateParams& x, const GridSpec& grid = {});

/// (1/4) log2[(1+3p)^(1+3p) (1-p)^(1-p) / (1+p)^(2(1+p))].
double werner_discord_formula(MixingProbability p);

/// (1/8) log2[(1+7p)^(1+7p) (1-p)^(1-p) / (1+3p)^(2(1+3p))].
double tripartite_global_discord_formula(MixingProbability p);

enum class GlobalSearch {
  Restricted,  // theta_1 = 0 and all phi_j = 0; grid over the remaining thetas
  Full,        // coordinate search over every (theta_j, phi_j)
};

struct GlobalDiscordResult {
  double value = 0.0;
  std::vector<MeasurementBasis> bases;  // one per qubit factor
  double theta_grid_step = 0.0;         // coarse grid spacing used
};

/// min over product measurements of
///   S(phi(rho)) - S(rho) - sum_j [S(phi_j(rho_j)) - S(rho_j)].
/// Every factor must be a qubit.
GlobalDiscordResult global_discord(const DensityOperator& rho, const GridSpec& grid = {},
                                   GlobalSearch search = GlobalSearch::Restricted);

/// Objective above at a fixed product measurement.
double global_discord_at(const DensityOperator& rho, std::span<const MeasurementBasis> bases);

/// Outcome weights 1/2 cos^2 cos^2, ... of the pure GHZ-like helicity state
/// under (theta_1 = 0, theta_2, theta_3), sorted descending.
std::vector<double> ghz_dephased_weights(double theta2, double theta3);

/// sum_i (pi_i ⊗ 1) rho (pi_i ⊗ 1) with pi_i measuring `factor`.
Matrix dephase(const LabeledOperator& rho, const std::string& factor, const MeasurementBasis& basis);

struct GeometricDiscord {
  double value = 0.0;
  MeasurementBasis axis;
};

/// min over axes of Tr[(rho - rho')^2].
GeometricDiscord geometric_discord_2norm(const DensityOperator& rho,
                                         const std::string& measured_factor,
                                         const GridSpec& grid = {});

/// min over axes of ||rho - rho'||_1.
GeometricDiscord geometric_discord_1norm(const DensityOperator& rho,
                                         const std::string& measured_factor,
                                         const GridSpec& grid = {});

/// min over product axes of Tr(rho^2) - Tr(rho'^2), every qubit measured.
struct GlobalGeometricDiscord {
  double value = 0.0;
  std::vector<MeasurementBasis> axes;
};
GlobalGeometricDiscord geometric_discord_global(const DensityOperator& rho,
                                                const GridSpec& grid = {});

/// Brute-force discord, mutual information and both geometric measures.
CorrelationReport correlation_report(const DensityOperator& rho, const std::string& measured_factor,
                                     const GridSpec& grid = {});

struct UnruhDiscord {
  CorrelationReport closed_form;
  CorrelationReport brute_force;
};

/// Discord of the beyond-single-mode Alice-Bob state, measured on B.
UnruhDiscord unruh_discord(AccelerationParam omega, UnruhWeights weights, MixingProbability p,
                           const GridSpec& grid = {}, const TruncationPolicy& policy = {});

}  // namespace unruhqi
