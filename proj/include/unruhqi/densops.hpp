#pragma once

// Dense Hermitian operator algebra over labelled tensor factors.
//
// Composite indices enumerate the rightmost factor fastest, so for layout
// (A, B) with dims (dA, dB) the basis state |a, b> sits at index a*dB + b.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace unruhqi {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

namespace tolerance {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-10;
}  // namespace tolerance

class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  SubsystemLayout(std::vector<std::string> names, std::vector<std::size_t> dims);

  /// Layout of `count` qubits named by the given labels.
  static SubsystemLayout qubits(std::initializer_list<std::string> names);

  std::size_t factor_count() const noexcept { return names_.size(); }
  std::size_t total_dim() const noexcept;
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }

  bool contains(const std::string& name) const noexcept;
  /// Throws LayoutError for unknown labels.
  std::size_t position(const std::string& name) const;
  std::size_t dim_of(const std::string& name) const { return dims_[position(name)]; }

  SubsystemLayout without(std::span<const std::string> names) const;
  SubsystemLayout concat(const SubsystemLayout& other) const;

  friend bool operator==(const SubsystemLayout&, const SubsystemLayout&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> dims_;
};

/// Hermitian operator with a subsystem layout.  No trace or positivity
/// requirement (partial transposes and differences of states live here).
struct LabeledOperator {
  Matrix matrix;
  SubsystemLayout layout;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
};

/// Hermitian, unit-trace, positive semidefinite operator.  Every instance has
/// passed those checks at construction.
class DensityOperator {
 public:
  /// Throws OperatorError when a check fails, LayoutError on dimension mismatch.
  DensityOperator(Matrix matrix, SubsystemLayout layout);

  const Matrix& matrix() const noexcept { return op_.matrix; }
  const SubsystemLayout& layout() const noexcept { return op_.layout; }
  const LabeledOperator& op() const noexcept { return op_; }
  std::size_t dim() const noexcept { return op_.dim(); }

  operator const LabeledOperator&() const noexcept { return op_; }  // NOLINT

 private:
  LabeledOperator op_;
};

struct Spectrum {
  std::vector<double> eigenvalues;  // descending

  double sum() const;
};

/// Max |H(i,j) - conj(H(j,i))|.
double hermiticity_defect(const Matrix& h);

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b);
LabeledOperator tensor_product(const LabeledOperator& a, const LabeledOperator& b);

LabeledOperator partial_trace(const LabeledOperator& op, std::span<const std::string> factors);
LabeledOperator partial_trace(const LabeledOperator& op, const std::string& factor);
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::string> factors);
DensityOperator partial_trace(const DensityOperator& rho, const std::string& factor);

/// Transposes the listed factors.  An involution; trace and Hermiticity are kept.
LabeledOperator partial_transpose(const LabeledOperator& op, std::span<const std::string> factors);
LabeledOperator partial_transpose(const LabeledOperator& op, const std::string& factor);

/// Real eigenvalues of a Hermitian matrix, sorted descending.  Throws
/// OperatorError if the input is not Hermitian within 1e-10 (relative to its
/// largest entry).
Spectrum spectrum(const Matrix& h);
inline Spectrum spectrum(const LabeledOperator& h) { return spectrum(h.matrix); }

/// -sum x log2 x over eigenvalues, with 0 log 0 = 0 and eigenvalues in
/// (-1e-10, 0) clamped to zero.  Throws OperatorError below -1e-10.
double entropy_of_eigenvalues(std::span<const double> eigenvalues);

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityOperator& rho);

double trace_norm(const Matrix& h);
inline double trace_norm(const LabeledOperator& h) { return trace_norm(h.matrix); }

/// Tr(H^2) = sum |H_ij|^2 for Hermitian H.
double hs_norm_sq(const Matrix& h);
inline double hs_norm_sq(const LabeledOperator& h) { return hs_norm_sq(h.matrix); }

/// S(dephased) - S(rho).  The caller guarantees `dephased` is a pinching of rho.
double measured_relative_entropy(const DensityOperator& rho, const DensityOperator& dephased);

/// Splits composite indices into the listed factors and the rest, each
/// enumerated rightmost-fastest: index = rest_offset[r] + selected_offset[s].
struct IndexSplit {
  std::vector<std::size_t> selected_offset;
  std::vector<std::size_t> rest_offset;
};
IndexSplit split_indices(const SubsystemLayout& layout, std::span<const std::string> selected);

/// Embeds a single-factor operator as op ⊗ identity on all other factors.
Matrix embed(const Matrix& local, const SubsystemLayout& layout, const std::string& factor);

}  // namespace unruhqi
