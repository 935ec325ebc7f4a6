#include "unruhqi/densops.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>

#include "unruhqi/errors.hpp"

namespace unruhqi {

SubsystemLayout::SubsystemLayout(std::vector<std::string> names, std::vector<std::size_t> dims)
    : names_(std::move(names)), dims_(std::move(dims)) {
  if (names_.size() != dims_.size()) {
    throw LayoutError("layout needs one dimension per factor name");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (dims_[i] == 0) throw LayoutError("factor '" + names_[i] + "' has zero dimension");
    if (!seen.insert(names_[i]).second) {
      throw LayoutError("duplicate factor name '" + names_[i] + "'");
    }
  }
}

SubsystemLayout SubsystemLayout::qubits(std::initializer_list<std::string> names) {
  return SubsystemLayout(std::vector<std::string>(names), std::vector<std::size_t>(names.size(), 2));
}

std::size_t SubsystemLayout::total_dim() const noexcept {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

bool SubsystemLayout::contains(const std::string& name) const noexcept {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

std::size_t SubsystemLayout::position(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw LayoutError("unknown factor '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

SubsystemLayout SubsystemLayout::without(std::span<const std::string> names) const {
  for (const auto& n : names) (void)position(n);
  std::vector<std::string> kept_names;
  std::vector<std::size_t> kept_dims;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (std::find(names.begin(), names.end(), names_[i]) == names.end()) {
      kept_names.push_back(names_[i]);
      kept_dims.push_back(dims_[i]);
    }
  }
  return SubsystemLayout(std::move(kept_names), std::move(kept_dims));
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  auto names = names_;
  auto dims = dims_;
  names.insert(names.end(), other.names_.begin(), other.names_.end());
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  return SubsystemLayout(std::move(names), std::move(dims));
}

namespace {

void check_shape(const Matrix& m, const SubsystemLayout& layout) {
  if (m.rows() != m.cols()) throw OperatorError("operator matrix is not square");
  if (static_cast<std::size_t>(m.rows()) != layout.total_dim()) {
    throw LayoutError("operator dimension " + std::to_string(m.rows()) +
                      " does not match layout dimension " + std::to_string(layout.total_dim()));
  }
}

}  // namespace

IndexSplit split_indices(const SubsystemLayout& layout, std::span<const std::string> selected) {
  std::vector<bool> is_selected(layout.factor_count(), false);
  for (const auto& name : selected) {
    const auto pos = layout.position(name);
    if (is_selected[pos]) throw LayoutError("factor '" + name + "' listed twice");
    is_selected[pos] = true;
  }
  const auto& dims = layout.dims();
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t f = dims.size(); f-- > 1;) stride[f - 1] = stride[f] * dims[f];

  // Offsets enumerate each sub-space with its own rightmost-fastest order.
  auto offsets_for = [&](bool want_selected) {
    std::vector<std::size_t> offsets{0};
    for (std::size_t f = 0; f < dims.size(); ++f) {
      if (is_selected[f] != want_selected) continue;
      std::vector<std::size_t> next;
      next.reserve(offsets.size() * dims[f]);
      for (auto base : offsets) {
        for (std::size_t d = 0; d < dims[f]; ++d) next.push_back(base + d * stride[f]);
      }
      offsets = std::move(next);
    }
    return offsets;
  };
  return {offsets_for(true), offsets_for(false)};
}

DensityOperator::DensityOperator(Matrix matrix, SubsystemLayout layout)
    : op_{std::move(matrix), std::move(layout)} {
  check_shape(op_.matrix, op_.layout);
  const double herm = hermiticity_defect(op_.matrix);
  if (herm > tolerance::hermitian) {
    throw OperatorError("density operator not Hermitian (defect " + std::to_string(herm) + ")");
  }
  const Complex tr = op_.matrix.trace();
  if (std::abs(tr.real() - 1.0) > tolerance::trace || std::abs(tr.imag()) > tolerance::trace) {
    throw OperatorError("density operator trace " + std::to_string(tr.real()) + " is not 1");
  }
  const auto spec = spectrum(op_.matrix);
  if (spec.eigenvalues.back() < -tolerance::psd) {
    throw OperatorError("density operator has negative eigenvalue " +
                        std::to_string(spec.eigenvalues.back()));
  }
}

double Spectrum::sum() const {
  return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
}

double hermiticity_defect(const Matrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

LabeledOperator tensor_product(const LabeledOperator& a, const LabeledOperator& b) {
  auto layout = a.layout.concat(b.layout);
  const auto da = a.matrix.rows();
  const auto db = b.matrix.rows();
  Matrix out(da * db, da * db);
  for (Eigen::Index i = 0; i < da; ++i) {
    for (Eigen::Index j = 0; j < da; ++j) {
      out.block(i * db, j * db, db, db) = a.matrix(i, j) * b.matrix;
    }
  }
  return {std::move(out), std::move(layout)};
}

DensityOperator tensor_product(const DensityOperator& a, const DensityOperator& b) {
  auto op = tensor_product(a.op(), b.op());
  return DensityOperator(std::move(op.matrix), std::move(op.layout));
}

LabeledOperator partial_trace(const LabeledOperator& op, std::span<const std::string> factors) {
  check_shape(op.matrix, op.layout);
  auto layout = op.layout.without(factors);
  const auto split = split_indices(op.layout, factors);
  const auto n = static_cast<Eigen::Index>(split.rest_offset.size());
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      Complex acc{0.0, 0.0};
      for (auto t : split.selected_offset) {
        acc += op.matrix(static_cast<Eigen::Index>(split.rest_offset[r] + t),
                         static_cast<Eigen::Index>(split.rest_offset[c] + t));
      }
      out(r, c) = acc;
    }
  }
  return {std::move(out), std::move(layout)};
}

LabeledOperator partial_trace(const LabeledOperator& op, const std::string& factor) {
  return partial_trace(op, std::span<const std::string>(&factor, 1));
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::string> factors) {
  auto op = partial_trace(rho.op(), factors);
  // Re-symmetrize: summation order can leave ~1ulp asymmetry.
  op.matrix = 0.5 * (op.matrix + op.matrix.adjoint()).eval();
  return DensityOperator(std::move(op.matrix), std::move(op.layout));
}

DensityOperator partial_trace(const DensityOperator& rho, const std::string& factor) {
  return partial_trace(rho, std::span<const std::string>(&factor, 1));
}

LabeledOperator partial_transpose(const LabeledOperator& op, std::span<const std::string> factors) {
  check_shape(op.matrix, op.layout);
  const auto split = split_indices(op.layout, factors);
  Matrix out(op.matrix.rows(), op.matrix.cols());
  for (auto ri : split.rest_offset) {
    for (auto rj : split.rest_offset) {
      for (auto si : split.selected_offset) {
        for (auto sj : split.selected_offset) {
          out(static_cast<Eigen::Index>(ri + sj), static_cast<Eigen::Index>(rj + si)) =
              op.matrix(static_cast<Eigen::Index>(ri + si), static_cast<Eigen::Index>(rj + sj));
        }
      }
    }
  }
  return {std::move(out), op.layout};
}

LabeledOperator partial_transpose(const LabeledOperator& op, const std::string& factor) {
  return partial_transpose(op, std::span<const std::string>(&factor, 1));
}

Spectrum spectrum(const Matrix& h) {
  if (h.rows() != h.cols()) throw OperatorError("spectrum of a non-square matrix");
  if (h.size() == 0) return {};
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double defect = hermiticity_defect(h);
  if (defect > 1e-10 * scale) {
    throw OperatorError("spectrum requires a Hermitian operator (defect " +
                        std::to_string(defect) + ")");
  }
  const Matrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw OperatorError("Hermitian eigensolver failed");
  const auto& ev = solver.eigenvalues();
  Spectrum s;
  s.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), std::greater<>());
  return s;
}

double entropy_of_eigenvalues(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double lambda : eigenvalues) {
    if (lambda < -tolerance::psd) {
      throw OperatorError("entropy of an operator with negative eigenvalue " +
                          std::to_string(lambda));
    }
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityOperator& rho) {
  return entropy_of_eigenvalues(spectrum(rho.matrix()).eigenvalues);
}

double trace_norm(const Matrix& h) {
  const auto s = spectrum(h);
  double acc = 0.0;
  for (double lambda : s.eigenvalues) acc += std::abs(lambda);
  return acc;
}

double hs_norm_sq(const Matrix& h) { return h.squaredNorm(); }

double measured_relative_entropy(const DensityOperator& rho, const DensityOperator& dephased) {
  return von_neumann_entropy(dephased) - von_neumann_entropy(rho);
}

Matrix embed(const Matrix& local, const SubsystemLayout& layout, const std::string& factor) {
  const auto pos = layout.position(factor);
  if (static_cast<std::size_t>(local.rows()) != layout.dims()[pos] || local.rows() != local.cols()) {
    throw LayoutError("local operator does not match factor '" + factor + "'");
  }
  std::size_t left = 1;
  std::size_t right = 1;
  for (std::size_t f = 0; f < layout.factor_count(); ++f) {
    if (f < pos) left *= layout.dims()[f];
    if (f > pos) right *= layout.dims()[f];
  }
  const auto l = static_cast<Eigen::Index>(left);
  const auto r = static_cast<Eigen::Index>(right);
  const auto d = local.rows();
  Matrix out = Matrix::Zero(l * d * r, l * d * r);
  for (Eigen::Index a = 0; a < l; ++a) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index b = 0; b < r; ++b) {
          out((a * d + i) * r + b, (a * d + j) * r + b) = local(i, j);
        }
      }
    }
  }
  return out;
}

}  // namespace unruhqi
