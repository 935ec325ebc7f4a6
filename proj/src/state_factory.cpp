#include "unruhqi/state_factory.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "unruhqi/errors.hpp"

namespace unruhqi {

std::string HelicityLabel::to_string() const {
  std::string s = momentum_sign == MomentumSign::Plus ? "+" : "−";
  s += spin == Spin::Up ? "↑" : "↓";
  return s;
}

MixingProbability::MixingProbability(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError("mixing probability must lie in [0, 1], got " + std::to_string(p));
  }
}

UnruhWeights::UnruhWeights(double qR_sq) : qR_sq_(qR_sq) {
  if (!(qR_sq >= 0.0 && qR_sq <= 1.0)) {
    throw DomainError("|q_R|^2 must lie in [0, 1], got " + std::to_string(qR_sq));
  }
}

double BlockedDensity::captured_mass() const {
  double mass = 0.0;
  for (const auto& t : terms) mass += t.weight * t.block.trace().real();
  return mass;
}

std::size_t BlockedDensity::dense_dim() const {
  std::size_t dim = helicity_layout.total_dim();
  for (auto e : fock_extent) dim *= e;
  return dim;
}

BlockedDensity BlockedDensity::coalesced() const {
  std::map<std::vector<std::size_t>, FockBlock> merged;
  for (const auto& t : terms) {
    auto [it, inserted] = merged.try_emplace(t.fock_index, t);
    if (inserted) continue;
    auto& acc = it->second;
    const double total = acc.weight + t.weight;
    if (total > 0.0) acc.block = (acc.weight * acc.block + t.weight * t.block) / total;
    acc.weight = total;
  }
  BlockedDensity out{helicity_layout, fock_owners, fock_extent, {}, tail_bound};
  out.terms.reserve(merged.size());
  for (auto& [key, block] : merged) out.terms.push_back(std::move(block));
  return out;
}

std::string fock_factor_name(const std::string& party) { return party + ".fock"; }

namespace {

Matrix werner_block(std::size_t dim, Eigen::Index slot_a, Eigen::Index slot_b, double p) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m = Matrix::Identity(d, d) * ((1.0 - p) / static_cast<double>(dim));
  // p |psi><psi| with psi = (|a> + |b>)/sqrt 2
  m(slot_a, slot_a) += p / 2.0;
  m(slot_b, slot_b) += p / 2.0;
  m(slot_a, slot_b) += p / 2.0;
  m(slot_b, slot_a) += p / 2.0;
  return m;
}

MomentumSign momentum_of(const std::string& party) {
  return party == "A" ? MomentumSign::Plus : MomentumSign::Minus;
}

}  // namespace

Matrix bipartite_helicity_block(MixingProbability p) {
  // |up,down> = 1, |down,up> = 2
  return werner_block(4, 1, 2, p.value());
}

Matrix tripartite_helicity_block(MixingProbability p) {
  // |up,down,down> = 3, |down,up,up> = 4
  return werner_block(8, 3, 4, p.value());
}

std::vector<std::string> helicity_basis_labels(const SubsystemLayout& layout) {
  std::vector<std::string> labels{""};
  for (const auto& party : layout.names()) {
    std::vector<std::string> next;
    for (const auto& prefix : labels) {
      for (Spin s : {Spin::Up, Spin::Down}) {
        const HelicityLabel h{momentum_of(party), s};
        next.push_back(prefix + (prefix.empty() ? "" : " ") + party + h.to_string());
      }
    }
    labels = std::move(next);
  }
  return labels;
}

namespace {

BlockedDensity bipartite_from_series(const FockWeightSeries& series, MixingProbability p) {
  BlockedDensity b{SubsystemLayout::qubits({"A", "B"}), {"B"}, {series.cutoff + 1}, {},
                   series.tail_bound};
  const Matrix block = bipartite_helicity_block(p);
  for (std::size_t n = 0; n <= series.cutoff; ++n) {
    b.terms.push_back({{n}, series.weights[n], block});
  }
  return b;
}

BlockedDensity tripartite_from_series(const FockWeightSeries& sb, const FockWeightSeries& sc,
                                      MixingProbability p) {
  const double tail = 1.0 - (1.0 - sb.tail_bound) * (1.0 - sc.tail_bound);
  BlockedDensity b{SubsystemLayout::qubits({"A", "B", "C"}),
                   {"B", "C"},
                   {sb.cutoff + 1, sc.cutoff + 1},
                   {},
                   tail};
  const Matrix block = tripartite_helicity_block(p);
  b.terms.reserve((sb.cutoff + 1) * (sc.cutoff + 1));
  for (std::size_t n = 0; n <= sb.cutoff; ++n) {
    for (std::size_t m = 0; m <= sc.cutoff; ++m) {
      b.terms.push_back({{n, m}, sb.weights[n] * sc.weights[m], block});
    }
  }
  return b;
}

BlockedDensity unruh_from_series(const FockWeightSeries& series, UnruhWeights u,
                                 MixingProbability p) {
  BlockedDensity b{SubsystemLayout::qubits({"A", "B"}), {"B"}, {series.cutoff + 2}, {},
                   series.tail_bound};
  const Matrix block = bipartite_helicity_block(p);
  for (std::size_t n = 0; n <= series.cutoff; ++n) {
    b.terms.push_back({{n}, u.qL_sq() * series.weights[n], block});
    b.terms.push_back({{n + 1}, u.qR_sq() * series.weights[n], block});
  }
  return b;
}

}  // namespace

BlockedDensity bipartite_werner(AccelerationParam omega, MixingProbability p,
                                const TruncationPolicy& policy) {
  return bipartite_from_series(weight_series(omega, policy), p);
}

BlockedDensity bipartite_werner_at(AccelerationParam omega, MixingProbability p,
                                   std::size_t cutoff) {
  return bipartite_from_series(weight_series_at(omega, cutoff), p);
}

BlockedDensity tripartite_werner(AccelerationParam omega_b, AccelerationParam omega_c,
                                 MixingProbability p, const TruncationPolicy& policy) {
  return tripartite_from_series(weight_series(omega_b, policy), weight_series(omega_c, policy), p);
}

BlockedDensity tripartite_werner_at(AccelerationParam omega_b, AccelerationParam omega_c,
                                    MixingProbability p, std::size_t cutoff) {
  return tripartite_from_series(weight_series_at(omega_b, cutoff),
                                weight_series_at(omega_c, cutoff), p);
}

BlockedDensity unruh_bipartite(AccelerationParam omega, UnruhWeights weights, MixingProbability p,
                               const TruncationPolicy& policy) {
  return unruh_from_series(weight_series(omega, policy), weights, p);
}

BlockedDensity unruh_bipartite_at(AccelerationParam omega, UnruhWeights weights,
                                  MixingProbability p, std::size_t cutoff) {
  return unruh_from_series(weight_series_at(omega, cutoff), weights, p);
}

DensityOperator effective_matrix(const BlockedDensity& b) {
  const auto d = static_cast<Eigen::Index>(b.helicity_layout.total_dim());
  Matrix acc = Matrix::Zero(d, d);
  double mass = 0.0;
  for (const auto& t : b.terms) {
    if (t.block.rows() != d || t.block.cols() != d) {
      throw OperatorError("blocked density has inhomogeneous helicity block shapes");
    }
    acc += t.weight * t.block;
    mass += t.weight * t.block.trace().real();
  }
  if (!(mass > 0.0)) throw OperatorError("blocked density carries no mass");
  return DensityOperator(acc / mass, b.helicity_layout);
}

namespace {

// Dense layout: the Fock factor of each party precedes its helicity factor.
SubsystemLayout dense_layout(const BlockedDensity& b) {
  std::vector<std::string> names;
  std::vector<std::size_t> dims;
  for (const auto& party : b.helicity_layout.names()) {
    const auto it = std::find(b.fock_owners.begin(), b.fock_owners.end(), party);
    if (it != b.fock_owners.end()) {
      names.push_back(fock_factor_name(party));
      dims.push_back(b.fock_extent[static_cast<std::size_t>(it - b.fock_owners.begin())]);
    }
    names.push_back(party);
    dims.push_back(b.helicity_layout.dim_of(party));
  }
  return SubsystemLayout(std::move(names), std::move(dims));
}

}  // namespace

DensityOperator dense_expand(const BlockedDensity& b, std::size_t cap) {
  const std::size_t dim = b.dense_dim();
  if (dim > cap) {
    throw LayoutError("dense expansion of dimension " + std::to_string(dim) +
                      " exceeds cap " + std::to_string(cap));
  }
  auto layout = dense_layout(b);
  const auto& hel = b.helicity_layout;
  const auto hel_dims = hel.dims();
  const auto& dims = layout.dims();
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t f = dims.size(); f-- > 1;) stride[f - 1] = stride[f] * dims[f];

  // Offsets of every helicity basis state inside the dense index.
  const std::size_t hd = hel.total_dim();
  std::vector<std::size_t> hel_offset(hd, 0);
  for (std::size_t h = 0; h < hd; ++h) {
    std::size_t rem = h;
    for (std::size_t q = hel_dims.size(); q-- > 0;) {
      const auto digit = rem % hel_dims[q];
      rem /= hel_dims[q];
      hel_offset[h] += digit * stride[layout.position(hel.names()[q])];
    }
  }
  std::vector<std::size_t> fock_stride;
  for (const auto& owner : b.fock_owners) {
    fock_stride.push_back(stride[layout.position(fock_factor_name(owner))]);
  }

  const double mass = b.captured_mass();
  if (!(mass > 0.0)) throw OperatorError("blocked density carries no mass");
  Matrix dense = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& t : b.terms) {
    std::size_t base = 0;
    for (std::size_t k = 0; k < t.fock_index.size(); ++k) base += t.fock_index[k] * fock_stride[k];
    for (std::size_t i = 0; i < hd; ++i) {
      for (std::size_t j = 0; j < hd; ++j) {
        dense(static_cast<Eigen::Index>(base + hel_offset[i]),
              static_cast<Eigen::Index>(base + hel_offset[j])) +=
            t.weight / mass * t.block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return DensityOperator(std::move(dense), std::move(layout));
}

Spectrum blocked_spectrum(const BlockedDensity& b) {
  const auto merged = b.coalesced();
  const double mass = merged.captured_mass();
  Spectrum out;
  out.eigenvalues.reserve(merged.terms.size() * merged.helicity_layout.total_dim());
  for (const auto& t : merged.terms) {
    for (double lambda : spectrum(t.block).eigenvalues) {
      out.eigenvalues.push_back(t.weight / mass * lambda);
    }
  }
  // Fock levels not carrying any term still occupy dense dimensions.
  out.eigenvalues.resize(b.dense_dim(), 0.0);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  return out;
}

double blocked_entropy(const BlockedDensity& b) {
  return entropy_of_eigenvalues(blocked_spectrum(b).eigenvalues);
}

BlockedDensity trace_out(const BlockedDensity& b, const std::string& party) {
  BlockedDensity out;
  out.helicity_layout = b.helicity_layout.without(std::span<const std::string>(&party, 1));
  out.tail_bound = b.tail_bound;
  std::size_t drop = b.fock_owners.size();
  for (std::size_t k = 0; k < b.fock_owners.size(); ++k) {
    if (b.fock_owners[k] == party) {
      drop = k;
      continue;
    }
    out.fock_owners.push_back(b.fock_owners[k]);
    out.fock_extent.push_back(b.fock_extent[k]);
  }
  out.terms.reserve(b.terms.size());
  for (const auto& t : b.terms) {
    FockBlock reduced;
    for (std::size_t k = 0; k < t.fock_index.size(); ++k) {
      if (k != drop) reduced.fock_index.push_back(t.fock_index[k]);
    }
    reduced.weight = t.weight;
    reduced.block = partial_trace(LabeledOperator{t.block, b.helicity_layout}, party).matrix;
    out.terms.push_back(std::move(reduced));
  }
  return out.coalesced();
}

UnruhTraceGap unruh_literal_trace_gap(AccelerationParam omega, UnruhWeights weights,
                                      MixingProbability p, const TruncationPolicy& policy) {
  const auto series = weight_series(omega, policy);
  const std::size_t levels = series.cutoff + 2;
  const auto lv = static_cast<Eigen::Index>(levels);
  const double qL = std::sqrt(weights.qL_sq());
  const double qR = std::sqrt(weights.qR_sq());

  // Two-mode amplitudes psi(i, j) = <i_I, j_II | 1_U>.
  Matrix psi = Matrix::Zero(lv, lv);
  for (std::size_t n = 0; n <= series.cutoff; ++n) {
    const double c = std::sqrt(series.weights[n]);
    const auto k = static_cast<Eigen::Index>(n);
    psi(k, k + 1) += qL * c;
    psi(k + 1, k) += qR * c;
  }
  const double mass = series.captured_mass();
  const Matrix literal = psi * psi.adjoint() / mass;  // trace over region II

  Matrix blocked = Matrix::Zero(lv, lv);
  for (std::size_t n = 0; n <= series.cutoff; ++n) {
    const auto k = static_cast<Eigen::Index>(n);
    blocked(k, k) += weights.qL_sq() * series.weights[n] / mass;
    blocked(k + 1, k + 1) += weights.qR_sq() * series.weights[n] / mass;
  }

  // The helicity factor is common to both, so the gaps factor through it.
  const Matrix helicity = bipartite_helicity_block(p);
  const Matrix delta = literal - blocked;
  UnruhTraceGap gap;
  gap.cutoff = series.cutoff;
  gap.trace_norm_gap = trace_norm(delta) * trace_norm(helicity);
  gap.hs_gap = hs_norm_sq(delta) * hs_norm_sq(helicity);
  gap.max_coherence = delta.cwiseAbs().maxCoeff();
  return gap;
}

}  // namespace unruhqi
