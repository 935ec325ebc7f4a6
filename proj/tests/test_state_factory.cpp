#include <algorithm>
#include <cmath>

#include <doctest.h>

#include "unruhqi/entanglement.hpp"
#include "unruhqi/errors.hpp"
#include "unruhqi/state_factory.hpp"

using namespace unruhqi;

namespace {

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

// Bipartite helicity matrix written out entry by entry in the basis
// (A+up,B-up), (A+up,B-down), (A+down,B-up), (A+down,B-down).
Matrix reference_werner(double p) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = (1 - p) / 4;
  m(1, 1) = m(2, 2) = (1 + p) / 4;
  m(1, 2) = m(2, 1) = p / 2;
  return m;
}

const std::vector<double> kOmegas{0.05, 0.1, 0.2, 0.5, 1.0, 2.0};

std::vector<double> sorted_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

TEST_CASE("parameter types") {
  CHECK_THROWS_AS(MixingProbability(-0.1), DomainError);
  CHECK_THROWS_AS(MixingProbability(1.1), DomainError);
  CHECK_THROWS_AS(UnruhWeights(1.5), DomainError);
  CHECK(UnruhWeights(0.3).qL_sq() + UnruhWeights(0.3).qR_sq() == 1.0);
  CHECK(HelicityLabel{MomentumSign::Minus, Spin::Down}.to_string() == "−↓");
}

TEST_CASE("bipartite_werner blocks") {
  const auto b = bipartite_werner(AccelerationParam(0.5), MixingProbability(0.0));
  for (const auto& t : b.terms) CHECK(max_abs(t.block - Matrix::Identity(4, 4) / 4.0) < 1e-15);
  const auto half = bipartite_werner(AccelerationParam(0.5), MixingProbability(0.5));
  CHECK(half.captured_mass() + half.tail_bound == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(max_abs(effective_matrix(half).matrix() - reference_werner(0.5)) < 1e-12);

  // p = 1: pure projector onto (|up,down> + |down,up>)/sqrt 2.
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
  psi(1) = psi(2) = 1.0 / std::sqrt(2.0);
  for (double omega : {0.1, 2.0}) {
    const auto rho = effective_matrix(bipartite_werner(AccelerationParam(omega), MixingProbability(1.0)));
    CHECK(max_abs(rho.matrix() - psi * psi.adjoint()) < 1e-12);
  }
}

TEST_CASE("tripartite_werner") {
  const auto pure = effective_matrix(
      tripartite_werner(AccelerationParam(0.3), AccelerationParam(1.1), MixingProbability(1.0)));
  auto s = spectrum(pure.matrix()).eigenvalues;
  CHECK(s[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 1; i < 8; ++i) CHECK(std::abs(s[i]) < 1e-12);

  const auto half = effective_matrix(
      tripartite_werner(AccelerationParam(0.5), AccelerationParam(0.5), MixingProbability(0.5)));
  s = spectrum(half.matrix()).eigenvalues;
  CHECK(s[0] == doctest::Approx(0.5625).epsilon(1e-12));
  for (std::size_t i = 1; i < 8; ++i) CHECK(s[i] == doctest::Approx(0.0625).epsilon(1e-12));

  // GHZ-like slots |up,down,down> = 3 and |down,up,up> = 4 carry (1+3p)/8.
  CHECK(half.matrix()(3, 3).real() == doctest::Approx(0.3125));
  CHECK(half.matrix()(4, 4).real() == doctest::Approx(0.3125));
  CHECK(half.matrix()(3, 4).real() == doctest::Approx(0.25));
  CHECK(half.matrix()(0, 0).real() == doctest::Approx(0.0625));

  const auto b = tripartite_werner(AccelerationParam(0.2), AccelerationParam(0.7), MixingProbability(0.4));
  CHECK(b.captured_mass() + b.tail_bound == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("unruh_bipartite") {
  const AccelerationParam omega(0.4);
  const MixingProbability p(0.7);
  const auto single = bipartite_werner(omega, p);
  const auto u1 = unruh_bipartite(omega, UnruhWeights(1.0), p).coalesced();
  // q_R = 1: the q_L family has zero weight; q_R family sits at n + 1.
  REQUIRE(u1.terms.size() == single.terms.size() + 1);
  CHECK(u1.terms.front().weight == 0.0);
  for (std::size_t n = 0; n < single.terms.size(); ++n) {
    CHECK(u1.terms[n + 1].weight == doctest::Approx(single.terms[n].weight).epsilon(1e-15));
    CHECK(max_abs(u1.terms[n + 1].block - single.terms[n].block) < 1e-15);
  }
  CHECK(max_abs(effective_matrix(u1).matrix() - effective_matrix(single).matrix()) < 1e-14);
  CHECK(blocked_spectrum(unruh_bipartite(omega, UnruhWeights(1.0), p)).eigenvalues.front() ==
        doctest::Approx(blocked_spectrum(single).eigenvalues.front()));

  // q_R = 0 (Alice-AntiBob): same spectrum as the single-mode state.
  const auto u0 = unruh_bipartite(omega, UnruhWeights(0.0), p);
  const auto s0 = blocked_spectrum(u0).eigenvalues;
  const auto s1 = blocked_spectrum(single).eigenvalues;
  for (std::size_t i = 0; i < s1.size(); ++i) CHECK(s0[i] == doctest::Approx(s1[i]).epsilon(1e-12));

  for (double qr2 : {0.0, 0.3, 0.9}) {
    const auto b = unruh_bipartite(omega, UnruhWeights(qr2), p);
    CHECK(b.captured_mass() + b.tail_bound == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("effective matrix is independent of omega and qR") {
  for (double p : {0.0, 0.4, 1.0}) {
    const MixingProbability mp(p);
    const auto ref2 = effective_matrix(bipartite_werner(AccelerationParam(1.0), mp)).matrix();
    const auto ref3 = effective_matrix(
        tripartite_werner(AccelerationParam(1.0), AccelerationParam(1.0), mp)).matrix();
    CHECK(max_abs(ref2 - reference_werner(p)) < 1e-12);
    for (double omega : kOmegas) {
      const AccelerationParam w(omega);
      CHECK(max_abs(effective_matrix(bipartite_werner(w, mp)).matrix() - ref2) < 1e-10);
      CHECK(max_abs(effective_matrix(tripartite_werner(w, AccelerationParam(0.5), mp)).matrix() - ref3) < 1e-10);
      for (double qr2 : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        CHECK(max_abs(effective_matrix(unruh_bipartite(w, UnruhWeights(qr2), mp)).matrix() - ref2) < 1e-10);
      }
    }
  }
  CHECK(max_abs(effective_matrix(bipartite_werner(AccelerationParam(0.5), MixingProbability(0.0))).matrix() -
                Matrix::Identity(4, 4) / 4.0) < 1e-15);
}

TEST_CASE("effective_matrix rejects mixed block shapes") {
  auto b = bipartite_werner(AccelerationParam(1.0), MixingProbability(0.5));
  b.terms.back().block = Matrix::Identity(2, 2) / 2.0;
  CHECK_THROWS_AS(effective_matrix(b), OperatorError);
}

TEST_CASE("dense_expand") {
  for (std::size_t n : {0, 3, 15}) {
    const auto b = bipartite_werner_at(AccelerationParam(0.3), MixingProbability(0.6), n);
    const auto dense = dense_expand(b);
    CHECK(dense.dim() == 4 * (n + 1));
    CHECK(dense.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dense.layout().names() == std::vector<std::string>{"A", "B.fock", "B"});

    // Oracle: generic eigensolver on the dense matrix vs weighted union of
    // block spectra computed from the 4x4 block directly.
    const auto block_spec = spectrum(bipartite_helicity_block(MixingProbability(0.6))).eigenvalues;
    std::vector<double> expected;
    const double mass = b.captured_mass();
    for (const auto& t : b.terms)
      for (double l : block_spec) expected.push_back(t.weight / mass * l);
    expected = sorted_desc(expected);
    const auto got = spectrum(dense.matrix()).eigenvalues;
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - expected[i]) < 1e-10);
  }
  const auto big = tripartite_werner_at(AccelerationParam(0.3), AccelerationParam(0.3), MixingProbability(1.0), 30);
  CHECK_THROWS_AS(dense_expand(big), LayoutError);
  const auto small = tripartite_werner_at(AccelerationParam(0.3), AccelerationParam(0.3), MixingProbability(1.0), 3);
  CHECK_THROWS_AS(dense_expand(small, 127), LayoutError);
  CHECK_NOTHROW(dense_expand(small, 128));
}

TEST_CASE("blocked and dense representations agree") {
  for (std::size_t n : {0, 5, 15}) {
    const auto b = unruh_bipartite_at(AccelerationParam(0.25), UnruhWeights(0.35), MixingProbability(0.8), n);
    const auto dense = dense_expand(b);
    const auto s1 = spectrum(dense.matrix()).eigenvalues;
    const auto s2 = blocked_spectrum(b).eigenvalues;
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) CHECK(std::abs(s1[i] - s2[i]) < 1e-9);
    CHECK(std::abs(von_neumann_entropy(dense) - blocked_entropy(b)) < 1e-9);
  }
  for (std::size_t n : {2, 8}) {
    const auto b = tripartite_werner_at(AccelerationParam(0.3), AccelerationParam(0.6), MixingProbability(0.7), n);
    const auto dense = dense_expand(b);
    CHECK(dense.dim() == 8 * (n + 1) * (n + 1));
    CHECK(std::abs(von_neumann_entropy(dense) - blocked_entropy(b)) < 1e-9);
    // Blocked partial trace matches the dense partial trace, spectrally.
    const auto reduced = trace_out(b, "C");
    const auto dense_reduced = partial_trace(dense, std::vector<std::string>{"C.fock", "C"});
    const auto s1 = spectrum(dense_reduced.matrix()).eigenvalues;
    const auto s2 = blocked_spectrum(reduced).eigenvalues;
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i) CHECK(std::abs(s1[i] - s2[i]) < 1e-9);
  }
}

TEST_CASE("pure tripartite reduction is diagonal and unentangled") {
  const auto b = tripartite_werner(AccelerationParam(0.2), AccelerationParam(0.9), MixingProbability(1.0));
  const auto ab = effective_matrix(trace_out(b, "C"));
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = expected(2, 2) = 0.5;
  CHECK(max_abs(ab.matrix() - expected) < 1e-12);
  CHECK(std::abs(trace_norm_negativity(ab.op(), "A").raw) < 1e-10);
}

TEST_CASE("basis labels") {
  const auto labels = helicity_basis_labels(SubsystemLayout::qubits({"A", "B"}));
  CHECK(labels == std::vector<std::string>{"A+↑ B−↑", "A+↑ B−↓", "A+↓ B−↑", "A+↓ B−↓"});
}

TEST_CASE("literal region-II trace carries coherences the block form drops") {
  const AccelerationParam omega(0.3);
  const MixingProbability p(0.5);
  CHECK(unruh_literal_trace_gap(omega, UnruhWeights(1.0), p).trace_norm_gap < 1e-14);
  CHECK(unruh_literal_trace_gap(omega, UnruhWeights(0.0), p).trace_norm_gap < 1e-14);
  const auto gap = unruh_literal_trace_gap(omega, UnruhWeights(0.5), p);
  CHECK(gap.max_coherence > 1e-3);
  CHECK(gap.trace_norm_gap > 0.0);
  // Largest coherence: sqrt(w_0 w_1) q_L q_R between levels 0 and 2.
  const double expected = std::sqrt(fock_weight(0, omega) * fock_weight(1, omega)) * 0.5;
  const double mass = weight_series(omega).captured_mass();
  CHECK(gap.max_coherence == doctest::Approx(expected / mass).epsilon(1e-12));
}
