#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "unruhqi/densops.hpp"
#include "unruhqi/errors.hpp"

using namespace unruhqi;

namespace {

Matrix diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double v : d) m(i, i) = v, ++i;
  return m;
}

// X-shaped Werner block over (A, B) in the order |uu>, |ud>, |du>, |dd>.
Matrix werner(double p) {
  Matrix m = diag({(1 - p) / 4, (1 + p) / 4, (1 + p) / 4, (1 - p) / 4});
  m(1, 2) = m(2, 1) = p / 2;
  return m;
}

Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g;
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m + m.adjoint();
}

DensityOperator random_state(std::mt19937_64& rng, const SubsystemLayout& layout) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  const Matrix g = random_hermitian(rng, n);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace();
  return DensityOperator(rho, layout);
}

// Oracle for partial trace on two factors: explicit index arithmetic.
Matrix trace_second(const Matrix& m, Eigen::Index da, Eigen::Index db) {
  Matrix out = Matrix::Zero(da, da);
  for (Eigen::Index i = 0; i < da; ++i)
    for (Eigen::Index j = 0; j < da; ++j)
      for (Eigen::Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
  return out;
}

}  // namespace

const auto kAB = SubsystemLayout::qubits({"A", "B"});

TEST_CASE("layout validation") {
  CHECK_THROWS_AS(SubsystemLayout({"A", "A"}, {2, 2}), LayoutError);
  CHECK_THROWS_AS(SubsystemLayout({"A"}, {2, 2}), LayoutError);
  CHECK_THROWS_AS(kAB.position("C"), LayoutError);
  CHECK(kAB.total_dim() == 4);
  CHECK_THROWS_AS(DensityOperator(Matrix::Identity(3, 3) / 3.0, kAB), LayoutError);
}

TEST_CASE("density operator checks") {
  CHECK_NOTHROW(DensityOperator(werner(0.4), kAB));
  CHECK_THROWS_AS(DensityOperator(Matrix::Identity(4, 4), kAB), OperatorError);
  Matrix asym = werner(0.4);
  asym(0, 1) = 0.01;
  CHECK_THROWS_AS(DensityOperator(asym, kAB), OperatorError);
  Matrix neg = diag({1.2, -0.2, 0.0, 0.0});
  CHECK_THROWS_AS(DensityOperator(neg, kAB), OperatorError);
}

TEST_CASE("tensor_product") {
  const DensityOperator one(Matrix::Identity(1, 1), SubsystemLayout({"I"}, {1}));
  const DensityOperator rho(werner(0.3), kAB);
  const auto t = tensor_product(one, rho);
  CHECK((t.matrix() - rho.matrix()).cwiseAbs().maxCoeff() < 1e-15);

  const DensityOperator a(diag({1.0, 0.0}), SubsystemLayout::qubits({"A"}));
  const DensityOperator b(diag({0.5, 0.5}), SubsystemLayout::qubits({"B"}));
  const auto ab = tensor_product(a, b);
  CHECK((ab.matrix() - diag({0.5, 0.5, 0.0, 0.0})).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(tensor_product(a, a), LayoutError);
}

TEST_CASE("partial trace") {
  Matrix bell = Matrix::Zero(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  const DensityOperator rho(bell, kAB);
  for (const char* f : {"A", "B"}) {
    const auto red = partial_trace(rho, f);
    CHECK((red.matrix() - diag({0.5, 0.5})).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(red.layout().factor_count() == 1);
  }
  CHECK_THROWS_AS(partial_trace(rho, "Z"), LayoutError);

  std::mt19937_64 rng(7);
  const SubsystemLayout l3({"A", "F", "B"}, {2, 3, 2});
  for (int i = 0; i < 5; ++i) {
    const auto a = random_state(rng, SubsystemLayout({"A", "F"}, {2, 3}));
    const auto b = random_state(rng, SubsystemLayout::qubits({"B"}));
    const auto ab = tensor_product(a, b);
    CHECK((partial_trace(ab, "B").matrix() - a.matrix()).cwiseAbs().maxCoeff() < 1e-12);
    const auto s = random_state(rng, l3);
    const auto red = partial_trace(s, "B");
    CHECK((red.matrix() - trace_second(s.matrix(), 6, 2)).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(red.matrix().trace().real() == doctest::Approx(1.0));
  }
}

TEST_CASE("partial transpose") {
  const LabeledOperator d{diag({0.1, 0.2, 0.3, 0.4}), kAB};
  CHECK((partial_transpose(d, "A").matrix - d.matrix).cwiseAbs().maxCoeff() == 0.0);

  // Werner partial transpose: eigenvalues (1+p)/4 x3 and (1-3p)/4.
  for (double p : {0.0, 0.2, 0.6, 1.0}) {
    const auto pt = partial_transpose(LabeledOperator{werner(p), kAB}, "A");
    // Brute-force oracle: generic (non-Hermitian) eigensolver.
    Eigen::ComplexEigenSolver<Matrix> ces(pt.matrix);
    std::vector<double> ev;
    for (Eigen::Index i = 0; i < 4; ++i) ev.push_back(ces.eigenvalues()[i].real());
    std::sort(ev.begin(), ev.end());
    const double lo = (1 - 3 * p) / 4, hi = (1 + p) / 4;
    std::vector<double> expect{lo, hi, hi, hi};
    std::sort(expect.begin(), expect.end());
    for (int i = 0; i < 4; ++i) CHECK(ev[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  }

  std::mt19937_64 rng(11);
  const SubsystemLayout l({"A", "F", "B"}, {2, 3, 2});
  for (int i = 0; i < 10; ++i) {
    const LabeledOperator h{random_hermitian(rng, 12), l};
    for (const std::vector<std::string>& fs :
         {std::vector<std::string>{"A"}, {"F", "B"}, {"A", "B"}}) {
      const auto once = partial_transpose(h, fs);
      const auto twice = partial_transpose(once, fs);
      CHECK((twice.matrix - h.matrix).cwiseAbs().maxCoeff() == 0.0);
      CHECK(std::abs(once.matrix.trace() - h.matrix.trace()) < 1e-12);
      CHECK(hermiticity_defect(once.matrix) < 1e-12);
    }
  }
}

TEST_CASE("spectrum") {
  auto s = spectrum(Matrix::Identity(2, 2) / 2.0);
  CHECK(s.eigenvalues == std::vector<double>{0.5, 0.5});
  s = spectrum(werner(0.5));
  const std::vector<double> expect{0.625, 0.125, 0.125, 0.125};
  for (int i = 0; i < 4; ++i) CHECK(s.eigenvalues[i] == doctest::Approx(expect[i]).epsilon(1e-12));
  CHECK(s.sum() == doctest::Approx(1.0).epsilon(1e-12));
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(spectrum(bad), OperatorError);
}

TEST_CASE("entropies") {
  CHECK(von_neumann_entropy(DensityOperator(diag({0.5, 0.5}), SubsystemLayout::qubits({"A"}))) ==
        doctest::Approx(1.0));
  Matrix pure = Matrix::Constant(2, 2, 0.5);
  CHECK(von_neumann_entropy(DensityOperator(pure, SubsystemLayout::qubits({"A"}))) < 1e-9);
  CHECK(std::abs(von_neumann_entropy(DensityOperator(werner(0.5), kAB)) - 1.548794940695) < 1e-5);
  const std::vector<double> tiny{1.0, -1e-12};
  CHECK(entropy_of_eigenvalues(tiny) == 0.0);
  const std::vector<double> bad{1.1, -0.1};
  CHECK_THROWS_AS(entropy_of_eigenvalues(bad), OperatorError);
}

TEST_CASE("norms") {
  CHECK(trace_norm(werner(0.7)) == doctest::Approx(1.0));
  Matrix bell = Matrix::Zero(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  CHECK(trace_norm(partial_transpose(LabeledOperator{bell, kAB}, "B")) == doctest::Approx(2.0));
  CHECK(trace_norm(Matrix::Zero(3, 3)) == 0.0);
  CHECK(hs_norm_sq(Matrix::Zero(2, 2)) == 0.0);
  CHECK(hs_norm_sq(Matrix::Identity(2, 2) / 2.0) == doctest::Approx(0.5));
  Matrix diagonal = werner(0.6);
  diagonal(1, 2) = diagonal(2, 1) = 0.0;
  CHECK(hs_norm_sq(werner(0.6) - diagonal) == doctest::Approx(0.18).epsilon(1e-12));
  // Cross-check against eigenvalues.
  const auto s = spectrum(werner(0.6) - diagonal);
  double sq = 0.0;
  for (double l : s.eigenvalues) sq += l * l;
  CHECK(sq == doctest::Approx(0.18).epsilon(1e-12));
}

TEST_CASE("measured relative entropy") {
  const DensityOperator d(diag({0.2, 0.3, 0.1, 0.4}), kAB);
  CHECK(std::abs(measured_relative_entropy(d, d)) < 1e-12);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto rho = random_state(rng, kAB);
    Matrix dephased = rho.matrix().diagonal().asDiagonal();
    CHECK(measured_relative_entropy(rho, DensityOperator(dephased, kAB)) >= -1e-10);
  }
}

TEST_CASE("embed") {
  const SubsystemLayout l({"A", "F", "B"}, {2, 3, 2});
  Matrix z = diag({1.0, -1.0});
  const Matrix e = embed(z, l, "B");
  CHECK(e(0, 0) == Complex(1.0));
  CHECK(e(1, 1) == Complex(-1.0));
  CHECK(e.rows() == 12);
  CHECK_THROWS_AS(embed(Matrix::Identity(3, 3), l, "B"), LayoutError);
}
