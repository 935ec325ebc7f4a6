#include "unruhqi/discord.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "unruhqi/errors.hpp"

namespace unruhqi {

namespace {

constexpr double kPi = std::numbers::pi;
// Improvements smaller than this do not displace the incumbent, so the
// earliest grid point (lexicographic in the scan order) wins near-ties.
constexpr double kTieTolerance = 1e-13;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double shannon(std::span<const double> probs) {
  double s = 0.0;
  for (double q : probs) {
    if (q < -tolerance::psd) throw OperatorError("negative probability in Shannon entropy");
    s -= xlog2x(q);
  }
  return std::max(s, 0.0);
}

double binary_entropy(double q) { return -xlog2x(q) - xlog2x(1.0 - q); }

struct Axis {
  double lo;
  double hi;
  std::size_t steps;
  bool periodic;

  double initial_step() const {
    if (steps < 2) return hi - lo;
    return periodic ? (hi - lo) / static_cast<double>(steps)
                    : (hi - lo) / static_cast<double>(steps - 1);
  }

  std::vector<double> initial_points() const {
    std::vector<double> pts;
    if (steps < 2) return {lo};
    const double d = initial_step();
    for (std::size_t i = 0; i < steps; ++i) pts.push_back(lo + d * static_cast<double>(i));
    return pts;
  }

  // Window of `steps` points centred on `c` with half-width `h`.
  std::vector<double> window(double c, double h) const {
    std::vector<double> pts;
    if (steps < 2) return {c};
    const double span = hi - lo;
    for (std::size_t i = 0; i < steps; ++i) {
      double v = c - h + 2.0 * h * static_cast<double>(i) / static_cast<double>(steps - 1);
      if (periodic) {
        v = lo + std::fmod(std::fmod(v - lo, span) + span, span);
      } else {
        v = std::clamp(v, lo, hi);
      }
      pts.push_back(v);
    }
    return pts;
  }
};

struct GridMinimum {
  double value = std::numeric_limits<double>::infinity();
  double x = 0.0;
  double y = 0.0;
};

// Coarse grid followed by `rounds` of local grids whose half-width shrinks
// geometrically (but never below the previous spacing).
GridMinimum minimize_2d(const std::function<double(double, double)>& f, const Axis& ax,
                        const Axis& ay, const GridSpec& grid) {
  GridMinimum best;
  auto scan = [&](const std::vector<double>& xs, const std::vector<double>& ys) {
    for (double x : xs) {
      for (double y : ys) {
        const double v = f(x, y);
        if (v < best.value - kTieTolerance) best = {v, x, y};
      }
    }
  };
  scan(ax.initial_points(), ay.initial_points());
  double dx = ax.initial_step();
  double dy = ay.initial_step();
  double scale = 1.0;
  for (std::size_t r = 0; r < grid.refinement_rounds; ++r) {
    scale *= grid.shrink_factor;
    const double hx = std::max(scale * (ax.hi - ax.lo) / 2.0, dx);
    const double hy = std::max(scale * (ay.hi - ay.lo) / 2.0, dy);
    scan(ax.window(best.x, hx), ay.window(best.y, hy));
    dx = ax.steps < 2 ? dx : 2.0 * hx / static_cast<double>(ax.steps - 1);
    dy = ay.steps < 2 ? dy : 2.0 * hy / static_cast<double>(ay.steps - 1);
  }
  return best;
}

GridMinimum minimize_1d(const std::function<double(double)>& f, const Axis& ax,
                        const GridSpec& grid) {
  const Axis fixed{0.0, 0.0, 1, false};
  return minimize_2d([&](double x, double) { return f(x); }, ax, fixed, grid);
}

Axis theta_axis(const GridSpec& g) { return {0.0, kPi, g.theta_steps, false}; }
Axis phi_axis(const GridSpec& g) { return {0.0, 2.0 * kPi, g.phi_steps, true}; }

GridMinimum minimize_on_sphere(const std::function<double(const MeasurementBasis&)>& f,
                               const GridSpec& grid) {
  grid.validate();
  return minimize_2d([&](double t, double p) { return f(MeasurementBasis{t, p}); },
                     theta_axis(grid), phi_axis(grid), grid);
}

void require_qubit(const SubsystemLayout& layout, const std::string& factor) {
  if (layout.dim_of(factor) != 2) {
    throw LayoutError("measured factor '" + factor + "' must be a qubit");
  }
}

// The four (a, b) sub-blocks of rho on the measured qubit, over the rest.
struct MeasuredBlocks {
  std::array<Matrix, 4> blocks;  // index 2a + b

  MeasuredBlocks(const LabeledOperator& rho, const std::string& factor) {
    require_qubit(rho.layout, factor);
    const auto split = split_indices(rho.layout, std::span<const std::string>(&factor, 1));
    const auto n = static_cast<Eigen::Index>(split.rest_offset.size());
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        Matrix m(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
          for (Eigen::Index c = 0; c < n; ++c) {
            m(r, c) = rho.matrix(static_cast<Eigen::Index>(split.rest_offset[r] + split.selected_offset[a]),
                                 static_cast<Eigen::Index>(split.rest_offset[c] + split.selected_offset[b]));
          }
        }
        blocks[2 * a + b] = std::move(m);
      }
    }
  }

  // <v| rho |v> on the measured factor (unnormalized conditional state).
  Matrix contract(const Eigen::Vector2cd& v) const {
    Matrix m = std::conj(v[0]) * v[0] * blocks[0];
    m += std::conj(v[0]) * v[1] * blocks[1];
    m += std::conj(v[1]) * v[0] * blocks[2];
    m += std::conj(v[1]) * v[1] * blocks[3];
    return m;
  }

  double conditional_entropy(const MeasurementBasis& basis) const {
    const Eigen::Matrix2cd u = basis.unitary();
    double s = 0.0;
    for (int i = 0; i < 2; ++i) {
      const Matrix m = contract(u.col(i));
      const double p = m.trace().real();
      if (p < kNegligibleProbability) continue;
      s += p * entropy_of_eigenvalues(spectrum(m / p).eigenvalues);
    }
    return s;
  }
};

std::vector<std::string> other_factors(const SubsystemLayout& layout, const std::string& factor) {
  std::vector<std::string> out;
  for (const auto& n : layout.names()) {
    if (n != factor) out.push_back(n);
  }
  return out;
}

}  // namespace

Eigen::Matrix2cd MeasurementBasis::unitary() const {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  Eigen::Matrix2cd u;
  u << c, -std::conj(e) * s,
       e * s, c;
  return u;
}

std::array<Eigen::Matrix2cd, 2> MeasurementBasis::projectors() const {
  const Eigen::Matrix2cd u = unitary();
  return {u.col(0) * u.col(0).adjoint(), u.col(1) * u.col(1).adjoint()};
}

void GridSpec::validate() const {
  if (theta_steps < 2 || phi_steps < 1) {
    throw DomainError("grid needs at least two theta points and one phi point");
  }
  if (!(shrink_factor > 0.0 && shrink_factor < 1.0)) {
    throw DomainError("grid shrink factor must lie in (0, 1)");
  }
}

Collapse measure_and_collapse(const DensityOperator& rho, const std::string& factor,
                              const MeasurementBasis& basis) {
  const MeasuredBlocks mb(rho.op(), factor);
  const auto rest = rho.layout().without(std::span<const std::string>(&factor, 1));
  const Eigen::Matrix2cd u = basis.unitary();
  Collapse out;
  for (int i = 0; i < 2; ++i) {
    Matrix m = mb.contract(u.col(i));
    const double p = m.trace().real();
    out.probabilities[static_cast<std::size_t>(i)] = p;
    if (p < kNegligibleProbability) continue;
    m /= p;
    m = 0.5 * (m + m.adjoint()).eval();
    out.conditional[static_cast<std::size_t>(i)].emplace(std::move(m), rest);
  }
  return out;
}

double conditional_entropy(const DensityOperator& rho, const std::string& factor,
                           const MeasurementBasis& basis) {
  return MeasuredBlocks(rho.op(), factor).conditional_entropy(basis);
}

CorrelationReport discord_bruteforce(const DensityOperator& rho, const std::string& measured_factor,
                                     const GridSpec& grid) {
  const MeasuredBlocks mb(rho.op(), measured_factor);
  const auto others = other_factors(rho.layout(), measured_factor);
  const double s_measured = von_neumann_entropy(partial_trace(rho, others));
  const double s_rest = von_neumann_entropy(partial_trace(rho, measured_factor));
  const double s_joint = von_neumann_entropy(rho);

  const auto best = minimize_on_sphere(
      [&](const MeasurementBasis& b) { return mb.conditional_entropy(b); }, grid);

  CorrelationReport r;
  r.mutual_information = s_rest + s_measured - s_joint;
  r.discord = s_measured - s_joint + best.value;
  r.minimizing_basis = {best.x, best.y};
  r.method = DiscordMethod::BruteForce;
  return r;
}

XStateParams XStateParams::from_operator(const DensityOperator& rho) {
  const Matrix& m = rho.matrix();
  if (m.rows() != 4 || rho.layout().factor_count() != 2) {
    throw OperatorError("X-state must be a two-qubit operator");
  }
  constexpr double tol = 1e-10;
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      const bool x_slot = i == j || i + j == 3;
      if (!x_slot && std::abs(m(i, j)) > tol) {
        throw OperatorError("operator is not X-shaped");
      }
      if (x_slot && std::abs(m(i, j).imag()) > tol) {
        throw OperatorError("X-state off-diagonals must be real");
      }
    }
  }
  return {m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(),
          m(0, 3).real(), m(1, 2).real()};
}

Matrix XStateParams::to_matrix() const {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = rho11;
  m(1, 1) = rho22;
  m(2, 2) = rho33;
  m(3, 3) = rho44;
  m(0, 3) = m(3, 0) = rho14;
  m(1, 2) = m(2, 1) = rho23;
  return m;
}

XStateCandidate evaluate_xstate_candidate(const XStateParams& x, double k, double mu) {
  XStateCandidate c;
  c.k = k;
  c.l = 1.0 - k;
  c.mu = mu;
  c.beta = 4.0 * c.k * c.l * (x.rho14 + x.rho23) * (x.rho14 + x.rho23) -
           16.0 * mu * x.rho14 * x.rho23;
  c.p0 = (x.rho22 + x.rho44) * c.l + (x.rho11 + x.rho33) * c.k;
  c.p1 = 1.0 - c.p0;
  const double z0 = (x.rho11 - x.rho33) * c.k + (x.rho22 - x.rho44) * c.l;
  const double z1 = (x.rho11 - x.rho33) * c.l + (x.rho22 - x.rho44) * c.k;
  const double beta = std::max(c.beta, 0.0);
  auto branch = [&](double p, double z, double& theta) {
    if (p < kNegligibleProbability) {
      theta = 0.0;
      return 0.0;
    }
    theta = std::min(std::sqrt(z * z + beta) / p, 1.0);
    return p * binary_entropy(0.5 * (1.0 + theta));
  };
  c.conditional_entropy = branch(c.p0, z0, c.theta0) + branch(c.p1, z1, c.theta1);
  // k = cos^2(theta/2); mu = 0 <-> measurement axis in the x-z plane, mu = kl
  // <-> y-z plane.
  c.basis.theta = 2.0 * std::acos(std::sqrt(std::clamp(k, 0.0, 1.0)));
  c.basis.phi = mu > 0.0 ? kPi / 2.0 : 0.0;
  return c;
}

namespace {

double xstate_joint_entropy(const XStateParams& x) {
  auto pair = [](double a, double d, double off, std::array<double, 2>& ev) {
    const double mean = 0.5 * (a + d);
    const double rad = 0.5 * std::sqrt((a - d) * (a - d) + 4.0 * off * off);
    ev = {mean + rad, mean - rad};
  };
  std::array<double, 2> outer{}, inner{};
  pair(x.rho11, x.rho44, x.rho14, outer);
  pair(x.rho22, x.rho33, x.rho23, inner);
  const std::array<double, 4> ev{outer[0], outer[1], inner[0], inner[1]};
  return entropy_of_eigenvalues(ev);
}

}  // namespace

XStateDiscord xstate_discord(const XStateParams& x) {
  const double trace = x.rho11 + x.rho22 + x.rho33 + x.rho44;
  if (std::abs(trace - 1.0) > tolerance::trace) throw OperatorError("X-state trace is not 1");

  XStateDiscord out;
  out.candidates = {evaluate_xstate_candidate(x, 0.5, 0.0), evaluate_xstate_candidate(x, 0.5, 0.25),
                    evaluate_xstate_candidate(x, 0.0, 0.0), evaluate_xstate_candidate(x, 1.0, 0.0)};
  for (std::size_t i = 1; i < out.candidates.size(); ++i) {
    if (out.candidates[i].conditional_entropy <
        out.candidates[out.best].conditional_entropy - kTieTolerance) {
      out.best = i;
    }
  }
  const double s_b = binary_entropy(x.rho11 + x.rho33);
  const double s_a = binary_entropy(x.rho11 + x.rho22);
  const double s_ab = xstate_joint_entropy(x);
  const auto& best = out.candidates[out.best];
  out.report.mutual_information = s_a + s_b - s_ab;
  out.report.discord = s_b - s_ab + best.conditional_entropy;
  out.report.minimizing_basis = best.basis;
  out.report.method = DiscordMethod::ClosedForm;
  return out;
}

CheckedXStateDiscord xstate_discord_checked(const XStateParams& x, const GridSpec& grid) {
  CheckedXStateDiscord out;
  out.closed_form = xstate_discord(x);
  const DensityOperator rho(x.to_matrix(), SubsystemLayout::qubits({"A", "B"}));
  out.brute_force = discord_bruteforce(rho, "B", grid);
  out.beaten_by = std::max(0.0, out.closed_form.report.discord - out.brute_force.discord);
  return out;
}

double werner_discord_formula(MixingProbability p) {
  const double q = p.value();
  return 0.25 * (xlog2x(1.0 + 3.0 * q) + xlog2x(1.0 - q) - 2.0 * xlog2x(1.0 + q));
}

double tripartite_global_discord_formula(MixingProbability p) {
  const double q = p.value();
  return 0.125 * (xlog2x(1.0 + 7.0 * q) + xlog2x(1.0 - q) - 2.0 * xlog2x(1.0 + 3.0 * q));
}

namespace {

void require_all_qubits(const SubsystemLayout& layout) {
  for (const auto& n : layout.names()) require_qubit(layout, n);
}

Matrix product_unitary(std::span<const MeasurementBasis> bases) {
  Matrix u = Matrix::Identity(1, 1);
  for (const auto& b : bases) {
    const Eigen::Matrix2cd local = b.unitary();
    Matrix next(u.rows() * 2, u.cols() * 2);
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      for (Eigen::Index j = 0; j < u.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = u(i, j) * local;
    }
    u = std::move(next);
  }
  return u;
}

std::vector<double> outcome_probabilities(const Matrix& rho, const Matrix& u) {
  const Matrix rotated = u.adjoint() * rho * u;
  std::vector<double> probs(static_cast<std::size_t>(rotated.rows()));
  for (Eigen::Index i = 0; i < rotated.rows(); ++i) {
    probs[static_cast<std::size_t>(i)] = rotated(i, i).real();
  }
  return probs;
}

// Precomputed pieces of the global discord objective.
class GlobalObjective {
 public:
  explicit GlobalObjective(const DensityOperator& rho) : rho_(rho.matrix()) {
    require_all_qubits(rho.layout());
    s_joint_ = von_neumann_entropy(rho);
    for (const auto& name : rho.layout().names()) {
      const auto reduced = partial_trace(rho, other_factors(rho.layout(), name));
      singles_.push_back(reduced.matrix());
      s_singles_.push_back(von_neumann_entropy(reduced));
    }
  }

  std::size_t qubits() const { return singles_.size(); }

  double operator()(std::span<const MeasurementBasis> bases) const {
    double value = shannon(outcome_probabilities(rho_, product_unitary(bases))) - s_joint_;
    for (std::size_t j = 0; j < singles_.size(); ++j) {
      const Matrix u = bases[j].unitary();
      value -= shannon(outcome_probabilities(singles_[j], u)) - s_singles_[j];
    }
    return value;
  }

 private:
  Matrix rho_;
  double s_joint_ = 0.0;
  std::vector<Matrix> singles_;
  std::vector<double> s_singles_;
};

// Cyclic coordinate search over the listed angle slots (2j = theta_j,
// 2j+1 = phi_j), starting from `bases`.
template <typename Objective>
double coordinate_search(const Objective& f, std::vector<MeasurementBasis>& bases,
                         const std::vector<std::size_t>& slots, const GridSpec& grid) {
  double current = f(bases);
  constexpr std::size_t kMaxSweeps = 25;
  for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const double start = current;
    for (auto slot : slots) {
      const std::size_t j = slot / 2;
      const bool is_theta = slot % 2 == 0;
      auto trial = bases;
      const auto best = minimize_1d(
          [&](double angle) {
            (is_theta ? trial[j].theta : trial[j].phi) = angle;
            return f(trial);
          },
          is_theta ? theta_axis(grid) : phi_axis(grid), grid);
      if (best.value < current - kTieTolerance) {
        (is_theta ? bases[j].theta : bases[j].phi) = best.x;
        current = best.value;
      }
    }
    if (current > start - kTieTolerance) break;
  }
  return current;
}

}  // namespace

double global_discord_at(const DensityOperator& rho, std::span<const MeasurementBasis> bases) {
  const GlobalObjective f(rho);
  if (bases.size() != f.qubits()) throw LayoutError("one measurement basis per qubit required");
  return f(bases);
}

GlobalDiscordResult global_discord(const DensityOperator& rho, const GridSpec& grid,
                                   GlobalSearch search) {
  grid.validate();
  const GlobalObjective f(rho);
  const std::size_t n = f.qubits();
  GlobalDiscordResult out;
  out.bases.assign(n, MeasurementBasis{});
  out.theta_grid_step = theta_axis(grid).initial_step();

  auto eval = [&](const std::vector<MeasurementBasis>& b) { return f(b); };
  if (n == 3) {
    const auto best = minimize_2d(
        [&](double t2, double t3) {
          const std::array<MeasurementBasis, 3> b{MeasurementBasis{}, MeasurementBasis{t2, 0.0},
                                                  MeasurementBasis{t3, 0.0}};
          return f(b);
        },
        theta_axis(grid), theta_axis(grid), grid);
    out.bases[1].theta = best.x;
    out.bases[2].theta = best.y;
    out.value = best.value;
  } else {
    std::vector<std::size_t> slots;
    for (std::size_t j = 1; j < n; ++j) slots.push_back(2 * j);
    out.value = coordinate_search(eval, out.bases, slots, grid);
  }
  if (search == GlobalSearch::Full) {
    std::vector<std::size_t> slots(2 * n);
    for (std::size_t s = 0; s < slots.size(); ++s) slots[s] = s;
    out.value = coordinate_search(eval, out.bases, slots, grid);
  }
  return out;
}

std::vector<double> ghz_dephased_weights(double theta2, double theta3) {
  const double c2 = std::cos(theta2 / 2.0), s2 = std::sin(theta2 / 2.0);
  const double c3 = std::cos(theta3 / 2.0), s3 = std::sin(theta3 / 2.0);
  std::vector<double> w{0.5 * c2 * c2 * c3 * c3, 0.5 * c2 * c2 * s3 * s3,
                        0.5 * s2 * s2 * c3 * c3, 0.5 * s2 * s2 * s3 * s3};
  w.insert(w.end(), w.begin(), w.end());
  std::sort(w.begin(), w.end(), std::greater<>());
  return w;
}

Matrix dephase(const LabeledOperator& rho, const std::string& factor,
               const MeasurementBasis& basis) {
  require_qubit(rho.layout, factor);
  Matrix out = Matrix::Zero(rho.matrix.rows(), rho.matrix.cols());
  for (const auto& proj : basis.projectors()) {
    const Matrix p = embed(proj, rho.layout, factor);
    out += p * rho.matrix * p;
  }
  return out;
}

namespace {

GeometricDiscord geometric_min(const DensityOperator& rho, const std::string& factor,
                               const GridSpec& grid, double (*norm)(const Matrix&)) {
  require_qubit(rho.layout(), factor);
  const auto best = minimize_on_sphere(
      [&](const MeasurementBasis& b) {
        return norm(rho.matrix() - dephase(rho.op(), factor, b));
      },
      grid);
  return {best.value, {best.x, best.y}};
}

}  // namespace

GeometricDiscord geometric_discord_2norm(const DensityOperator& rho,
                                         const std::string& measured_factor, const GridSpec& grid) {
  return geometric_min(rho, measured_factor, grid, [](const Matrix& m) { return hs_norm_sq(m); });
}

GeometricDiscord geometric_discord_1norm(const DensityOperator& rho,
                                         const std::string& measured_factor, const GridSpec& grid) {
  return geometric_min(rho, measured_factor, grid, [](const Matrix& m) { return trace_norm(m); });
}

GlobalGeometricDiscord geometric_discord_global(const DensityOperator& rho, const GridSpec& grid) {
  grid.validate();
  require_all_qubits(rho.layout());
  const double purity = rho.matrix().squaredNorm();
  const Matrix& m = rho.matrix();
  auto f = [&](const std::vector<MeasurementBasis>& bases) {
    double dephased_purity = 0.0;
    for (double q : outcome_probabilities(m, product_unitary(bases))) dephased_purity += q * q;
    return purity - dephased_purity;
  };
  GlobalGeometricDiscord out;
  out.axes.assign(rho.layout().factor_count(), MeasurementBasis{});
  std::vector<std::size_t> slots(2 * out.axes.size());
  for (std::size_t s = 0; s < slots.size(); ++s) slots[s] = s;
  out.value = coordinate_search(f, out.axes, slots, grid);
  return out;
}

CorrelationReport correlation_report(const DensityOperator& rho, const std::string& measured_factor,
                                     const GridSpec& grid) {
  auto report = discord_bruteforce(rho, measured_factor, grid);
  report.geometric_2norm = geometric_discord_2norm(rho, measured_factor, grid).value;
  report.geometric_1norm = geometric_discord_1norm(rho, measured_factor, grid).value;
  return report;
}

UnruhDiscord unruh_discord(AccelerationParam omega, UnruhWeights weights, MixingProbability p,
                           const GridSpec& grid, const TruncationPolicy& policy) {
  const auto rho = effective_matrix(unruh_bipartite(omega, weights, p, policy));
  return {xstate_discord(XStateParams::from_operator(rho)).report,
          discord_bruteforce(rho, "B", grid)};
}

}  // namespace unruhqi
