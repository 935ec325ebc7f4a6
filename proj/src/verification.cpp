#include "unruhqi/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "unruhqi/entanglement.hpp"
#include "unruhqi/state_factory.hpp"

namespace unruhqi {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Tracks the observation farthest from `expected`.
struct Worst {
  double expected;
  double observed;
  double deviation = -1.0;
  std::string where;

  explicit Worst(double e) : expected(e), observed(e) {}

  void see(double value, const std::string& at) { see(value, expected, at); }

  // For checks where the reference varies point to point.
  void see(double value, double reference, const std::string& at) {
    const double dev = std::isfinite(value) ? std::abs(value - reference) : INFINITY;
    if (dev > deviation) {
      deviation = dev;
      expected = reference;
      observed = value;
      where = at;
    }
  }

  CheckResult result(std::string id, int criterion, double tol) const {
    return {std::move(id), criterion, expected, observed, tol, deviation <= tol,
            "worst at " + where};
  }
};

std::string fmt(const char* key, double v) {
  std::ostringstream os;
  os << key << "=" << v;
  return os.str();
}

std::string fmt2(const char* k1, double v1, const char* k2, double v2) {
  return fmt(k1, v1) + " " + fmt(k2, v2);
}

std::vector<double> steps(double start, double stop, double step) {
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(start + step * static_cast<double>(i));
  return out;
}

const std::vector<double> kOmegaTriple{0.1, 0.5, 2.0};
const std::vector<double> kQr2Sweep{0.0, 0.25, 0.5, 0.75, 1.0};

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

XStateParams random_xstate(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::array<double, 4> d{};
  double total = 0.0;
  for (auto& v : d) {
    v = unit(rng) + 1e-3;
    total += v;
  }
  for (auto& v : d) v /= total;
  XStateParams x{d[0], d[1], d[2], d[3], 0.0, 0.0};
  x.rho14 = sym(rng) * std::sqrt(x.rho11 * x.rho44);
  x.rho23 = sym(rng) * std::sqrt(x.rho22 * x.rho33);
  return x;
}

std::vector<CheckResult> check_negativity_flatness(const VerifyOptions& opt) {
  Worst w(1.0);
  const MixingProbability pure(1.0);
  for (int i = 1; i <= 20; ++i) {
    const double omega = 0.1 * i;
    const auto state = bipartite_werner(AccelerationParam(omega), pure, opt.policy);
    w.see(trace_norm_negativity(state, "A").value, fmt("omega", omega));
  }
  return {w.result("negativity_flatness", 1, 1e-8)};
}

std::vector<CheckResult> check_pi_tangle(const VerifyOptions& opt) {
  const std::vector<double> grid{0.1, 0.25, 0.5, 1.0, 2.0};
  Worst pi(1.0);
  Worst pairwise(0.0);
  const MixingProbability pure(1.0);
  for (double wb : grid) {
    for (double wc : grid) {
      const auto state =
          tripartite_werner(AccelerationParam(wb), AccelerationParam(wc), pure, opt.policy);
      const auto report = pi_tangle(state);
      const auto at = fmt2("omega_b", wb, "omega_c", wc);
      pi.see(report.pi, at);
      pairwise.see(trace_norm_negativity(trace_out(state, "C"), "A").raw, at + " N_AB");
      pairwise.see(trace_norm_negativity(trace_out(state, "B"), "A").raw, at + " N_AC");
    }
  }
  return {pi.result("pi_tangle_flatness", 2, 1e-8),
          pairwise.result("pairwise_negativity_zero", 2, 1e-10)};
}

std::vector<CheckResult> check_werner_threshold(const VerifyOptions& opt) {
  Worst curve(0.0);
  for (double omega : kOmegaTriple) {
    for (double p : steps(0.0, 1.0, 0.05)) {
      const auto rho =
          effective_matrix(bipartite_werner(AccelerationParam(omega), MixingProbability(p), opt.policy));
      curve.see(trace_norm_negativity(rho.op(), "A").value, std::max(0.0, (3.0 * p - 1.0) / 2.0),
                fmt2("omega", omega, "p", p));
    }
  }

  // Bisection on the sign of the smallest partial-transpose eigenvalue.
  auto min_eig = [&](double p) {
    const auto rho =
        effective_matrix(bipartite_werner(AccelerationParam(0.5), MixingProbability(p), opt.policy));
    return min_pt_eigenvalue(rho.op(), "A");
  };
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    (min_eig(mid) >= 0.0 ? lo : hi) = mid;
  }
  const double crossing = 0.5 * (lo + hi);
  CheckResult bisect{"werner_threshold_bisection", 3, 1.0 / 3.0, crossing, 1e-6,
                     std::abs(crossing - 1.0 / 3.0) <= 1e-6,
                     "bracket [" + std::to_string(lo) + ", " + std::to_string(hi) + "]"};
  return {curve.result("werner_threshold", 3, 1e-9), bisect};
}

std::vector<CheckResult> check_discord_curve(const VerifyOptions& opt) {
  const auto t0 = Clock::now();
  Worst curve(0.0);
  Worst variation(0.0);
  Worst endpoints(0.0);
  for (double p : steps(0.0, 1.0, 0.1)) {
    const MixingProbability mp(p);
    double lo = INFINITY, hi = -INFINITY;
    for (double omega : kOmegaTriple) {
      const auto rho = effective_matrix(bipartite_werner(AccelerationParam(omega), mp, opt.policy));
      const double d = discord_bruteforce(rho, "B", opt.grid).discord;
      curve.see(d, werner_discord_formula(mp), fmt2("omega", omega, "p", p));
      lo = std::min(lo, d);
      hi = std::max(hi, d);
      if (p == 0.0 || p == 1.0) endpoints.see(d, p, fmt2("omega", omega, "p", p));
    }
    variation.see(hi - lo, fmt("p", p));
  }
  const double elapsed = seconds_since(t0);
  return {curve.result("discord_curve", 4, 1e-4),
          variation.result("discord_omega_variation", 4, 1e-8),
          endpoints.result("discord_endpoints", 4, 1e-4),
          {"discord_runtime_seconds", 4, 30.0, elapsed, 0.0, elapsed < 30.0,
           "wall-clock bound; pass iff observed < expected"}};
}

std::vector<CheckResult> check_xstate_closed_form(const VerifyOptions& opt) {
  Worst family(0.0);
  for (double p : steps(0.0, 1.0, 0.1)) {
    const auto rho =
        effective_matrix(bipartite_werner(AccelerationParam(0.5), MixingProbability(p), opt.policy));
    const auto checked = xstate_discord_checked(XStateParams::from_operator(rho), opt.grid);
    family.see(checked.closed_form.report.discord - checked.brute_force.discord, fmt("p", p));
  }
  Worst random(0.0);
  std::mt19937_64 rng(opt.random_seed);
  for (int i = 0; i < 50; ++i) {
    const auto x = random_xstate(rng);
    const auto checked = xstate_discord_checked(x, opt.grid);
    random.see(checked.closed_form.report.discord - checked.brute_force.discord,
               "sample " + std::to_string(i));
  }
  return {family.result("xstate_vs_bruteforce_family", 5, 1e-4),
          random.result("xstate_vs_bruteforce_random", 5, 1e-4)};
}

std::vector<CheckResult> check_global_discord(const VerifyOptions& opt) {
  const std::vector<std::pair<double, double>> omegas{{0.1, 2.0}, {0.5, 0.5}, {2.0, 0.1}};
  const std::vector<double> ps{0.0, 0.25, 0.5, 0.75, 1.0};
  Worst location(0.0);
  Worst values(0.0);
  double step = 0.0;
  double at_one = NAN, at_half = NAN;
  for (auto [wb, wc] : omegas) {
    for (double p : ps) {
      const MixingProbability mp(p);
      const auto rho = effective_matrix(
          tripartite_werner(AccelerationParam(wb), AccelerationParam(wc), mp, opt.policy));
      const auto g = global_discord(rho, opt.grid);
      step = g.theta_grid_step;
      const auto at = fmt2("omega_b", wb, "p", p);
      // theta and pi - theta give the same projector pair.
      for (std::size_t j = 1; j < 3; ++j) {
        const double t = g.bases[j].theta;
        location.see(std::min(t, std::numbers::pi - t), at + " theta_" + std::to_string(j + 1));
      }
      values.see(g.value, tripartite_global_discord_formula(mp), at);
      if (wb == 0.5 && p == 1.0) at_one = g.value;
      if (wb == 0.5 && p == 0.5) at_half = g.value;
    }
  }
  auto point = [](std::string id, double expected, double observed, double tol) {
    return CheckResult{std::move(id), 6, expected, observed, tol,
                       std::abs(observed - expected) <= tol, "omega_b=omega_c=0.5"};
  };
  return {location.result("global_discord_minimizer", 6, step),
          values.result("global_discord_formula", 6, 1e-5),
          point("global_discord_p1", 1.0, at_one, 1e-5),
          point("global_discord_p_half", 0.331896, at_half, 1e-5)};
}

std::vector<CheckResult> check_geometric_discord(const VerifyOptions& opt) {
  Worst two(0.0);
  Worst one(0.0);
  double best = -INFINITY, best_p = -1.0;
  for (double omega : kOmegaTriple) {
    for (double p : steps(0.0, 1.0, 0.1)) {
      const auto rho =
          effective_matrix(bipartite_werner(AccelerationParam(omega), MixingProbability(p), opt.policy));
      const auto at = fmt2("omega", omega, "p", p);
      const double g2 = geometric_discord_2norm(rho, "A", opt.grid).value;
      two.see(g2, p * p / 2.0, at);
      one.see(geometric_discord_1norm(rho, "A", opt.grid).value, p, at);
      if (g2 > best + 1e-12) {
        best = g2;
        best_p = p;
      }
    }
  }
  return {two.result("geometric_2norm", 7, 1e-9),
          {"geometric_2norm_max", 7, 0.5, best, 1e-9,
           std::abs(best - 0.5) <= 1e-9 && best_p == 1.0, "argmax p=" + std::to_string(best_p)},
          one.result("geometric_1norm", 7, 1e-9)};
}

std::vector<CheckResult> check_beyond_single_mode(const VerifyOptions& opt) {
  Worst pattern(0.0);
  Worst negativity(1.0);
  Worst discord(0.0);
  for (double omega : kOmegaTriple) {
    for (double qr2 : kQr2Sweep) {
      const UnruhWeights u(qr2);
      const auto at = fmt2("omega", omega, "qr2", qr2);
      // Pure helicity state: each family term has partial-transpose
      // spectrum (w_n / 2) {q^2, q^2, q^2, -q^2}.
      const auto state = unruh_bipartite(AccelerationParam(omega), u, MixingProbability(1.0), opt.policy);
      const auto series = weight_series(AccelerationParam(omega), opt.policy);
      const double mass = series.captured_mass();
      for (std::size_t t = 0; t < state.terms.size(); ++t) {
        const auto& term = state.terms[t];
        const std::size_t n = t / 2;
        const double q2 = t % 2 == 0 ? u.qL_sq() : u.qR_sq();
        const Matrix scaled = term.weight / mass * term.block;
        const auto pt = spectrum(partial_transpose(LabeledOperator{scaled, state.helicity_layout}, "A"));
        const double h = 0.5 * series.weights[n] / mass * q2;
        pattern.see(max_abs_diff(pt.eigenvalues, {h, h, h, -h}), 0.0, at);
      }
      negativity.see(trace_norm_negativity(state, "A").value, at);
      for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const MixingProbability mp(p);
        const auto d = unruh_discord(AccelerationParam(omega), u, mp, opt.grid, opt.policy);
        const double expected = werner_discord_formula(mp);
        discord.see(d.closed_form.discord, expected, at + fmt(" p", p) + " closed-form");
        discord.see(d.brute_force.discord, expected, at + fmt(" p", p) + " brute-force");
      }
    }
  }
  // Dense form of the blocked matrix at a fixed cutoff: spectrum of the
  // partial transpose is the union of merged per-level patterns.
  {
    const UnruhWeights u(0.3);
    const auto state = unruh_bipartite_at(AccelerationParam(0.5), u, MixingProbability(1.0), 10);
    const auto dense = dense_expand(state);
    const auto pt = spectrum(partial_transpose(dense.op(), party_factors(dense.layout(), "A")));
    std::vector<double> expected;
    const double mass = state.captured_mass();
    for (const auto& t : state.coalesced().terms) {
      const double h = 0.5 * t.weight / mass;
      expected.insert(expected.end(), {h, h, h, -h});
    }
    expected.resize(pt.eigenvalues.size(), 0.0);
    std::sort(expected.begin(), expected.end(), std::greater<>());
    pattern.see(max_abs_diff(pt.eigenvalues, expected), 0.0, "dense omega=0.5 qr2=0.3 N=10");
  }
  return {pattern.result("unruh_pt_spectrum", 8, 1e-10),
          negativity.result("qr_independence_negativity", 8, 1e-8),
          discord.result("qr_independence_discord", 8, 1e-5)};
}

namespace {

double compare_representations(const BlockedDensity& b, const std::vector<std::string>& parties) {
  const auto dense = dense_expand(b);
  double dev = max_abs_diff(spectrum(dense.matrix()).eigenvalues, blocked_spectrum(b).eigenvalues);
  dev = std::max(dev, std::abs(von_neumann_entropy(dense) - blocked_entropy(b)));
  for (const auto& party : parties) {
    dev = std::max(dev, std::abs(trace_norm_negativity(dense.op(), party).raw -
                                 trace_norm_negativity(b, party).raw));
  }
  return dev;
}

}  // namespace

std::vector<CheckResult> check_representations(const VerifyOptions&) {
  Worst bipartite(0.0);
  for (std::size_t n = 0; n <= 15; ++n) {
    for (double p : {0.3, 1.0}) {
      const MixingProbability mp(p);
      const auto at = fmt2("N", static_cast<double>(n), "p", p);
      bipartite.see(compare_representations(bipartite_werner_at(AccelerationParam(0.3), mp, n),
                                            {"A", "B"}),
                    at + " werner");
      bipartite.see(compare_representations(
                        unruh_bipartite_at(AccelerationParam(0.3), UnruhWeights(0.4), mp, n),
                        {"A", "B"}),
                    at + " unruh");
    }
  }

  const auto t0 = Clock::now();
  Worst tripartite(0.0);
  for (std::size_t n : {1, 4, 8}) {
    for (double p : {0.6, 1.0}) {
      const auto state = tripartite_werner_at(AccelerationParam(0.3), AccelerationParam(0.7),
                                              MixingProbability(p), n);
      const auto at = fmt2("N", static_cast<double>(n), "p", p);
      double dev = compare_representations(state, {"A", "B", "C"});
      const auto blocked_pi = pi_tangle(state);
      const auto dense_pi = pi_tangle(dense_expand(state).op());
      dev = std::max(dev, std::abs(blocked_pi.pi - dense_pi.pi));
      tripartite.see(dev, at);
    }
  }
  const double elapsed = seconds_since(t0);
  return {bipartite.result("representation_bipartite", 9, 1e-9),
          tripartite.result("representation_tripartite", 9, 1e-9),
          {"representation_tripartite_runtime_seconds", 9, 60.0, elapsed, 0.0, elapsed < 60.0,
           "wall-clock bound; pass iff observed < expected"}};
}

std::vector<CheckResult> run_all_checks(const VerifyOptions& opt) {
  std::vector<CheckResult> all;
  for (auto* check : {check_negativity_flatness, check_pi_tangle, check_werner_threshold,
                      check_discord_curve, check_xstate_closed_form, check_global_discord,
                      check_geometric_discord, check_beyond_single_mode, check_representations}) {
    auto part = check(opt);
    all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return all;
}

}  // namespace unruhqi
