#pragma once

// Numerical checks of the acceleration-independence results: each check has
// an expected value, the observed (worst-case) value and a pinned tolerance.

#include <random>
#include <string>
#include <vector>

#include "unruhqi/discord.hpp"
#include "unruhqi/fock_ledger.hpp"

namespace unruhqi {

struct CheckResult {
  std::string id;
  int criterion = 0;
  double expected = 0.0;
  double observed = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  GridSpec grid{};
  TruncationPolicy policy{};
  unsigned random_seed = 20240611;
};

std::vector<CheckResult> check_negativity_flatness(const VerifyOptions& opt);
std::vector<CheckResult> check_pi_tangle(const VerifyOptions& opt);
std::vector<CheckResult> check_werner_threshold(const VerifyOptions& opt);
std::vector<CheckResult> check_discord_curve(const VerifyOptions& opt);
std::vector<CheckResult> check_xstate_closed_form(const VerifyOptions& opt);
std::vector<CheckResult> check_global_discord(const VerifyOptions& opt);
std::vector<CheckResult> check_geometric_discord(const VerifyOptions& opt);
std::vector<CheckResult> check_beyond_single_mode(const VerifyOptions& opt);
std::vector<CheckResult> check_representations(const VerifyOptions& opt);

/// Every check above, in criterion order.
std::vector<CheckResult> run_all_checks(const VerifyOptions& opt = {});

/// Random two-qubit X-state with real off-diagonals (test and verify helper).
XStateParams random_xstate(std::mt19937_64& rng);

}  // namespace unruhqi
