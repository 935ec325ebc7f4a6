// unruhqi: sweeps, checks and state inspection for helicity-entangled states
// of accelerated observers.

#include <iostream>

#include <CLI11.hpp>

#include "unruhqi/commands.hpp"
#include "unruhqi/errors.hpp"

namespace cli = unruhqi::cli;

namespace {

struct CommonFlags {
  double epsilon = 1e-12;
  std::size_t theta_steps = 61;
  std::size_t phi_steps = 61;
  std::size_t refine = 3;

  void attach(CLI::App* cmd) {
    cmd->add_option("--epsilon", epsilon, "Fock truncation tail bound")->capture_default_str();
    cmd->add_option("--grid-theta", theta_steps, "polar-angle grid points")->capture_default_str();
    cmd->add_option("--grid-phi", phi_steps, "azimuth grid points")->capture_default_str();
    cmd->add_option("--refine", refine, "local refinement rounds")->capture_default_str();
  }

  unruhqi::GridSpec grid() const { return {theta_steps, phi_steps, refine, 0.25}; }
  unruhqi::TruncationPolicy policy() const { return {epsilon, 512}; }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement and discord of helicity-entangled states for accelerated observers"};
  app.require_subcommand(1);

  CommonFlags sweep_flags;
  std::string measure = "negativity", omega = "0.5", p = "1", qr2 = "1", out, format = "csv";
  auto* sweep = app.add_subcommand("sweep", "evaluate a measure over a parameter grid");
  sweep->add_option("--measure", measure,
                    "negativity|log_negativity|pi_tangle|discord|global_discord|geo2|geo1")
      ->capture_default_str();
  sweep->add_option("--omega", omega, "start:stop:step or value")->capture_default_str();
  sweep->add_option("--p", p, "start:stop:step or value")->capture_default_str();
  sweep->add_option("--qr2", qr2, "start:stop:step or value (|q_R|^2)")->capture_default_str();
  sweep->add_option("--out", out, "output file (default stdout)");
  sweep->add_option("--format", format, "csv|json")->capture_default_str();
  sweep_flags.attach(sweep);

  CommonFlags verify_flags;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "run every acceptance check, emit a JSON report");
  verify->add_option("--out", verify_out, "report file (default stdout)");
  verify_flags.attach(verify);

  CommonFlags state_flags;
  std::string family = "bipartite";
  cli::StateConfig state_cfg;
  auto* state = app.add_subcommand("state", "print the effective helicity density matrix");
  state->add_option("family", family, "bipartite|tripartite|unruh")->capture_default_str();
  state->add_option("--omega", state_cfg.omega, "acceleration parameter (Bob)")->capture_default_str();
  state->add_option("--omega-c", state_cfg.omega_c, "acceleration parameter (Charlie)")
      ->capture_default_str();
  state->add_option("--p", state_cfg.p, "Werner mixing probability")->capture_default_str();
  state->add_option("--qr2", state_cfg.qr2, "|q_R|^2 for the unruh family")->capture_default_str();
  state_flags.attach(state);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitUsage;
  }

  try {
    if (*sweep) {
      cli::SweepConfig cfg;
      cfg.measure = cli::parse_measure(measure);
      cfg.omega = cli::parse_range(omega);
      cfg.p = cli::parse_range(p);
      cfg.qr2 = cli::parse_range(qr2);
      cfg.out = out;
      cfg.format = cli::parse_format(format);
      cfg.grid = sweep_flags.grid();
      cfg.policy = sweep_flags.policy();
      return cli::cmd_sweep(cfg, std::cerr);
    }
    if (*verify) {
      unruhqi::VerifyOptions opt;
      opt.grid = verify_flags.grid();
      opt.policy = verify_flags.policy();
      return cli::cmd_verify(opt, verify_out, std::cout, std::cerr);
    }
    if (*state) {
      state_cfg.family = cli::parse_family(family);
      state_cfg.policy = state_flags.policy();
      return cli::cmd_state(state_cfg, std::cout);
    }
  } catch (const cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return cli::kExitUsage;
  } catch (const unruhqi::DomainError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitFailure;
  }
  return cli::kExitUsage;
}
