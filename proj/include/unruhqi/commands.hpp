#pragma once

// Implementation of the unruhqi command-line subcommands.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "unruhqi/discord.hpp"
#include "unruhqi/fock_ledger.hpp"
#include "unruhqi/verification.hpp"

namespace unruhqi::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Thrown for invalid user input; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Measure { Negativity, LogNegativity, PiTangle, Discord, GlobalDiscord, Geo2, Geo1 };

Measure parse_measure(const std::string& name);
std::string measure_name(Measure m);
bool is_tripartite(Measure m);

/// Inclusive arithmetic range start:stop:step; a single number is a
/// one-point range.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
};

Range parse_range(const std::string& text);

enum class Format { Csv, Json };
Format parse_format(const std::string& name);

struct SweepConfig {
  Measure measure = Measure::Negativity;
  Range omega{0.5, 0.5, 1.0};
  Range p{1.0, 1.0, 1.0};
  Range qr2{1.0, 1.0, 1.0};
  TruncationPolicy policy{};
  GridSpec grid{};
  std::string out;  // empty or "-" writes to stdout
  Format format = Format::Csv;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
};

struct SweepRow {
  double omega = 0.0;
  double p = 0.0;
  double qr2 = 0.0;
  Measure measure = Measure::Negativity;
  double value = 0.0;
  std::optional<std::string> error;
};

/// Value of one measure at one parameter point.  Bipartite measures use the
/// beyond-single-mode family (qr2 = 1 is the single-mode state); tripartite
/// measures put both accelerated observers at the same omega.
double evaluate_measure(Measure m, double omega, double p, double qr2,
                        const TruncationPolicy& policy, const GridSpec& grid);

/// Rows in omega-outer, p-middle, qr2-inner order; computed in parallel.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// Numbers printed with 9 significant digits.
std::string format_number(double v);

void write_csv(const std::vector<SweepRow>& rows, std::ostream& os);
void write_json(const std::vector<SweepRow>& rows, std::ostream& os);

int cmd_sweep(const SweepConfig& config, std::ostream& err);

/// JSON array of {id, expected, observed, tolerance, pass}.
std::string checks_to_json(const std::vector<CheckResult>& checks);

/// Runs every check; writes the JSON report to `out` (stdout when empty or
/// "-"), one summary line per check to `err`.  Exit 0 iff all pass.
int cmd_verify(const VerifyOptions& options, const std::string& out, std::ostream& stdout_stream,
               std::ostream& err);

enum class Family { Bipartite, Tripartite, Unruh };
Family parse_family(const std::string& name);

struct StateConfig {
  Family family = Family::Bipartite;
  double omega = 0.5;
  double omega_c = 0.5;
  double p = 1.0;
  double qr2 = 1.0;
  TruncationPolicy policy{};
};

/// Prints the effective helicity matrix with basis labels and diagnostics.
int cmd_state(const StateConfig& config, std::ostream& os);

}  // namespace unruhqi::cli
