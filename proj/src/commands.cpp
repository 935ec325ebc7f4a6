#include "unruhqi/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "unruhqi/entanglement.hpp"
#include "unruhqi/errors.hpp"
#include "unruhqi/state_factory.hpp"

namespace unruhqi::cli {

namespace {

struct MeasureName {
  Measure measure;
  const char* name;
};

constexpr MeasureName kMeasures[] = {
    {Measure::Negativity, "negativity"}, {Measure::LogNegativity, "log_negativity"},
    {Measure::PiTangle, "pi_tangle"},    {Measure::Discord, "discord"},
    {Measure::GlobalDiscord, "global_discord"}, {Measure::Geo2, "geo2"},
    {Measure::Geo1, "geo1"},
};

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) throw UsageError("not a number: '" + text + "'");
  return v;
}

}  // namespace

Measure parse_measure(const std::string& name) {
  for (const auto& m : kMeasures) {
    if (name == m.name) return m.measure;
  }
  throw UsageError("unknown measure '" + name + "'");
}

std::string measure_name(Measure m) {
  for (const auto& entry : kMeasures) {
    if (entry.measure == m) return entry.name;
  }
  return "?";
}

bool is_tripartite(Measure m) { return m == Measure::PiTangle || m == Measure::GlobalDiscord; }

std::vector<double> Range::values() const {
  std::vector<double> out;
  if (!(step > 0.0) || stop < start) return out;
  const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(start + step * static_cast<double>(i));
  return out;
}

Range parse_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ':')) parts.push_back(piece);
  if (!text.empty() && text.back() == ':') parts.emplace_back();
  Range r;
  if (parts.size() == 1) {
    r.start = r.stop = parse_double(parts[0]);
    r.step = 1.0;
  } else if (parts.size() == 3) {
    r = {parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])};
  } else {
    throw UsageError("range must be 'value' or 'start:stop:step', got '" + text + "'");
  }
  if (!(r.step > 0.0)) throw UsageError("range step must be positive in '" + text + "'");
  if (r.values().empty()) throw UsageError("empty range '" + text + "'");
  return r;
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw UsageError("unknown format '" + name + "'");
}

void SweepConfig::validate() const {
  for (const auto* r : {&omega, &p, &qr2}) {
    if (r->values().empty()) throw UsageError("empty parameter range");
  }
  for (double v : omega.values()) {
    if (!(v > 0.0)) throw UsageError("omega values must be positive");
  }
  for (double v : p.values()) {
    if (v < 0.0 || v > 1.0 + 1e-12) throw UsageError("p values must lie in [0, 1]");
  }
  for (double v : qr2.values()) {
    if (v < 0.0 || v > 1.0 + 1e-12) throw UsageError("qr2 values must lie in [0, 1]");
    if (is_tripartite(measure) && std::abs(v - 1.0) > 1e-12) {
      throw UsageError("measure '" + measure_name(measure) +
                       "' is defined for the single-mode tripartite state only (qr2 = 1)");
    }
  }
  try {
    policy.validate();
    grid.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

double evaluate_measure(Measure m, double omega, double p, double qr2,
                        const TruncationPolicy& policy, const GridSpec& grid) {
  const AccelerationParam w(omega);
  const MixingProbability mp(std::min(p, 1.0));
  if (is_tripartite(m)) {
    const auto state = tripartite_werner(w, w, mp, policy);
    if (m == Measure::PiTangle) return pi_tangle(state).pi;
    return global_discord(effective_matrix(state), grid).value;
  }
  const auto state = unruh_bipartite(w, UnruhWeights(std::min(qr2, 1.0)), mp, policy);
  switch (m) {
    case Measure::Negativity:
      return trace_norm_negativity(state, "A").value;
    case Measure::LogNegativity:
      return log_negativity(state, "A");
    case Measure::Discord:
      return discord_bruteforce(effective_matrix(state), "B", grid).discord;
    case Measure::Geo2:
      return geometric_discord_2norm(effective_matrix(state), "A", grid).value;
    case Measure::Geo1:
      return geometric_discord_1norm(effective_matrix(state), "A", grid).value;
    default:
      break;
  }
  throw UsageError("unsupported measure");
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  std::vector<SweepRow> rows;
  for (double omega : config.omega.values()) {
    for (double p : config.p.values()) {
      for (double qr2 : config.qr2.values()) rows.push_back({omega, p, qr2, config.measure, 0.0, {}});
    }
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      auto& row = rows[i];
      try {
        row.value = evaluate_measure(row.measure, row.omega, row.p, row.qr2, config.policy,
                                     config.grid);
        if (!std::isfinite(row.value)) row.error = "non-finite value";
      } catch (const std::exception& e) {
        row.value = NAN;
        row.error = e.what();
      }
    }
  };
  unsigned n_threads = config.threads != 0 ? config.threads : std::thread::hardware_concurrency();
  n_threads = std::clamp<unsigned>(n_threads, 1, static_cast<unsigned>(std::max<std::size_t>(rows.size(), 1)));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return rows;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.9g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

namespace {

std::string csv_escape(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

void write_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
  os << "omega,p,qr2,measure,value\n";
  for (const auto& r : rows) {
    os << format_number(r.omega) << ',' << format_number(r.p) << ',' << format_number(r.qr2) << ','
       << measure_name(r.measure) << ',' << format_number(r.value);
    if (r.error) os << ",error=" << csv_escape(*r.error);
    os << '\n';
  }
}

void write_json(const std::vector<SweepRow>& rows, std::ostream& os) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = {{"omega", r.omega},
                          {"p", r.p},
                          {"qr2", r.qr2},
                          {"measure", measure_name(r.measure)},
                          {"value", r.value}};
    if (r.error) row["error"] = *r.error;
    arr.push_back(std::move(row));
  }
  os << arr.dump(2) << '\n';
}

int cmd_sweep(const SweepConfig& config, std::ostream& err) {
  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(config);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!config.out.empty() && config.out != "-") {
    file.open(config.out);
    if (!file) {
      err << "cannot open output file '" << config.out << "'\n";
      return kExitUsage;
    }
    os = &file;
  }
  if (config.format == Format::Csv) {
    write_csv(rows, *os);
  } else {
    write_json(rows, *os);
  }
  const bool failed = std::any_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.error.has_value(); });
  if (failed) err << "one or more rows failed; see the error column\n";
  return failed ? kExitFailure : kExitOk;
}

std::string checks_to_json(const std::vector<CheckResult>& checks) {
  auto arr = nlohmann::json::array();
  for (const auto& c : checks) {
    arr.push_back({{"id", c.id},
                   {"expected", c.expected},
                   {"observed", c.observed},
                   {"tolerance", c.tolerance},
                   {"pass", c.pass}});
  }
  return arr.dump(2);
}

int cmd_verify(const VerifyOptions& options, const std::string& out, std::ostream& stdout_stream,
               std::ostream& err) {
  const auto checks = run_all_checks(options);
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    err << (c.pass ? "PASS " : "FAIL ") << "[" << c.criterion << "] " << c.id
        << " expected=" << format_number(c.expected) << " observed=" << format_number(c.observed)
        << " tol=" << c.tolerance << " (" << c.detail << ")\n";
  }
  const auto report = checks_to_json(checks);
  if (out.empty() || out == "-") {
    stdout_stream << report << '\n';
  } else {
    std::ofstream file(out);
    if (!file) {
      err << "cannot open output file '" << out << "'\n";
      return kExitUsage;
    }
    file << report << '\n';
  }
  return all ? kExitOk : kExitFailure;
}

Family parse_family(const std::string& name) {
  if (name == "bipartite") return Family::Bipartite;
  if (name == "tripartite") return Family::Tripartite;
  if (name == "unruh") return Family::Unruh;
  throw UsageError("unknown state family '" + name + "'");
}

int cmd_state(const StateConfig& config, std::ostream& os) {
  BlockedDensity state;
  try {
    const AccelerationParam w(config.omega);
    const MixingProbability p(config.p);
    switch (config.family) {
      case Family::Bipartite:
        state = bipartite_werner(w, p, config.policy);
        break;
      case Family::Tripartite:
        state = tripartite_werner(w, AccelerationParam(config.omega_c), p, config.policy);
        break;
      case Family::Unruh:
        state = unruh_bipartite(w, UnruhWeights(config.qr2), p, config.policy);
        break;
    }
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const auto rho = effective_matrix(state);
  const auto labels = helicity_basis_labels(rho.layout());
  std::size_t width = 0;
  for (const auto& l : labels) width = std::max(width, l.size());

  os << std::fixed << std::setprecision(6);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    os << labels[i] << std::string(width - labels[i].size() + 2, ' ');
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const Complex z = rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      os << (j ? " " : "") << std::setw(9) << (z.real() == 0.0 ? 0.0 : z.real());
      if (std::abs(z.imag()) > 1e-12) os << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    }
    os << '\n';
  }
  const auto spec = spectrum(rho.matrix());
  os << "trace " << rho.matrix().trace().real() << '\n';
  os << "min_eigenvalue " << std::setprecision(12) << spec.eigenvalues.back() << '\n';
  os << "psd " << (spec.eigenvalues.back() >= -tolerance::psd ? "yes" : "no") << '\n';
  os << "fock_tail " << std::scientific << std::setprecision(3) << state.tail_bound << '\n';
  os << std::defaultfloat;
  return kExitOk;
}

}  // namespace unruhqi::cli
