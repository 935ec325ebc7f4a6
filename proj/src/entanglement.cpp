#include "unruhqi/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "unruhqi/errors.hpp"

namespace unruhqi {

std::vector<std::string> party_factors(const SubsystemLayout& layout, const std::string& party) {
  if (!layout.contains(party)) throw LayoutError("unknown party '" + party + "'");
  std::vector<std::string> factors;
  const auto fock = fock_factor_name(party);
  if (layout.contains(fock)) factors.push_back(fock);
  factors.push_back(party);
  return factors;
}

namespace {

double pt_trace_norm(const LabeledOperator& rho, const std::string& party) {
  const auto factors = party_factors(rho.layout, party);
  return trace_norm(partial_transpose(rho, factors));
}

double blocked_pt_trace_norm(const BlockedDensity& b, const std::string& party) {
  const auto merged = b.coalesced();
  const double mass = merged.captured_mass();
  double acc = 0.0;
  for (const auto& t : merged.terms) {
    acc += t.weight / mass *
           trace_norm(partial_transpose(LabeledOperator{t.block, merged.helicity_layout}, party));
  }
  return acc;
}

Negativity from_norm(double norm) { return {std::max(norm - 1.0, 0.0), norm - 1.0}; }

double tangle_term(double one, double pair1, double pair2) {
  return one * one - pair1 * pair1 - pair2 * pair2;
}

template <typename State, typename Negate, typename Reduce>
TangleReport assemble(const State& state, Negate&& negativity, Reduce&& reduce) {
  TangleReport r;
  r.n_a_bc = negativity(state, "A");
  r.n_b_ac = negativity(state, "B");
  r.n_c_ab = negativity(state, "C");
  const auto ab = reduce(state, "C");
  const auto ac = reduce(state, "B");
  const auto bc = reduce(state, "A");
  r.n_ab = negativity(ab, "A");
  r.n_ac = negativity(ac, "A");
  r.n_bc = negativity(bc, "B");
  r.pi_a = tangle_term(r.n_a_bc, r.n_ab, r.n_ac);
  r.pi_b = tangle_term(r.n_b_ac, r.n_ab, r.n_bc);
  r.pi_c = tangle_term(r.n_c_ab, r.n_ac, r.n_bc);
  r.pi = (r.pi_a + r.pi_b + r.pi_c) / 3.0;
  return r;
}

}  // namespace

double log_negativity(const LabeledOperator& rho, const std::string& party) {
  return std::log2(pt_trace_norm(rho, party));
}

Negativity trace_norm_negativity(const LabeledOperator& rho, const std::string& party) {
  return from_norm(pt_trace_norm(rho, party));
}

Negativity trace_norm_negativity(const BlockedDensity& b, const std::string& party) {
  return from_norm(blocked_pt_trace_norm(b, party));
}

double log_negativity(const BlockedDensity& b, const std::string& party) {
  return std::log2(blocked_pt_trace_norm(b, party));
}

double min_pt_eigenvalue(const LabeledOperator& rho, const std::string& party) {
  const auto factors = party_factors(rho.layout, party);
  return spectrum(partial_transpose(rho, factors)).eigenvalues.back();
}

TangleReport pi_tangle(const BlockedDensity& b) {
  for (const char* p : {"A", "B", "C"}) {
    if (!b.helicity_layout.contains(p)) throw LayoutError("pi-tangle needs parties A, B and C");
  }
  return assemble(
      b, [](const BlockedDensity& s, const std::string& party) {
        return trace_norm_negativity(s, party).value;
      },
      [](const BlockedDensity& s, const std::string& party) { return trace_out(s, party); });
}

TangleReport pi_tangle(const LabeledOperator& rho) {
  return assemble(
      rho,
      [](const LabeledOperator& s, const std::string& party) {
        return trace_norm_negativity(s, party).value;
      },
      [](const LabeledOperator& s, const std::string& party) {
        return partial_trace(s, party_factors(s.layout, party));
      });
}

}  // namespace unruhqi
