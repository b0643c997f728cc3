#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ctpower/catalog.hpp"
#include "ctpower/protocol.hpp"

namespace ctpower {

/// Convex mixture of Pauli-rotated copies of the input state,
/// rho = sum_k p_k P_k |phi><phi| P_k.
struct PauliMixture {
  int num_qubits = 0;
  std::vector<std::pair<PauliString, double>> components;

  double total_weight() const;
};

enum class InputMode { Arbitrary, Product };
enum class Method { Mc, Analytic, Both };

struct McEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  int samples = 0;
};

/// Classical teleportation fidelity limit 2/(1+2^N).
double classical_limit(int n);

/// Minimum control power (2^N-1)/(2^N+1); complements the classical limit.
double min_control_power(int n);

/// Minimum number of controller qubits needed for adequate control power
/// (necessary, not sufficient).
int controller_qubit_bound(int n);

/// Reconstructs Bob's state without the excluded controller as an explicit
/// Pauli mixture from the correction table and the (input-independent)
/// branch probabilities.
PauliMixture pauli_mixture(const ProtocolSpec& spec, const CorrectionTable& table,
                           int excluded);

/// Closed-form Haar average of <phi| rho |phi> for a Pauli mixture:
/// sum_k p_k (d + |tr P_k|^2) / (d (d+1)).
double average_ncf_pauli(const PauliMixture& mixture);

/// Monte-Carlo Haar average of the non-conditioned fidelity. Sample i draws
/// its randomness from stream substream i, so the estimate is deterministic
/// for a fixed seed regardless of evaluation order.
McEstimate average_ncf_mc(const ProtocolSpec& spec, const CorrectionTable& table,
                          int excluded, int samples, const RngStream& stream,
                          InputMode mode = InputMode::Arbitrary);

/// 1 minus the average NCF, via the analytic oracle or Monte Carlo.
double control_power(const ProtocolSpec& spec, const CorrectionTable& table, int excluded,
                     Method method, int samples, const RngStream& stream);

/// Average NCF of the partially entangled four-qubit channel,
/// a^2 + (b^2 + c^2 + d^2)/3.
double pe4_ncf_analytic(const Pe4Params& p);

/// Per-qubit NCF for product-state inputs: average of
/// <phi_n| tr_{B != n}(rho_B) |phi_n> over products of single-qubit Haar states.
McEstimate per_qubit_ncf(const ProtocolSpec& spec, const CorrectionTable& table,
                         int excluded, int qubit, int samples, const RngStream& stream);

/// Mean conditioned fidelity over Haar-random inputs (1 for perfect CT).
double mean_conditioned_fidelity(const ProtocolSpec& spec, const CorrectionTable& table,
                                 int inputs, const RngStream& stream,
                                 InputMode mode = InputMode::Arbitrary);

struct ControllerRecord {
  int index = 0;
  int qubits = 0;
  double cf = 0.0;
  double ncf_mean = 0.0;
  double ncf_stderr = 0.0;
  double ncf_analytic = 0.0;  // always computed via the Pauli oracle
  double cp = 0.0;
  bool sufficient = false;
};

struct CriteriaReport {
  bool all_qubits_controlled = false;
  int uncontrolled_qubits = 0;
  bool equal_power = false;
  bool power_sufficient_all = false;
};

struct AnalysisReport {
  SchemeConfig config;
  int n = 0;
  double classical_limit = 0.0;
  double min_control_power = 0.0;
  std::string method;
  std::uint64_t seed = 0;
  int samples = 0;
  InputMode mode = InputMode::Arbitrary;
  std::vector<ControllerRecord> controllers;
  CriteriaReport criteria;

  bool pass() const;
};

/// Full scheme evaluation against the three suitability criteria.
AnalysisReport verdict(const SchemeConfig& config, Method method, int samples,
                       std::uint64_t seed, InputMode mode = InputMode::Arbitrary);

struct Pe4Row {
  double a2, b2, c2, d2;
  double cf;
  double ncf_analytic;
  double ncf_mc;
  double ncf_stderr;
  bool pass;
};

/// Rows over the simplex grid {k_i / (resolution-1), sum k_i = resolution-1}.
std::vector<Pe4Row> pe4_sweep(int resolution, int samples, std::uint64_t seed);

}  // namespace ctpower
