#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctpower/channels.hpp"
#include "ctpower/measure.hpp"
#include "ctpower/qstate.hpp"

namespace ctpower {

/// One measurement in a protocol plan. Targets use the combined indexing of
/// (input state, channel): input qubits are 0..N-1, channel qubit q is N+q.
struct MeasurementStep {
  MeasurementBasis basis;
  std::vector<int> targets;
};

/// Full description of a controlled teleportation scheme: channel, party
/// assignment, measurement plans, and how the scheme is reported.
struct ProtocolSpec {
  std::string scheme_id;
  PureState channel;
  PartyMap parties;
  int input_qubits = 0;
  std::vector<MeasurementStep> sender_plan;
  std::vector<std::vector<MeasurementStep>> controller_plans;
  bool symmetric_controllers = false;
  /// Channel used to derive the correction table. Set for parameterized
  /// channel families whose corrections do not depend on the parameters:
  /// a choice with every branch populated keeps the table total even when
  /// the actual channel gives some outcomes probability zero.
  std::optional<PureState> frame_channel;

  int num_controllers() const { return int(controller_plans.size()); }
  /// All steps in plan order: sender first, then controllers in index order.
  std::vector<MeasurementStep> flat_plan() const;
  /// First position of controller m's outcomes within the flat plan.
  std::size_t controller_slot(int m) const;

  void validate() const;
};

/// Thrown when some outcome branch admits no Pauli correction, i.e. the
/// channel is not perfect-CT under the given measurement plan.
struct NoPauliFrame : std::runtime_error {
  std::vector<int> outcome_tuple;
  explicit NoPauliFrame(std::vector<int> tuple);
};

/// Pauli corrections for Bob keyed by the joint outcome tuple in plan order.
/// Branch probabilities are input-independent for a perfect-CT scheme and
/// are recorded alongside each entry.
struct CorrectionTable {
  std::map<std::vector<int>, PauliString> entries;
  std::map<std::vector<int>, double> probabilities;

  const PauliString& at(const std::vector<int>& outcomes) const;
};

struct RunBranch {
  std::vector<int> outcomes;
  double probability = 0.0;
  std::optional<PureState> bob_state;  // post-correction; empty when probability 0
};

/// Solves for the Pauli correction of every outcome branch by teleporting
/// the computational basis states through the protocol and matching the
/// resulting linear map against a Pauli string. Each nonzero branch is then
/// verified on Haar-random inputs. Throws NoPauliFrame when a branch cannot
/// be corrected by any Pauli string.
CorrectionTable derive_corrections(const ProtocolSpec& spec);

/// Runs the scheme with all parties cooperating, enumerating every outcome
/// tuple and applying the table's correction to Bob's collapsed qubits.
std::vector<RunBranch> run_full(const ProtocolSpec& spec, const CorrectionTable& table,
                                const PureState& input);

/// Probability-weighted mean of |<input|bob_state>|^2 over all branches;
/// equals 1 for a perfect-CT scheme.
double conditioned_fidelity(const ProtocolSpec& spec, const CorrectionTable& table,
                            const PureState& input);

/// Bob's mixed state when the excluded controller withholds its outcomes:
/// everyone else measures and announces, Bob corrects with the excluded
/// outcomes keyed at the reference label 0, and the excluded controller's
/// qubits are traced out.
DensityMatrix bob_state_without(const ProtocolSpec& spec, const CorrectionTable& table,
                                const PureState& input, int excluded);

/// Non-conditioned fidelity <input| rho_B |input> for the excluded controller.
double ncf(const ProtocolSpec& spec, const CorrectionTable& table,
           const PureState& input, int excluded);

/// Low-level branch enumerator shared by the protocol operations. Measures
/// every step except those of skip_controller (pass -1 to measure all).
/// The callback receives the outcome tuple over the full flat plan (skipped
/// slots fixed at 0), the branch probability, and the unnormalized state of
/// the remaining qubits (Bob's block first, then the skipped controller's).
using BranchVisitor =
    std::function<void(const std::vector<int>& outcomes, double probability,
                       const PureState& remaining_unnormalized)>;
void enumerate_branches(const ProtocolSpec& spec, const PureState& input,
                        int skip_controller, const BranchVisitor& visit);

}  // namespace ctpower
