#include "ctpower/protocol.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

namespace ctpower {

namespace {
constexpr double kZeroBranch = 1e-12;
}

std::vector<MeasurementStep> ProtocolSpec::flat_plan() const {
  std::vector<MeasurementStep> steps = sender_plan;
  for (const auto& plan : controller_plans)
    steps.insert(steps.end(), plan.begin(), plan.end());
  return steps;
}

std::size_t ProtocolSpec::controller_slot(int m) const {
  std::size_t slot = sender_plan.size();
  for (int k = 0; k < m; ++k) slot += controller_plans[std::size_t(k)].size();
  return slot;
}

void ProtocolSpec::validate() const {
  if (!parties.is_partition())
    throw std::invalid_argument("party map does not partition the channel qubits");
  if (parties.total_qubits() != channel.num_qubits)
    throw std::invalid_argument("party map does not match channel size");
  if (int(parties.bob.size()) != input_qubits)
    throw std::invalid_argument("Bob must hold exactly N qubits");

  int offset = input_qubits;
  std::set<int> allowed;
  for (int q = 0; q < input_qubits; ++q) allowed.insert(q);
  for (int q : parties.alice) allowed.insert(offset + q);

  std::set<int> measured;
  auto check_steps = [&](const std::vector<MeasurementStep>& steps,
                         const std::set<int>& domain) {
    for (const auto& step : steps) {
      if (int(step.targets.size()) != step.basis.arity)
        throw std::invalid_argument("plan step arity mismatch");
      for (int t : step.targets) {
        if (!domain.count(t))
          throw std::invalid_argument("plan target outside the owner's qubits");
        if (!measured.insert(t).second)
          throw std::invalid_argument("qubit measured twice");
      }
    }
  };
  check_steps(sender_plan, allowed);
  if (controller_plans.size() != parties.controllers.size())
    throw std::invalid_argument("one measurement plan required per controller");
  for (std::size_t m = 0; m < controller_plans.size(); ++m) {
    std::set<int> domain;
    for (int q : parties.controllers[m]) domain.insert(offset + q);
    check_steps(controller_plans[m], domain);
  }

  // exactly Bob's N qubits must remain unmeasured
  if (int(measured.size()) != channel.num_qubits)
    throw std::invalid_argument("plans must measure all non-Bob qubits");
}

NoPauliFrame::NoPauliFrame(std::vector<int> tuple)
    : std::runtime_error("no Pauli correction exists for outcome branch"),
      outcome_tuple(std::move(tuple)) {}

const PauliString& CorrectionTable::at(const std::vector<int>& outcomes) const {
  auto it = entries.find(outcomes);
  if (it == entries.end())
    throw std::invalid_argument("outcome tuple missing from correction table");
  return it->second;
}

namespace {

struct FlatStep {
  MeasurementBasis basis;
  std::vector<int> targets;  // combined original indices
  int controller;            // -1 for sender steps
};

std::vector<FlatStep> tagged_plan(const ProtocolSpec& spec) {
  std::vector<FlatStep> steps;
  for (const auto& s : spec.sender_plan) steps.push_back({s.basis, s.targets, -1});
  for (std::size_t m = 0; m < spec.controller_plans.size(); ++m)
    for (const auto& s : spec.controller_plans[m])
      steps.push_back({s.basis, s.targets, int(m)});
  return steps;
}

// Enumerates the remaining outcome labels of zero-probability subtrees.
void emit_dead(const std::vector<FlatStep>& steps, std::size_t step_idx,
               int skip_controller, std::vector<int>& outcomes,
               const PureState& zero_state, const BranchVisitor& visit) {
  if (step_idx == steps.size()) {
    visit(outcomes, 0.0, zero_state);
    return;
  }
  const FlatStep& step = steps[step_idx];
  if (step.controller == skip_controller && skip_controller >= 0) {
    outcomes.push_back(0);
    emit_dead(steps, step_idx + 1, skip_controller, outcomes, zero_state, visit);
    outcomes.pop_back();
    return;
  }
  for (std::size_t o = 0; o < step.basis.num_outcomes(); ++o) {
    outcomes.push_back(int(o));
    emit_dead(steps, step_idx + 1, skip_controller, outcomes, zero_state, visit);
    outcomes.pop_back();
  }
}

void walk(const std::vector<FlatStep>& steps, std::size_t step_idx, int skip_controller,
          const PureState& state, std::vector<int>& positions, std::vector<int>& outcomes,
          const PureState& zero_state, const BranchVisitor& visit) {
  if (step_idx == steps.size()) {
    visit(outcomes, state.amplitudes.squaredNorm(), state);
    return;
  }
  const FlatStep& step = steps[step_idx];
  if (step.controller == skip_controller && skip_controller >= 0) {
    outcomes.push_back(0);
    walk(steps, step_idx + 1, skip_controller, state, positions, outcomes, zero_state, visit);
    outcomes.pop_back();
    return;
  }

  std::vector<int> cur_targets;
  for (int t : step.targets) cur_targets.push_back(positions[std::size_t(t)]);

  // update the original-index -> current-position map for the subtree
  std::vector<int> sorted = cur_targets;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> next_positions = positions;
  for (int& p : next_positions) {
    if (p < 0) continue;
    if (std::binary_search(sorted.begin(), sorted.end(), p)) {
      p = -1;
    } else {
      int shift = int(std::lower_bound(sorted.begin(), sorted.end(), p) - sorted.begin());
      p -= shift;
    }
  }

  auto projections = project_branches(state, step.basis, cur_targets);
  for (std::size_t o = 0; o < projections.size(); ++o) {
    outcomes.push_back(int(o));
    if (projections[o].amplitudes.squaredNorm() < kZeroBranch) {
      emit_dead(steps, step_idx + 1, skip_controller, outcomes, zero_state, visit);
    } else {
      walk(steps, step_idx + 1, skip_controller, projections[o], next_positions, outcomes,
           zero_state, visit);
    }
    outcomes.pop_back();
  }
}

}  // namespace

void enumerate_branches(const ProtocolSpec& spec, const PureState& input,
                        int skip_controller, const BranchVisitor& visit) {
  if (input.num_qubits != spec.input_qubits)
    throw std::invalid_argument("input state has the wrong number of qubits");
  if (skip_controller >= spec.num_controllers())
    throw std::invalid_argument("excluded controller index out of range");

  PureState combined = tensor(input, spec.channel);
  std::vector<int> positions(std::size_t(combined.num_qubits));
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = int(i);

  int n_remaining = spec.input_qubits;
  if (skip_controller >= 0)
    n_remaining += int(spec.parties.controllers[std::size_t(skip_controller)].size());
  PureState zero_state(n_remaining,
                       Vector::Zero(Eigen::Index(std::size_t(1) << n_remaining)));

  std::vector<int> outcomes;
  walk(tagged_plan(spec), 0, skip_controller, combined, positions, outcomes, zero_state,
       visit);
}

CorrectionTable derive_corrections(const ProtocolSpec& spec) {
  spec.validate();
  if (spec.frame_channel) {
    // entries come from the fully populated donor channel, branch
    // probabilities from the actual one
    ProtocolSpec donor = spec;
    donor.channel = *spec.frame_channel;
    donor.frame_channel.reset();
    CorrectionTable table = derive_corrections(donor);
    ProtocolSpec actual = spec;
    actual.frame_channel.reset();
    table.probabilities = derive_corrections(actual).probabilities;
    return table;
  }
  int n = spec.input_qubits;
  std::size_t dim = std::size_t(1) << n;

  // teleport every computational basis state; the collapsed Bob vector is
  // linear in the input, so the columns determine the branch map completely
  std::map<std::vector<int>, Matrix> maps;
  for (std::size_t x = 0; x < dim; ++x) {
    enumerate_branches(
        spec, PureState::basis(n, x), -1,
        [&](const std::vector<int>& outcomes, double, const PureState& remaining) {
          auto [it, inserted] = maps.try_emplace(
              outcomes, Matrix::Zero(Eigen::Index(dim), Eigen::Index(dim)));
          it->second.col(Eigen::Index(x)) = remaining.amplitudes;
        });
  }

  // fixed probe inputs for the per-branch verification pass
  std::vector<PureState> probes;
  {
    RngStream rng(0x9d2c5680u);
    for (int k = 0; k < 20; ++k) {
      RngStream sub = rng.substream(std::uint64_t(k));
      probes.push_back(haar_random_state(n, sub));
    }
  }

  CorrectionTable table;
  for (auto& [tuple, v] : maps) {
    double max_abs = v.cwiseAbs().maxCoeff();
    if (max_abs < 1e-9) {
      table.entries.emplace(tuple, PauliString::identity(n));
      table.probabilities.emplace(tuple, 0.0);
      continue;
    }

    // the X part: every column x must have its single nonzero at row x^t
    Eigen::Index r0 = 0, c0 = 0;
    v.cwiseAbs().maxCoeff(&r0, &c0);
    std::size_t t = std::size_t(r0) ^ std::size_t(c0);

    Vector lam = Vector::Zero(Eigen::Index(dim));
    bool ok = true;
    for (std::size_t x = 0; x < dim && ok; ++x) {
      lam[Eigen::Index(x)] = v(Eigen::Index(x ^ t), Eigen::Index(x));
      for (std::size_t r = 0; r < dim; ++r)
        if (r != (x ^ t) && std::abs(v(Eigen::Index(r), Eigen::Index(x))) > kTol * max_abs)
          ok = false;
      if (std::abs(std::abs(lam[Eigen::Index(x)]) - max_abs) > kTol * max_abs) ok = false;
    }
    if (!ok) throw NoPauliFrame(tuple);

    // the Z part: phase ratios relative to column 0 must follow (-1)^(z.x)
    std::size_t z = 0;
    for (int b = 0; b < n; ++b) {
      Complex r = lam[Eigen::Index(std::size_t(1) << b)] / lam[0];
      if (std::abs(r - 1.0) < kTol) continue;
      if (std::abs(r + 1.0) < kTol) {
        z |= std::size_t(1) << b;
        continue;
      }
      throw NoPauliFrame(tuple);
    }
    for (std::size_t x = 0; x < dim; ++x) {
      double sign = (std::popcount(x & z) & 1) ? -1.0 : 1.0;
      if (std::abs(lam[Eigen::Index(x)] / lam[0] - sign) > kTol) throw NoPauliFrame(tuple);
    }

    PauliString p = PauliString::from_masks(n, t, z);
    Matrix p_mat = p.to_matrix();
    double prob = lam.squaredNorm() / double(dim);
    for (const PureState& phi : probes) {
      Vector bob = v * phi.amplitudes;
      double norm = bob.norm();
      if (std::abs(norm * norm - prob) > kTol) throw NoPauliFrame(tuple);
      Complex ov = phi.amplitudes.dot(p_mat * bob);
      if (std::abs(std::abs(ov) - norm) > kTol * std::max(1.0, norm))
        throw NoPauliFrame(tuple);
    }

    table.entries.emplace(tuple, std::move(p));
    table.probabilities.emplace(tuple, prob);
  }
  return table;
}

std::vector<RunBranch> run_full(const ProtocolSpec& spec, const CorrectionTable& table,
                                const PureState& input) {
  std::vector<int> bob_targets(static_cast<std::size_t>(spec.input_qubits));
  for (int q = 0; q < spec.input_qubits; ++q) bob_targets[std::size_t(q)] = q;

  std::vector<RunBranch> branches;
  enumerate_branches(
      spec, input, -1,
      [&](const std::vector<int>& outcomes, double prob, const PureState& remaining) {
        RunBranch br;
        br.outcomes = outcomes;
        br.probability = prob;
        if (prob >= kZeroBranch) {
          PureState bob = remaining;
          bob.amplitudes /= std::sqrt(prob);
          br.bob_state = apply_pauli(bob, table.at(outcomes), bob_targets);
        } else {
          br.probability = 0.0;
        }
        branches.push_back(std::move(br));
      });
  return branches;
}

double conditioned_fidelity(const ProtocolSpec& spec, const CorrectionTable& table,
                            const PureState& input) {
  double total = 0.0;
  for (const RunBranch& br : run_full(spec, table, input))
    if (br.bob_state) total += br.probability * std::pow(overlap(input, *br.bob_state), 2);
  return total;
}

DensityMatrix bob_state_without(const ProtocolSpec& spec, const CorrectionTable& table,
                                const PureState& input, int excluded) {
  if (excluded < 0 || excluded >= spec.num_controllers())
    throw std::invalid_argument("excluded controller index out of range");
  int n = spec.input_qubits;
  int n_ctrl = int(spec.parties.controllers[std::size_t(excluded)].size());
  std::vector<int> bob_targets(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) bob_targets[std::size_t(q)] = q;
  std::vector<int> ctrl_qubits(static_cast<std::size_t>(n_ctrl));
  for (int q = 0; q < n_ctrl; ++q) ctrl_qubits[std::size_t(q)] = n + q;

  Matrix acc = Matrix::Zero(Eigen::Index(std::size_t(1) << n),
                            Eigen::Index(std::size_t(1) << n));
  enumerate_branches(
      spec, input, excluded,
      [&](const std::vector<int>& outcomes, double prob, const PureState& remaining) {
        if (prob < kZeroBranch) return;
        PureState post = remaining;
        post.amplitudes /= std::sqrt(prob);
        post = apply_pauli(post, table.at(outcomes), bob_targets);
        acc += prob * partial_trace(post, ctrl_qubits).matrix;
      });
  return DensityMatrix(n, std::move(acc));
}

double ncf(const ProtocolSpec& spec, const CorrectionTable& table, const PureState& input,
           int excluded) {
  return fidelity(input, bob_state_without(spec, table, input, excluded));
}

}  // namespace ctpower
