#pragma once

#include <optional>
#include <vector>

#include "ctpower/qstate.hpp"

namespace ctpower {

/// Projective measurement basis on a fixed number of qubits.
///
/// Outcome labels are fixed per kind:
///   Computational: 0 -> |0>, 1 -> |1>
///   XBasis:        0 -> |+>, 1 -> |->
///   Bell:          [Phi+, Phi-, Psi+, Psi-]
///   Ghz(k):        (|x> +/- |xbar>)/sqrt(2) with x < 2^(k-1), label 2x + sign
struct MeasurementBasis {
  enum class Kind { Computational, XBasis, Bell, Ghz };

  Kind kind = Kind::Computational;
  int arity = 1;

  static MeasurementBasis computational() { return {Kind::Computational, 1}; }
  static MeasurementBasis x_basis() { return {Kind::XBasis, 1}; }
  static MeasurementBasis bell() { return {Kind::Bell, 2}; }
  static MeasurementBasis ghz(int k);

  std::size_t num_outcomes() const { return std::size_t(1) << arity; }

  friend bool operator==(const MeasurementBasis&, const MeasurementBasis&) = default;
};

/// One measurement outcome: label, probability, and the normalized state of
/// the unmeasured qubits. post_state is empty for zero-probability branches.
struct Branch {
  int outcome = 0;
  double probability = 0.0;
  std::optional<PureState> post_state;
};

/// Orthonormal basis vectors in label order.
std::vector<PureState> basis_vectors(const MeasurementBasis& basis);

/// Measures the target qubits, returning one branch per basis element.
/// Remaining qubits keep their original relative order.
std::vector<Branch> measure(const PureState& state, const MeasurementBasis& basis,
                            const std::vector<int>& targets);

/// Unnormalized projections <b_k| applied to the targets, preserving phases;
/// entry k has squared norm equal to the branch probability.
std::vector<PureState> project_branches(const PureState& state,
                                        const MeasurementBasis& basis,
                                        const std::vector<int>& targets);

}  // namespace ctpower
