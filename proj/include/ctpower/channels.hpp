#pragma once

#include <vector>

#include "ctpower/qstate.hpp"

namespace ctpower {

/// Ownership of the channel qubits. Lists are disjoint and cover the full
/// qubit set; layout is always Alice block, Bob block, controller blocks.
struct PartyMap {
  std::vector<int> alice;
  std::vector<int> bob;
  std::vector<std::vector<int>> controllers;

  int total_qubits() const;
  bool is_partition() const;
};

struct Channel {
  PureState state;
  PartyMap parties;
};

/// Amplitudes of the partially entangled four-qubit channel,
/// a^2 + b^2 + c^2 + d^2 = 1, all nonnegative.
struct Pe4Params {
  double a = 1.0, b = 0.0, c = 0.0, d = 0.0;

  void validate() const;
  static Pe4Params from_squares(double a2, double b2, double c2, double d2);
};

/// |Phi+> = (|00> + |11>)/sqrt(2)
PureState epr();

/// (|0...0> + |1...1>)/sqrt(2) on k >= 2 qubits
PureState ghz(int k);

/// N copies of a (M+2)-qubit GHZ state; per copy one qubit each for Alice,
/// Bob, and every controller. Each of the M controllers ends with N qubits.
Channel nghz_channel(int n, int m);

/// (prod EPR) x GHZ+ + (prod EPRtilde) x GHZ-, globally normalized.
/// Variant 1: EPRtilde = (|00> - |11>)/sqrt(2); variant 2: (|01> - |10>)/sqrt(2).
/// Alice holds the N EPR A-qubits plus the GHZ A-qubit, Bob the N B-qubits,
/// each of the M controllers one GHZ C-qubit.
Channel yang_channel(int n, int m, int variant);

/// M three-qubit GHZ states plus (N-M) EPR pairs, one single-qubit controller
/// per GHZ. Requires 1 <= M <= N.
Channel man_channel(int n, int m);

/// a|Phi+>|00> + b|Phi->|01> + c|Psi+>|10> + d|Psi->|11> on qubits (A,B,C1,C2).
Channel pe4_channel(const Pe4Params& p);

/// (N-1) GHZ states plus one EPR pair with a single controller holding all
/// N-1 GHZ control qubits: the controller spans only N-1 of Bob's N qubits.
Channel partial_control_channel(int n);

}  // namespace ctpower
