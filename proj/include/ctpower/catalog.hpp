#pragma once

#include <string>
#include <vector>

#include "ctpower/protocol.hpp"

namespace ctpower {

/// Parameters selecting one controlled teleportation scheme.
///
/// Known ids:
///   ghz     - single GHZ(3), one single-qubit controller (n = m = 1)
///   2ghz    - two GHZ(3), one two-qubit controller
///   nghz    - n copies of GHZ(m+2), controllers measure qubit-wise in X
///   yang    - EPR pairs + (m+1)-qubit GHZ branch channel (variant 1 or 2)
///   man     - m GHZ(3) + (n-m) EPR pairs, single-qubit controllers
///   pe4     - partially entangled four-qubit channel, two-qubit controller
///   partial - (n-1) GHZ(3) + one EPR, one controller spanning n-1 qubits
struct SchemeConfig {
  std::string id = "ghz";
  int n = 1;
  int m = 1;
  int variant = 1;
  Pe4Params pe4{};
};

/// Builds the channel and the scheme's fixed measurement plan.
ProtocolSpec make_scheme(const SchemeConfig& config);

/// Every scheme instance covered by the perfect-CT regression battery.
std::vector<SchemeConfig> acceptance_catalog();

}  // namespace ctpower
