#include "ctpower/channels.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ctpower/measure.hpp"

namespace ctpower {

int PartyMap::total_qubits() const {
  int n = int(alice.size() + bob.size());
  for (const auto& c : controllers) n += int(c.size());
  return n;
}

bool PartyMap::is_partition() const {
  std::set<int> seen;
  auto add = [&](const std::vector<int>& qs) {
    for (int q : qs)
      if (q < 0 || !seen.insert(q).second) return false;
    return true;
  };
  if (!add(alice) || !add(bob)) return false;
  for (const auto& c : controllers)
    if (!add(c)) return false;
  return int(seen.size()) == total_qubits() &&
         (seen.empty() || *seen.rbegin() == total_qubits() - 1);
}

void Pe4Params::validate() const {
  if (a < 0 || b < 0 || c < 0 || d < 0)
    throw std::invalid_argument("PE4 amplitudes must be nonnegative");
  double s = a * a + b * b + c * c + d * d;
  if (std::abs(s - 1.0) > kTol)
    throw std::invalid_argument("PE4 amplitudes must satisfy a^2+b^2+c^2+d^2=1");
}

Pe4Params Pe4Params::from_squares(double a2, double b2, double c2, double d2) {
  if (a2 < 0 || b2 < 0 || c2 < 0 || d2 < 0)
    throw std::invalid_argument("PE4 squared amplitudes must be nonnegative");
  double s = a2 + b2 + c2 + d2;
  if (std::abs(s - 1.0) > 1e-6)
    throw std::invalid_argument("PE4 squared amplitudes must sum to 1 (within 1e-6)");
  return Pe4Params{std::sqrt(a2 / s), std::sqrt(b2 / s), std::sqrt(c2 / s),
                   std::sqrt(d2 / s)};
}

PureState epr() {
  const double s = 1.0 / std::sqrt(2.0);
  Vector v(4);
  v << s, 0, 0, s;
  return PureState(2, std::move(v));
}

PureState ghz(int k) {
  if (k < 2) throw std::invalid_argument("GHZ state needs at least 2 qubits");
  const double s = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(Eigen::Index(std::size_t(1) << k));
  v[0] = s;
  v[v.size() - 1] = s;
  return PureState(k, std::move(v));
}

namespace {

PureState ghz_pm(int k, int sign) {
  PureState g = ghz(k);
  if (sign < 0) g.amplitudes[g.amplitudes.size() - 1] *= -1.0;
  return g;
}

PureState epr_tilde(int variant) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(4);
  if (variant == 1) {
    v[0] = s;
    v[3] = -s;
  } else if (variant == 2) {
    v[1] = s;
    v[2] = -s;
  } else {
    throw std::invalid_argument("Yang channel variant must be 1 or 2");
  }
  return PureState(2, std::move(v));
}

PureState tensor_all(const std::vector<PureState>& factors) {
  PureState out(0, Vector::Ones(1));
  for (const PureState& f : factors) out = tensor(out, f);
  return out;
}

// Tracks which party each construction-order qubit belongs to, then
// permutes the state into the Alice / Bob / controller block layout.
struct LayoutBuilder {
  std::vector<int> alice, bob;
  std::vector<std::vector<int>> controllers;
  int next = 0;

  void owner_alice() { alice.push_back(next++); }
  void owner_bob() { bob.push_back(next++); }
  void owner_controller(int m) {
    if (int(controllers.size()) <= m) controllers.resize(std::size_t(m) + 1);
    controllers[std::size_t(m)].push_back(next++);
  }

  Channel finish(PureState interleaved) const {
    std::vector<int> source;
    source.insert(source.end(), alice.begin(), alice.end());
    source.insert(source.end(), bob.begin(), bob.end());
    for (const auto& c : controllers) source.insert(source.end(), c.begin(), c.end());

    PartyMap map;
    int pos = 0;
    for (std::size_t i = 0; i < alice.size(); ++i) map.alice.push_back(pos++);
    for (std::size_t i = 0; i < bob.size(); ++i) map.bob.push_back(pos++);
    for (const auto& c : controllers) {
      map.controllers.emplace_back();
      for (std::size_t i = 0; i < c.size(); ++i) map.controllers.back().push_back(pos++);
    }
    return Channel{permute_qubits(interleaved, source), std::move(map)};
  }
};

}  // namespace

Channel nghz_channel(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("nghz_channel requires N >= 1, M >= 1");
  LayoutBuilder layout;
  std::vector<PureState> factors;
  for (int copy = 0; copy < n; ++copy) {
    factors.push_back(ghz(m + 2));
    layout.owner_alice();
    layout.owner_bob();
    for (int c = 0; c < m; ++c) layout.owner_controller(c);
  }
  return layout.finish(tensor_all(factors));
}

Channel yang_channel(int n, int m, int variant) {
  if (n < 1 || m < 1) throw std::invalid_argument("yang_channel requires N >= 1, M >= 1");
  LayoutBuilder layout;
  std::vector<PureState> plus_branch, minus_branch;
  for (int k = 0; k < n; ++k) {
    plus_branch.push_back(epr());
    minus_branch.push_back(epr_tilde(variant));
    layout.owner_alice();
    layout.owner_bob();
  }
  plus_branch.push_back(ghz_pm(m + 1, +1));
  minus_branch.push_back(ghz_pm(m + 1, -1));
  for (int c = 0; c < m; ++c) layout.owner_controller(c);
  layout.owner_alice();  // the GHZ A-qubit

  // the two branches are orthogonal, so the printed sum needs a 1/sqrt(2)
  PureState state = tensor_all(plus_branch);
  state.amplitudes += tensor_all(minus_branch).amplitudes;
  state.amplitudes /= std::sqrt(2.0);
  return layout.finish(std::move(state));
}

Channel man_channel(int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("man_channel requires 1 <= M <= N");
  LayoutBuilder layout;
  std::vector<PureState> factors;
  for (int c = 0; c < m; ++c) {
    factors.push_back(ghz(3));
    layout.owner_alice();
    layout.owner_bob();
    layout.owner_controller(c);
  }
  for (int k = m; k < n; ++k) {
    factors.push_back(epr());
    layout.owner_alice();
    layout.owner_bob();
  }
  return layout.finish(tensor_all(factors));
}

Channel pe4_channel(const Pe4Params& p) {
  p.validate();
  const double coef[4] = {p.a, p.b, p.c, p.d};
  auto bell = basis_vectors(MeasurementBasis::bell());
  Vector amps = Vector::Zero(16);
  for (std::size_t k = 0; k < 4; ++k)
    amps += coef[k] * tensor(bell[k], PureState::basis(2, k)).amplitudes;
  PartyMap map;
  map.alice = {0};
  map.bob = {1};
  map.controllers = {{2, 3}};
  return Channel{PureState(4, std::move(amps)), std::move(map)};
}

Channel partial_control_channel(int n) {
  if (n < 2) throw std::invalid_argument("partial_control_channel requires N >= 2");
  LayoutBuilder layout;
  std::vector<PureState> factors;
  for (int k = 0; k + 1 < n; ++k) {
    factors.push_back(ghz(3));
    layout.owner_alice();
    layout.owner_bob();
    layout.owner_controller(0);
  }
  factors.push_back(epr());
  layout.owner_alice();
  layout.owner_bob();
  return layout.finish(tensor_all(factors));
}

}  // namespace ctpower
