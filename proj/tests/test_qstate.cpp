#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ctpower/channels.hpp"
#include "ctpower/qstate.hpp"

using namespace ctpower;

namespace {

PureState plus_state() {
  Vector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return PureState(1, v);
}

}  // namespace

TEST_CASE("tensor composes basis states and entangled factors") {
  PureState zero_one = tensor(PureState::basis(1, 0), PureState::basis(1, 1));
  CHECK(zero_one.num_qubits == 2);
  CHECK(std::abs(zero_one.amplitudes[1] - 1.0) < kTol);

  PureState two_pairs = tensor(epr(), epr());
  for (std::size_t idx : {0u, 3u, 12u, 15u})
    CHECK(std::abs(two_pairs.amplitudes[Eigen::Index(idx)] - 0.5) < kTol);
  CHECK(std::abs(two_pairs.amplitudes[5]) < kTol);

  PureState two_ghz = tensor(ghz(3), ghz(3));
  for (std::size_t idx : {0u, 7u, 56u, 63u})
    CHECK(std::abs(two_ghz.amplitudes[Eigen::Index(idx)] - 0.5) < kTol);
}

TEST_CASE("apply_pauli acts letterwise and is self-inverse up to phase") {
  PureState flipped = apply_pauli(PureState::basis(1, 0), PauliString("X"), {0});
  CHECK(std::abs(flipped.amplitudes[1] - 1.0) < kTol);

  PureState minus = apply_pauli(plus_state(), PauliString("Z"), {0});
  CHECK(std::abs(minus.amplitudes[0] - 1.0 / std::sqrt(2.0)) < kTol);
  CHECK(std::abs(minus.amplitudes[1] + 1.0 / std::sqrt(2.0)) < kTol);

  RngStream rng(11);
  PureState in = haar_random_state(2, rng);
  PureState once = apply_pauli(in, PauliString("XZ"), {0, 1});
  PureState twice = apply_pauli(once, PauliString("XZ"), {0, 1});
  CHECK(std::abs(once.norm() - 1.0) < 1e-12);
  CHECK(std::abs(overlap(in, twice) - 1.0) < kTol);

  CHECK_THROWS_AS(apply_pauli(in, PauliString("XZ"), {0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(apply_pauli(in, PauliString("X"), {5}), std::invalid_argument);
}

TEST_CASE("partial_trace reduces pairs, products, and GHZ correctly") {
  DensityMatrix half = partial_trace(epr(), {1});
  CHECK(half.is_hermitian());
  CHECK(std::abs(half.matrix(0, 0).real() - 0.5) < kTol);
  CHECK(std::abs(half.matrix(0, 1)) < kTol);

  DensityMatrix one = partial_trace(PureState::basis(2, 1), {0});
  CHECK(std::abs(one.matrix(1, 1).real() - 1.0) < kTol);

  DensityMatrix ghz_red = partial_trace(ghz(3), {2});
  CHECK(std::abs(ghz_red.matrix(0, 0).real() - 0.5) < kTol);
  CHECK(std::abs(ghz_red.matrix(3, 3).real() - 0.5) < kTol);
  CHECK(std::abs(ghz_red.matrix(0, 3)) < kTol);

  CHECK_THROWS_AS(partial_trace(epr(), {}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(epr(), {0, 1}), std::invalid_argument);
}

TEST_CASE("partial_trace invariants: trace, purity bounds, PSD") {
  RngStream rng(23);
  for (int n = 2; n <= 4; ++n) {
    PureState s = haar_random_state(n, rng);
    for (int q = 0; q < n; ++q) {
      DensityMatrix rho = partial_trace(s, {q});
      CHECK(std::abs(rho.trace_real() - 1.0) < kTol);
      CHECK(rho.is_hermitian());
      CHECK(rho.min_eigenvalue() > -kTol);
      double purity = rho.purity();
      CHECK(purity <= 1.0 + kTol);
      CHECK(purity >= 1.0 / double(rho.dim()) - kTol);
    }
  }
}

TEST_CASE("fidelity: pure states, maximally mixed, convex mixtures") {
  RngStream rng(5);
  PureState phi = haar_random_state(1, rng);
  CHECK(std::abs(fidelity(phi, DensityMatrix::from_pure(phi)) - 1.0) < kTol);

  DensityMatrix mixed(1, Matrix::Identity(2, 2) * 0.5);
  CHECK(std::abs(fidelity(phi, mixed) - 0.5) < kTol);

  // bilinearity over an explicit convex mixture
  PureState a = haar_random_state(2, rng);
  PureState b = haar_random_state(2, rng);
  PureState probe = haar_random_state(2, rng);
  Matrix mix = 0.3 * DensityMatrix::from_pure(a).matrix +
               0.7 * DensityMatrix::from_pure(b).matrix;
  double direct = fidelity(probe, DensityMatrix(2, mix));
  double split = 0.3 * fidelity(probe, DensityMatrix::from_pure(a)) +
                 0.7 * fidelity(probe, DensityMatrix::from_pure(b));
  CHECK(std::abs(direct - split) < kTol);
}

TEST_CASE("Haar average of fidelity against the four-component dephasing mixture") {
  // the two-qubit mixture {II, IZ, ZI, ZZ} at weight 1/4 each
  std::vector<PauliString> paulis = {PauliString("II"), PauliString("IZ"),
                                     PauliString("ZI"), PauliString("ZZ")};
  RngStream rng(77);
  double sum = 0.0, sum_sq = 0.0;
  const int samples = 4000;
  for (int k = 0; k < samples; ++k) {
    RngStream sub = rng.substream(std::uint64_t(k));
    PureState phi = haar_random_state(2, sub);
    Matrix rho = Matrix::Zero(4, 4);
    for (const PauliString& p : paulis)
      rho += 0.25 * DensityMatrix::from_pure(apply_pauli(phi, p, {0, 1})).matrix;
    double f = fidelity(phi, DensityMatrix(2, rho));
    sum += f;
    sum_sq += f * f;
  }
  double mean = sum / samples;
  double stderr_mean =
      std::sqrt((sum_sq / samples - mean * mean) / (samples - 1));
  CHECK(std::abs(mean - 0.4) <= 3.0 * stderr_mean);
}

TEST_CASE("haar_random_state moments") {
  RngStream rng(123);
  const int samples = 100000;
  double m2 = 0.0, m2_sq = 0.0, m4 = 0.0, m4_sq = 0.0;
  for (int k = 0; k < samples; ++k) {
    RngStream sub = rng.substream(std::uint64_t(k));
    PureState s = haar_random_state(1, sub);
    double p = std::norm(s.amplitudes[0]);
    m2 += p;
    m2_sq += p * p;
    double p2 = p * p;
    m4 += p2;
    m4_sq += p2 * p2;
  }
  m2 /= samples;
  m4 /= samples;
  double se2 = std::sqrt((m2_sq / samples - m2 * m2) / (samples - 1));
  double se4 = std::sqrt((m4_sq / samples - m4 * m4) / (samples - 1));
  CHECK(std::abs(m2 - 0.5) <= 3.0 * se2);

  // quadrature over the Bloch sphere for the quartic moment:
  // E[cos^4(theta/2)] with density sin(theta)/2 on [0, pi]
  double quad = 0.0;
  const int steps = 200000;
  for (int i = 0; i < steps; ++i) {
    double theta = (i + 0.5) * M_PI / steps;
    double c = std::cos(theta / 2.0);
    quad += std::pow(c, 4) * std::sin(theta) / 2.0 * (M_PI / steps);
  }
  CHECK(std::abs(quad - 1.0 / 3.0) < 1e-6);
  CHECK(std::abs(m4 - quad) <= 3.0 * se4 + 1e-6);
}

TEST_CASE("independent Haar pairs overlap at 1/d") {
  RngStream rng(321);
  const int samples = 20000;
  double sum = 0.0, sum_sq = 0.0;
  for (int k = 0; k < samples; ++k) {
    RngStream sub = rng.substream(std::uint64_t(k));
    PureState a = haar_random_state(2, sub);
    PureState b = haar_random_state(2, sub);
    double o = overlap(a, b);
    double v = o * o;
    sum += v;
    sum_sq += v * v;
  }
  double mean = sum / samples;
  double se = std::sqrt((sum_sq / samples - mean * mean) / (samples - 1));
  CHECK(std::abs(mean - 0.25) <= 3.0 * se);
}

TEST_CASE("Haar moments are invariant under a fixed Pauli rotation") {
  RngStream rng(55);
  const int samples = 20000;
  PauliString fixed("YX");
  double plain = 0.0, rotated = 0.0, plain_sq = 0.0, rotated_sq = 0.0;
  for (int k = 0; k < samples; ++k) {
    RngStream sub = rng.substream(std::uint64_t(k));
    PureState s = haar_random_state(2, sub);
    double p = std::norm(s.amplitudes[0]);
    PureState r = apply_pauli(s, fixed, {0, 1});
    double q = std::norm(r.amplitudes[0]);
    plain += p;
    plain_sq += p * p;
    rotated += q;
    rotated_sq += q * q;
  }
  plain /= samples;
  rotated /= samples;
  double se = std::sqrt((plain_sq / samples - plain * plain) / (samples - 1)) +
              std::sqrt((rotated_sq / samples - rotated * rotated) / (samples - 1));
  CHECK(std::abs(plain - rotated) <= 3.0 * se);
}

TEST_CASE("PauliString algebra") {
  CHECK(PauliString("IXYZ").str() == "IXYZ");
  CHECK(PauliString::identity(3).is_identity());
  CHECK(std::abs(PauliString("II").trace() - 4.0) < kTol);
  CHECK(std::abs(PauliString("IZ").trace()) < kTol);

  PauliString xz = pauli_product(PauliString("X"), PauliString("Z"));
  CHECK(xz == PauliString("Y"));
  CHECK(pauli_product(PauliString("XY"), PauliString("XY")).is_identity());

  // induced matrix is unitary and Hermitian
  Matrix m = PauliString("ZX").to_matrix();
  CHECK((m * m - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < kTol);
  CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < kTol);

  // letter order: qubit 0 is the most significant factor
  Matrix iz = PauliString("IZ").to_matrix();
  CHECK(std::abs(iz(1, 1).real() + 1.0) < kTol);
  CHECK(std::abs(iz(2, 2).real() - 1.0) < kTol);
  CHECK(PauliString::from_masks(2, 0, 1) == PauliString("IZ"));
  CHECK(PauliString::from_masks(2, 2, 2) == PauliString("YI"));
}

TEST_CASE("to_matrix agrees with apply_pauli on every letter placement") {
  RngStream rng(99);
  PureState s = haar_random_state(2, rng);
  for (const char* letters : {"XI", "IX", "ZI", "IZ", "YI", "IY", "XZ", "YX"}) {
    PauliString p{std::string(letters)};
    Vector via_matrix = p.to_matrix() * s.amplitudes;
    PureState via_apply = apply_pauli(s, p, {0, 1});
    CHECK((via_matrix - via_apply.amplitudes).norm() < kTol);
  }
}

TEST_CASE("permute_qubits relabels amplitudes") {
  // |01> with source {1, 0} becomes |10>
  PureState swapped = permute_qubits(PureState::basis(2, 1), {1, 0});
  CHECK(std::abs(swapped.amplitudes[2] - 1.0) < kTol);

  RngStream rng(7);
  PureState s = haar_random_state(3, rng);
  PureState round = permute_qubits(permute_qubits(s, {2, 0, 1}), {1, 2, 0});
  CHECK((round.amplitudes - s.amplitudes).norm() < kTol);
}

TEST_CASE("RngStream is deterministic and substreams are order-independent") {
  RngStream a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.uniform() == b.uniform());

  RngStream root(42);
  RngStream s3_first = root.substream(3);
  double v = s3_first.normal();
  root.substream(1).normal();
  RngStream s3_again = root.substream(3);
  CHECK(s3_again.normal() == v);
}

TEST_CASE("state and density constructors enforce invariants") {
  Vector bad(3);
  bad << 1, 0, 0;
  CHECK_THROWS_AS(PureState(1, bad), std::invalid_argument);

  CHECK_THROWS_AS(fidelity(PureState::basis(1, 0),
                           DensityMatrix(2, Matrix::Identity(4, 4) * 0.25)),
                  std::invalid_argument);
}
