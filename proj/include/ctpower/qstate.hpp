#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ctpower {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Tolerance for exact analytic checks (norms, traces, Hermiticity).
inline constexpr double kTol = 1e-9;

/// Pure state of n qubits as a dense amplitude vector of length 2^n.
/// Qubit 0 is the most significant bit of the amplitude index.
struct PureState {
  int num_qubits = 0;
  Vector amplitudes;

  PureState() = default;
  PureState(int n, Vector amps);

  std::size_t dim() const { return std::size_t(1) << num_qubits; }
  double norm() const { return amplitudes.norm(); }

  /// Computational basis state |index> on n qubits.
  static PureState basis(int num_qubits, std::size_t index);
};

/// Hermitian, unit-trace, positive semidefinite matrix on num_qubits qubits.
struct DensityMatrix {
  int num_qubits = 0;
  Matrix matrix;

  DensityMatrix() = default;
  DensityMatrix(int n, Matrix m);

  std::size_t dim() const { return std::size_t(1) << num_qubits; }
  double trace_real() const { return matrix.trace().real(); }
  double purity() const { return (matrix * matrix).trace().real(); }

  static DensityMatrix from_pure(const PureState& s);

  bool is_hermitian(double tol = kTol) const;
  double min_eigenvalue() const;
};

enum class Pauli : char { I = 'I', X = 'X', Y = 'Y', Z = 'Z' };

/// Tensor product of single-qubit Pauli operators, one letter per qubit.
/// Phases are not tracked; products are defined up to a global phase.
struct PauliString {
  std::vector<Pauli> letters;

  PauliString() = default;
  explicit PauliString(std::vector<Pauli> ls) : letters(std::move(ls)) {}
  explicit PauliString(const std::string& s);

  int num_qubits() const { return static_cast<int>(letters.size()); }
  bool is_identity() const;
  std::string str() const;

  /// Trace of the induced 2^n x 2^n matrix (2^n if all letters are I, else 0).
  double trace() const;
  Matrix to_matrix() const;

  static PauliString identity(int num_qubits);
  /// letterwise x/z bit masks, qubit 0 = most significant bit
  static PauliString from_masks(int num_qubits, std::size_t x_mask, std::size_t z_mask);

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;
};

/// Product of two Pauli strings up to global phase.
PauliString pauli_product(const PauliString& a, const PauliString& b);

/// Deterministic random stream; substreams are derived from (seed, index)
/// so sample i is reproducible independent of evaluation order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  RngStream substream(std::uint64_t index) const;

  double normal();
  double uniform();

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Kronecker composition; a's qubits occupy the most significant index bits.
PureState tensor(const PureState& a, const PureState& b);

/// Applies p to the listed target qubits (identity elsewhere).
PureState apply_pauli(const PureState& state, const PauliString& p,
                      const std::vector<int>& targets);

/// Reorders qubits: new position i holds old qubit source[i].
PureState permute_qubits(const PureState& state, const std::vector<int>& source);

DensityMatrix partial_trace(const PureState& state, const std::vector<int>& discard);
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& discard);

/// <phi| rho |phi>, real in [0,1].
double fidelity(const PureState& phi, const DensityMatrix& rho);

/// |<a|b>|, insensitive to global phase.
double overlap(const PureState& a, const PureState& b);

/// Haar-random pure state: normalized vector of iid standard complex Gaussians.
PureState haar_random_state(int num_qubits, RngStream& rng);

/// Product of independent single-qubit Haar states.
PureState haar_random_product_state(int num_qubits, RngStream& rng);

}  // namespace ctpower
