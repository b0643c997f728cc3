#include "ctpower/qstate.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

namespace ctpower {

namespace {

void check_targets(int num_qubits, const std::vector<int>& targets) {
  std::set<int> seen;
  for (int t : targets) {
    if (t < 0 || t >= num_qubits)
      throw std::invalid_argument("qubit index " + std::to_string(t) + " out of range");
    if (!seen.insert(t).second)
      throw std::invalid_argument("duplicate qubit index " + std::to_string(t));
  }
}

// splitmix64 finalizer, used to mix (seed, index) into substream seeds
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

PureState::PureState(int n, Vector amps) : num_qubits(n), amplitudes(std::move(amps)) {
  if (num_qubits < 0 || amplitudes.size() != Eigen::Index(std::size_t(1) << num_qubits))
    throw std::invalid_argument("amplitude vector length must be 2^num_qubits");
}

PureState PureState::basis(int num_qubits, std::size_t index) {
  Vector v = Vector::Zero(Eigen::Index(std::size_t(1) << num_qubits));
  v[Eigen::Index(index)] = 1.0;
  return PureState(num_qubits, std::move(v));
}

DensityMatrix::DensityMatrix(int n, Matrix m) : num_qubits(n), matrix(std::move(m)) {
  auto d = Eigen::Index(std::size_t(1) << num_qubits);
  if (matrix.rows() != d || matrix.cols() != d)
    throw std::invalid_argument("density matrix dimension must be 2^num_qubits");
}

DensityMatrix DensityMatrix::from_pure(const PureState& s) {
  return DensityMatrix(s.num_qubits, s.amplitudes * s.amplitudes.adjoint());
}

bool DensityMatrix::is_hermitian(double tol) const {
  return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

PauliString::PauliString(const std::string& s) {
  letters.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case 'I': letters.push_back(Pauli::I); break;
      case 'X': letters.push_back(Pauli::X); break;
      case 'Y': letters.push_back(Pauli::Y); break;
      case 'Z': letters.push_back(Pauli::Z); break;
      default: throw std::invalid_argument("invalid Pauli letter");
    }
  }
}

bool PauliString::is_identity() const {
  return std::all_of(letters.begin(), letters.end(),
                     [](Pauli p) { return p == Pauli::I; });
}

std::string PauliString::str() const {
  std::string s;
  for (Pauli p : letters) s.push_back(static_cast<char>(p));
  return s;
}

double PauliString::trace() const {
  return is_identity() ? double(std::size_t(1) << letters.size()) : 0.0;
}

Matrix PauliString::to_matrix() const {
  static const Complex i(0.0, 1.0);
  Matrix m = Matrix::Identity(1, 1);
  for (Pauli p : letters) {
    Matrix s(2, 2);
    switch (p) {
      case Pauli::I: s << 1, 0, 0, 1; break;
      case Pauli::X: s << 0, 1, 1, 0; break;
      case Pauli::Y: s << 0, -i, i, 0; break;
      case Pauli::Z: s << 1, 0, 0, -1; break;
    }
    // earlier letters are the more significant tensor factors
    Matrix next(m.rows() * 2, m.cols() * 2);
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        next.block(2 * r, 2 * c, 2, 2) = m(r, c) * s;
    m = std::move(next);
  }
  return m;
}

PauliString PauliString::identity(int num_qubits) {
  return PauliString(std::vector<Pauli>(static_cast<std::size_t>(num_qubits), Pauli::I));
}

PauliString PauliString::from_masks(int num_qubits, std::size_t x_mask, std::size_t z_mask) {
  std::vector<Pauli> ls(static_cast<std::size_t>(num_qubits), Pauli::I);
  for (int q = 0; q < num_qubits; ++q) {
    std::size_t bit = std::size_t(1) << (num_qubits - 1 - q);
    bool x = x_mask & bit, z = z_mask & bit;
    ls[std::size_t(q)] = x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I);
  }
  return PauliString(std::move(ls));
}

PauliString pauli_product(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("Pauli string length mismatch");
  auto bits = [](Pauli p) -> std::pair<int, int> {
    switch (p) {
      case Pauli::I: return {0, 0};
      case Pauli::X: return {1, 0};
      case Pauli::Y: return {1, 1};
      default: return {0, 1};
    }
  };
  std::vector<Pauli> out(a.letters.size());
  for (std::size_t q = 0; q < a.letters.size(); ++q) {
    auto [ax, az] = bits(a.letters[q]);
    auto [bx, bz] = bits(b.letters[q]);
    int x = ax ^ bx, z = az ^ bz;
    out[q] = x ? (z ? Pauli::Y : Pauli::X) : (z ? Pauli::Z : Pauli::I);
  }
  return PauliString(std::move(out));
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(mix64(seed)) {}

RngStream RngStream::substream(std::uint64_t index) const {
  return RngStream(mix64(seed_ ^ mix64(index + 1)));
}

double RngStream::normal() { return normal_(engine_); }
double RngStream::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

PureState tensor(const PureState& a, const PureState& b) {
  Vector out(a.amplitudes.size() * b.amplitudes.size());
  for (Eigen::Index i = 0; i < a.amplitudes.size(); ++i)
    out.segment(i * b.amplitudes.size(), b.amplitudes.size()) =
        a.amplitudes[i] * b.amplitudes;
  return PureState(a.num_qubits + b.num_qubits, std::move(out));
}

PureState apply_pauli(const PureState& state, const PauliString& p,
                      const std::vector<int>& targets) {
  if (int(targets.size()) != p.num_qubits())
    throw std::invalid_argument("target count must equal Pauli string length");
  check_targets(state.num_qubits, targets);

  std::size_t flip_mask = 0;
  // phase per full index: product over Z/Y targets of (-1)^bit, times i per Y
  std::size_t z_mask = 0;
  int y_count = 0;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    std::size_t bit = std::size_t(1) << (state.num_qubits - 1 - targets[k]);
    switch (p.letters[k]) {
      case Pauli::I: break;
      case Pauli::X: flip_mask |= bit; break;
      case Pauli::Y: flip_mask |= bit; z_mask |= bit; ++y_count; break;
      case Pauli::Z: z_mask |= bit; break;
    }
  }
  static const Complex i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  Complex y_phase = i_pow[y_count & 3];

  Vector out(state.amplitudes.size());
  for (std::size_t idx = 0; idx < state.dim(); ++idx) {
    // Y|0> = i|1>, Y|1> = -i|0>; the sign applies to the source bit value
    int parity = std::popcount(idx & z_mask) & 1;
    Complex phase = y_phase * (parity ? -1.0 : 1.0);
    out[Eigen::Index(idx ^ flip_mask)] = phase * state.amplitudes[Eigen::Index(idx)];
  }
  return PureState(state.num_qubits, std::move(out));
}

PureState permute_qubits(const PureState& state, const std::vector<int>& source) {
  if (int(source.size()) != state.num_qubits)
    throw std::invalid_argument("permutation size mismatch");
  check_targets(state.num_qubits, source);
  int n = state.num_qubits;
  Vector out(state.amplitudes.size());
  for (std::size_t old_idx = 0; old_idx < state.dim(); ++old_idx) {
    std::size_t new_idx = 0;
    for (int pos = 0; pos < n; ++pos) {
      std::size_t old_bit = (old_idx >> (n - 1 - source[std::size_t(pos)])) & 1;
      new_idx |= old_bit << (n - 1 - pos);
    }
    out[Eigen::Index(new_idx)] = state.amplitudes[Eigen::Index(old_idx)];
  }
  return PureState(n, std::move(out));
}

namespace {

struct SplitMasks {
  std::vector<int> keep;     // kept qubits in original order
  std::vector<int> discard;  // discarded qubits in original order
};

SplitMasks split_qubits(int num_qubits, const std::vector<int>& discard) {
  if (discard.empty()) throw std::invalid_argument("discard set must be non-empty");
  check_targets(num_qubits, discard);
  if (int(discard.size()) == num_qubits)
    throw std::invalid_argument("cannot discard all qubits");
  std::vector<bool> is_discard(std::size_t(num_qubits), false);
  for (int q : discard) is_discard[std::size_t(q)] = true;
  SplitMasks out;
  for (int q = 0; q < num_qubits; ++q)
    (is_discard[std::size_t(q)] ? out.discard : out.keep).push_back(q);
  return out;
}

std::size_t compose_index(int num_qubits, const std::vector<int>& qubits, std::size_t sub) {
  std::size_t idx = 0;
  int k = int(qubits.size());
  for (int j = 0; j < k; ++j) {
    std::size_t bit = (sub >> (k - 1 - j)) & 1;
    idx |= bit << (num_qubits - 1 - qubits[std::size_t(j)]);
  }
  return idx;
}

}  // namespace

DensityMatrix partial_trace(const PureState& state, const std::vector<int>& discard) {
  auto split = split_qubits(state.num_qubits, discard);
  int n_keep = int(split.keep.size());
  std::size_t dk = std::size_t(1) << n_keep;
  std::size_t dd = std::size_t(1) << split.discard.size();

  // rows indexed by the discarded subsystem: rho = A^T conj(A)
  Matrix a = Matrix::Zero(Eigen::Index(dd), Eigen::Index(dk));
  for (std::size_t d = 0; d < dd; ++d) {
    std::size_t base = compose_index(state.num_qubits, split.discard, d);
    for (std::size_t r = 0; r < dk; ++r) {
      std::size_t idx = base | compose_index(state.num_qubits, split.keep, r);
      a(Eigen::Index(d), Eigen::Index(r)) = state.amplitudes[Eigen::Index(idx)];
    }
  }
  Matrix rho = a.transpose() * a.conjugate();
  return DensityMatrix(n_keep, std::move(rho));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& discard) {
  auto split = split_qubits(rho.num_qubits, discard);
  int n_keep = int(split.keep.size());
  std::size_t dk = std::size_t(1) << n_keep;
  std::size_t dd = std::size_t(1) << split.discard.size();

  Matrix out = Matrix::Zero(Eigen::Index(dk), Eigen::Index(dk));
  for (std::size_t d = 0; d < dd; ++d) {
    std::size_t base = compose_index(rho.num_qubits, split.discard, d);
    for (std::size_t r = 0; r < dk; ++r) {
      std::size_t ri = base | compose_index(rho.num_qubits, split.keep, r);
      for (std::size_t c = 0; c < dk; ++c) {
        std::size_t ci = base | compose_index(rho.num_qubits, split.keep, c);
        out(Eigen::Index(r), Eigen::Index(c)) += rho.matrix(Eigen::Index(ri), Eigen::Index(ci));
      }
    }
  }
  return DensityMatrix(n_keep, std::move(out));
}

double fidelity(const PureState& phi, const DensityMatrix& rho) {
  if (phi.num_qubits != rho.num_qubits)
    throw std::invalid_argument("fidelity dimension mismatch");
  Complex f = (phi.amplitudes.adjoint() * rho.matrix * phi.amplitudes)(0, 0);
  return f.real();
}

double overlap(const PureState& a, const PureState& b) {
  if (a.num_qubits != b.num_qubits)
    throw std::invalid_argument("overlap dimension mismatch");
  return std::abs(a.amplitudes.dot(b.amplitudes));
}

PureState haar_random_state(int num_qubits, RngStream& rng) {
  if (num_qubits < 1) throw std::invalid_argument("num_qubits must be >= 1");
  Vector v(Eigen::Index(std::size_t(1) << num_qubits));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(rng.normal(), rng.normal());
  v /= v.norm();
  return PureState(num_qubits, std::move(v));
}

PureState haar_random_product_state(int num_qubits, RngStream& rng) {
  PureState out = haar_random_state(1, rng);
  for (int q = 1; q < num_qubits; ++q) out = tensor(out, haar_random_state(1, rng));
  return out;
}

}  // namespace ctpower
