#include "ctpower/measure.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace ctpower {

MeasurementBasis MeasurementBasis::ghz(int k) {
  if (k < 1) throw std::invalid_argument("GHZ basis arity must be >= 1");
  return {Kind::Ghz, k};
}

std::vector<PureState> basis_vectors(const MeasurementBasis& basis) {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<PureState> out;
  switch (basis.kind) {
    case MeasurementBasis::Kind::Computational:
      out.push_back(PureState::basis(1, 0));
      out.push_back(PureState::basis(1, 1));
      break;
    case MeasurementBasis::Kind::XBasis: {
      Vector plus(2), minus(2);
      plus << s, s;
      minus << s, -s;
      out.emplace_back(1, std::move(plus));
      out.emplace_back(1, std::move(minus));
      break;
    }
    case MeasurementBasis::Kind::Bell: {
      Vector phi_p(4), phi_m(4), psi_p(4), psi_m(4);
      phi_p << s, 0, 0, s;
      phi_m << s, 0, 0, -s;
      psi_p << 0, s, s, 0;
      psi_m << 0, s, -s, 0;
      out.emplace_back(2, std::move(phi_p));
      out.emplace_back(2, std::move(phi_m));
      out.emplace_back(2, std::move(psi_p));
      out.emplace_back(2, std::move(psi_m));
      break;
    }
    case MeasurementBasis::Kind::Ghz: {
      int k = basis.arity;
      std::size_t dim = std::size_t(1) << k;
      for (std::size_t x = 0; x < dim / 2; ++x) {
        std::size_t xbar = ~x & (dim - 1);
        for (int sign = 0; sign < 2; ++sign) {
          Vector v = Vector::Zero(Eigen::Index(dim));
          v[Eigen::Index(x)] = s;
          v[Eigen::Index(xbar)] = sign ? -s : s;
          out.emplace_back(k, std::move(v));
        }
      }
      break;
    }
  }
  return out;
}

std::vector<PureState> project_branches(const PureState& state,
                                        const MeasurementBasis& basis,
                                        const std::vector<int>& targets) {
  if (int(targets.size()) != basis.arity)
    throw std::invalid_argument("target count must equal basis arity");
  std::set<int> seen;
  for (int t : targets) {
    if (t < 0 || t >= state.num_qubits)
      throw std::invalid_argument("measurement target out of range");
    if (!seen.insert(t).second)
      throw std::invalid_argument("duplicate measurement target");
  }

  int n = state.num_qubits;
  int arity = basis.arity;
  int n_rest = n - arity;
  std::vector<bool> is_target(std::size_t(n), false);
  for (int t : targets) is_target[std::size_t(t)] = true;
  std::vector<int> rest;
  for (int q = 0; q < n; ++q)
    if (!is_target[std::size_t(q)]) rest.push_back(q);

  std::size_t dim_t = std::size_t(1) << arity;
  std::size_t dim_r = std::size_t(1) << n_rest;

  // reshape: rows = target substring (in target-list order), cols = rest
  Matrix reshaped = Matrix::Zero(Eigen::Index(dim_t), Eigen::Index(dim_r));
  for (std::size_t ti = 0; ti < dim_t; ++ti) {
    std::size_t base = 0;
    for (int j = 0; j < arity; ++j) {
      std::size_t bit = (ti >> (arity - 1 - j)) & 1;
      base |= bit << (n - 1 - targets[std::size_t(j)]);
    }
    for (std::size_t ri = 0; ri < dim_r; ++ri) {
      std::size_t idx = base;
      for (int j = 0; j < n_rest; ++j) {
        std::size_t bit = (ri >> (n_rest - 1 - j)) & 1;
        idx |= bit << (n - 1 - rest[std::size_t(j)]);
      }
      reshaped(Eigen::Index(ti), Eigen::Index(ri)) = state.amplitudes[Eigen::Index(idx)];
    }
  }

  std::vector<PureState> out;
  for (const PureState& b : basis_vectors(basis)) {
    Vector post = (b.amplitudes.adjoint() * reshaped).transpose();
    out.emplace_back(n_rest, std::move(post));
  }
  return out;
}

std::vector<Branch> measure(const PureState& state, const MeasurementBasis& basis,
                            const std::vector<int>& targets) {
  std::vector<Branch> out;
  int label = 0;
  for (PureState& proj : project_branches(state, basis, targets)) {
    Branch br;
    br.outcome = label++;
    double p = proj.amplitudes.squaredNorm();
    br.probability = p;
    if (p > 1e-12) {
      proj.amplitudes /= std::sqrt(p);
      br.post_state = std::move(proj);
    }
    out.push_back(std::move(br));
  }
  return out;
}

}  // namespace ctpower
