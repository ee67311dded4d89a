// Seeded local search for the accessible information of a pure-state ensemble.
//
// Each restart draws a random rank-one POVM, then runs a (1+1) evolution
// strategy on the unnormalised vectors: perturb, re-complete to a POVM via
// G^{-1/2}, keep the move if the mutual information improves. The step size
// grows on success and shrinks on failure; a restart ends when it falls below
// the tolerance. Because every restart follows a fixed random stream, raising
// `iters` only extends trajectories and the best value never decreases.

#include "keyrep/measures.hpp"

#include "keyrep/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace keyrep {

namespace {

Matrix complete_povm(const Matrix& raw) {
  const Matrix g = raw * raw.adjoint();
  const auto spec = hermitian_eigensystem(g);
  RealVector inv_root(spec.values.size());
  for (Index k = 0; k < spec.values.size(); ++k) {
    inv_root(k) = spec.values(k) > 1e-14 ? 1.0 / std::sqrt(spec.values(k)) : 0.0;
  }
  return spec.vectors * inv_root.asDiagonal() * spec.vectors.adjoint() * raw;
}

Matrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = Complex{re, im};
    }
  }
  return m;
}

}  // namespace

double mutual_information(const std::vector<double>& probs, const std::vector<Vector>& states,
                          const Matrix& povm_vectors) {
  const Index outcomes = povm_vectors.cols();
  std::vector<double> joint(probs.size() * static_cast<std::size_t>(outcomes));
  std::vector<double> marginal(static_cast<std::size_t>(outcomes), 0.0);
  for (std::size_t i = 0; i < probs.size(); ++i) {
    for (Index k = 0; k < outcomes; ++k) {
      const double pik = probs[i] * std::norm(povm_vectors.col(k).dot(states[i]));
      joint[i * outcomes + k] = pik;
      marginal[k] += pik;
    }
  }
  double info = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    for (Index k = 0; k < outcomes; ++k) {
      const double pik = joint[i * outcomes + k];
      if (pik > 0.0 && marginal[k] > 0.0) info += pik * std::log2(pik / (probs[i] * marginal[k]));
    }
  }
  return std::max(info, 0.0);
}

double iacc_search(const std::vector<double>& probs, const std::vector<Vector>& states,
                   const IaccOptions& options) {
  if (probs.size() != states.size() || states.empty()) throw DomainError("iacc_search: size mismatch");
  const Index dim = states.front().size();
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].size() != dim) throw DomainError("iacc_search: states differ in dimension");
    if (probs[i] < 0.0) throw DomainError("iacc_search: negative probability");
    total += probs[i];
  }
  if (std::abs(total - 1.0) > tol::kTrace) throw DomainError("iacc_search: probabilities must sum to 1");
  const Index outcomes = options.outcomes > 0 ? std::max<Index>(options.outcomes, dim) : dim;

  double best = 0.0;
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(derive_seed(options.seed, static_cast<std::uint64_t>(r)));
    Matrix raw = gaussian_matrix(dim, outcomes, rng);
    double current = mutual_information(probs, states, complete_povm(raw));
    best = std::max(best, current);
    double step = 0.3;
    for (int it = 0; it < options.iters && step > options.tolerance; ++it) {
      Matrix candidate = raw + step * gaussian_matrix(dim, outcomes, rng);
      const double value = mutual_information(probs, states, complete_povm(candidate));
      if (value > current) {
        raw = std::move(candidate);
        current = value;
        step *= 1.5;
      } else {
        step *= 0.85;
      }
      best = std::max(best, current);
    }
  }
  return best;
}

FormationEstimate mc_formation_estimate(const std::vector<Vector>& u_list, const IaccOptions& options) {
  const auto d = static_cast<double>(u_list.size());
  const std::vector<double> probs(u_list.size(), 1.0 / d);
  const double lower = iacc_search(probs, u_list, options);
  return {lower, std::log2(d) - lower};
}

}  // namespace keyrep
