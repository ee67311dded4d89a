// Dense simulation of the repeater protocols: generalised Bell-measurement
// entanglement swapping, teleportation through arbitrary resources, the
// erasure-resource repeater and the Haar-average concentration check.
//
// Bell basis: |Psi^{nu mu}> = d^{-1/2} sum_j w^{j nu} |j>|j + mu>, w = e^{2 pi i/d},
// corrections U^{nu mu} = sum_j w^{j nu} |j><j + mu|, all indices mod d.

#pragma once

#include "keyrep/bounds.hpp"
#include "keyrep/measures.hpp"
#include "keyrep/opcore.hpp"
#include "keyrep/states.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace keyrep {

/// Outcome-resolved post-measurement states; outcomes are (nu, mu) pairs.
struct MeasurementEnsemble {
  std::vector<std::pair<int, int>> outcomes;
  std::vector<double> probs;
  std::vector<Operator> states;

  /// sum_i p_i state_i.
  Operator average() const;
};

Vector bell_vector(Index d, int nu, int mu);
Matrix bell_correction(Index d, int nu, int mu);

/// Swaps rho_ac on (A, C_A) and rho_cb on (C_B, B): Charlie measures C_A C_B in the
/// generalised Bell basis, Bob applies U^{nu mu}. Outputs live on (A, B).
MeasurementEnsemble bell_swap(const Operator& rho_ac, const Operator& rho_cb, Index d,
                              std::size_t dense_cap = kDefaultDenseCap);

/// Same protocol on purifications psi_ac on (A, C_A, E_1) and psi_cb on (C_B, B, E_2);
/// the environments are traced out only after the measurement.
MeasurementEnsemble bell_swap_pure(const PureState& psi_ac, const PureState& psi_cb, Index d,
                                   std::size_t dense_cap = kDefaultDenseCap);

/// Teleports factor `send_label` of `joint` through `resource` on (C', B'): Bell
/// measurement on the sent factor and C', correction on B' extended by identity
/// beyond the first d levels. The sent factor is replaced in place by B'.
Operator teleport_through(const Operator& resource, const Operator& joint, const std::string& send_label);

struct ErasureDemo {
  Operator output;     // state on (A, B, A', B') after both teleportations
  BoundReport report;  // Devetak-Winter rate with Alice's key measured, Bob holding B
};

enum class ShieldResource { erasure, epr };

/// Fourier-shield private bit shared by Alice and Charlie; Charlie teleports the key
/// qubit through an EPR pair and the shield through the chosen resource.
ErasureDemo erasure_demo(Index shield_d, ShieldResource resource = ShieldResource::erasure,
                         PurificationRoute route = PurificationRoute::spectral,
                         std::size_t dense_cap = kDefaultDenseCap);

/// (1/dn) sum_ij U^j|i><i|U^j^dag (x) V^{j+alpha}|i+beta><i+beta|V^{j+alpha}^dag.
Matrix haar_average_operator(const std::vector<Matrix>& u_list, const std::vector<Matrix>& v_list, int alpha,
                             int beta);

struct HaarCheck {
  std::vector<double> min_eigenvalues;  // per trial
  std::vector<double> max_eigenvalues;  // per trial
  std::vector<double> deviations;       // per trial: max |lambda d^2 - 1|
  Matrix mean_operator;                 // trial average
  double mean_deviation = 0.0;          // ||mean - 1/d^2||_op

  double median_deviation() const;
};

/// Trials are seeded by derive_seed(seed, trial).
HaarCheck haar_average_check(Index d, Index n, int alpha, int beta, int trials, std::uint64_t seed);

}  // namespace keyrep
