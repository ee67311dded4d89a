// Computable entanglement and key-rate functionals.

#pragma once

#include "keyrep/opcore.hpp"
#include "keyrep/states.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace keyrep {

/// log2 ||rho^Gamma||_1 with Gamma applied to `transpose` (defaults to Bob's labels).
double log_negativity(const Operator& rho, const Labels& transpose);
double log_negativity(const Operator& rho);

/// ||rho - sigma||_1 (unhalved).
double trace_distance(const Operator& rho, const Operator& sigma);

/// 2 eps log2(2d) + eta(eps); requires 0 <= eps < 1/3.
double er_fannes_bound(double epsilon, double d);

/// Classical outcome x with probability probs[x]; Bob and Eve hold quantum states.
struct CcqEnsemble {
  std::vector<std::string> labels;
  std::vector<double> probs;
  std::vector<Operator> bob_states;
  std::vector<Operator> eve_states;
};

/// Throws DomainError on length mismatch, non-normalised probabilities or invalid states.
void validate(const CcqEnsemble& ens);

/// Holevo quantity chi = H(sum p_x rho_x) - sum p_x H(rho_x).
double holevo(const std::vector<double>& probs, const std::vector<Operator>& states);

/// I(X:B) - I(X:E).
double devetak_winter(const CcqEnsemble& ens);

enum class PurificationRoute { spectral, canonical };

/// Purifies `rho`, measures `key_label` in the computational basis and returns
/// the ccq ensemble where Bob holds `bob_side` and Eve the purifying system.
CcqEnsemble ccq_from_state(const Operator& rho, const std::string& key_label, const Labels& bob_side,
                           PurificationRoute route = PurificationRoute::spectral,
                           std::size_t dense_cap = kDefaultDenseCap);

/// Devetak-Winter rate of `ccq_from_state`.
double dw_from_state(const Operator& rho, const std::string& key_label, const Labels& bob_side,
                     PurificationRoute route = PurificationRoute::spectral,
                     std::size_t dense_cap = kDefaultDenseCap);

/// Key-block trace norms of a 2x2-key state.
struct SqueezeCell {
  double a = 0.0;  // ||A_0000||_1
  double b = 0.0;  // ||A_0011||_1
  double x = 0.0;  // ||A_0101||_1
};

SqueezeCell privacy_squeeze(const Operator& rho);
SqueezeCell privacy_squeeze(const HidingParams& params);

/// 1 - H(a+b, a-b, x, x).
double kd_ps_lower(const SqueezeCell& cell);

/// log2 d - H(rho) for a maximally correlated d x d state.
double mc_distillable(const Operator& rho);

struct IaccOptions {
  int iters = 400;       // local-search steps per restart
  int restarts = 32;
  int outcomes = 0;      // POVM elements; 0 means projective (= dimension)
  double tolerance = 1e-8;
  std::uint64_t seed = 1;
};

/// Mutual information I(i:k) of the ensemble {probs[i], |states[i]>} under the POVM
/// {|phi_k><phi_k|}, where the columns of `povm_vectors` satisfy sum |phi_k><phi_k| = 1.
double mutual_information(const std::vector<double>& probs, const std::vector<Vector>& states,
                          const Matrix& povm_vectors);

/// Best mutual information found by seeded local search over rank-one POVMs;
/// a lower bound on the accessible information.
double iacc_search(const std::vector<double>& probs, const std::vector<Vector>& states,
                   const IaccOptions& options = {});

/// log2 d - iacc_search over {1/d, |u_i>}: an upper estimate on E_F of a
/// maximally correlated state (one-sided because the search is).
struct FormationEstimate {
  double iacc_lower = 0.0;
  double ef_upper = 0.0;
};
FormationEstimate mc_formation_estimate(const std::vector<Vector>& u_list, const IaccOptions& options = {});

}  // namespace keyrep
