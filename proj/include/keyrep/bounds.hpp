// Closed-form repeater-rate bounds and the private-bit proximity construction.
//
// Every calculator returns a `BoundReport`, which records its inputs, whether
// the formula's precondition held, and whether the value bounds a rate from
// above or below. Formulas whose inputs are noncomputable measures (E_D, E_C)
// take those inputs as caller-supplied numbers.

#pragma once

#include "keyrep/opcore.hpp"
#include "keyrep/states.hpp"

#include <string>
#include <utility>
#include <vector>

namespace keyrep {

enum class Direction { upper, lower };

std::string to_string(Direction d);

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;
  double value = 0.0;
  Direction direction = Direction::upper;
  bool applicable = true;
  std::string anchor;  // formula the value was computed from

  double input(const std::string& key) const;
};

struct GapReport {
  double p = 0.0;
  BoundReport kd_lower;        // 1 - 2h(p)
  BoundReport repeater_upper;  // 2p log2(2d) + eta(p)

  bool gap_open() const { return repeater_upper.value < kd_lower.value; }
};

/// Bounds for the PPT private-bit mixture with shield dimension d (p = 1/(sqrt d + 1)).
GapReport gap_report(double d);

/// 4(1 + log2 d) eps' + 2 eta(eps') with eps' = eps (mu + 1); not applicable when eps' > 1/3.
BoundReport single_copy_bound(double epsilon, double mu, double d);

/// Single-copy bound for two SWAP-shield private bits; applicable for d >= 7.
BoundReport swap_pbit_bound(double d);

/// ed/2 + ec/2.
BoundReport ed_ec_bound(double ed, double ec);

/// E_F bound 1 + 2 m^2 log2(2m) / (2^m + 1) for the symmetrised hiding state.
BoundReport ef_hiding_bound(int m);

/// delta(eps) = 2 sqrt(4 sqrt(2 eps) + eta(2 sqrt(2 eps))) + 2 sqrt(2 eps).
double proximity_delta(double epsilon);

/// Threshold below which `proximity_delta` certifies closeness to a private bit: 1/(8 e^2).
double proximity_epsilon_limit();

struct PbitProximity {
  double a0011 = 0.0;        // ||A_0011||_1 of rho_m
  double epsilon_raw = 0.0;  // 1/2 - ||A_0011||_1
  double epsilon = 0.0;      // (4/3) epsilon_raw, the value fed to delta
  double delta = 0.0;
  bool hypothesis = false;   // 0 < epsilon < 1/(8 e^2) and ||A_0011|| > 1/2 - epsilon
};

PbitProximity pbit_proximity(int m);

/// Result of twisting a 2x2-key state toward the nearest "twisted singlet".
struct TwistedPbit {
  Operator gamma;
  Matrix twist;            // U_tau = sum_i |ii><ii| (x) V^(ii) (identity on 01, 10)
  double distance = 0.0;   // ||gamma - rho||_1
};

/// Builds gamma = U_tau^dagger [phi+ (x) tr_AB(U_tau rho U_tau^dagger)] U_tau from the
/// SVD A_0011 = W S V^dagger with V^(00) = W^dagger, V^(11) = V^dagger.
TwistedPbit twisted_pbit(const Operator& rho, std::size_t dense_cap = kDefaultDenseCap);

/// `twisted_pbit` applied to the dense hiding state.
TwistedPbit gamma_m_construct(const HidingParams& params, std::size_t dense_cap = kDefaultDenseCap);

/// Shield-size lower bound implied by ||X^Gamma||_1 >= 1/d; value = 1/||X^Gamma||_1.
BoundReport en_shield_lower(const XFormPrivateBit& x);

}  // namespace keyrep
