// Constructors for the explicit state families: private bits in X-form, the
// PPT private-bit mixture, Werner sectors and data-hiding states, flower and
// maximally correlated states, and the erasure-channel Choi resource.
//
// Key/shield states use the layout (A, B, A', B'): Alice's and Bob's key
// qubits first, then the shields. Labels beginning with 'A' belong to Alice
// and labels beginning with 'B' to Bob, which is how `bob_labels` picks the
// side to partially transpose.

#pragma once

#include "keyrep/opcore.hpp"

#include <string>
#include <vector>

namespace keyrep {

inline const std::string kKeyA = "A";
inline const std::string kKeyB = "B";
inline const std::string kShieldA = "A'";
inline const std::string kShieldB = "B'";

/// Labels of `layout` that start with 'B'.
Labels bob_labels(const SubsystemLayout& layout);
/// Labels of `layout` other than the two key qubits.
Labels shield_labels(const SubsystemLayout& layout);

/// Shield operator X of a private bit; X acts on A'(x)B', each of dimension shield_dim.
struct XFormPrivateBit {
  Operator x;
  Index shield_dim = 0;
};

/// Wraps an arbitrary d^2 x d^2 matrix; throws DomainError unless ||X||_1 = 1 within 1e-6.
XFormPrivateBit make_xform(const Matrix& x, Index shield_dim);

/// X = (1/(d sqrt d)) sum_ij u_ij |ij><ji| with u the d-point discrete Fourier transform.
XFormPrivateBit fourier_x(Index d);
/// X = V/d^2 with V the swap operator.
XFormPrivateBit swap_x(Index d);

/// sqrt(X X^dagger) and sqrt(X^dagger X), computed from one SVD of X.
struct PolarRoots {
  Matrix left;   // sqrt(X X^dagger)
  Matrix right;  // sqrt(X^dagger X)
};
PolarRoots polar_roots(const Matrix& x);

/// gamma = 1/2 [[sqrt(XX^dag),0,0,X],[0,0,0,0],[0,0,0,0],[X^dag,0,0,sqrt(X^dag X)]].
Operator private_bit(const XFormPrivateBit& x);

/// Dephases the key: zeroes every key block |ij><kl| with (i,j) != (k,l).
Operator key_attacked(const Operator& gamma);

/// Computational-basis distribution of the two key qubits, ordered 00,01,10,11.
std::vector<double> key_distribution(const Operator& state);

/// Admixing weight p = 1/(sqrt d + 1) of the PPT private-bit mixture.
double ppt_mixture_weight(Index d);
/// Fourier-shield private bit mixed with the separable block built from Y = sqrt(d) X^Gamma.
Operator ppt_pbit_mixture(Index d);

enum class WernerSector { symmetric, antisymmetric };
/// Normalised projector onto the (anti)symmetric subspace of C^d (x) C^d.
Operator werner(Index d, WernerSector sector, const Labels& labels = {"A'", "B'"});

// ------------------------------------------------------------ data hiding

class HidingParams {
 public:
  /// Throws DomainError unless 0 < p < 1/2 and d >= 2, k >= 1, m >= 1.
  HidingParams(double p, Index d, int k, int m);

  double p() const { return p_; }
  Index d() const { return d_; }
  int k() const { return k_; }
  int m() const { return m_; }
  /// N_m = 2 p^m + 2 (1/2 - p)^m.
  double normalization() const;
  /// 4 d^(2km); overflow-safe (saturates at SIZE_MAX).
  std::size_t dense_dim() const;
  /// PPT iff p <= 1/3 and (1-p)/p >= (d/(d-1))^k.
  bool ppt_predicate() const;

 private:
  double p_;
  Index d_;
  int k_;
  int m_;
};

/// rho_m: the hiding state with p = 1/3, d = m^2, k = m.
HidingParams rho_m(int m);

/// Closed-form trace norms of the key blocks, already divided by N_m.
struct HidingBlockNorms {
  double correlated = 0.0;  // blocks |00><00|, |11><11|: p^m / N_m
  double flipped = 0.0;     // blocks |01><01|, |10><10|: (1/2 - p)^m / N_m
  double coherence = 0.0;   // blocks |00><11|, |11><00|: (p (1 - 2^-k))^m / N_m
};
HidingBlockNorms hiding_structured(const HidingParams& params);

/// Dense matrix; shield factors are labelled A'1,B'1,...,A'n,B'n with n = k*m.
Operator hiding_dense(const HidingParams& params, std::size_t dense_cap = kDefaultDenseCap);

/// Key-block operator A_{ijkl} of a (A, B, shields...) state: rho = sum |ij><kl| (x) A_{ijkl}.
Matrix key_block(const Operator& rho, int ij, int kl);

// ------------------------------------------------ flower and max. correlated

struct FlowerParams {
  Index d = 0;                 // key dimension
  Index n = 0;                 // shield count
  std::vector<Matrix> u_list;  // n unitaries of dimension d (first state)
  std::vector<Matrix> v_list;  // n unitaries of dimension d (second state)
};

/// Draws Haar-random U and V lists.
FlowerParams random_flower_params(Index d, Index n, Rng& rng);

enum class FlowerSide { first, second };

/// (1/sqrt(dn)) sum_ij |ii>|jj> (x) W^j|i>, with W = U for the first state and
/// V for the second. Layouts: first (A, C_A, A', C_A', E_A); second
/// (C_B, B, C_B', B', E_B).
PureState flower_vector(const FlowerParams& params, FlowerSide side);
Operator flower_state(const FlowerParams& params, FlowerSide side);

/// (1/sqrt d) sum_i |ii> (x) |u_i> on (labels[0], labels[1], env).
PureState maximally_correlated_purification(const std::vector<Vector>& u_list,
                                            const Labels& labels = {"A", "B"},
                                            const std::string& env_label = "E");
/// sum_ik a_ik |ii><kk| with a_ik = <u_k|u_i>/d.
Operator maximally_correlated(const std::vector<Vector>& u_list, const Labels& labels = {"A", "B"});
/// Largest |entry| outside the span of {|ii><kk|} for a two-factor d x d operator.
double off_structure_mass(const Operator& rho);

/// 1/2 |psi><psi| + 1/2 (1/d) (x) |e><e| on C^d (x) C^(d+1); |e> is the last output level.
Operator erasure_choi(Index d, const Labels& labels = {"C'", "B'"});

/// Projector onto (1/sqrt d) sum_i |ii>.
Operator epr(Index d, const Labels& labels = {"A", "B"});

}  // namespace keyrep
