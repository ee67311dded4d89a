// Dense complex operator algebra over labelled tensor-product spaces.
//
// Every state, map and block in the library is an `Operator`: a square complex
// matrix together with the `SubsystemLayout` that says how its index space
// factorises. Factors are addressed by label, never by position, so callers can
// write `partial_transpose(rho, {"B", "B'"})` without tracking orderings.
//
// Index convention: the first factor of a layout is the most significant digit
// of the row/column index (standard Kronecker ordering).

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace keyrep {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;
using Rng = std::mt19937_64;
using Labels = std::vector<std::string>;

namespace tol {
inline constexpr double kHermitian = 1e-10;  // max |M - M^dagger| entry
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsd = 1e-9;         // eigenvalue clamp
inline constexpr double kSupport = 1e-9;     // support projection threshold
}  // namespace tol

/// Total matrix dimension above which dense materialisation is refused.
inline constexpr std::size_t kDefaultDenseCap = 4096;

class LayoutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Throws SizeError when `dim` exceeds `cap`.
void check_dense_cap(std::size_t dim, std::size_t cap, const std::string& what);

class SubsystemLayout {
 public:
  SubsystemLayout() = default;
  SubsystemLayout(std::vector<Index> dims, Labels labels);

  const std::vector<Index>& dims() const { return dims_; }
  const Labels& labels() const { return labels_; }
  std::size_t size() const { return dims_.size(); }
  Index total_dim() const;

  bool contains(const std::string& label) const;
  /// Position of `label`; throws LayoutError when absent.
  std::size_t position(const std::string& label) const;
  Index dim_of(const std::string& label) const { return dims_[position(label)]; }

  SubsystemLayout concat(const SubsystemLayout& other) const;

  bool operator==(const SubsystemLayout&) const = default;

 private:
  std::vector<Index> dims_;
  Labels labels_;
};

class Operator {
 public:
  Operator() = default;
  Operator(Matrix entries, SubsystemLayout layout);

  const Matrix& matrix() const { return entries_; }
  const SubsystemLayout& layout() const { return layout_; }
  Index dim() const { return entries_.rows(); }
  Complex trace() const { return entries_.trace(); }

  Operator operator+(const Operator& other) const;
  Operator operator-(const Operator& other) const;
  Operator operator*(double s) const;

 private:
  Matrix entries_;
  SubsystemLayout layout_;
};

inline Operator operator*(double s, const Operator& op) { return op * s; }

/// Normalised pure state; `projector()` gives the rank-one density operator.
struct PureState {
  Vector amplitudes;
  SubsystemLayout layout;

  Operator projector() const;
};

// ---------------------------------------------------------------- builders

Operator identity(const SubsystemLayout& layout);
Operator maximally_mixed(const SubsystemLayout& layout);
/// |i><i| on a single labelled factor of dimension d.
Operator basis_projector(Index d, Index i, const std::string& label);
Vector basis_ket(Index d, Index i);

// ------------------------------------------------------------- structure

Operator tensor(const Operator& a, const Operator& b);
Operator partial_trace(const Operator& op, const Labels& discard);
/// Partial trace over everything except `keep`, returned in `keep` order.
Operator reduce_to(const Operator& op, const Labels& keep);
Operator partial_transpose(const Operator& op, const Labels& transpose);
/// Reorders factors; `order` must be a permutation of the layout's labels.
Operator permute(const Operator& op, const Labels& order);
/// Merges each group of labels into one factor named by `new_labels`.
Operator regroup(const Operator& op, const std::vector<Labels>& groups, const Labels& new_labels);
Operator relabel(const Operator& op, const Labels& labels);

PureState permute(const PureState& psi, const Labels& order);
PureState regroup(const PureState& psi, const std::vector<Labels>& groups, const Labels& new_labels);

// ------------------------------------------------------------ spectral

double trace_norm(const Matrix& m);
double trace_norm(const Operator& op);
/// Largest absolute eigenvalue of a Hermitian matrix.
double operator_norm_hermitian(const Matrix& m);
double min_eigenvalue(const Operator& op);
double hermitian_error(const Matrix& m);

// ------------------------------------------------------------ entropies

double eta(double x);
double binary_entropy(double p);
double shannon_entropy(std::span<const double> p);
double von_neumann_entropy(const Matrix& m);
double von_neumann_entropy(const Operator& op);

/// D(rho||sigma) in bits. `finite` is false when rho leaves the support of
/// sigma, in which case the divergence is +infinity and `bits` is meaningless.
struct Divergence {
  double bits = 0.0;
  bool finite = true;
};
Divergence relative_entropy(const Operator& rho, const Operator& sigma);

// ------------------------------------------------------------- states

struct StateDefects {
  double hermitian_error = 0.0;
  double trace_error = 0.0;
  double min_eigenvalue = 0.0;

  bool ok() const {
    return hermitian_error <= tol::kHermitian && trace_error <= tol::kTrace &&
           min_eigenvalue >= -tol::kPsd;
  }
};
StateDefects state_defects(const Operator& op);
/// Throws DomainError naming `what` unless `op` is a density operator.
void require_state(const Operator& op, const std::string& what);

/// Spectral purification; the environment factor has dimension rank(rho).
PureState purify_state(const Operator& rho, const std::string& env_label = "E");
/// (sqrt(rho) (x) 1)|Omega>; the environment has the full system dimension.
PureState purify_canonical(const Operator& rho, const std::string& env_label = "E");
Operator purify(const Operator& rho, const std::string& env_label = "E");

/// Haar-distributed d x d unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix haar_unitary(Index d, Rng& rng);
/// Random density matrix from the Ginibre ensemble (test and property use).
Operator random_state(const SubsystemLayout& layout, Rng& rng);

/// Deterministic child seed; used to fan a master seed out to restarts/trials.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

}  // namespace keyrep
