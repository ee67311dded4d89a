#include "keyrep/opcore.hpp"

#include "keyrep/spectral.hpp"

#include <Eigen/QR>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace keyrep {

namespace {

// Below this an eigenvalue is numerical noise for purification purposes.
constexpr double kRankCut = 1e-13;

std::vector<Index> strides_of(const std::vector<Index>& dims) {
  std::vector<Index> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) strides[k - 1] = strides[k] * dims[k];
  return strides;
}

// map[new_index] = old_index for the factor reordering `order` (positions in the old layout).
std::vector<Index> permutation_map(const SubsystemLayout& layout, const std::vector<std::size_t>& order) {
  const auto& old_dims = layout.dims();
  const auto old_strides = strides_of(old_dims);
  std::vector<Index> new_dims;
  for (auto p : order) new_dims.push_back(old_dims[p]);
  const Index n = layout.total_dim();
  std::vector<Index> map(static_cast<std::size_t>(n));
  std::vector<Index> digit(order.size(), 0);
  for (Index i = 0; i < n; ++i) {
    Index old_index = 0;
    for (std::size_t k = 0; k < order.size(); ++k) old_index += digit[k] * old_strides[order[k]];
    map[i] = old_index;
    for (std::size_t k = order.size(); k-- > 0;) {
      if (++digit[k] < new_dims[k]) break;
      digit[k] = 0;
    }
  }
  return map;
}

std::vector<std::size_t> positions_of(const SubsystemLayout& layout, const Labels& order) {
  if (order.size() != layout.size()) {
    throw LayoutError("permutation must name every factor exactly once");
  }
  std::vector<std::size_t> pos;
  std::set<std::string> seen;
  for (const auto& label : order) {
    if (!seen.insert(label).second) throw LayoutError("duplicate label in permutation: " + label);
    pos.push_back(layout.position(label));
  }
  return pos;
}

SubsystemLayout reordered_layout(const SubsystemLayout& layout, const std::vector<std::size_t>& pos) {
  std::vector<Index> dims;
  Labels labels;
  for (auto p : pos) {
    dims.push_back(layout.dims()[p]);
    labels.push_back(layout.labels()[p]);
  }
  return {std::move(dims), std::move(labels)};
}

void check_labels_exist(const SubsystemLayout& layout, const Labels& labels) {
  for (const auto& l : labels) (void)layout.position(l);
}

SubsystemLayout grouped_layout(const SubsystemLayout& layout, const std::vector<Labels>& groups,
                               const Labels& new_labels) {
  if (groups.size() != new_labels.size()) throw LayoutError("regroup: one label per group required");
  std::vector<Index> dims;
  for (const auto& g : groups) {
    if (g.empty()) throw LayoutError("regroup: empty group");
    Index d = 1;
    for (const auto& l : g) d *= layout.dim_of(l);
    dims.push_back(d);
  }
  return {std::move(dims), new_labels};
}

Labels flatten(const std::vector<Labels>& groups) {
  Labels flat;
  for (const auto& g : groups) flat.insert(flat.end(), g.begin(), g.end());
  return flat;
}

}  // namespace

void check_dense_cap(std::size_t dim, std::size_t cap, const std::string& what) {
  if (dim > cap) {
    throw SizeError(what + ": dimension " + std::to_string(dim) + " exceeds dense cap " + std::to_string(cap));
  }
}

// ------------------------------------------------------------------ layout

SubsystemLayout::SubsystemLayout(std::vector<Index> dims, Labels labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.size() != labels_.size()) throw LayoutError("layout: dims and labels differ in length");
  for (auto d : dims_) {
    if (d < 1) throw LayoutError("layout: dimensions must be positive");
  }
  std::set<std::string> unique(labels_.begin(), labels_.end());
  if (unique.size() != labels_.size()) throw LayoutError("layout: labels must be unique");
}

Index SubsystemLayout::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), Index{1}, std::multiplies<>());
}

bool SubsystemLayout::contains(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t SubsystemLayout::position(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw LayoutError("unknown subsystem label: " + label);
  return static_cast<std::size_t>(it - labels_.begin());
}

SubsystemLayout SubsystemLayout::concat(const SubsystemLayout& other) const {
  auto dims = dims_;
  auto labels = labels_;
  for (const auto& l : other.labels_) {
    if (contains(l)) throw LayoutError("label collision in tensor product: " + l);
  }
  dims.insert(dims.end(), other.dims_.begin(), other.dims_.end());
  labels.insert(labels.end(), other.labels_.begin(), other.labels_.end());
  return {std::move(dims), std::move(labels)};
}

// ---------------------------------------------------------------- operator

Operator::Operator(Matrix entries, SubsystemLayout layout)
    : entries_(std::move(entries)), layout_(std::move(layout)) {
  if (entries_.rows() != entries_.cols()) throw LayoutError("operator must be square");
  if (entries_.rows() != layout_.total_dim()) {
    throw LayoutError("operator dimension " + std::to_string(entries_.rows()) +
                      " does not match layout dimension " + std::to_string(layout_.total_dim()));
  }
}

Operator Operator::operator+(const Operator& other) const {
  if (!(layout_ == other.layout_)) throw LayoutError("sum of operators with different layouts");
  return {entries_ + other.entries_, layout_};
}

Operator Operator::operator-(const Operator& other) const {
  if (!(layout_ == other.layout_)) throw LayoutError("difference of operators with different layouts");
  return {entries_ - other.entries_, layout_};
}

Operator Operator::operator*(double s) const { return {entries_ * s, layout_}; }

Operator PureState::projector() const { return {amplitudes * amplitudes.adjoint(), layout}; }

// ---------------------------------------------------------------- builders

Operator identity(const SubsystemLayout& layout) {
  const Index n = layout.total_dim();
  return {Matrix::Identity(n, n), layout};
}

Operator maximally_mixed(const SubsystemLayout& layout) {
  const Index n = layout.total_dim();
  return {Matrix::Identity(n, n) / static_cast<double>(n), layout};
}

Vector basis_ket(Index d, Index i) {
  if (i < 0 || i >= d) throw DomainError("basis index out of range");
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

Operator basis_projector(Index d, Index i, const std::string& label) {
  Vector v = basis_ket(d, i);
  return {v * v.adjoint(), SubsystemLayout({d}, {label})};
}

// --------------------------------------------------------------- structure

Operator tensor(const Operator& a, const Operator& b) {
  auto layout = a.layout().concat(b.layout());
  Matrix k = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return {std::move(k), std::move(layout)};
}

Operator permute(const Operator& op, const Labels& order) {
  const auto pos = positions_of(op.layout(), order);
  const auto map = permutation_map(op.layout(), pos);
  const Index n = op.dim();
  Matrix out(n, n);
  const Matrix& m = op.matrix();
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) out(r, c) = m(map[r], map[c]);
  }
  return {std::move(out), reordered_layout(op.layout(), pos)};
}

PureState permute(const PureState& psi, const Labels& order) {
  const auto pos = positions_of(psi.layout, order);
  const auto map = permutation_map(psi.layout, pos);
  Vector out(psi.amplitudes.size());
  for (Index i = 0; i < out.size(); ++i) out(i) = psi.amplitudes(map[i]);
  return {std::move(out), reordered_layout(psi.layout, pos)};
}

Operator regroup(const Operator& op, const std::vector<Labels>& groups, const Labels& new_labels) {
  auto layout = grouped_layout(op.layout(), groups, new_labels);
  auto permuted = permute(op, flatten(groups));
  return {permuted.matrix(), std::move(layout)};
}

PureState regroup(const PureState& psi, const std::vector<Labels>& groups, const Labels& new_labels) {
  auto layout = grouped_layout(psi.layout, groups, new_labels);
  auto permuted = permute(psi, flatten(groups));
  return {std::move(permuted.amplitudes), std::move(layout)};
}

Operator relabel(const Operator& op, const Labels& labels) {
  return {op.matrix(), SubsystemLayout(op.layout().dims(), labels)};
}

Operator partial_trace(const Operator& op, const Labels& discard) {
  check_labels_exist(op.layout(), discard);
  Labels keep;
  for (const auto& l : op.layout().labels()) {
    if (std::find(discard.begin(), discard.end(), l) == discard.end()) keep.push_back(l);
  }
  return reduce_to(op, keep);
}

Operator reduce_to(const Operator& op, const Labels& keep) {
  check_labels_exist(op.layout(), keep);
  Labels order = keep;
  Index traced_dim = 1;
  for (const auto& l : op.layout().labels()) {
    if (std::find(keep.begin(), keep.end(), l) == keep.end()) {
      order.push_back(l);
      traced_dim *= op.layout().dim_of(l);
    }
  }
  const auto permuted = permute(op, order);
  std::vector<Index> dims;
  for (const auto& l : keep) dims.push_back(op.layout().dim_of(l));
  SubsystemLayout layout(std::move(dims), keep);
  const Index n = layout.total_dim();
  Matrix out = Matrix::Zero(n, n);
  const Matrix& m = permuted.matrix();
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) {
      Complex acc{0.0, 0.0};
      for (Index t = 0; t < traced_dim; ++t) acc += m(r * traced_dim + t, c * traced_dim + t);
      out(r, c) = acc;
    }
  }
  return {std::move(out), std::move(layout)};
}

Operator partial_transpose(const Operator& op, const Labels& transpose) {
  const auto& layout = op.layout();
  check_labels_exist(layout, transpose);
  const auto strides = strides_of(layout.dims());
  std::vector<bool> selected(layout.size(), false);
  for (const auto& l : transpose) selected[layout.position(l)] = true;

  const Index n = op.dim();
  std::vector<Index> sel_part(static_cast<std::size_t>(n), 0);
  for (Index i = 0; i < n; ++i) {
    Index rem = i;
    Index part = 0;
    for (std::size_t k = 0; k < layout.size(); ++k) {
      const Index digit = rem / strides[k];
      rem %= strides[k];
      if (selected[k]) part += digit * strides[k];
    }
    sel_part[i] = part;
  }
  Matrix out(n, n);
  const Matrix& m = op.matrix();
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) {
      out(r - sel_part[r] + sel_part[c], c - sel_part[c] + sel_part[r]) = m(r, c);
    }
  }
  return {std::move(out), layout};
}

// ---------------------------------------------------------------- spectral

double hermitian_error(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double trace_norm(const Matrix& m) {
  if (m.rows() == m.cols() && hermitian_error(m) <= tol::kHermitian) {
    return hermitian_eigenvalues(m).cwiseAbs().sum();
  }
  return singular_values(m).sum();
}

double trace_norm(const Operator& op) { return trace_norm(op.matrix()); }

double operator_norm_hermitian(const Matrix& m) { return hermitian_eigenvalues(m).cwiseAbs().maxCoeff(); }

double min_eigenvalue(const Operator& op) {
  if (hermitian_error(op.matrix()) > tol::kHermitian) {
    throw DomainError("min_eigenvalue: operator is not Hermitian");
  }
  return hermitian_eigenvalues(op.matrix()).minCoeff();
}

// --------------------------------------------------------------- entropies

double eta(double x) {
  if (x < 0.0 || !std::isfinite(x)) throw DomainError("eta: argument must be nonnegative");
  return x == 0.0 ? 0.0 : -x * std::log2(x);
}

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0 || std::isnan(p)) throw DomainError("binary_entropy: argument outside [0,1]");
  return eta(p) + eta(1.0 - p);
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x < 0.0 || x > 1.0 + tol::kTrace || std::isnan(x)) {
      throw DomainError("shannon_entropy: probabilities must lie in [0,1]");
    }
    h += eta(std::min(x, 1.0));
  }
  return h;
}

double von_neumann_entropy(const Matrix& m) {
  const RealVector ev = hermitian_eigenvalues(m);
  if (ev.size() > 0 && ev.minCoeff() < -tol::kPsd) {
    throw DomainError("von_neumann_entropy: negative eigenvalue beyond tolerance");
  }
  double h = 0.0;
  for (Index i = 0; i < ev.size(); ++i) h += eta(std::max(ev(i), 0.0));
  return h;
}

double von_neumann_entropy(const Operator& op) {
  if (hermitian_error(op.matrix()) > tol::kHermitian) {
    throw DomainError("von_neumann_entropy: operator is not Hermitian");
  }
  return von_neumann_entropy(op.matrix());
}

Divergence relative_entropy(const Operator& rho, const Operator& sigma) {
  if (!(rho.layout() == sigma.layout())) throw LayoutError("relative_entropy: layout mismatch");
  require_state(rho, "relative_entropy(rho)");
  require_state(sigma, "relative_entropy(sigma)");
  const auto spec = hermitian_eigensystem(sigma.matrix());
  double cross = 0.0;  // tr rho log sigma
  for (Index k = 0; k < spec.values.size(); ++k) {
    const Vector v = spec.vectors.col(k);
    const double weight = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    const double lambda = spec.values(k);
    if (lambda <= tol::kSupport) {
      if (weight > tol::kSupport) return {0.0, false};
      continue;
    }
    cross += weight * std::log2(lambda);
  }
  const double d = -von_neumann_entropy(rho) - cross;
  return {std::max(d, 0.0), true};
}

// ------------------------------------------------------------------ states

StateDefects state_defects(const Operator& op) {
  StateDefects out;
  out.hermitian_error = hermitian_error(op.matrix());
  out.trace_error = std::abs(op.trace() - Complex{1.0, 0.0});
  out.min_eigenvalue = hermitian_eigenvalues(op.matrix()).minCoeff();
  return out;
}

void require_state(const Operator& op, const std::string& what) {
  const auto d = state_defects(op);
  if (d.hermitian_error > tol::kHermitian) throw DomainError(what + ": operator is not Hermitian");
  if (d.trace_error > tol::kTrace) throw DomainError(what + ": trace differs from 1");
  if (d.min_eigenvalue < -tol::kPsd) throw DomainError(what + ": operator is not positive semidefinite");
}

PureState purify_state(const Operator& rho, const std::string& env_label) {
  require_state(rho, "purify");
  const auto spec = hermitian_eigensystem(rho.matrix());
  std::vector<Index> kept;
  for (Index k = 0; k < spec.values.size(); ++k) {
    if (spec.values(k) > kRankCut) kept.push_back(k);
  }
  const auto rank = static_cast<Index>(kept.size());
  const Index n = rho.dim();
  Vector psi = Vector::Zero(n * rank);
  for (Index e = 0; e < rank; ++e) {
    const double w = std::sqrt(spec.values(kept[e]));
    for (Index s = 0; s < n; ++s) psi(s * rank + e) = w * spec.vectors(s, kept[e]);
  }
  return {std::move(psi), rho.layout().concat(SubsystemLayout({rank}, {env_label}))};
}

PureState purify_canonical(const Operator& rho, const std::string& env_label) {
  require_state(rho, "purify_canonical");
  const auto spec = hermitian_eigensystem(rho.matrix());
  const RealVector roots = spec.values.cwiseMax(0.0).cwiseSqrt();
  const Matrix root = spec.vectors * roots.asDiagonal() * spec.vectors.adjoint();
  const Index n = rho.dim();
  Vector psi(n * n);
  for (Index s = 0; s < n; ++s) {
    for (Index e = 0; e < n; ++e) psi(s * n + e) = root(s, e);
  }
  return {std::move(psi), rho.layout().concat(SubsystemLayout({n}, {env_label}))};
}

Operator purify(const Operator& rho, const std::string& env_label) {
  return purify_state(rho, env_label).projector();
}

Matrix haar_unitary(Index d, Rng& rng) {
  if (d < 1) throw DomainError("haar_unitary: dimension must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(d, d);
  for (Index c = 0; c < d; ++c) {
    for (Index r = 0; r < d; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex{re, im};
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Index k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    q.col(k) *= mag > 0.0 ? diag / mag : Complex{1.0, 0.0};
  }
  return q;
}

Operator random_state(const SubsystemLayout& layout, Rng& rng) {
  const Index n = layout.total_dim();
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(r, c) = Complex{re, im};
    }
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return {std::move(rho), layout};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace keyrep
