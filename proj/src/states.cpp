#include "keyrep/states.hpp"

#include "keyrep/spectral.hpp"

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <limits>
#include <numbers>

namespace keyrep {

namespace {

constexpr double kXNormTolerance = 1e-6;
constexpr double kUnitaryTolerance = 1e-10;

SubsystemLayout key_shield_layout(Index shield_dim) {
  return SubsystemLayout({2, 2, shield_dim, shield_dim}, {kKeyA, kKeyB, kShieldA, kShieldB});
}

void require_key_layout(const Operator& rho, const std::string& what) {
  const auto& layout = rho.layout();
  if (layout.size() < 2 || layout.labels()[0] != kKeyA || layout.labels()[1] != kKeyB ||
      layout.dims()[0] != 2 || layout.dims()[1] != 2) {
    throw LayoutError(what + ": expected a state whose first factors are the key qubits A, B");
  }
}

// Places four shield blocks on the key diagonal / anti-diagonal positions given by `blocks`.
Matrix assemble_key_blocks(Index shield_size, const std::vector<std::tuple<int, int, Matrix>>& blocks) {
  Matrix out = Matrix::Zero(4 * shield_size, 4 * shield_size);
  for (const auto& [row, col, block] : blocks) {
    out.block(row * shield_size, col * shield_size, shield_size, shield_size) = block;
  }
  return out;
}

Matrix swap_matrix(Index d) {
  Matrix f = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) f(j * d + i, i * d + j) = 1.0;
  }
  return f;
}

Matrix kron_power(const Matrix& m, int power) {
  Matrix out = Matrix::Identity(1, 1);
  for (int i = 0; i < power; ++i) {
    Matrix next = Eigen::kroneckerProduct(out, m);
    out = std::move(next);
  }
  return out;
}

void require_unitary(const Matrix& u, Index d, const std::string& what) {
  if (u.rows() != d || u.cols() != d) throw DomainError(what + ": unitary has wrong dimension");
  const double err = (u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (err > kUnitaryTolerance) throw DomainError(what + ": entry is not unitary");
}

}  // namespace

Labels bob_labels(const SubsystemLayout& layout) {
  Labels out;
  for (const auto& l : layout.labels()) {
    if (!l.empty() && l.front() == 'B') out.push_back(l);
  }
  return out;
}

Labels shield_labels(const SubsystemLayout& layout) {
  Labels out;
  for (const auto& l : layout.labels()) {
    if (l != kKeyA && l != kKeyB) out.push_back(l);
  }
  return out;
}

// ----------------------------------------------------------- private bits

XFormPrivateBit make_xform(const Matrix& x, Index shield_dim) {
  if (shield_dim < 1 || x.rows() != shield_dim * shield_dim || x.cols() != x.rows()) {
    throw DomainError("X must be a d^2 x d^2 matrix");
  }
  const double norm = singular_values(x).sum();
  if (std::abs(norm - 1.0) > kXNormTolerance) {
    throw DomainError("X must have unit trace norm (got " + std::to_string(norm) + ")");
  }
  return {Operator(x, SubsystemLayout({shield_dim, shield_dim}, {kShieldA, kShieldB})), shield_dim};
}

XFormPrivateBit fourier_x(Index d) {
  if (d < 2) throw DomainError("fourier_x: shield dimension must be at least 2");
  const double dd = static_cast<double>(d);
  const double scale = 1.0 / (dd * std::sqrt(dd));
  Matrix x = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) {
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(i * j) / dd;
      const Complex u = std::polar(1.0 / std::sqrt(dd), phase);
      x(i * d + j, j * d + i) = scale * u;
    }
  }
  return make_xform(x, d);
}

XFormPrivateBit swap_x(Index d) {
  if (d < 2) throw DomainError("swap_x: shield dimension must be at least 2");
  return make_xform(swap_matrix(d) / static_cast<double>(d * d), d);
}

PolarRoots polar_roots(const Matrix& x) {
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  return {svd.matrixU() * s.asDiagonal() * svd.matrixU().adjoint(),
          svd.matrixV() * s.asDiagonal() * svd.matrixV().adjoint()};
}

Operator private_bit(const XFormPrivateBit& xf) {
  const Matrix& x = xf.x.matrix();
  const double norm = singular_values(x).sum();
  if (std::abs(norm - 1.0) > kXNormTolerance) throw DomainError("private_bit: ||X||_1 must equal 1");
  const auto roots = polar_roots(x);
  Matrix gamma = 0.5 * assemble_key_blocks(x.rows(), {{0, 0, roots.left},
                                                       {0, 3, x},
                                                       {3, 0, x.adjoint()},
                                                       {3, 3, roots.right}});
  Operator out(std::move(gamma), key_shield_layout(xf.shield_dim));
  require_state(out, "private_bit");
  return out;
}

Matrix key_block(const Operator& rho, int ij, int kl) {
  require_key_layout(rho, "key_block");
  if (ij < 0 || ij > 3 || kl < 0 || kl > 3) throw DomainError("key_block: key index outside 0..3");
  const Index s = rho.dim() / 4;
  return rho.matrix().block(ij * s, kl * s, s, s);
}

Operator key_attacked(const Operator& gamma) {
  require_key_layout(gamma, "key_attacked");
  const Index s = gamma.dim() / 4;
  Matrix out = Matrix::Zero(gamma.dim(), gamma.dim());
  for (int k = 0; k < 4; ++k) out.block(k * s, k * s, s, s) = gamma.matrix().block(k * s, k * s, s, s);
  return {std::move(out), gamma.layout()};
}

std::vector<double> key_distribution(const Operator& state) {
  require_key_layout(state, "key_distribution");
  const Index s = state.dim() / 4;
  std::vector<double> p(4);
  for (int k = 0; k < 4; ++k) p[k] = state.matrix().block(k * s, k * s, s, s).trace().real();
  return p;
}

double ppt_mixture_weight(Index d) {
  if (d < 2) throw DomainError("ppt mixture: shield dimension must be at least 2");
  return 1.0 / (std::sqrt(static_cast<double>(d)) + 1.0);
}

Operator ppt_pbit_mixture(Index d) {
  const double p = ppt_mixture_weight(d);
  const auto xf = fourier_x(d);
  const Matrix& x = xf.x.matrix();
  const Matrix y = std::sqrt(static_cast<double>(d)) * partial_transpose(xf.x, {kShieldB}).matrix();
  const auto rx = polar_roots(x);
  const auto ry = polar_roots(y);
  Matrix rho = 0.5 * assemble_key_blocks(x.rows(), {{0, 0, (1 - p) * rx.left},
                                                     {0, 3, (1 - p) * x},
                                                     {3, 0, (1 - p) * x.adjoint()},
                                                     {3, 3, (1 - p) * rx.right},
                                                     {1, 1, p * ry.left},
                                                     {2, 2, p * ry.right}});
  return {std::move(rho), key_shield_layout(d)};
}

Operator werner(Index d, WernerSector sector, const Labels& labels) {
  if (d < 2) throw DomainError("werner: dimension must be at least 2");
  const double dd = static_cast<double>(d);
  const Matrix id = Matrix::Identity(d * d, d * d);
  const Matrix f = swap_matrix(d);
  Matrix m = sector == WernerSector::symmetric ? Matrix((id + f) / (dd * (dd + 1)))
                                               : Matrix((id - f) / (dd * (dd - 1)));
  return {std::move(m), SubsystemLayout({d, d}, labels)};
}

// ---------------------------------------------------------------- hiding

HidingParams::HidingParams(double p, Index d, int k, int m) : p_(p), d_(d), k_(k), m_(m) {
  if (!(p > 0.0 && p < 0.5)) throw DomainError("hiding params: p must lie in (0, 1/2)");
  if (d < 2) throw DomainError("hiding params: d must be at least 2");
  if (k < 1 || m < 1) throw DomainError("hiding params: k and m must be positive");
}

double HidingParams::normalization() const {
  return 2.0 * std::pow(p_, m_) + 2.0 * std::pow(0.5 - p_, m_);
}

std::size_t HidingParams::dense_dim() const {
  constexpr auto kMax = std::numeric_limits<std::size_t>::max();
  std::size_t dim = 4;
  const auto d = static_cast<std::size_t>(d_);
  for (long i = 0; i < 2L * k_ * m_; ++i) {
    if (dim > kMax / d) return kMax;
    dim *= d;
  }
  return dim;
}

bool HidingParams::ppt_predicate() const {
  const double dd = static_cast<double>(d_);
  // Exact ties (p = 1/3, k = 1, d = 2) must land on the PPT side.
  constexpr double kSlack = 1e-12;
  return p_ <= 1.0 / 3.0 + kSlack && (1.0 - p_) / p_ >= std::pow(dd / (dd - 1.0), k_) - kSlack;
}

HidingParams rho_m(int m) {
  if (m < 2) throw DomainError("rho_m: m must be at least 2");
  return HidingParams(1.0 / 3.0, static_cast<Index>(m) * m, m, m);
}

HidingBlockNorms hiding_structured(const HidingParams& params) {
  const double n = params.normalization();
  const double p = params.p();
  const int m = params.m();
  return {std::pow(p, m) / n, std::pow(0.5 - p, m) / n,
          std::pow(p * (1.0 - std::pow(2.0, -params.k())), m) / n};
}

Operator hiding_dense(const HidingParams& params, std::size_t dense_cap) {
  check_dense_cap(params.dense_dim(), dense_cap, "hiding_dense");
  const Index d = params.d();
  const Matrix rs = werner(d, WernerSector::symmetric).matrix();
  const Matrix ra = werner(d, WernerSector::antisymmetric).matrix();
  const Matrix tau1 = kron_power(0.5 * (ra + rs), params.k());
  const Matrix tau2 = kron_power(rs, params.k());
  const double p = params.p();
  const double n = params.normalization();
  const int m = params.m();
  const Matrix correlated = kron_power(p * 0.5 * (tau1 + tau2), m) / n;
  const Matrix flipped = kron_power((0.5 - p) * tau2, m) / n;
  const Matrix coherence = kron_power(p * 0.5 * (tau1 - tau2), m) / n;

  std::vector<Index> dims{2, 2};
  Labels labels{kKeyA, kKeyB};
  for (int i = 1; i <= params.k() * m; ++i) {
    dims.push_back(d);
    labels.push_back("A'" + std::to_string(i));
    dims.push_back(d);
    labels.push_back("B'" + std::to_string(i));
  }
  Matrix rho = assemble_key_blocks(correlated.rows(), {{0, 0, correlated},
                                                        {0, 3, coherence},
                                                        {3, 0, coherence},
                                                        {3, 3, correlated},
                                                        {1, 1, flipped},
                                                        {2, 2, flipped}});
  return {std::move(rho), SubsystemLayout(std::move(dims), std::move(labels))};
}

// ----------------------------------------------- flower / max. correlated

FlowerParams random_flower_params(Index d, Index n, Rng& rng) {
  FlowerParams params{d, n, {}, {}};
  for (Index j = 0; j < n; ++j) params.u_list.push_back(haar_unitary(d, rng));
  for (Index j = 0; j < n; ++j) params.v_list.push_back(haar_unitary(d, rng));
  return params;
}

PureState flower_vector(const FlowerParams& params, FlowerSide side) {
  const Index d = params.d;
  const Index n = params.n;
  if (d < 1 || n < 1) throw DomainError("flower_state: d and n must be positive");
  const auto& list = side == FlowerSide::first ? params.u_list : params.v_list;
  if (static_cast<Index>(list.size()) != n) throw DomainError("flower_state: unitary list must have n entries");
  for (const auto& u : list) require_unitary(u, d, "flower_state");

  const double scale = 1.0 / std::sqrt(static_cast<double>(d * n));
  Vector psi = Vector::Zero(d * d * n * n * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < n; ++j) {
      const Index base = (((i * d + i) * n + j) * n + j) * d;
      psi.segment(base, d) = scale * list[j].col(i);
    }
  }
  Labels labels = side == FlowerSide::first ? Labels{"A", "C_A", "A'", "C_A'", "E_A"}
                                            : Labels{"C_B", "B", "C_B'", "B'", "E_B"};
  return {std::move(psi), SubsystemLayout({d, d, n, n, d}, std::move(labels))};
}

Operator flower_state(const FlowerParams& params, FlowerSide side) {
  return flower_vector(params, side).projector();
}

PureState maximally_correlated_purification(const std::vector<Vector>& u_list, const Labels& labels,
                                            const std::string& env_label) {
  if (u_list.empty()) throw DomainError("maximally_correlated: empty vector list");
  if (labels.size() != 2) throw LayoutError("maximally_correlated: two labels required");
  const auto d = static_cast<Index>(u_list.size());
  const Index env = u_list.front().size();
  for (const auto& u : u_list) {
    if (u.size() != env) throw DomainError("maximally_correlated: vectors differ in dimension");
    if (std::abs(u.norm() - 1.0) > kUnitaryTolerance) throw DomainError("maximally_correlated: vectors must be unit");
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Vector psi = Vector::Zero(d * d * env);
  for (Index i = 0; i < d; ++i) psi.segment((i * d + i) * env, env) = scale * u_list[i];
  return {std::move(psi), SubsystemLayout({d, d, env}, {labels[0], labels[1], env_label})};
}

Operator maximally_correlated(const std::vector<Vector>& u_list, const Labels& labels) {
  auto psi = maximally_correlated_purification(u_list, labels, "__env");
  return partial_trace(psi.projector(), {"__env"});
}

double off_structure_mass(const Operator& rho) {
  const auto& layout = rho.layout();
  if (layout.size() != 2 || layout.dims()[0] != layout.dims()[1]) {
    throw LayoutError("off_structure_mass: expected a d x d bipartite operator");
  }
  const Index d = layout.dims()[0];
  double worst = 0.0;
  for (Index c = 0; c < rho.dim(); ++c) {
    for (Index r = 0; r < rho.dim(); ++r) {
      const bool on = (r / d == r % d) && (c / d == c % d);
      if (!on) worst = std::max(worst, std::abs(rho.matrix()(r, c)));
    }
  }
  return worst;
}

Operator erasure_choi(Index d, const Labels& labels) {
  if (d < 2) throw DomainError("erasure_choi: dimension must be at least 2");
  const Index out_dim = d + 1;
  Vector psi = Vector::Zero(d * out_dim);
  for (Index i = 0; i < d; ++i) psi(i * out_dim + i) = 1.0 / std::sqrt(static_cast<double>(d));
  Matrix rho = 0.5 * psi * psi.adjoint();
  for (Index i = 0; i < d; ++i) rho(i * out_dim + d, i * out_dim + d) += 0.5 / static_cast<double>(d);
  return {std::move(rho), SubsystemLayout({d, out_dim}, labels)};
}

Operator epr(Index d, const Labels& labels) {
  if (d < 2) throw DomainError("epr: dimension must be at least 2");
  Vector psi = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) psi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return {psi * psi.adjoint(), SubsystemLayout({d, d}, labels)};
}

}  // namespace keyrep
