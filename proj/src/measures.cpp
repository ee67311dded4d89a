#include "keyrep/measures.hpp"

#include "keyrep/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace keyrep {

namespace {

constexpr double kStructureTolerance = 1e-10;
constexpr double kCellTolerance = 1e-9;

}  // namespace

double log_negativity(const Operator& rho, const Labels& transpose) {
  const double norm = trace_norm(partial_transpose(rho, transpose));
  return std::max(0.0, std::log2(norm));
}

double log_negativity(const Operator& rho) { return log_negativity(rho, bob_labels(rho.layout())); }

double trace_distance(const Operator& rho, const Operator& sigma) {
  if (!(rho.layout() == sigma.layout())) throw LayoutError("trace_distance: layout mismatch");
  return trace_norm(rho.matrix() - sigma.matrix());
}

double er_fannes_bound(double epsilon, double d) {
  if (!(epsilon >= 0.0 && epsilon < 1.0 / 3.0)) throw DomainError("er_fannes_bound: epsilon must lie in [0, 1/3)");
  if (!(d >= 1.0)) throw DomainError("er_fannes_bound: dimension must be at least 1");
  return 2.0 * epsilon * std::log2(2.0 * d) + eta(epsilon);
}

// -------------------------------------------------------- Devetak-Winter

void validate(const CcqEnsemble& ens) {
  const auto n = ens.probs.size();
  if (ens.bob_states.size() != n || ens.eve_states.size() != n || (!ens.labels.empty() && ens.labels.size() != n)) {
    throw DomainError("ccq ensemble: component lists differ in length");
  }
  double total = 0.0;
  for (double p : ens.probs) {
    if (p < 0.0) throw DomainError("ccq ensemble: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > tol::kTrace) throw DomainError("ccq ensemble: probabilities must sum to 1");
  for (std::size_t i = 0; i < n; ++i) {
    require_state(ens.bob_states[i], "ccq ensemble bob state");
    require_state(ens.eve_states[i], "ccq ensemble eve state");
  }
}

double holevo(const std::vector<double>& probs, const std::vector<Operator>& states) {
  if (probs.size() != states.size() || states.empty()) throw DomainError("holevo: size mismatch");
  Matrix avg = Matrix::Zero(states.front().dim(), states.front().dim());
  double conditional = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] == 0.0) continue;
    avg += probs[i] * states[i].matrix();
    conditional += probs[i] * von_neumann_entropy(states[i].matrix());
  }
  return von_neumann_entropy(avg) - conditional;
}

double devetak_winter(const CcqEnsemble& ens) {
  validate(ens);
  return holevo(ens.probs, ens.bob_states) - holevo(ens.probs, ens.eve_states);
}

CcqEnsemble ccq_from_state(const Operator& rho, const std::string& key_label, const Labels& bob_side,
                           PurificationRoute route, std::size_t dense_cap) {
  check_dense_cap(static_cast<std::size_t>(rho.dim()), dense_cap, "ccq_from_state");
  const auto& layout = rho.layout();
  const std::size_t key_pos = layout.position(key_label);
  for (const auto& l : bob_side) {
    if (l == key_label) throw LayoutError("ccq_from_state: key label cannot be on Bob's side");
    (void)layout.position(l);
  }
  const Index key_dim = layout.dims()[key_pos];
  Index key_stride = 1;
  for (std::size_t k = key_pos + 1; k < layout.size(); ++k) key_stride *= layout.dims()[k];

  const PureState psi = route == PurificationRoute::spectral ? purify_state(rho, "__eve")
                                                             : purify_canonical(rho, "__eve");
  const Index n = rho.dim();
  const Index env = psi.layout.dims().back();
  check_dense_cap(static_cast<std::size_t>(env), dense_cap, "ccq_from_state environment");
  // psi(s, e) laid out row-major with the environment as the fast index.
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> amp(
      psi.amplitudes.data(), n, env);

  CcqEnsemble ens;
  for (Index x = 0; x < key_dim; ++x) {
    Matrix projected = Matrix::Zero(n, n);
    std::vector<Index> rows;
    for (Index s = 0; s < n; ++s) {
      if ((s / key_stride) % key_dim == x) rows.push_back(s);
    }
    Matrix mx(static_cast<Index>(rows.size()), env);
    for (std::size_t r = 0; r < rows.size(); ++r) mx.row(static_cast<Index>(r)) = amp.row(rows[r]);
    for (Index r : rows) {
      for (Index c : rows) projected(r, c) = rho.matrix()(r, c);
    }
    const double px = projected.trace().real();
    ens.labels.push_back(std::to_string(x));
    ens.probs.push_back(std::max(px, 0.0));
    Operator cond(projected, layout);
    Operator bob = reduce_to(cond, bob_side);
    Matrix eve = mx.transpose() * mx.conjugate();
    if (px > 1e-15) {
      bob = bob * (1.0 / px);
      eve /= px;
    } else {
      bob = maximally_mixed(bob.layout());
      eve = Matrix::Identity(env, env) / static_cast<double>(env);
    }
    ens.bob_states.push_back(std::move(bob));
    ens.eve_states.emplace_back(std::move(eve), SubsystemLayout({env}, {"E"}));
  }
  // Renormalise away rounding in the outcome probabilities.
  const double total = std::accumulate(ens.probs.begin(), ens.probs.end(), 0.0);
  for (auto& p : ens.probs) p /= total;
  return ens;
}

double dw_from_state(const Operator& rho, const std::string& key_label, const Labels& bob_side,
                     PurificationRoute route, std::size_t dense_cap) {
  return devetak_winter(ccq_from_state(rho, key_label, bob_side, route, dense_cap));
}

// -------------------------------------------------------- privacy squeezing

SqueezeCell privacy_squeeze(const Operator& rho) {
  return {trace_norm(key_block(rho, 0, 0)), trace_norm(key_block(rho, 0, 3)), trace_norm(key_block(rho, 1, 1))};
}

SqueezeCell privacy_squeeze(const HidingParams& params) {
  const auto norms = hiding_structured(params);
  return {norms.correlated, norms.coherence, norms.flipped};
}

double kd_ps_lower(const SqueezeCell& cell) {
  if (cell.a < 0.0 || cell.b < 0.0 || cell.x < 0.0) throw DomainError("kd_ps_lower: negative cell entry");
  if (std::abs(2.0 * cell.a + 2.0 * cell.x - 1.0) > kCellTolerance) {
    throw DomainError("kd_ps_lower: cell must satisfy 2a + 2x = 1");
  }
  if (cell.b > cell.a + kCellTolerance) throw DomainError("kd_ps_lower: cell must satisfy b <= a");
  const std::vector<double> dist{cell.a + cell.b, std::max(cell.a - cell.b, 0.0), cell.x, cell.x};
  return 1.0 - shannon_entropy(dist);
}

double mc_distillable(const Operator& rho) {
  if (off_structure_mass(rho) >= kStructureTolerance) {
    throw DomainError("mc_distillable: state is not maximally correlated");
  }
  return std::log2(static_cast<double>(rho.layout().dims()[0])) - von_neumann_entropy(rho);
}

}  // namespace keyrep
