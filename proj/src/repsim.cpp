#include "keyrep/repsim.hpp"

#include "keyrep/spectral.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace keyrep {

namespace {

Complex omega_power(Index d, Index k) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k % d) / static_cast<double>(d));
}

void require_bipartite(const Operator& op, const std::string& what) {
  if (op.layout().size() != 2) throw LayoutError(what + ": expected a two-factor operator");
}

Operator normalised_or_mixed(Matrix m, double prob, SubsystemLayout layout) {
  if (prob > 1e-15) return {m / prob, std::move(layout)};
  return maximally_mixed(layout);
}

// Correction U^{nu mu} padded with identity on levels >= d.
Matrix padded_correction(Index d, Index out_dim, int nu, int mu) {
  Matrix u = Matrix::Identity(out_dim, out_dim);
  u.topLeftCorner(d, d) = bell_correction(d, nu, mu);
  return u;
}

}  // namespace

Operator MeasurementEnsemble::average() const {
  if (states.empty()) throw DomainError("empty measurement ensemble");
  Matrix acc = Matrix::Zero(states.front().dim(), states.front().dim());
  for (std::size_t i = 0; i < states.size(); ++i) acc += probs[i] * states[i].matrix();
  return {std::move(acc), states.front().layout()};
}

Vector bell_vector(Index d, int nu, int mu) {
  Vector v = Vector::Zero(d * d);
  for (Index j = 0; j < d; ++j) v(j * d + (j + mu) % d) = omega_power(d, j * nu) / std::sqrt(static_cast<double>(d));
  return v;
}

Matrix bell_correction(Index d, int nu, int mu) {
  Matrix u = Matrix::Zero(d, d);
  for (Index j = 0; j < d; ++j) u(j, (j + mu) % d) = omega_power(d, j * nu);
  return u;
}

MeasurementEnsemble bell_swap(const Operator& rho_ac, const Operator& rho_cb, Index d, std::size_t dense_cap) {
  require_bipartite(rho_ac, "bell_swap");
  require_bipartite(rho_cb, "bell_swap");
  const Index a = rho_ac.layout().dims()[0];
  const Index b = rho_cb.layout().dims()[1];
  if (rho_ac.layout().dims()[1] != d || rho_cb.layout().dims()[0] != d || b != d) {
    throw LayoutError("bell_swap: Charlie's factors and Bob's output must have dimension d");
  }
  check_dense_cap(static_cast<std::size_t>(rho_ac.dim() * rho_cb.dim()), dense_cap, "bell_swap");
  const Matrix joint = Eigen::kroneckerProduct(rho_ac.matrix(), rho_cb.matrix());
  const SubsystemLayout out_layout({a, b}, {rho_ac.layout().labels()[0], rho_cb.layout().labels()[1]});
  const Matrix id_a = Matrix::Identity(a, a);

  MeasurementEnsemble ens;
  for (int nu = 0; nu < d; ++nu) {
    for (int mu = 0; mu < d; ++mu) {
      const Matrix bell_bra = bell_vector(d, nu, mu).adjoint();
      const Matrix inner = Eigen::kroneckerProduct(bell_bra, bell_correction(d, nu, mu));
      const Matrix kraus = Eigen::kroneckerProduct(id_a, inner);
      Matrix out = kraus * joint * kraus.adjoint();
      const double prob = out.trace().real();
      ens.outcomes.emplace_back(nu, mu);
      ens.probs.push_back(prob);
      ens.states.push_back(normalised_or_mixed(std::move(out), prob, out_layout));
    }
  }
  return ens;
}

MeasurementEnsemble bell_swap_pure(const PureState& psi_ac, const PureState& psi_cb, Index d,
                                   std::size_t dense_cap) {
  if (psi_ac.layout.size() != 3 || psi_cb.layout.size() != 3) {
    throw LayoutError("bell_swap_pure: expected (A, C_A, E_1) and (C_B, B, E_2) layouts");
  }
  const Index a = psi_ac.layout.dims()[0];
  const Index e1 = psi_ac.layout.dims()[2];
  const Index b = psi_cb.layout.dims()[1];
  const Index e2 = psi_cb.layout.dims()[2];
  if (psi_ac.layout.dims()[1] != d || psi_cb.layout.dims()[0] != d || b != d) {
    throw LayoutError("bell_swap_pure: Charlie's factors and Bob's output must have dimension d");
  }
  const Index out_dim = a * b * e1 * e2;
  check_dense_cap(static_cast<std::size_t>(out_dim), dense_cap, "bell_swap_pure");
  const auto amp1 = [&](Index ia, Index j, Index ie) { return psi_ac.amplitudes((ia * d + j) * e1 + ie); };
  const auto amp2 = [&](Index k, Index ib, Index ie) { return psi_cb.amplitudes((k * b + ib) * e2 + ie); };
  const SubsystemLayout full({a, b, e1, e2}, {psi_ac.layout.labels()[0], psi_cb.layout.labels()[1], "__e1", "__e2"});
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));

  MeasurementEnsemble ens;
  for (int nu = 0; nu < d; ++nu) {
    for (int mu = 0; mu < d; ++mu) {
      // Projected amplitudes on (A, B, E_1, E_2) before and after Bob's correction.
      Vector projected = Vector::Zero(out_dim);
      for (Index ia = 0; ia < a; ++ia) {
        for (Index ib = 0; ib < b; ++ib) {
          for (Index i1 = 0; i1 < e1; ++i1) {
            for (Index i2 = 0; i2 < e2; ++i2) {
              Complex acc{0.0, 0.0};
              for (Index j = 0; j < d; ++j) {
                acc += std::conj(omega_power(d, j * nu)) * amp1(ia, j, i1) * amp2((j + mu) % d, ib, i2);
              }
              projected(((ia * b + ib) * e1 + i1) * e2 + i2) = norm * acc;
            }
          }
        }
      }
      const Matrix u = bell_correction(d, nu, mu);
      Vector corrected = Vector::Zero(out_dim);
      for (Index ia = 0; ia < a; ++ia) {
        for (Index ib = 0; ib < b; ++ib) {
          for (Index ib2 = 0; ib2 < b; ++ib2) {
            const Complex coeff = u(ib, ib2);
            if (coeff == Complex{0.0, 0.0}) continue;
            for (Index ie = 0; ie < e1 * e2; ++ie) {
              corrected((ia * b + ib) * e1 * e2 + ie) += coeff * projected((ia * b + ib2) * e1 * e2 + ie);
            }
          }
        }
      }
      const double prob = corrected.squaredNorm();
      const Operator reduced = reduce_to(Operator(corrected * corrected.adjoint(), full),
                                         {full.labels()[0], full.labels()[1]});
      ens.outcomes.emplace_back(nu, mu);
      ens.probs.push_back(prob);
      ens.states.push_back(normalised_or_mixed(reduced.matrix(), prob, reduced.layout()));
    }
  }
  return ens;
}

Operator teleport_through(const Operator& resource, const Operator& joint, const std::string& send_label) {
  require_bipartite(resource, "teleport_through");
  const Index d = resource.layout().dims()[0];
  const Index out_dim = resource.layout().dims()[1];
  const std::string& out_label = resource.layout().labels()[1];
  if (joint.layout().dim_of(send_label) != d) {
    throw LayoutError("teleport_through: sent factor dimension differs from the resource input");
  }
  if (out_dim < d) throw LayoutError("teleport_through: resource output smaller than its input");

  // Transfer tensor: channel[a][b] is the image of |a><b| on the sent factor.
  std::vector<std::vector<Matrix>> channel(static_cast<std::size_t>(d), std::vector<Matrix>(static_cast<std::size_t>(d)));
  std::vector<Matrix> kraus;
  for (int nu = 0; nu < d; ++nu) {
    for (int mu = 0; mu < d; ++mu) {
      const Matrix bell_bra = bell_vector(d, nu, mu).adjoint();
      kraus.push_back(Eigen::kroneckerProduct(bell_bra, padded_correction(d, out_dim, nu, mu)));
    }
  }
  for (Index ia = 0; ia < d; ++ia) {
    for (Index ib = 0; ib < d; ++ib) {
      Matrix unit = Matrix::Zero(d, d);
      unit(ia, ib) = 1.0;
      const Matrix input = Eigen::kroneckerProduct(unit, resource.matrix());
      Matrix image = Matrix::Zero(out_dim, out_dim);
      for (const auto& k : kraus) image += k * input * k.adjoint();
      channel[ia][ib] = std::move(image);
    }
  }

  Labels rest;
  for (const auto& l : joint.layout().labels()) {
    if (l != send_label) rest.push_back(l);
  }
  Labels order = rest;
  order.push_back(send_label);
  const Operator moved = permute(joint, order);
  const Index nr = moved.dim() / d;
  Matrix out = Matrix::Zero(nr * out_dim, nr * out_dim);
  for (Index r = 0; r < nr; ++r) {
    for (Index c = 0; c < nr; ++c) {
      for (Index ia = 0; ia < d; ++ia) {
        for (Index ib = 0; ib < d; ++ib) {
          const Complex coeff = moved.matrix()(r * d + ia, c * d + ib);
          if (coeff == Complex{0.0, 0.0}) continue;
          out.block(r * out_dim, c * out_dim, out_dim, out_dim) += coeff * channel[ia][ib];
        }
      }
    }
  }

  std::vector<Index> dims;
  for (const auto& l : rest) dims.push_back(joint.layout().dim_of(l));
  dims.push_back(out_dim);
  Labels labels = rest;
  labels.push_back(out_label);
  Operator teleported(std::move(out), SubsystemLayout(std::move(dims), labels));

  Labels final_order = joint.layout().labels();
  std::replace(final_order.begin(), final_order.end(), send_label, out_label);
  return permute(teleported, final_order);
}

ErasureDemo erasure_demo(Index shield_d, ShieldResource resource, PurificationRoute route, std::size_t dense_cap) {
  if (shield_d < 2) throw DomainError("erasure_demo: shield dimension must be at least 2");
  const Index out_shield = resource == ShieldResource::erasure ? shield_d + 1 : shield_d;
  check_dense_cap(static_cast<std::size_t>(4 * shield_d * out_shield), dense_cap, "erasure_demo");

  const Operator gamma = relabel(private_bit(fourier_x(shield_d)), {"A", "C_A", "A'", "C_A'"});
  const Operator key_moved = teleport_through(epr(2, {"C_B", "B"}), gamma, "C_A");
  const Operator shield_resource =
      resource == ShieldResource::erasure ? erasure_choi(shield_d, {"C_B'", "B'"}) : epr(shield_d, {"C_B'", "B'"});
  Operator output = teleport_through(shield_resource, key_moved, "C_A'");

  const double rate = dw_from_state(output, kKeyA, {kKeyB}, route, dense_cap);
  BoundReport report{"erasure_demo",
                     {{"shield_d", static_cast<double>(shield_d)},
                      {"erasure_resource", resource == ShieldResource::erasure ? 1.0 : 0.0}},
                     rate,
                     Direction::lower,
                     true,
                     "I(X:B) - I(X:E)"};
  return {std::move(output), std::move(report)};
}

Matrix haar_average_operator(const std::vector<Matrix>& u_list, const std::vector<Matrix>& v_list, int alpha,
                             int beta) {
  if (u_list.empty() || u_list.size() != v_list.size()) throw DomainError("haar_average_operator: list mismatch");
  const auto n = static_cast<Index>(u_list.size());
  const Index d = u_list.front().rows();
  Matrix acc = Matrix::Zero(d * d, d * d);
  for (Index j = 0; j < n; ++j) {
    const Matrix& u = u_list[j];
    const Matrix& v = v_list[((j + alpha) % n + n) % n];
    for (Index i = 0; i < d; ++i) {
      const Vector left = u.col(i);
      const Vector right = v.col(((i + beta) % d + d) % d);
      const Vector prod = Eigen::kroneckerProduct(left, right);
      acc += prod * prod.adjoint();
    }
  }
  return acc / static_cast<double>(d * n);
}

double HaarCheck::median_deviation() const {
  if (deviations.empty()) return 0.0;
  auto sorted = deviations;
  std::sort(sorted.begin(), sorted.end());
  const auto mid = sorted.size() / 2;
  return sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

HaarCheck haar_average_check(Index d, Index n, int alpha, int beta, int trials, std::uint64_t seed) {
  if (d < 1 || n < 1 || trials < 1) throw DomainError("haar_average_check: d, n and trials must be positive");
  const double dd = static_cast<double>(d * d);
  HaarCheck out;
  out.mean_operator = Matrix::Zero(d * d, d * d);
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
    std::vector<Matrix> u_list;
    std::vector<Matrix> v_list;
    for (Index j = 0; j < n; ++j) u_list.push_back(haar_unitary(d, rng));
    for (Index j = 0; j < n; ++j) v_list.push_back(haar_unitary(d, rng));
    const Matrix op = haar_average_operator(u_list, v_list, alpha, beta);
    const RealVector ev = hermitian_eigenvalues(op);
    out.min_eigenvalues.push_back(ev.minCoeff());
    out.max_eigenvalues.push_back(ev.maxCoeff());
    out.deviations.push_back((ev * dd - RealVector::Ones(ev.size())).cwiseAbs().maxCoeff());
    out.mean_operator += op;
  }
  out.mean_operator /= static_cast<double>(trials);
  const Matrix diff = out.mean_operator - Matrix::Identity(d * d, d * d) / dd;
  out.mean_deviation = operator_norm_hermitian(diff);
  return out;
}

}  // namespace keyrep
