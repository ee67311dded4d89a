#include "keyrep/bounds.hpp"

#include "keyrep/measures.hpp"

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <limits>
#include <numbers>

namespace keyrep {

std::string to_string(Direction d) { return d == Direction::upper ? "upper" : "lower"; }

double BoundReport::input(const std::string& key) const {
  for (const auto& [k, v] : inputs) {
    if (k == key) return v;
  }
  throw DomainError("report " + name + " has no input " + key);
}

GapReport gap_report(double d) {
  if (!(d >= 2.0)) throw DomainError("gap_report: d must be at least 2");
  const double p = 1.0 / (std::sqrt(d) + 1.0);
  GapReport out;
  out.p = p;
  out.kd_lower = {"kd_lower", {{"d", d}, {"p", p}}, 1.0 - 2.0 * binary_entropy(p), Direction::lower, true,
                  "1 - 2 h(p)"};
  out.repeater_upper = {"repeater_upper", {{"d", d}, {"p", p}}, 2.0 * p * std::log2(2.0 * d) + eta(p),
                        Direction::upper, true, "2 p log2(2 d) + eta(p)"};
  return out;
}

BoundReport single_copy_bound(double epsilon, double mu, double d) {
  if (epsilon < 0.0 || mu < 0.0 || d < 1.0) throw DomainError("single_copy_bound: negative input");
  const double eps_prime = epsilon * (mu + 1.0);
  BoundReport r{"single_copy_bound",
                {{"epsilon", epsilon}, {"mu", mu}, {"d", d}, {"epsilon_prime", eps_prime}},
                0.0,
                Direction::upper,
                eps_prime <= 1.0 / 3.0,
                "4 (1 + log2 d) eps' + 2 eta(eps'), eps' = eps (mu + 1) <= 1/3"};
  if (r.applicable) r.value = 4.0 * (1.0 + std::log2(d)) * eps_prime + 2.0 * eta(eps_prime);
  else r.value = std::numeric_limits<double>::quiet_NaN();
  return r;
}

BoundReport swap_pbit_bound(double d) {
  if (d < 2.0) throw DomainError("swap_pbit_bound: d must be at least 2");
  const double eps_prime = (2.0 * d + 1.0) / (d * d);
  BoundReport r{"swap_pbit_bound",
                {{"d", d}, {"epsilon_prime", eps_prime}},
                4.0 * (2.0 * d + 1.0) * (std::log2(d) + 1.0) / (d * d) + 2.0 * eta(std::min(eps_prime, 1.0)),
                Direction::upper,
                d >= 7.0,
                "4 (2d + 1)(log2 d + 1)/d^2 + 2 eta((2d + 1)/d^2), d >= 7"};
  if (!r.applicable) r.value = std::numeric_limits<double>::quiet_NaN();
  return r;
}

BoundReport ed_ec_bound(double ed, double ec) {
  if (ed < 0.0 || ec < 0.0) throw DomainError("ed_ec_bound: measure values must be nonnegative");
  return {"ed_ec_bound", {{"ed", ed}, {"ec", ec}}, 0.5 * ed + 0.5 * ec, Direction::upper, true,
          "E_D(rho~)/2 + E_C(rho)/2"};
}

BoundReport ef_hiding_bound(int m) {
  if (m < 2) throw DomainError("ef_hiding_bound: m must be at least 2");
  const double mm = static_cast<double>(m);
  const double value = 1.0 + 2.0 * mm * mm * std::log2(2.0 * mm) / (std::pow(2.0, mm) + 1.0);
  return {"ef_hiding_bound", {{"m", mm}}, value, Direction::upper, true, "1 + 2 m^2 log2(2m) / (2^m + 1)"};
}

double proximity_delta(double epsilon) {
  if (epsilon < 0.0) throw DomainError("proximity_delta: epsilon must be nonnegative");
  const double s = 2.0 * std::sqrt(2.0 * epsilon);
  return 2.0 * std::sqrt(2.0 * s + eta(s)) + s;
}

double proximity_epsilon_limit() { return 1.0 / (8.0 * std::numbers::e * std::numbers::e); }

PbitProximity pbit_proximity(int m) {
  if (m < 2) throw DomainError("pbit_proximity: m must be at least 2");
  const double p = 1.0 / 3.0;
  const double k = m;
  const double mm = m;
  PbitProximity out;
  out.a0011 = 0.5 * std::pow(1.0 - std::pow(2.0, -k), mm) / (1.0 + std::pow((1.0 - 2.0 * p) / (2.0 * p), mm));
  out.epsilon_raw = 0.5 - out.a0011;
  out.epsilon = (4.0 / 3.0) * out.epsilon_raw;
  out.delta = proximity_delta(out.epsilon);
  out.hypothesis = out.epsilon > 0.0 && out.epsilon < proximity_epsilon_limit() && out.a0011 > 0.5 - out.epsilon;
  return out;
}

TwistedPbit twisted_pbit(const Operator& rho, std::size_t dense_cap) {
  check_dense_cap(static_cast<std::size_t>(rho.dim()), dense_cap, "twisted_pbit");
  require_state(rho, "twisted_pbit");
  const Matrix a0011 = key_block(rho, 0, 3);
  const Index s = a0011.rows();
  Eigen::JacobiSVD<Matrix> svd(a0011, Eigen::ComputeFullU | Eigen::ComputeFullV);

  Matrix twist = Matrix::Identity(4 * s, 4 * s);
  twist.block(0, 0, s, s) = svd.matrixU().adjoint();
  twist.block(3 * s, 3 * s, s, s) = svd.matrixV().adjoint();

  const Operator twisted(twist * rho.matrix() * twist.adjoint(), rho.layout());
  const Labels key{kKeyA, kKeyB};
  const Matrix shield = partial_trace(twisted, key).matrix();

  Matrix phi_plus = Matrix::Zero(4, 4);
  phi_plus(0, 0) = phi_plus(0, 3) = phi_plus(3, 0) = phi_plus(3, 3) = 0.5;
  Matrix untwisted = Eigen::kroneckerProduct(phi_plus, shield);
  Matrix gamma = twist.adjoint() * untwisted * twist;
  Operator g(std::move(gamma), rho.layout());
  const double distance = trace_distance(g, rho);
  return {std::move(g), std::move(twist), distance};
}

TwistedPbit gamma_m_construct(const HidingParams& params, std::size_t dense_cap) {
  return twisted_pbit(hiding_dense(params, dense_cap), dense_cap);
}

BoundReport en_shield_lower(const XFormPrivateBit& x) {
  const double xg = trace_norm(partial_transpose(x.x, {kShieldB}));
  const double en = std::log2(1.0 + xg);
  return {"en_shield_lower",
          {{"shield_dim", static_cast<double>(x.shield_dim)}, {"x_gamma_norm", xg}, {"log_negativity", en}},
          1.0 / xg,
          Direction::lower,
          true,
          "d >= 1/||X^Gamma||_1"};
}

}  // namespace keyrep
