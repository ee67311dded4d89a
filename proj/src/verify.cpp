#include "keyrep/verify.hpp"

#include "keyrep/bounds.hpp"
#include "keyrep/measures.hpp"
#include "keyrep/repsim.hpp"
#include "keyrep/spectral.hpp"
#include "keyrep/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace keyrep {

namespace {

std::string tag(const std::string& base, const std::string& key, double v) {
  return base + " " + key + "=" + format_double(v);
}

void private_bit_checks(const std::string& family, const XFormPrivateBit& xf, std::vector<Check>& out) {
  const double d = static_cast<double>(xf.shield_dim);
  const Operator gamma = private_bit(xf);
  const double xg = trace_norm(partial_transpose(xf.x, {kShieldB}));
  const double gg = trace_norm(partial_transpose(gamma, bob_labels(gamma.layout())));
  const auto defects = state_defects(gamma);
  out.push_back(check_at_most(tag(family + " state defect", "d", d),
                              std::max({defects.hermitian_error, defects.trace_error, -defects.min_eigenvalue}),
                              tol::kPsd));
  out.push_back(check_at_most(tag(family + " |gamma^G|-1-|X^G|", "d", d), std::abs(gg - 1.0 - xg), 1e-8));
  const auto dist = key_distribution(gamma);
  const double key_err =
      std::abs(dist[0] - 0.5) + std::abs(dist[1]) + std::abs(dist[2]) + std::abs(dist[3] - 0.5);
  out.push_back(check_at_most(tag(family + " key distribution error", "d", d), key_err, 1e-10));
  const double expected = family == "swap" ? 1.0 / d : 1.0 / std::sqrt(d);
  out.push_back(check_at_most(tag(family + " |X^G| - closed form", "d", d), std::abs(xg - expected), 1e-10));
}

std::vector<Check> suite_pbit(const VerifyOptions& o) {
  if (o.max_d < 2) throw DomainError("pbit suite needs max-d >= 2");
  std::vector<Check> out;
  for (Index d = 2; d <= o.max_d; ++d) {
    check_dense_cap(static_cast<std::size_t>(4 * d * d), o.dense_cap, "pbit suite");
    private_bit_checks("fourier", fourier_x(d), out);
    private_bit_checks("swap", swap_x(d), out);
  }
  return out;
}

std::vector<Check> suite_ppt_mixture(const VerifyOptions& o) {
  std::vector<Check> out;
  for (Index s = 2; s * s <= o.max_d; ++s) {
    const Index d = s * s;
    check_dense_cap(static_cast<std::size_t>(4 * d * d), o.dense_cap, "ppt-mixture suite");
    const double dd = static_cast<double>(d);
    const double p = ppt_mixture_weight(d);
    const Operator rho = ppt_pbit_mixture(d);
    const Operator sigma = key_attacked(rho);
    const Labels bob = bob_labels(rho.layout());
    const Operator rho_g = partial_transpose(rho, bob);
    out.push_back(check_at_least(tag("min eig rho^G", "d", dd), min_eigenvalue(rho_g), -tol::kPsd));
    const double dist = trace_norm(rho_g - partial_transpose(sigma, bob));
    out.push_back(check_at_most(tag("|rho^G - sigma^G| - p", "d", dd), std::abs(dist - p), 1e-8));
    const double dw = dw_from_state(rho, kKeyA, bob, PurificationRoute::spectral, o.dense_cap);
    out.push_back(check_at_least(tag("DW - (1 - 2h(p))", "d", dd), dw - (1.0 - 2.0 * binary_entropy(p)), -1e-9));
  }
  if (out.empty()) throw DomainError("ppt-mixture suite needs max-d >= 4");
  return out;
}

std::vector<Check> suite_hiding(const VerifyOptions& o) {
  std::vector<Check> out;
  for (double p : {1.0 / 3.0, 0.4}) {
    for (int k : {1, 2}) {
      for (int m : {1, 2}) {
        const HidingParams hp(p, 2, k, m);
        const std::string name = "p=" + format_double(p) + " k=" + std::to_string(k) + " m=" + std::to_string(m);
        const Operator dense = hiding_dense(hp, o.dense_cap);
        const auto s = hiding_structured(hp);
        const double err = std::max({std::abs(trace_norm(key_block(dense, 0, 0)) - s.correlated),
                                     std::abs(trace_norm(key_block(dense, 1, 1)) - s.flipped),
                                     std::abs(trace_norm(key_block(dense, 0, 3)) - s.coherence)});
        out.push_back(check_at_most("block norms " + name, err, 1e-9));
        const double min_ev = min_eigenvalue(partial_transpose(dense, bob_labels(dense.layout())));
        const bool dense_ppt = min_ev >= -tol::kPsd;
        out.push_back(check_at_least("PPT predicate agreement " + name, dense_ppt == hp.ppt_predicate() ? 1.0 : 0.0,
                                     1.0));
      }
    }
  }
  for (int m : {12, 16, 20}) {
    const double rate = kd_ps_lower(privacy_squeeze(rho_m(m)));
    out.push_back(check_at_least("kd_ps_lower m=" + std::to_string(m), rate, 0.9));
  }
  out.push_back(check_at_most("ef_hiding_bound(2) - 4.2", std::abs(ef_hiding_bound(2).value - 4.2), 1e-12));
  out.push_back(check_at_most("ef_hiding_bound(20) - 1", std::abs(ef_hiding_bound(20).value - 1.0), 0.01));
  return out;
}

std::vector<Check> suite_swap(const VerifyOptions& o) {
  std::vector<Check> out;
  Rng rng(o.seed);
  const FlowerParams fp = random_flower_params(2, 2, rng);
  const PureState first = regroup(flower_vector(fp, FlowerSide::first), {{"A", "A'"}, {"C_A", "C_A'"}, {"E_A"}},
                                  {"A", "C_A", "E_A"});
  const PureState second = regroup(flower_vector(fp, FlowerSide::second),
                                   {{"C_B", "C_B'"}, {"B", "B'"}, {"E_B"}}, {"C_B", "B", "E_B"});
  const Index swap_d = fp.d * fp.n;
  const auto ens = bell_swap_pure(first, second, swap_d, o.dense_cap);
  const double uniform = 1.0 / static_cast<double>(swap_d * swap_d);
  double prob_err = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < ens.probs.size(); ++i) {
    prob_err = std::max(prob_err, std::abs(ens.probs[i] - uniform));
    mass = std::max(mass, off_structure_mass(ens.states[i]));
  }
  out.push_back(check_at_most("flower swap probability spread", prob_err, 1e-9));
  out.push_back(check_at_most("flower swap off-structure mass", mass, 1e-9));

  const auto mixed = bell_swap(reduce_to(first.projector(), {"A", "C_A"}), reduce_to(second.projector(), {"C_B", "B"}),
                               swap_d, o.dense_cap);
  double route_err = 0.0;
  for (std::size_t i = 0; i < mixed.probs.size(); ++i) {
    route_err = std::max(route_err, std::abs(mixed.probs[i] - ens.probs[i]));
    route_err = std::max(route_err, (mixed.states[i].matrix() - ens.states[i].matrix()).cwiseAbs().maxCoeff());
  }
  out.push_back(check_at_most("pure and mixed swap routes agree", route_err, 1e-9));
  return out;
}

std::vector<Check> suite_erasure(const VerifyOptions& o) {
  std::vector<Check> out;
  const double d = static_cast<double>(o.shield_d);
  const auto erasure = erasure_demo(o.shield_d, ShieldResource::erasure, PurificationRoute::spectral, o.dense_cap);
  out.push_back(check_at_least(tag("erasure DW", "shield_d", d), erasure.report.value, 0.5 - 1e-9));
  const auto canonical = erasure_demo(o.shield_d, ShieldResource::erasure, PurificationRoute::canonical, o.dense_cap);
  out.push_back(check_at_most(tag("purification gauge difference", "shield_d", d),
                              std::abs(canonical.report.value - erasure.report.value), 1e-9));
  const auto perfect = erasure_demo(o.shield_d, ShieldResource::epr, PurificationRoute::spectral, o.dense_cap);
  out.push_back(check_at_least(tag("EPR resource DW", "shield_d", d), perfect.report.value, 1.0 - 1e-9));
  return out;
}

std::vector<Check> suite_haar(const VerifyOptions& o) {
  std::vector<Check> out;
  const auto mean = haar_average_check(2, 8, 0, 0, 500, o.seed);
  out.push_back(check_at_most("trial mean |M - I/4| d=2 n=8", mean.mean_deviation, 0.05));

  const std::vector<Matrix> ident{Matrix::Identity(2, 2)};
  const RealVector ev = hermitian_eigenvalues(haar_average_operator(ident, ident, 0, 1));
  out.push_back(check_at_most("fixed identity lists spectrum {0, 1/2}",
                              std::abs(ev.minCoeff()) + std::abs(ev.maxCoeff() - 0.5), 1e-12));

  double previous = std::numeric_limits<double>::infinity();
  for (Index n : {4, 16, 64}) {
    const double median = haar_average_check(2, n, 0, 0, 20, o.seed).median_deviation();
    out.push_back(check_at_most("median deviation n=" + std::to_string(n) + " below previous", median, previous));
    previous = median;
  }
  return out;
}

}  // namespace

Check check_at_most(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, "<=", value <= threshold};
}

Check check_at_least(std::string name, double value, double threshold) {
  return {std::move(name), value, threshold, ">=", value >= threshold};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"pbit", "ppt-mixture", "hiding", "swap", "erasure", "haar"};
  return names;
}

std::vector<Check> run_suite(const std::string& suite, const VerifyOptions& options) {
  if (suite == "pbit") return suite_pbit(options);
  if (suite == "ppt-mixture") return suite_ppt_mixture(options);
  if (suite == "hiding") return suite_hiding(options);
  if (suite == "swap") return suite_swap(options);
  if (suite == "erasure") return suite_erasure(options);
  if (suite == "haar") return suite_haar(options);
  throw DomainError("unknown suite: " + suite);
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Table checks_table(const std::string& suite, const std::vector<Check>& checks) {
  Table t;
  t.command = "verify " + suite;
  t.columns = {"check", "value", "relation", "threshold", "pass"};
  for (const auto& c : checks) t.add_row({c.name, c.value, c.relation, c.threshold, c.pass});
  return t;
}

}  // namespace keyrep
