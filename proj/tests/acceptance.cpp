// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Formula cross-checks use independent re-implementations below (natural-log based)
// rather than the library's entropy helpers.

#include "keyrep/bounds.hpp"
#include "keyrep/measures.hpp"
#include "keyrep/repsim.hpp"
#include "keyrep/states.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace keyrep;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double ln2() { return std::log(2.0); }
double ref_eta(double x) { return x <= 0.0 ? 0.0 : -x * std::log(x) / ln2(); }
double ref_h(double p) { return ref_eta(p) + ref_eta(1.0 - p); }
double ref_tn(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues().sum(); }

double ref_kd_lower(double d) {
  const double p = 1.0 / (std::sqrt(d) + 1.0);
  return 1.0 - 2.0 * ref_h(p);
}

double ref_repeater_upper(double d) {
  const double p = 1.0 / (std::sqrt(d) + 1.0);
  return 2.0 * p * std::log(2.0 * d) / ln2() + ref_eta(p);
}

// 1. PPT-mixture identity and PPT-ness.
void criterion_1(Outcome& o) {
  for (Index d : {4, 9, 16, 25}) {
    const Operator rho = ppt_pbit_mixture(d);
    const Operator sigma = key_attacked(rho);
    const Labels bob = bob_labels(rho.layout());
    const Operator rg = partial_transpose(rho, bob);
    const double dist = trace_norm(rg - partial_transpose(sigma, bob));
    const double p = 1.0 / (std::sqrt(static_cast<double>(d)) + 1.0);
    const double ev = min_eigenvalue(rg);
    o.detail << " d=" << d << ":|dist-p|=" << std::abs(dist - p) << ",min_eig=" << ev;
    o.require(std::abs(dist - p) <= 1e-8, "distance d=" + std::to_string(d));
    o.require(ev >= -1e-9, "PPT d=" + std::to_string(d));
  }
}

// 2. Private-bit negativity identity; SWAP shield norm 1/d.
void criterion_2(Outcome& o) {
  double worst = 0.0;
  double worst_swap = 0.0;
  for (Index d : {2, 3, 4, 5}) {
    for (bool swap : {false, true}) {
      const auto xf = swap ? swap_x(d) : fourier_x(d);
      const Operator gamma = private_bit(xf);
      const double xg = trace_norm(partial_transpose(xf.x, {kShieldB}));
      const double gg = trace_norm(partial_transpose(gamma, {kKeyB, kShieldB}));
      worst = std::max(worst, std::abs(gg - 1.0 - xg));
      if (swap) worst_swap = std::max(worst_swap, std::abs(xg - 1.0 / static_cast<double>(d)));
    }
  }
  o.detail << " max|gamma^G - 1 - X^G|=" << worst << " max|swap X^G - 1/d|=" << worst_swap;
  o.require(worst <= 1e-8, "negativity identity");
  o.require(worst_swap <= 1e-10, "swap norm");
}

// 3. Devetak-Winter rate of the PPT mixtures.
void criterion_3(Outcome& o) {
  for (Index d : {4, 9}) {
    const Operator rho = ppt_pbit_mixture(d);
    const double dw = dw_from_state(rho, kKeyA, bob_labels(rho.layout()));
    const double target = ref_kd_lower(static_cast<double>(d));
    o.detail << " d=" << d << ":dw=" << dw << ",1-2h(p)=" << target;
    o.require(dw >= target - 1e-9, "d=" + std::to_string(d));
  }
}

// 4. Gap at d = 1e4, cross-checked, and monotone over 4..1e6.
void criterion_4(Outcome& o) {
  const auto g = gap_report(1e4);
  o.detail << " kd_lower=" << g.kd_lower.value << " repeater_upper=" << g.repeater_upper.value;
  o.require(g.kd_lower.value > 0.8, "kd_lower > 0.8");
  o.require(g.repeater_upper.value < 0.35, "repeater_upper < 0.35");
  o.require(std::abs(g.kd_lower.value - ref_kd_lower(1e4)) < 1e-12, "kd_lower cross-check");
  o.require(std::abs(g.repeater_upper.value - ref_repeater_upper(1e4)) < 1e-12, "repeater_upper cross-check");
  double lower = -1e300;
  double upper = 1e300;
  for (double d = 4; d <= 1e6; d *= 2) {
    const auto r = gap_report(d);
    if (!(r.kd_lower.value > lower && r.repeater_upper.value < upper)) {
      o.detail << " non-monotone step into d=" << d << " (upper " << upper << " -> " << r.repeater_upper.value << ")";
      o.require(false, "monotone");
    }
    o.require(std::abs(r.kd_lower.value - ref_kd_lower(d)) < 1e-12 &&
                  std::abs(r.repeater_upper.value - ref_repeater_upper(d)) < 1e-12,
              "cross-check at d=" + std::to_string(d));
    lower = r.kd_lower.value;
    upper = r.repeater_upper.value;
  }
}

// 5. Hiding family: structured vs dense blocks and the PPT predicate.
void criterion_5(Outcome& o) {
  double worst = 0.0;
  int agree = 0;
  int total = 0;
  for (double p : {1.0 / 3.0, 0.4}) {
    for (int k : {1, 2}) {
      for (int m : {1, 2}) {
        const HidingParams hp(p, 2, k, m);
        const Operator dense = hiding_dense(hp);
        const auto s = hiding_structured(hp);
        worst = std::max({worst, std::abs(ref_tn(key_block(dense, 0, 0)) - s.correlated),
                          std::abs(ref_tn(key_block(dense, 1, 1)) - s.flipped),
                          std::abs(ref_tn(key_block(dense, 0, 3)) - s.coherence)});
        const bool dense_ppt = min_eigenvalue(partial_transpose(dense, bob_labels(dense.layout()))) >= -1e-9;
        const bool predicate = p <= 1.0 / 3.0 + 1e-12 && (1.0 - p) / p >= std::pow(2.0, k) - 1e-12;
        agree += dense_ppt == predicate && predicate == hp.ppt_predicate();
        ++total;
      }
    }
  }
  o.detail << " max block error=" << worst << " predicate agreement=" << agree << "/" << total;
  o.require(worst <= 1e-9, "block norms");
  o.require(agree == total && total == 8, "predicate");
}

// 6. Privacy-squeezed rate for m >= 12.
void criterion_6(Outcome& o) {
  for (int m : {12, 14, 16, 20, 24}) {
    const double v = kd_ps_lower(privacy_squeeze(rho_m(m)));
    o.detail << " m=" << m << ":" << v;
    o.require(v >= 0.9, "m=" + std::to_string(m));
  }
}

// 7. E_F bound formula.
void criterion_7(Outcome& o) {
  const auto ref = [](double m) { return 1.0 + 2.0 * m * m * (std::log(2.0 * m) / ln2()) / (std::pow(2.0, m) + 1.0); };
  const double v2 = ef_hiding_bound(2).value;
  const double v20 = ef_hiding_bound(20).value;
  o.detail << " m=2:" << v2 << " m=20:" << v20;
  o.require(std::abs(v2 - 4.2) <= 1e-12 && std::abs(v2 - ref(2)) <= 1e-12, "m=2");
  o.require(std::abs(v20 - 1.0) <= 0.01 && std::abs(v20 - ref(20)) <= 1e-12, "m=20");
}

// 8. Flower-state swap keeps the maximally correlated structure.
void criterion_8(Outcome& o) {
  Rng rng(20240607);
  const FlowerParams fp = random_flower_params(2, 2, rng);
  const PureState first = regroup(flower_vector(fp, FlowerSide::first), {{"A", "A'"}, {"C_A", "C_A'"}, {"E_A"}},
                                  {"A", "C_A", "E_A"});
  const PureState second = regroup(flower_vector(fp, FlowerSide::second),
                                   {{"C_B", "C_B'"}, {"B", "B'"}, {"E_B"}}, {"C_B", "B", "E_B"});
  const auto ens = bell_swap_pure(first, second, 4);
  double spread = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < ens.probs.size(); ++i) {
    spread = std::max(spread, std::abs(ens.probs[i] - 1.0 / 16.0));
    mass = std::max(mass, off_structure_mass(ens.states[i]));
  }
  o.detail << " outcomes=" << ens.probs.size() << " prob spread=" << spread << " off-structure=" << mass;
  o.require(spread <= 1e-9, "uniform");
  o.require(mass < 1e-9, "structure");
}

// 9. Erasure repeater.
void criterion_9(Outcome& o) {
  for (Index d : {2, 4}) {
    const double erasure = erasure_demo(d).report.value;
    const double perfect = erasure_demo(d, ShieldResource::epr).report.value;
    o.detail << " d=" << d << ":erasure=" << erasure << ",epr=" << perfect;
    o.require(erasure >= 0.5 - 1e-9, "erasure d=" + std::to_string(d));
    o.require(perfect >= 1.0 - 1e-9, "epr d=" + std::to_string(d));
  }
}

// 10. Single-copy bound consistency and its value at d = 50.
void criterion_10(Outcome& o) {
  for (double d : {7.0, 11.0, 50.0}) {
    const double a = single_copy_bound(1.0 / d, 1.0 + 1.0 / d, d).value;
    const double b = swap_pbit_bound(d).value;
    o.require(std::abs(a - b) <= 1e-12, "consistency d=" + std::to_string(static_cast<int>(d)));
  }
  const double v50 = swap_pbit_bound(50).value;
  o.detail << " bound(50)=" << v50;
  o.require(v50 < 0.5, "bound(50) < 0.5");
}

// 11. Haar trial mean.
void criterion_11(Outcome& o) {
  const auto check = haar_average_check(2, 8, 0, 0, 500, 11);
  o.detail << " |mean - I/4|=" << check.mean_deviation;
  o.require(check.mean_deviation < 0.05, "mean");
}

Operator random_constructor_state(int i, Rng& rng) {
  std::uniform_int_distribution<int> pick(2, 5);
  const Index d = pick(rng);
  switch (i % 10) {
    case 0: return private_bit(fourier_x(d));
    case 1: return private_bit(swap_x(d));
    case 2: return ppt_pbit_mixture(d);
    case 3: return werner(d, i % 20 < 10 ? WernerSector::symmetric : WernerSector::antisymmetric);
    case 4: {
      std::uniform_real_distribution<double> p(0.01, 0.49);
      return hiding_dense(HidingParams(p(rng), 2, 1 + i % 2, 1 + (i / 10) % 2));
    }
    case 5: {
      const auto fp = random_flower_params(2, 1 + i % 3, rng);
      return flower_state(fp, i % 20 < 10 ? FlowerSide::first : FlowerSide::second);
    }
    case 6: {
      std::vector<Vector> u;
      for (Index k = 0; k < d; ++k) u.push_back(haar_unitary(3, rng).col(0));
      return maximally_correlated(u);
    }
    case 7: return erasure_choi(d);
    case 8: return epr(d);
    default: return random_state(SubsystemLayout({2, d}, {"A", "B"}), rng);
  }
}

// 12. Randomised property suites, 200 cases each.
void criterion_12(Outcome& o) {
  constexpr int kCases = 200;
  Rng rng(12);
  std::uniform_int_distribution<int> dim(2, 3);
  int state_fail = 0, involution_fail = 0, purify_fail = 0, gauge_fail = 0;
  for (int i = 0; i < kCases; ++i) {
    if (!state_defects(random_constructor_state(i, rng)).ok()) ++state_fail;

    const Operator rho = random_state(SubsystemLayout({dim(rng), dim(rng), dim(rng)}, {"A", "B", "C"}), rng);
    Labels subset;
    for (const char* l : {"A", "B", "C"}) {
      if (rng() % 2) subset.emplace_back(l);
    }
    if (subset.empty()) subset.emplace_back("B");
    const Operator twice = partial_transpose(partial_transpose(rho, subset), subset);
    if ((twice.matrix() - rho.matrix()).cwiseAbs().maxCoeff() > 1e-14) ++involution_fail;

    for (const auto& psi : {purify_state(rho), purify_canonical(rho)}) {
      const Matrix back = reduce_to(psi.projector(), {"A", "B", "C"}).matrix();
      if ((back - rho.matrix()).cwiseAbs().maxCoeff() > 1e-10) ++purify_fail;
    }

    const Operator ab = random_state(SubsystemLayout({2, dim(rng)}, {"A", "B"}), rng);
    const double s = dw_from_state(ab, "A", {"B"}, PurificationRoute::spectral);
    const double c = dw_from_state(ab, "A", {"B"}, PurificationRoute::canonical);
    if (std::abs(s - c) > 1e-9) ++gauge_fail;
  }
  o.detail << " failures: states=" << state_fail << " involution=" << involution_fail
           << " purification=" << purify_fail << " dw-gauge=" << gauge_fail << " (of " << kCases << " each)";
  o.require(state_fail + involution_fail + purify_fail + gauge_fail == 0, "properties");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"1 PPT-mixture identity", criterion_1},
      {"2 private-bit negativity identity", criterion_2},
      {"3 key-rate lower bound", criterion_3},
      {"4 gap reproduction", criterion_4},
      {"5 hiding-family oracle equivalence", criterion_5},
      {"6 privacy-squeezed rate", criterion_6},
      {"7 E_F bound formula", criterion_7},
      {"8 swap structure preservation", criterion_8},
      {"9 erasure repeater demo", criterion_9},
      {"10 single-copy bound consistency", criterion_10},
      {"11 Haar sanity", criterion_11},
      {"12 property suites", criterion_12},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    o.detail.precision(6);
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += !o.pass;
    std::printf("%s criterion %s:%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
