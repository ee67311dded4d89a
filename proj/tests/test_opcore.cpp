#include "keyrep/opcore.hpp"

#include <gtest/gtest.h>

#include "keyrep/spectral.hpp"
#include "test_util.hpp"

#include <numeric>
#include <unsupported/Eigen/KroneckerProduct>

using namespace keyrep;
using keyrep::testing::max_abs_diff;

namespace {

// Reference partial transpose of the second factor of a bipartite dA x dB matrix.
Matrix transpose_second(const Matrix& m, Index da, Index db) {
  Matrix out(m.rows(), m.cols());
  for (Index a = 0; a < da; ++a)
    for (Index b = 0; b < db; ++b)
      for (Index a2 = 0; a2 < da; ++a2)
        for (Index b2 = 0; b2 < db; ++b2) out(a * db + b, a2 * db + b2) = m(a * db + b2, a2 * db + b);
  return out;
}

Matrix swap_matrix(Index da, Index db) {
  Matrix f = Matrix::Zero(da * db, da * db);
  for (Index a = 0; a < da; ++a)
    for (Index b = 0; b < db; ++b) f(b * da + a, a * db + b) = 1.0;
  return f;
}

}  // namespace

TEST(SubsystemLayout, lookup) {
  SubsystemLayout l({2, 3, 4}, {"A", "B", "C"});
  ASSERT_EQ(l.total_dim(), 24);
  ASSERT_EQ(l.position("B"), 1u);
  ASSERT_EQ(l.dim_of("C"), 4);
  ASSERT_TRUE(l.contains("A"));
  ASSERT_FALSE(l.contains("D"));
  ASSERT_THROW(l.position("D"), LayoutError);
}

TEST(SubsystemLayout, rejects_bad_layouts) {
  ASSERT_THROW(SubsystemLayout({2, 2}, {"A", "A"}), LayoutError);
  ASSERT_THROW(SubsystemLayout({2}, {"A", "B"}), LayoutError);
  ASSERT_THROW(SubsystemLayout({0}, {"A"}), LayoutError);
  SubsystemLayout a({2}, {"A"});
  ASSERT_THROW(a.concat(a), LayoutError);
  ASSERT_EQ(a.concat(SubsystemLayout({3}, {"B"})).total_dim(), 6);
}

TEST(Operator, dimension_must_match_layout) {
  ASSERT_THROW(Operator(Matrix::Identity(3, 3), SubsystemLayout({2}, {"A"})), LayoutError);
  ASSERT_THROW(Operator(Matrix::Zero(2, 3), SubsystemLayout({2}, {"A"})), LayoutError);
}

TEST(DenseCap, throws_size_error) {
  ASSERT_THROW(check_dense_cap(5000, 4096, "x"), SizeError);
  ASSERT_NO_THROW(check_dense_cap(4096, 4096, "x"));
}

TEST(PartialTrace, product_state) {
  Rng rng(1);
  const Operator a = random_state(SubsystemLayout({2}, {"A"}), rng);
  const Operator b = random_state(SubsystemLayout({3}, {"B"}), rng);
  const Operator ab = tensor(a, b);
  ASSERT_LT(max_abs_diff(partial_trace(ab, {"B"}).matrix(), a.matrix()), 1e-12);
  ASSERT_LT(max_abs_diff(reduce_to(ab, {"B"}).matrix(), b.matrix()), 1e-12);
}

TEST(PartialTrace, reduce_to_respects_requested_order) {
  Rng rng(2);
  const Operator a = random_state(SubsystemLayout({2}, {"A"}), rng);
  const Operator b = random_state(SubsystemLayout({3}, {"B"}), rng);
  const Operator c = random_state(SubsystemLayout({2}, {"C"}), rng);
  const Operator abc = tensor(tensor(a, b), c);
  const Operator ca = reduce_to(abc, {"C", "A"});
  ASSERT_EQ(ca.layout().labels(), (Labels{"C", "A"}));
  ASSERT_LT(max_abs_diff(ca.matrix(), tensor(c, a).matrix()), 1e-12);
}

TEST(Permute, matches_swap_conjugation) {
  Rng rng(3);
  const Operator rho = random_state(SubsystemLayout({2, 3}, {"A", "B"}), rng);
  const Matrix f = swap_matrix(2, 3);
  const Operator swapped = permute(rho, {"B", "A"});
  ASSERT_EQ(swapped.layout().dims(), (std::vector<Index>{3, 2}));
  ASSERT_LT(max_abs_diff(swapped.matrix(), f * rho.matrix() * f.adjoint()), 1e-12);
}

TEST(Regroup, merges_adjacent_factors) {
  Rng rng(4);
  const Operator rho = random_state(SubsystemLayout({2, 3, 2}, {"A", "B", "C"}), rng);
  const Operator g = regroup(rho, {{"A", "C"}, {"B"}}, {"AC", "B"});
  ASSERT_EQ(g.layout().dims(), (std::vector<Index>{4, 3}));
  ASSERT_LT(max_abs_diff(g.matrix(), permute(rho, {"A", "C", "B"}).matrix()), 1e-15);
}

TEST(PartialTranspose, matches_reference) {
  Rng rng(5);
  const Operator rho = random_state(SubsystemLayout({3, 2}, {"A", "B"}), rng);
  ASSERT_LT(max_abs_diff(partial_transpose(rho, {"B"}).matrix(), transpose_second(rho.matrix(), 3, 2)), 1e-15);
  const Operator full = partial_transpose(rho, {"A", "B"});
  ASSERT_LT(max_abs_diff(full.matrix(), rho.matrix().transpose()), 1e-15);
}

TEST(PartialTranspose, involution_random) {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const Operator rho = random_state(SubsystemLayout({2, 3, 2}, {"A", "B", "C"}), rng);
    const Operator twice = partial_transpose(partial_transpose(rho, {"B", "C"}), {"B", "C"});
    ASSERT_LT(max_abs_diff(twice.matrix(), rho.matrix()), 1e-15);
  }
}

TEST(PartialTranspose, epr_negative_eigenvalue) {
  Matrix phi = Matrix::Zero(4, 4);
  phi(0, 0) = phi(0, 3) = phi(3, 0) = phi(3, 3) = 0.5;
  const Operator rho(phi, SubsystemLayout({2, 2}, {"A", "B"}));
  ASSERT_NEAR(min_eigenvalue(partial_transpose(rho, {"B"})), -0.5, 1e-12);
}

TEST(Spectral, trace_norm_matches_svd) {
  Rng rng(7);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 20; ++t) {
    Matrix m(6, 6);
    for (Index i = 0; i < 36; ++i) m(i) = Complex{normal(rng), normal(rng)};
    ASSERT_NEAR(trace_norm(m), keyrep::testing::reference_trace_norm(m), 1e-10);
    const Matrix h = m + m.adjoint();
    ASSERT_NEAR(trace_norm(h), keyrep::testing::reference_trace_norm(h), 1e-10);
  }
}

TEST(Spectral, decoupled_blocks_split) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 2) = m(2, 0) = 1.0;
  m(1, 1) = 2.0;
  m(3, 3) = -1.0;
  const auto blocks = decoupled_blocks(m);
  ASSERT_EQ(blocks.size(), 3u);
  const RealVector ev = hermitian_eigenvalues(m);
  ASSERT_NEAR(ev(0), -1.0, 1e-14);
  ASSERT_NEAR(ev(1), -1.0, 1e-14);
  ASSERT_NEAR(ev(2), 1.0, 1e-14);
  ASSERT_NEAR(ev(3), 2.0, 1e-14);
}

TEST(Spectral, eigensystem_reconstructs) {
  Rng rng(8);
  const Operator rho = random_state(SubsystemLayout({5}, {"A"}), rng);
  const auto spec = hermitian_eigensystem(rho.matrix());
  const Matrix back = spec.vectors * spec.values.asDiagonal() * spec.vectors.adjoint();
  ASSERT_LT(max_abs_diff(back, rho.matrix()), 1e-12);
  ASSERT_NEAR(spec.values.minCoeff(), keyrep::testing::reference_min_eigenvalue(rho.matrix()), 1e-12);
}

TEST(Entropy, scalar_functions) {
  ASSERT_DOUBLE_EQ(eta(0.0), 0.0);
  ASSERT_DOUBLE_EQ(eta(1.0), 0.0);
  ASSERT_NEAR(eta(0.5), 0.5, 1e-15);
  ASSERT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
  ASSERT_NEAR(binary_entropy(1.0 / 3.0), keyrep::testing::ref_h(1.0 / 3.0), 1e-14);
  const std::vector<double> p{0.25, 0.25, 0.25, 0.25};
  ASSERT_NEAR(shannon_entropy(p), 2.0, 1e-15);
}

TEST(Entropy, von_neumann) {
  ASSERT_NEAR(von_neumann_entropy(maximally_mixed(SubsystemLayout({8}, {"A"}))), 3.0, 1e-12);
  ASSERT_NEAR(von_neumann_entropy(basis_projector(3, 1, "A")), 0.0, 1e-12);
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  ASSERT_THROW(von_neumann_entropy(bad), DomainError);
}

TEST(RelativeEntropy, commuting_states_match_kl) {
  const SubsystemLayout l({3}, {"A"});
  Matrix r = Matrix::Zero(3, 3);
  Matrix s = Matrix::Zero(3, 3);
  const double pr[3] = {0.5, 0.3, 0.2};
  const double ps[3] = {0.2, 0.2, 0.6};
  double kl = 0.0;
  for (int i = 0; i < 3; ++i) {
    r(i, i) = pr[i];
    s(i, i) = ps[i];
    kl += pr[i] * std::log(pr[i] / ps[i]) / std::log(2.0);
  }
  const auto d = relative_entropy(Operator(r, l), Operator(s, l));
  ASSERT_TRUE(d.finite);
  ASSERT_NEAR(d.bits, kl, 1e-12);
}

TEST(RelativeEntropy, support_violation_is_infinite) {
  const auto d = relative_entropy(basis_projector(2, 0, "A"), basis_projector(2, 1, "A"));
  ASSERT_FALSE(d.finite);
  const auto same = relative_entropy(basis_projector(2, 0, "A"), basis_projector(2, 0, "A"));
  ASSERT_TRUE(same.finite);
  ASSERT_NEAR(same.bits, 0.0, 1e-12);
}

TEST(States, require_state_rejects_defects) {
  const SubsystemLayout l({2}, {"A"});
  ASSERT_THROW(require_state(Operator(Matrix::Identity(2, 2), l), "t"), DomainError);
  Matrix nh = Matrix::Identity(2, 2) / 2.0;
  nh(0, 1) = 0.1;
  ASSERT_THROW(require_state(Operator(nh, l), "t"), DomainError);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.2;
  neg(1, 1) = -0.2;
  ASSERT_THROW(require_state(Operator(neg, l), "t"), DomainError);
}

TEST(Purification, both_routes_round_trip) {
  Rng rng(9);
  for (int t = 0; t < 20; ++t) {
    const Operator rho = random_state(SubsystemLayout({2, 3}, {"A", "B"}), rng);
    for (const auto& psi : {purify_state(rho), purify_canonical(rho)}) {
      ASSERT_NEAR(psi.amplitudes.norm(), 1.0, 1e-12);
      ASSERT_LT(max_abs_diff(reduce_to(psi.projector(), {"A", "B"}).matrix(), rho.matrix()), 1e-12);
    }
  }
}

TEST(Purification, spectral_route_uses_rank) {
  const auto psi = purify_state(basis_projector(4, 2, "A"));
  ASSERT_EQ(psi.layout.dim_of("E"), 1);
}

TEST(Random, haar_unitary_is_unitary_and_seeded) {
  Rng a(11);
  Rng b(11);
  const Matrix u = haar_unitary(4, a);
  ASSERT_LT(max_abs_diff(u * u.adjoint(), Matrix::Identity(4, 4)), 1e-12);
  ASSERT_EQ(max_abs_diff(u, haar_unitary(4, b)), 0.0);
}

TEST(Random, derive_seed_distinct) {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t c = 0; c < 100; ++c) seeds.push_back(derive_seed(5, c));
  std::sort(seeds.begin(), seeds.end());
  ASSERT_EQ(std::adjacent_find(seeds.begin(), seeds.end()), seeds.end());
  ASSERT_EQ(derive_seed(5, 3), derive_seed(5, 3));
}
