#include "keyrep/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <numeric>

namespace keyrep {

namespace {

struct DisjointSets {
  std::vector<Index> parent;

  explicit DisjointSets(Index n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), Index{0});
  }

  Index find(Index x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

Matrix hermitian_block(const Matrix& m, const std::vector<Index>& idx) {
  const auto n = static_cast<Index>(idx.size());
  Matrix block(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      block(r, c) = 0.5 * (m(idx[r], idx[c]) + std::conj(m(idx[c], idx[r])));
    }
  }
  return block;
}

}  // namespace

std::vector<std::vector<Index>> decoupled_blocks(const Matrix& m) {
  const Index n = m.rows();
  DisjointSets sets(n);
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) {
      if (r != c && (m(r, c) != Complex{0.0, 0.0})) sets.unite(r, c);
    }
  }
  std::vector<std::vector<Index>> blocks;
  std::vector<Index> slot(static_cast<std::size_t>(n), -1);
  for (Index i = 0; i < n; ++i) {
    const Index root = sets.find(i);
    if (slot[root] < 0) {
      slot[root] = static_cast<Index>(blocks.size());
      blocks.emplace_back();
    }
    blocks[slot[root]].push_back(i);
  }
  return blocks;
}

RealVector hermitian_eigenvalues(const Matrix& m) {
  RealVector values(m.rows());
  Index filled = 0;
  for (const auto& idx : decoupled_blocks(m)) {
    if (idx.size() == 1) {
      values(filled++) = m(idx[0], idx[0]).real();
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_block(m, idx), Eigen::EigenvaluesOnly);
    values.segment(filled, solver.eigenvalues().size()) = solver.eigenvalues();
    filled += solver.eigenvalues().size();
  }
  std::sort(values.data(), values.data() + values.size());
  return values;
}

HermitianSpectrum hermitian_eigensystem(const Matrix& m) {
  const Index n = m.rows();
  RealVector values(n);
  Matrix vectors = Matrix::Zero(n, n);
  Index col = 0;
  for (const auto& idx : decoupled_blocks(m)) {
    if (idx.size() == 1) {
      values(col) = m(idx[0], idx[0]).real();
      vectors(idx[0], col) = 1.0;
      ++col;
      continue;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_block(m, idx));
    for (Index k = 0; k < solver.eigenvalues().size(); ++k, ++col) {
      values(col) = solver.eigenvalues()(k);
      for (std::size_t r = 0; r < idx.size(); ++r) {
        vectors(idx[r], col) = solver.eigenvectors()(static_cast<Index>(r), k);
      }
    }
  }
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return values(a) < values(b); });
  HermitianSpectrum out{RealVector(n), Matrix(n, n)};
  for (Index k = 0; k < n; ++k) {
    out.values(k) = values(order[k]);
    out.vectors.col(k) = vectors.col(order[k]);
  }
  return out;
}

RealVector singular_values(const Matrix& m) {
  if (m.rows() <= 16 && m.cols() <= 16) {
    return Eigen::JacobiSVD<Matrix>(m).singularValues();
  }
  return Eigen::BDCSVD<Matrix>(m).singularValues();
}

}  // namespace keyrep
