#pragma once

#include "keyrep/opcore.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace keyrep::testing {

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  EXPECT_EQ(a.rows(), b.rows());
  EXPECT_EQ(a.cols(), b.cols());
  if (a.rows() != b.rows() || a.cols() != b.cols()) return 1e300;
  return (a - b).cwiseAbs().maxCoeff();
}

// Reference singular values, bypassing the library's block-splitting solver.
inline double reference_trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

inline double reference_min_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline double log2_of(double x) { return std::log(x) / std::log(2.0); }

// Independent entropy helpers written against natural logs.
inline double ref_eta(double x) { return x <= 0.0 ? 0.0 : -x * log2_of(x); }
inline double ref_h(double p) { return ref_eta(p) + ref_eta(1.0 - p); }

}  // namespace keyrep::testing
