#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical path: pseudo-inverses come from a complete orthogonal
// decomposition, eigenvalues from the general (nonsymmetric) solver, CA from
// an SVD of standardized residuals.

#include <algorithm>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace galt::support {

// Real parts of the eigenvalues of a general square matrix, descending,
// keeping those above `floor` in absolute value.
inline Eigen::VectorXd general_eigenvalues(const Eigen::MatrixXd& a, double floor = 1e-12) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  std::vector<double> values;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double v = solver.eigenvalues()(i).real();
    if (std::abs(v) > floor) values.push_back(v);
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

inline Eigen::MatrixXd pinv(const Eigen::MatrixXd& a) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  cod.setThreshold(1e-10);
  return cod.pseudoInverse();
}

// Dense eigenvalues of Z^T M Z C for Z = M0^{-1} Q C^+ under row weights m.
inline Eigen::VectorXd brute_force_spectrum(const Eigen::MatrixXd& q, const Eigen::VectorXd& standardize_weights,
                                            const Eigen::VectorXd& row_weights, const Eigen::MatrixXd& c) {
  const Eigen::MatrixXd z = standardize_weights.cwiseInverse().asDiagonal() * q * pinv(c);
  const Eigen::MatrixXd op = z.transpose() * row_weights.asDiagonal() * z * c;
  const double scale = std::max(1.0, op.cwiseAbs().maxCoeff());
  return general_eigenvalues(op, 1e-10 * scale);
}

struct ClassicalCa {
  Eigen::VectorXd eigenvalues;  // nonzero principal inertias
  Eigen::MatrixXd row_coords;   // principal coordinates
};

// Correspondence analysis of a nonnegative table via the SVD of
// D_r^{-1/2} (P - r c^T) D_c^{-1/2}.
inline ClassicalCa classical_ca(const Eigen::MatrixXd& table) {
  const Eigen::MatrixXd p = table / table.sum();
  const Eigen::VectorXd r = p.rowwise().sum();
  const Eigen::VectorXd c = p.colwise().sum().transpose();
  const Eigen::MatrixXd s = r.cwiseSqrt().cwiseInverse().asDiagonal() * (p - r * c.transpose()) *
                            c.cwiseSqrt().cwiseInverse().asDiagonal();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(s, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::Index rank = 0;
  const auto& sv = svd.singularValues();
  while (rank < sv.size() && sv(rank) > 1e-10 * std::max(1e-300, sv(0))) ++rank;
  ClassicalCa out;
  out.eigenvalues = sv.head(rank).cwiseAbs2();
  out.row_coords = r.cwiseSqrt().cwiseInverse().asDiagonal() * svd.matrixU().leftCols(rank) *
                   sv.head(rank).asDiagonal();
  return out;
}

// Columns of `b` flipped to best match the signs of `a`.
inline Eigen::MatrixXd align_signs(const Eigen::MatrixXd& a, Eigen::MatrixXd b) {
  for (Eigen::Index s = 0; s < std::min(a.cols(), b.cols()); ++s) {
    if (a.col(s).dot(b.col(s)) < 0.0) b.col(s) = -b.col(s);
  }
  return b;
}

}  // namespace galt::support
