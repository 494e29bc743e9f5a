#pragma once

#include <memory>
#include <optional>

#include <Eigen/Core>

namespace galt {

// A symmetric positive semi-definite metric C together with its
// Moore-Penrose pseudo-inverse and pseudo square roots, all restricted to the
// numerical range of C.
class MetricMatrix {
 public:
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  const Eigen::MatrixXd& pseudo_inverse() const noexcept { return pinv_; }
  const Eigen::MatrixXd& sqrt() const noexcept { return sqrt_; }
  const Eigen::MatrixXd& inverse_sqrt() const noexcept { return inv_sqrt_; }
  Eigen::Index rank() const noexcept { return rank_; }
  Eigen::Index size() const noexcept { return values_.rows(); }
  double rel_tol() const noexcept { return rel_tol_; }

 private:
  friend MetricMatrix psd_pseudo_inverse(const Eigen::MatrixXd& c, double rel_tol);

  Eigen::MatrixXd values_;
  Eigen::MatrixXd pinv_;
  Eigen::MatrixXd sqrt_;
  Eigen::MatrixXd inv_sqrt_;
  Eigen::Index rank_ = 0;
  double rel_tol_ = 1e-10;
};

using MetricPtr = std::shared_ptr<const MetricMatrix>;

inline constexpr double kDefaultRelTol = 1e-10;

// Eigenvalues below rel_tol * lambda_max are treated as zero. Throws
// Error{Numerical, "NotSymmetric"} or Error{Numerical, "NotPSD"}.
MetricMatrix psd_pseudo_inverse(const Eigen::MatrixXd& c, double rel_tol = kDefaultRelTol);
MetricPtr make_metric(const Eigen::MatrixXd& c, double rel_tol = kDefaultRelTol);

// Z with its row weights (diagonal of M) and column metric C.
class StandardizedTable {
 public:
  StandardizedTable(Eigen::MatrixXd values, Eigen::VectorXd row_weights, MetricPtr metric);

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  const Eigen::VectorXd& row_weights() const noexcept { return weights_; }
  const MetricMatrix& metric() const noexcept { return *metric_; }
  const MetricPtr& metric_ptr() const noexcept { return metric_; }

  StandardizedTable with_row_weights(Eigen::VectorXd row_weights) const;

  // Z^T M Z (K x K).
  Eigen::MatrixXd cross_product() const;
  // trace(Z^T M Z C), the sum of all eigenvalues.
  double total_inertia() const;

 private:
  Eigen::MatrixXd values_;
  Eigen::VectorXd weights_;
  MetricPtr metric_;
};

// Z = M^{-1} Q C^- for a J x K aggregated table Q.
Eigen::MatrixXd double_standardize(const Eigen::MatrixXd& q, const Eigen::VectorXd& row_weights,
                                   const MetricMatrix& metric);

struct EigenBasis {
  Eigen::VectorXd eigenvalues;  // descending, strictly positive
  Eigen::MatrixXd axes;         // K x S, C-orthonormal columns
  MetricPtr metric;

  Eigen::Index size() const noexcept { return eigenvalues.size(); }
};

// Leading eigenpairs of Z^T M Z C, solved through the symmetric matrix
// C^{1/2} Z^T M Z C^{1/2}. Only eigenvalues above rel_tol * lambda_1 are
// kept, at most `max_axes` (default: rank of C). Each axis is signed so its
// largest-magnitude entry is positive.
EigenBasis generalized_pca(const StandardizedTable& z, std::optional<Eigen::Index> max_axes = std::nullopt);

// F = Z C U.
Eigen::MatrixXd row_factors(const StandardizedTable& z, const EigenBasis& basis);

// G = Z^T M F Lambda^{-1/2}. Throws Error{Numerical, "ZeroEigenvalue"}.
Eigen::MatrixXd column_factors(const StandardizedTable& z, const Eigen::MatrixXd& f,
                               const Eigen::VectorXd& eigenvalues);
Eigen::MatrixXd column_factors(const Eigen::MatrixXd& z, const Eigen::VectorXd& row_weights,
                               const Eigen::MatrixXd& f, const Eigen::VectorXd& eigenvalues);

struct RowQuality {
  Eigen::MatrixXd contributions;  // percent, columns sum to 100
  Eigen::MatrixXd cos2;
};

// contribution(j,s) = 100 m_j F_s(j)^2 / lambda_s; cos2(j,s) = F_s(j)^2 / ||z_j||_C^2.
RowQuality row_quality(const StandardizedTable& z, const Eigen::MatrixXd& f,
                       const Eigen::VectorXd& eigenvalues);

// cos2(k,s) = G_s(k)^2 / (Z^T M Z)_kk.
Eigen::MatrixXd column_cos2(const StandardizedTable& z, const Eigen::MatrixXd& g);

}  // namespace galt
