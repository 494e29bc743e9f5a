#include "galt/numcore.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "galt/error.hpp"

namespace galt {

MetricMatrix psd_pseudo_inverse(const Eigen::MatrixXd& c, double rel_tol) {
  if (c.rows() != c.cols()) {
    throw Error(ErrorClass::Numerical, "DimensionMismatch", "metric must be square");
  }
  if (!(rel_tol > 0.0)) {
    throw Error(ErrorClass::Config, "InvalidTolerance", "rel_tol must be positive");
  }
  const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
  if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorClass::Numerical, "NotSymmetric", "metric matrix is not symmetric");
  }

  MetricMatrix m;
  m.values_ = 0.5 * (c + c.transpose());
  m.rel_tol_ = rel_tol;
  const auto k = c.rows();
  m.pinv_ = Eigen::MatrixXd::Zero(k, k);
  m.sqrt_ = Eigen::MatrixXd::Zero(k, k);
  m.inv_sqrt_ = Eigen::MatrixXd::Zero(k, k);
  if (k == 0) return m;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m.values_);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorClass::Numerical, "EigenFailure", "eigendecomposition of the metric failed");
  }
  const Eigen::VectorXd& values = eig.eigenvalues();
  const double top = values.cwiseAbs().maxCoeff();
  if (top == 0.0) return m;
  if (values.minCoeff() < -rel_tol * top) {
    throw Error(ErrorClass::Numerical, "NotPSD", "metric matrix has a negative eigenvalue");
  }
  const double cutoff = rel_tol * top;
  for (Eigen::Index s = 0; s < k; ++s) {
    const double lambda = values(s);
    if (lambda <= cutoff) continue;
    const Eigen::VectorXd v = eig.eigenvectors().col(s);
    const Eigen::MatrixXd vvt = v * v.transpose();
    m.pinv_ += vvt / lambda;
    m.sqrt_ += vvt * std::sqrt(lambda);
    m.inv_sqrt_ += vvt / std::sqrt(lambda);
    ++m.rank_;
  }
  return m;
}

MetricPtr make_metric(const Eigen::MatrixXd& c, double rel_tol) {
  return std::make_shared<const MetricMatrix>(psd_pseudo_inverse(c, rel_tol));
}

StandardizedTable::StandardizedTable(Eigen::MatrixXd values, Eigen::VectorXd row_weights, MetricPtr metric)
    : values_(std::move(values)), weights_(std::move(row_weights)), metric_(std::move(metric)) {
  if (!metric_) throw Error(ErrorClass::Numerical, "MissingMetric", "standardized table needs a metric");
  if (values_.rows() != weights_.size() || values_.cols() != metric_->size()) {
    throw Error(ErrorClass::Numerical, "DimensionMismatch",
                "Z, its row weights and the column metric have inconsistent shapes");
  }
  if (weights_.size() > 0 && !(weights_.minCoeff() > 0.0)) {
    throw Error(ErrorClass::Numerical, "NonPositiveWeight", "row weights must be strictly positive");
  }
}

StandardizedTable StandardizedTable::with_row_weights(Eigen::VectorXd row_weights) const {
  return StandardizedTable(values_, std::move(row_weights), metric_);
}

Eigen::MatrixXd StandardizedTable::cross_product() const {
  return values_.transpose() * weights_.asDiagonal() * values_;
}

double StandardizedTable::total_inertia() const {
  return (cross_product() * metric_->values()).trace();
}

Eigen::MatrixXd double_standardize(const Eigen::MatrixXd& q, const Eigen::VectorXd& row_weights,
                                   const MetricMatrix& metric) {
  if (q.rows() != row_weights.size() || q.cols() != metric.size()) {
    throw Error(ErrorClass::Numerical, "DimensionMismatch", "cannot standardize: shape mismatch");
  }
  return row_weights.cwiseInverse().asDiagonal() * q * metric.pseudo_inverse();
}

EigenBasis generalized_pca(const StandardizedTable& z, std::optional<Eigen::Index> max_axes) {
  const auto& metric = z.metric();
  const Eigen::Index limit = std::min(max_axes.value_or(metric.rank()), metric.rank());
  if (max_axes && *max_axes < 1) {
    throw Error(ErrorClass::Config, "InvalidAxes", "at least one axis must be requested");
  }

  Eigen::MatrixXd a = metric.sqrt() * z.cross_product() * metric.sqrt();
  a = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorClass::Numerical, "EigenFailure", "eigendecomposition failed");
  }

  // Eigen sorts ascending.
  const Eigen::Index k = a.rows();
  const double top = k > 0 ? eig.eigenvalues()(k - 1) : 0.0;
  const double cutoff = std::max(metric.rel_tol() * top, 1e-12);
  Eigen::Index kept = 0;
  while (kept < limit && kept < k && eig.eigenvalues()(k - 1 - kept) > cutoff) ++kept;

  EigenBasis basis;
  basis.metric = z.metric_ptr();
  basis.eigenvalues.resize(kept);
  basis.axes.resize(k, kept);
  for (Eigen::Index s = 0; s < kept; ++s) {
    basis.eigenvalues(s) = eig.eigenvalues()(k - 1 - s);
    Eigen::VectorXd u = metric.inverse_sqrt() * eig.eigenvectors().col(k - 1 - s);
    Eigen::Index pivot = 0;
    for (Eigen::Index i = 1; i < u.size(); ++i) {
      if (std::abs(u(i)) > std::abs(u(pivot))) pivot = i;
    }
    if (u(pivot) < 0.0) u = -u;
    basis.axes.col(s) = u;
  }
  return basis;
}

Eigen::MatrixXd row_factors(const StandardizedTable& z, const EigenBasis& basis) {
  if (basis.axes.rows() != z.values().cols()) {
    throw Error(ErrorClass::Numerical, "DimensionMismatch", "basis does not match Z");
  }
  return z.values() * (z.metric().values() * basis.axes);
}

Eigen::MatrixXd column_factors(const Eigen::MatrixXd& z, const Eigen::VectorXd& row_weights,
                               const Eigen::MatrixXd& f, const Eigen::VectorXd& eigenvalues) {
  if (z.rows() != row_weights.size() || f.rows() != z.rows() || f.cols() != eigenvalues.size()) {
    throw Error(ErrorClass::Numerical, "DimensionMismatch", "cannot apply the transition relation");
  }
  if (eigenvalues.size() > 0 && eigenvalues.minCoeff() < 1e-12) {
    throw Error(ErrorClass::Numerical, "ZeroEigenvalue", "retained eigenvalue is numerically zero");
  }
  return z.transpose() * row_weights.asDiagonal() * f * eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal();
}

Eigen::MatrixXd column_factors(const StandardizedTable& z, const Eigen::MatrixXd& f,
                               const Eigen::VectorXd& eigenvalues) {
  return column_factors(z.values(), z.row_weights(), f, eigenvalues);
}

RowQuality row_quality(const StandardizedTable& z, const Eigen::MatrixXd& f,
                       const Eigen::VectorXd& eigenvalues) {
  RowQuality q;
  const Eigen::MatrixXd f2 = f.cwiseAbs2();
  q.contributions = 100.0 * z.row_weights().asDiagonal() * f2 * eigenvalues.cwiseInverse().asDiagonal();
  const Eigen::VectorXd norms =
      (z.values() * z.metric().values()).cwiseProduct(z.values()).rowwise().sum();
  q.cos2 = Eigen::MatrixXd::Zero(f.rows(), f.cols());
  for (Eigen::Index j = 0; j < f.rows(); ++j) {
    if (norms(j) > 0.0) q.cos2.row(j) = f2.row(j) / norms(j);
  }
  return q;
}

Eigen::MatrixXd column_cos2(const StandardizedTable& z, const Eigen::MatrixXd& g) {
  const Eigen::VectorXd norms = z.cross_product().diagonal();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(g.rows(), g.cols());
  for (Eigen::Index k = 0; k < g.rows(); ++k) {
    if (norms(k) > 0.0) out.row(k) = g.row(k).cwiseAbs2() / norms(k);
  }
  return out;
}

}  // namespace galt
