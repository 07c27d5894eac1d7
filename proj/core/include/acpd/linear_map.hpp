#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <memory>
#include <string>
#include <vector>

#include "acpd/types.hpp"

namespace acpd {

// A linear operator with forward (Ax) and adjoint (A^T y) application.
// Immutable after construction; representations are dense, sparse
// (coordinate triplets, duplicates summed), or a scalar multiple of
// another map.
class LinearMap {
 public:
  enum class Kind { Dense, Sparse, Scaled };

  static LinearMap dense(Eigen::MatrixXd m);
  static LinearMap identity(Index n);
  static LinearMap zero(Index rows, Index cols);
  // Triplets (i, j, value); duplicate entries sum.
  static LinearMap from_triplets(Index rows, Index cols,
                                 const std::vector<Eigen::Triplet<double>>& ts);
  static LinearMap scaled(double s, LinearMap inner);

  // Row-major, header-free CSV of a dense matrix.
  static LinearMap load_dense_csv(const std::string& path);
  // "i,j,value" triplet CSV; duplicates sum.
  static LinearMap load_triplet_csv(const std::string& path, Index rows,
                                    Index cols);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Kind kind() const { return kind_; }

  RealVector forward(const RealVector& x) const;
  RealVector adjoint(const RealVector& y) const;

  // True when the map equals c*I for some c; reports c.
  bool is_scaled_identity(double* scale_out = nullptr) const;

  // Dense materialization (test/reference use at desk scale).
  Eigen::MatrixXd to_dense() const;

 private:
  LinearMap() = default;

  Kind kind_ = Kind::Dense;
  Index rows_ = 0;
  Index cols_ = 0;
  Eigen::MatrixXd dense_;
  Eigen::SparseMatrix<double> sparse_;
  double scale_ = 1.0;
  std::shared_ptr<const LinearMap> inner_;
};

RealVector forward(const LinearMap& op, const RealVector& x);
RealVector adjoint(const LinearMap& op, const RealVector& y);

// Power-method estimate of the spectral norm. Test/reference oracle only:
// the solvers never call it; their stepsizes use local estimates.
// Monotone nondecreasing in iters; returns 0 for the zero operator.
double spectral_norm_reference(const LinearMap& op, int iters);

}  // namespace acpd
