#include "acpd/linear_map.hpp"

#include <cmath>
#include <charconv>
#include <fstream>
#include <sstream>

namespace acpd {

LinearMap LinearMap::dense(Eigen::MatrixXd m) {
  LinearMap lm;
  lm.kind_ = Kind::Dense;
  lm.rows_ = m.rows();
  lm.cols_ = m.cols();
  lm.dense_ = std::move(m);
  return lm;
}

LinearMap LinearMap::identity(Index n) {
  return dense(Eigen::MatrixXd::Identity(n, n));
}

LinearMap LinearMap::zero(Index rows, Index cols) {
  return dense(Eigen::MatrixXd::Zero(rows, cols));
}

LinearMap LinearMap::from_triplets(
    Index rows, Index cols, const std::vector<Eigen::Triplet<double>>& ts) {
  LinearMap lm;
  lm.kind_ = Kind::Sparse;
  lm.rows_ = rows;
  lm.cols_ = cols;
  lm.sparse_.resize(rows, cols);
  lm.sparse_.setFromTriplets(ts.begin(), ts.end());  // duplicates sum
  lm.sparse_.makeCompressed();
  return lm;
}

LinearMap LinearMap::scaled(double s, LinearMap inner) {
  LinearMap lm;
  lm.kind_ = Kind::Scaled;
  lm.rows_ = inner.rows();
  lm.cols_ = inner.cols();
  lm.scale_ = s;
  lm.inner_ = std::make_shared<const LinearMap>(std::move(inner));
  return lm;
}

namespace {

double parse_field(const std::string& s, const std::string& path) {
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && (*b == ' ' || *b == '\t')) ++b;
  double v = 0.0;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc()) {
    throw Error("failed to parse number '" + s + "' in " + path);
  }
  return v;
}

}  // namespace

LinearMap LinearMap::load_dense_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) row.push_back(parse_field(field, path));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error("ragged CSV row in " + path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("empty CSV " + path);
  Eigen::MatrixXd m(static_cast<Index>(rows.size()),
                    static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      m(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return dense(std::move(m));
}

LinearMap LinearMap::load_triplet_csv(const std::string& path, Index rows,
                                      Index cols) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<Eigen::Triplet<double>> ts;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string fi, fj, fv;
    if (!std::getline(ss, fi, ',') || !std::getline(ss, fj, ',') ||
        !std::getline(ss, fv, ',')) {
      throw Error("malformed triplet row in " + path);
    }
    const auto i = static_cast<Index>(parse_field(fi, path));
    const auto j = static_cast<Index>(parse_field(fj, path));
    if (i < 0 || i >= rows || j < 0 || j >= cols) {
      throw Error("triplet index out of range in " + path);
    }
    ts.emplace_back(static_cast<int>(i), static_cast<int>(j),
                    parse_field(fv, path));
  }
  return from_triplets(rows, cols, ts);
}

RealVector LinearMap::forward(const RealVector& x) const {
  check_dim(x.size(), cols_, "LinearMap::forward");
  switch (kind_) {
    case Kind::Dense:
      return dense_ * x;
    case Kind::Sparse:
      return sparse_ * x;
    case Kind::Scaled:
      return scale_ * inner_->forward(x);
  }
  throw Error("unreachable");
}

RealVector LinearMap::adjoint(const RealVector& y) const {
  check_dim(y.size(), rows_, "LinearMap::adjoint");
  switch (kind_) {
    case Kind::Dense:
      return dense_.transpose() * y;
    case Kind::Sparse:
      return sparse_.transpose() * y;
    case Kind::Scaled:
      return scale_ * inner_->adjoint(y);
  }
  throw Error("unreachable");
}

bool LinearMap::is_scaled_identity(double* scale_out) const {
  if (rows_ != cols_) return false;
  if (kind_ == Kind::Scaled) {
    double inner_scale = 1.0;
    if (!inner_->is_scaled_identity(&inner_scale)) return false;
    if (scale_out) *scale_out = scale_ * inner_scale;
    return true;
  }
  const Eigen::MatrixXd m = to_dense();
  const double c = m(0, 0);
  for (Index i = 0; i < rows_; ++i) {
    for (Index j = 0; j < cols_; ++j) {
      if (m(i, j) != (i == j ? c : 0.0)) return false;
    }
  }
  if (scale_out) *scale_out = c;
  return true;
}

Eigen::MatrixXd LinearMap::to_dense() const {
  switch (kind_) {
    case Kind::Dense:
      return dense_;
    case Kind::Sparse:
      return Eigen::MatrixXd(sparse_);
    case Kind::Scaled:
      return scale_ * inner_->to_dense();
  }
  throw Error("unreachable");
}

RealVector forward(const LinearMap& op, const RealVector& x) {
  return op.forward(x);
}

RealVector adjoint(const LinearMap& op, const RealVector& y) {
  return op.adjoint(y);
}

double spectral_norm_reference(const LinearMap& op, int iters) {
  if (iters < 1) throw Error("spectral_norm_reference: iters must be >= 1");
  Rng rng(0x5eedu);
  RealVector v = rng.unit_vector(op.cols());
  double sigma = 0.0;
  for (int it = 0; it < iters; ++it) {
    RealVector av = op.forward(v);
    const double n = av.norm();
    if (n == 0.0) return 0.0;
    sigma = n;
    v = op.adjoint(av);
    const double m = v.norm();
    if (m == 0.0) return sigma;
    v /= m;
  }
  return sigma;
}

}  // namespace acpd
