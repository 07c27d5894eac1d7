#include "acpd/box_set.hpp"

#include <algorithm>
#include <cmath>

namespace acpd {

BoxSet BoxSet::free(Index n) {
  BoxSet b;
  b.lower_ = RealVector::Constant(n, -kInf);
  b.upper_ = RealVector::Constant(n, kInf);
  return b;
}

BoxSet BoxSet::bounds(RealVector lower, RealVector upper) {
  check_dim(upper.size(), lower.size(), "BoxSet::bounds");
  for (Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) throw Error("BoxSet: lower > upper");
  }
  BoxSet b;
  b.lower_ = std::move(lower);
  b.upper_ = std::move(upper);
  return b;
}

BoxSet BoxSet::centered(Index n, double half_width) {
  return bounds(RealVector::Constant(n, -half_width),
                RealVector::Constant(n, half_width));
}

bool BoxSet::is_bounded() const {
  for (Index i = 0; i < dim(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) return false;
  }
  return true;
}

double BoxSet::diameter() const {
  if (!is_bounded()) return kInf;
  return (upper_ - lower_).norm();
}

double BoxSet::max_distance_from(const RealVector& p) const {
  check_dim(p.size(), dim(), "BoxSet::max_distance_from");
  double s = 0.0;
  for (Index i = 0; i < dim(); ++i) {
    const double d = std::max(upper_[i] - p[i], p[i] - lower_[i]);
    if (!std::isfinite(d)) return kInf;
    s += d * d;
  }
  return std::sqrt(s);
}

RealVector BoxSet::clamp(RealVector v) const {
  check_dim(v.size(), dim(), "BoxSet::clamp");
  for (Index i = 0; i < dim(); ++i) {
    v[i] = std::min(std::max(v[i], lower_[i]), upper_[i]);
  }
  return v;
}

bool BoxSet::contains(const RealVector& v, double tol) const {
  check_dim(v.size(), dim(), "BoxSet::contains");
  for (Index i = 0; i < dim(); ++i) {
    if (v[i] < lower_[i] - tol || v[i] > upper_[i] + tol) return false;
  }
  return true;
}

RealVector BoxSet::sample_interior(Rng& rng, double margin) const {
  RealVector v(dim());
  for (Index i = 0; i < dim(); ++i) {
    double lo = lower_[i], hi = upper_[i];
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      lo = -1.0;
      hi = 1.0;
    } else if (!std::isfinite(lo)) {
      lo = hi - 2.0;
    } else if (!std::isfinite(hi)) {
      hi = lo + 2.0;
    }
    const double m = margin * (hi - lo);
    v[i] = rng.uniform(lo + m, hi - m);
  }
  return v;
}

BoxSet BoxSet::scaled_inverse(double c) const {
  if (c <= 0.0) throw Error("BoxSet::scaled_inverse: c must be positive");
  BoxSet b;
  b.lower_ = lower_ / c;
  b.upper_ = upper_ / c;
  return b;
}

}  // namespace acpd
