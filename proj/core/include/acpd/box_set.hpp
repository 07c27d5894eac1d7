#pragma once

#include <limits>

#include "acpd/types.hpp"

namespace acpd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed box {x : lower <= x <= upper}, entries may be +/-inf.
class BoxSet {
 public:
  static BoxSet free(Index n);
  static BoxSet bounds(RealVector lower, RealVector upper);
  static BoxSet centered(Index n, double half_width);

  Index dim() const { return lower_.size(); }
  const RealVector& lower() const { return lower_; }
  const RealVector& upper() const { return upper_; }

  bool is_bounded() const;
  // Euclidean diameter; +inf when unbounded.
  double diameter() const;
  // sup over the box of ||x - p||; +inf when unbounded.
  double max_distance_from(const RealVector& p) const;

  RealVector clamp(RealVector v) const;
  bool contains(const RealVector& v, double tol = 0.0) const;

  // Uniform draw from the box; unbounded coordinates fall back to [-1, 1]
  // around the finite bound (or 0 if both sides are free).
  RealVector sample_interior(Rng& rng, double margin = 0.0) const;

  // Scales the box by 1/c (used by the two-block reparameterization checks).
  BoxSet scaled_inverse(double c) const;

 private:
  RealVector lower_, upper_;
};

}  // namespace acpd
