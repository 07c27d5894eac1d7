#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace acpd {

using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape mismatch between an operator and its argument.
struct DimensionError : Error {
  using Error::Error;
};

// An oracle was asked for a (kind, domain) combination it cannot solve
// in closed form.
struct OracleError : Error {
  using Error::Error;
};

// An iterate left the representable range (NaN/Inf).
struct DivergenceError : Error {
  using Error::Error;
};

// Invalid run configuration (bad hyper-parameter, missing field, ...).
struct ConfigError : Error {
  using Error::Error;
};

inline bool all_finite(const RealVector& v) { return v.allFinite(); }

inline void check_dim(Index got, Index want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected dim " +
                         std::to_string(want) + ", got " + std::to_string(got));
  }
}

// Deterministic RNG. All randomness in the artifact (problem generation,
// probe vectors) flows through explicit 64-bit seeds; the uniform and normal
// transforms are hand-rolled so streams are stable across standard-library
// versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9E3779B97F4A7C15ull) {}

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  RealVector normal_vector(Index n) {
    RealVector v(n);
    for (Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  RealVector uniform_vector(Index n, double lo, double hi) {
    RealVector v(n);
    for (Index i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  RealVector unit_vector(Index n) {
    RealVector v = normal_vector(n);
    const double nrm = v.norm();
    if (nrm == 0.0) {
      v.setZero();
      v[0] = 1.0;
      return v;
    }
    return v / nrm;
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace acpd
