#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <functional>
#include <memory>
#include <optional>

#include "acpd/box_set.hpp"
#include "acpd/linear_map.hpp"
#include "acpd/types.hpp"

namespace acpd {

// Prox-friendly function h over a box domain. Supported kinds have
// closed-form proximal mappings (coordinatewise, clamped to the box):
//   Zero:       h = 0
//   Linear:     h = <c, x>
//   L1:         h = lambda * ||x||_1
//   Quadratic:  h = (1/2) x' diag(p) x + <q, x>   (separable, p >= 0)
//   Indicator:  h = 0, the box alone
class ProxOracle {
 public:
  enum class Kind { Zero, Linear, L1, Quadratic, Indicator };

  static ProxOracle zero(BoxSet domain);
  static ProxOracle linear(RealVector c, BoxSet domain);
  static ProxOracle l1(double lambda, BoxSet domain);
  static ProxOracle quadratic_diag(RealVector p, RealVector q, BoxSet domain);
  static ProxOracle indicator(BoxSet domain);

  Kind kind() const { return kind_; }
  const BoxSet& domain() const { return domain_; }
  Index dim() const { return domain_.dim(); }
  bool evaluable() const { return true; }

  const RealVector& linear_coeff() const { return c_; }
  double l1_weight() const { return lambda_; }
  const RealVector& quad_diag() const { return p_; }
  const RealVector& quad_linear() const { return q_; }

  // Function value (box indicator contributes 0; caller keeps x in domain).
  double value(const RealVector& x) const;

 private:
  Kind kind_ = Kind::Zero;
  BoxSet domain_ = BoxSet::free(0);
  RealVector c_;
  double lambda_ = 0.0;
  RealVector p_, q_;
};

// argmin_{x in domain} eta*(<linear, x> + h(x)) + (1/2)||center - x||^2
RealVector prox(const ProxOracle& oracle, const RealVector& linear,
                const RealVector& center, double eta);

// argmin_{y in domain} <minus_Ax, y> + g(y) + (mu_d/2)||anchor - y||^2
//                      + (tau/2)||y_prev - y||^2
// Solved by merging the two quadratic penalties into a single prox call with
// weight (mu_d + tau) and center (mu_d*anchor + tau*y_prev)/(mu_d + tau).
// tau = 0 realizes the dual initialization.
RealVector dual_prox(const ProxOracle& g, const RealVector& minus_Ax,
                     const RealVector& anchor, double mu_d, double tau,
                     const RealVector& y_prev);

// Smooth convex function with exact value/gradient oracle.
class SmoothOracle {
 public:
  struct Eval {
    double value = 0.0;
    RealVector grad;
  };

  enum class Kind { Quadratic, Logistic, Callback };

  // (1/2) x'Px + <q, x>, P symmetric PSD (dense).
  static SmoothOracle quadratic(Eigen::MatrixXd P, RealVector q);
  // (1/N) sum_i log(1 + exp(-labels_i * <samples.row(i), x>)), labels in {-1,+1}.
  static SmoothOracle logistic(Eigen::MatrixXd samples, RealVector labels);
  static SmoothOracle callback(
      Index dim, std::function<double(const RealVector&, RealVector&)> fn);

  Kind kind() const { return kind_; }
  Index dim() const { return dim_; }
  bool evaluable() const { return true; }

  Eval gradient(const RealVector& x) const;
  long gradient_calls() const { return *calls_; }

  const Eigen::MatrixXd& quad_matrix() const { return P_; }
  const RealVector& quad_linear() const { return q_; }

 private:
  Kind kind_ = Kind::Quadratic;
  Index dim_ = 0;
  Eigen::MatrixXd P_;
  RealVector q_;
  Eigen::MatrixXd samples_;
  RealVector labels_;
  std::function<double(const RealVector&, RealVector&)> fn_;
  std::shared_ptr<long> calls_ = std::make_shared<long>(0);
};

SmoothOracle::Eval gradient(const SmoothOracle& oracle, const RealVector& x);

// Solver for the ADMM w-subproblem
//   argmin_{w in W} G(w) + 1/(2*rho) ||B w - target||^2.
// Strategy is resolved at construction:
//   ProxReduction : B = c*I, reduces to a single prox of G
//   Factorized    : W free and G in {Zero, Linear, Quadratic}; normal
//                   equations with B'B cached
//   Iterative     : accelerated proximal gradient fallback (any prox kind)
class AugmentedOracle {
 public:
  enum class Strategy { ProxReduction, Factorized, Iterative };

  AugmentedOracle(ProxOracle g, LinearMap b);

  const ProxOracle& g() const { return g_; }
  const LinearMap& b_map() const { return b_; }
  Strategy strategy() const { return strategy_; }

  RealVector solve(double rho, const RealVector& target) const;

  // Prox-gradient fixed-point residual of the subproblem at w.
  double optimality_residual(double rho, const RealVector& target,
                             const RealVector& w) const;

 private:
  ProxOracle g_;
  LinearMap b_;
  Strategy strategy_ = Strategy::Iterative;
  double id_scale_ = 1.0;                 // ProxReduction
  Eigen::MatrixXd btb_;                   // Factorized
  RealVector smooth_grad(double rho, const RealVector& target,
                         const RealVector& w) const;
  double smooth_lipschitz(double rho) const;
  double frob_sq_ = 0.0;                  // ||B||_F^2 upper-bounds ||B||^2
};

RealVector augmented_solve(const AugmentedOracle& oracle, double rho_inv,
                           const RealVector& target);

}  // namespace acpd
