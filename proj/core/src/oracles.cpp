#include "acpd/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace acpd {

ProxOracle ProxOracle::zero(BoxSet domain) {
  ProxOracle o;
  o.kind_ = Kind::Zero;
  o.domain_ = std::move(domain);
  return o;
}

ProxOracle ProxOracle::linear(RealVector c, BoxSet domain) {
  check_dim(c.size(), domain.dim(), "ProxOracle::linear");
  ProxOracle o;
  o.kind_ = Kind::Linear;
  o.c_ = std::move(c);
  o.domain_ = std::move(domain);
  return o;
}

ProxOracle ProxOracle::l1(double lambda, BoxSet domain) {
  if (lambda < 0.0) throw Error("ProxOracle::l1: lambda must be >= 0");
  ProxOracle o;
  o.kind_ = Kind::L1;
  o.lambda_ = lambda;
  o.domain_ = std::move(domain);
  return o;
}

ProxOracle ProxOracle::quadratic_diag(RealVector p, RealVector q,
                                      BoxSet domain) {
  check_dim(p.size(), domain.dim(), "ProxOracle::quadratic_diag");
  check_dim(q.size(), domain.dim(), "ProxOracle::quadratic_diag");
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0) throw Error("ProxOracle::quadratic_diag: p must be >= 0");
  }
  ProxOracle o;
  o.kind_ = Kind::Quadratic;
  o.p_ = std::move(p);
  o.q_ = std::move(q);
  o.domain_ = std::move(domain);
  return o;
}

ProxOracle ProxOracle::indicator(BoxSet domain) {
  ProxOracle o;
  o.kind_ = Kind::Indicator;
  o.domain_ = std::move(domain);
  return o;
}

double ProxOracle::value(const RealVector& x) const {
  check_dim(x.size(), dim(), "ProxOracle::value");
  switch (kind_) {
    case Kind::Zero:
    case Kind::Indicator:
      return 0.0;
    case Kind::Linear:
      return c_.dot(x);
    case Kind::L1:
      return lambda_ * x.lpNorm<1>();
    case Kind::Quadratic:
      return 0.5 * x.dot(p_.cwiseProduct(x)) + q_.dot(x);
  }
  throw Error("unreachable");
}

namespace {

// 1-D argmin of (1/2)(v - a)^2 + w*|v| over [lo, hi]; convex, so the
// unconstrained soft-threshold clamps exactly.
double soft_threshold_clamped(double a, double w, double lo, double hi) {
  double v = 0.0;
  if (a > w) {
    v = a - w;
  } else if (a < -w) {
    v = a + w;
  }
  return std::min(std::max(v, lo), hi);
}

}  // namespace

RealVector prox(const ProxOracle& oracle, const RealVector& linear,
                const RealVector& center, double eta) {
  if (!(eta > 0.0)) throw Error("prox: eta must be positive");
  check_dim(linear.size(), oracle.dim(), "prox linear term");
  check_dim(center.size(), oracle.dim(), "prox center");
  const BoxSet& box = oracle.domain();
  switch (oracle.kind()) {
    case ProxOracle::Kind::Zero:
    case ProxOracle::Kind::Indicator:
      return box.clamp(center - eta * linear);
    case ProxOracle::Kind::Linear:
      return box.clamp(center - eta * (linear + oracle.linear_coeff()));
    case ProxOracle::Kind::L1: {
      RealVector out(oracle.dim());
      const double w = eta * oracle.l1_weight();
      for (Index i = 0; i < out.size(); ++i) {
        out[i] = soft_threshold_clamped(center[i] - eta * linear[i], w,
                                        box.lower()[i], box.upper()[i]);
      }
      return out;
    }
    case ProxOracle::Kind::Quadratic: {
      // per coordinate: (1 + eta*p_i) v = center_i - eta*(linear_i + q_i)
      RealVector out(oracle.dim());
      const RealVector& p = oracle.quad_diag();
      const RealVector& q = oracle.quad_linear();
      for (Index i = 0; i < out.size(); ++i) {
        const double v = (center[i] - eta * (linear[i] + q[i])) /
                         (1.0 + eta * p[i]);
        out[i] = std::min(std::max(v, box.lower()[i]), box.upper()[i]);
      }
      return out;
    }
  }
  throw OracleError("prox: unsupported oracle kind");
}

RealVector dual_prox(const ProxOracle& g, const RealVector& minus_Ax,
                     const RealVector& anchor, double mu_d, double tau,
                     const RealVector& y_prev) {
  if (!(mu_d > 0.0)) throw Error("dual_prox: mu_d must be positive");
  if (tau < 0.0) throw Error("dual_prox: tau must be >= 0");
  const double weight = mu_d + tau;
  const RealVector center = (mu_d * anchor + tau * y_prev) / weight;
  return prox(g, minus_Ax, center, 1.0 / weight);
}

SmoothOracle SmoothOracle::quadratic(Eigen::MatrixXd P, RealVector q) {
  check_dim(P.rows(), q.size(), "SmoothOracle::quadratic");
  check_dim(P.cols(), q.size(), "SmoothOracle::quadratic");
  SmoothOracle o;
  o.kind_ = Kind::Quadratic;
  o.dim_ = q.size();
  o.P_ = std::move(P);
  o.q_ = std::move(q);
  return o;
}

SmoothOracle SmoothOracle::logistic(Eigen::MatrixXd samples,
                                    RealVector labels) {
  check_dim(samples.rows(), labels.size(), "SmoothOracle::logistic");
  SmoothOracle o;
  o.kind_ = Kind::Logistic;
  o.dim_ = samples.cols();
  o.samples_ = std::move(samples);
  o.labels_ = std::move(labels);
  return o;
}

SmoothOracle SmoothOracle::callback(
    Index dim, std::function<double(const RealVector&, RealVector&)> fn) {
  SmoothOracle o;
  o.kind_ = Kind::Callback;
  o.dim_ = dim;
  o.fn_ = std::move(fn);
  return o;
}

SmoothOracle::Eval SmoothOracle::gradient(const RealVector& x) const {
  check_dim(x.size(), dim_, "SmoothOracle::gradient");
  ++(*calls_);
  Eval e;
  switch (kind_) {
    case Kind::Quadratic: {
      RealVector px = P_ * x;
      e.value = 0.5 * x.dot(px) + q_.dot(x);
      e.grad = px + q_;
      return e;
    }
    case Kind::Logistic: {
      const Index n = samples_.rows();
      const RealVector z = samples_ * x;
      e.value = 0.0;
      RealVector coef(n);
      for (Index i = 0; i < n; ++i) {
        const double m = -labels_[i] * z[i];
        // log(1+exp(m)) computed stably
        e.value += m > 0 ? m + std::log1p(std::exp(-m)) : std::log1p(std::exp(m));
        coef[i] = -labels_[i] / (1.0 + std::exp(-m));
      }
      e.value /= static_cast<double>(n);
      e.grad = samples_.transpose() * coef / static_cast<double>(n);
      return e;
    }
    case Kind::Callback: {
      e.grad.resize(dim_);
      e.value = fn_(x, e.grad);
      return e;
    }
  }
  throw Error("unreachable");
}

SmoothOracle::Eval gradient(const SmoothOracle& oracle, const RealVector& x) {
  return oracle.gradient(x);
}

AugmentedOracle::AugmentedOracle(ProxOracle g, LinearMap b)
    : g_(std::move(g)), b_(std::move(b)) {
  check_dim(b_.cols(), g_.dim(), "AugmentedOracle: B cols vs G dim");
  frob_sq_ = b_.to_dense().squaredNorm();
  double c = 1.0;
  if (b_.is_scaled_identity(&c) && c != 0.0) {
    strategy_ = Strategy::ProxReduction;
    id_scale_ = c;
    return;
  }
  const bool free_domain = !g_.domain().is_bounded() &&
                           g_.domain().lower().minCoeff() == -kInf &&
                           g_.domain().upper().maxCoeff() == kInf;
  const bool g_smooth = g_.kind() == ProxOracle::Kind::Zero ||
                        g_.kind() == ProxOracle::Kind::Linear ||
                        g_.kind() == ProxOracle::Kind::Quadratic;
  if (free_domain && g_smooth) {
    strategy_ = Strategy::Factorized;
    const Eigen::MatrixXd bd = b_.to_dense();
    btb_ = bd.transpose() * bd;
    return;
  }
  strategy_ = Strategy::Iterative;
}

RealVector AugmentedOracle::smooth_grad(double rho, const RealVector& target,
                                        const RealVector& w) const {
  RealVector grad = b_.adjoint(b_.forward(w) - target) / rho;
  if (g_.kind() == ProxOracle::Kind::Quadratic) {
    grad += g_.quad_diag().cwiseProduct(w) + g_.quad_linear();
  } else if (g_.kind() == ProxOracle::Kind::Linear) {
    grad += g_.linear_coeff();
  }
  return grad;
}

double AugmentedOracle::smooth_lipschitz(double rho) const {
  double l = frob_sq_ / rho;
  if (g_.kind() == ProxOracle::Kind::Quadratic) l += g_.quad_diag().maxCoeff();
  return l;
}

RealVector AugmentedOracle::solve(double rho, const RealVector& target) const {
  if (!(rho > 0.0)) throw Error("augmented_solve: rho_inv must be positive");
  check_dim(target.size(), b_.rows(), "augmented_solve target");
  switch (strategy_) {
    case Strategy::ProxReduction: {
      // min G(w) + c^2/(2 rho) ||w - target/c||^2 = prox with weight rho/c^2
      const double c = id_scale_;
      return prox(g_, RealVector::Zero(g_.dim()), target / c,
                  rho / (c * c));
    }
    case Strategy::Factorized: {
      // (B'B + rho*diag(p)) w = B'target - rho*(q or c)
      Eigen::MatrixXd lhs = btb_;
      RealVector rhs = b_.adjoint(target);
      if (g_.kind() == ProxOracle::Kind::Quadratic) {
        lhs.diagonal() += rho * g_.quad_diag();
        rhs -= rho * g_.quad_linear();
      } else if (g_.kind() == ProxOracle::Kind::Linear) {
        rhs -= rho * g_.linear_coeff();
      }
      Eigen::LDLT<Eigen::MatrixXd> ldlt(lhs);
      if (ldlt.info() != Eigen::Success) {
        throw OracleError(
            "augmented_solve: normal equations not factorizable (B'B "
            "singular?)");
      }
      RealVector w = ldlt.solve(rhs);
      const double res = (lhs * w - rhs).norm();
      if (!(res <= 1e-8 * (1.0 + rhs.norm()))) {
        throw OracleError("augmented_solve: linear solve residual too large");
      }
      return w;
    }
    case Strategy::Iterative: {
      // FISTA on smooth(w) = 1/(2 rho)||Bw - target||^2 (+ smooth G part)
      // with the nonsmooth remainder handled by prox.
      ProxOracle nonsmooth =
          g_.kind() == ProxOracle::Kind::L1
              ? ProxOracle::l1(g_.l1_weight(), g_.domain())
              : ProxOracle::indicator(g_.domain());
      const double lip = std::max(smooth_lipschitz(rho), 1e-300);
      const double step = 1.0 / lip;
      RealVector w = g_.domain().clamp(RealVector::Zero(g_.dim()));
      RealVector z = w;
      double t_acc = 1.0;
      const double tol = 1e-11 * (1.0 + target.norm());
      const long max_iters = 500000;
      for (long it = 0; it < max_iters; ++it) {
        RealVector grad = smooth_grad(rho, target, z);
        RealVector w_next = prox(nonsmooth, grad, z, step);
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc));
        z = w_next + ((t_acc - 1.0) / t_next) * (w_next - w);
        w = w_next;
        t_acc = t_next;
        if (it % 16 == 0 && optimality_residual(rho, target, w) <= tol) {
          return w;
        }
      }
      if (optimality_residual(rho, target, w) <= 1e-8 * (1.0 + target.norm())) {
        return w;
      }
      throw OracleError(
          "augmented_solve: iterative fallback failed to reach tolerance for "
          "this (G, B, W) combination");
    }
  }
  throw Error("unreachable");
}

double AugmentedOracle::optimality_residual(double rho,
                                            const RealVector& target,
                                            const RealVector& w) const {
  // w is optimal iff w = prox_{nonsmooth}(w - grad_smooth(w)) for unit step.
  ProxOracle nonsmooth =
      g_.kind() == ProxOracle::Kind::L1
          ? ProxOracle::l1(g_.l1_weight(), g_.domain())
          : ProxOracle::indicator(g_.domain());
  RealVector grad = smooth_grad(rho, target, w);
  RealVector fixed = prox(nonsmooth, grad, w, 1.0);
  return (w - fixed).norm();
}

RealVector augmented_solve(const AugmentedOracle& oracle, double rho_inv,
                           const RealVector& target) {
  return oracle.solve(rho_inv, target);
}

}  // namespace acpd
