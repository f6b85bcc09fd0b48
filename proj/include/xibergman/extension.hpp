#pragma once

#include <vector>

#include <Eigen/Dense>

#include "xibergman/bergman.hpp"
#include "xibergman/family.hpp"

namespace xib {

/// Fiber polydisc x base disc |w - w0| < r with a joint weight of arity
/// (n, 1). The central fiber sits over the disc center w0.
struct ExtensionProblem {
  Polydisc fiber = Polydisc::unit(1);
  Complex w0 = 0.0;
  double r = 1.0;
  WeightSpec weight = WeightSpec::zero(1, 1);
  int z_degree = 6;
  int w_degree = 6;
  QuadSpec quad;

  void validate() const;
  Polydisc base() const { return Polydisc({w0}, {r}); }
};

/// Truncated joint model: basis polynomials in (z, w), |alpha_z| <= z_degree,
/// w exponent <= w_degree. Separable weights psi_z(z) + psi_w(w) use the
/// tensor product of the two one-sided Gram matrices.
struct JointModel {
  std::vector<MultiIndex> labels;  // arity n + 1
  std::vector<Polynomial> basis;   // arity n + 1, absolute coordinates
  Eigen::MatrixXcd gram;
  bool separable = false;
};

JointModel build_joint_model(const ExtensionProblem& prob);

struct ExtensionResult {
  JointModel model;
  Eigen::VectorXcd coeffs;
  Polynomial extension;  // F(z, w), arity n + 1
  double joint_norm = 0.0;
  double fiber_norm = 0.0;
  double restriction_residual = 0.0;  // max coefficient error of F(., w0) - f
  double kkt_residual = 0.0;
};

/// Minimizes the joint norm subject to F(., w0) = f, through the same
/// eigenvalue cutoff as the fiber models. Throws InputError when f is not
/// representable in the restricted joint space.
ExtensionResult minimal_extension(const ExtensionProblem& prob, const Polynomial& f);

/// ||F||^2_joint / (pi r^2 ||f||^2_fiber). Throws on a zero fiber norm.
double optimal_constant_check(const ExtensionProblem& prob, const ExtensionResult& ext);

/// Norm of the polynomial F restricted to the fiber over w, in that fiber's
/// model.
double fiber_norm_squared(const ExtensionProblem& prob, const Polynomial& joint_poly, Complex w);

/// The chain
///   L0 = log ||f||^2 >= L1 = log(||F||^2_joint / (pi r^2))
///      >= L2 = avg_w log ||F_w||^2 >= L3 = avg_w (log |xi(w).F_w(z0)|^2 - log K(w)),
/// with f the normalized extremal function of xi(w0) at z0 and averages over
/// the base disc by a polar rule (zero node counts pick defaults from
/// w_degree).
struct JensenReport {
  double l0 = 0.0;
  double l1 = 0.0;
  double l1_quadrature = 0.0;  // log of the same average as L2 before the log
  double l2 = 0.0;
  double l3 = 0.0;
  double log_kernel_center = 0.0;
  double tolerance = 1e-3;
  bool holds = false;
};

JensenReport jensen_chain(const ExtensionProblem& prob, const FamilyEvaluator& family,
                          std::span<const Complex> z0, int radial_nodes = 0,
                          int angular_nodes = 0, double tolerance = 1e-3);

}  // namespace xib
