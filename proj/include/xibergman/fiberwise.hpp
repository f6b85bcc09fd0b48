#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "xibergman/bergman.hpp"
#include "xibergman/family.hpp"
#include "xibergman/submean.hpp"

namespace xib {

/// Product domain fiber x base with a joint weight psi(z, w) and a
/// functional family xi(w). Fibers share one polydisc, so only the restricted
/// weight and the functional vary with w.
struct FamilyProblem {
  Polydisc fiber;
  Polydisc base;
  WeightSpec weight = WeightSpec::zero(1);  // joint, arity (n, m)
  FamilyEvaluator family;
  int degree = 20;
  QuadSpec quad;

  void validate() const;
};

/// Evaluates w, z -> K^{psi_w}_{xi(w), fiber}(z). Holds one fiber model when
/// psi does not depend on w.
class FiberKernel {
 public:
  explicit FiberKernel(FamilyProblem problem);

  const FamilyProblem& problem() const { return problem_; }
  GramModel fiber_model(std::span<const Complex> w) const;
  double operator()(std::span<const Complex> w, std::span<const Complex> z) const;

 private:
  FamilyProblem problem_;
  std::shared_ptr<const GramModel> shared_model_;
};

double kernel_on_fiber(const FamilyProblem& problem, std::span<const Complex> w,
                       std::span<const Complex> z);

/// Sub-mean check of w -> log K on the circle w0 + r e^{i theta} direction
/// (direction defaults to the first base coordinate axis).
PshReport psh_verify_base(const FiberKernel& kernel, std::span<const Complex> z,
                          std::span<const Complex> w0, double r, int samples,
                          std::span<const Complex> direction = {}, double tolerance = 1e-3);

/// Sub-mean check along the complex line t -> point + t * direction in
/// C^{n+m} (coordinates (z, w)), on |t - t0| = radius.
PshReport psh_verify_joint(const FiberKernel& kernel, std::span<const Complex> point,
                           std::span<const Complex> direction, Complex t0, double radius,
                           int samples, double tolerance = 1e-3);

struct UscLevel {
  double radius = 0.0;
  double sup_kernel = 0.0;
};

struct UscReport {
  double center_kernel = 0.0;
  std::vector<UscLevel> levels;
  double tolerance = 1e-3;
  Verdict verdict = Verdict::Pass;
};

using JointKernelFn = std::function<double(std::span<const Complex>, std::span<const Complex>)>;

/// Upper-semicontinuity spot check: for each shrinking radius, the sup of K
/// over points at that distance from (z0, w0) along each coordinate circle
/// and the diagonal. PASS when the sups are nonincreasing (within tolerance)
/// and the last one is <= K(z0, w0) + tolerance * max(1, K(z0, w0)).
UscReport usc_spot_check(const JointKernelFn& kernel, std::span<const Complex> z0,
                         std::span<const Complex> w0, std::span<const double> radii,
                         int angles = 8, double tolerance = 1e-3);

UscReport usc_spot_check(const FiberKernel& kernel, std::span<const Complex> z0,
                         std::span<const Complex> w0, std::span<const double> radii,
                         int angles = 8, double tolerance = 1e-3);

}  // namespace xib
