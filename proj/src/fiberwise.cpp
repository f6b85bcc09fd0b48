#include "xibergman/fiberwise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace xib {

void FamilyProblem::validate() const {
  const std::size_t n = fiber.arity(), m = base.arity();
  if (weight.z_arity() != n || weight.w_arity() != m)
    throw InputError("joint weight arity does not match fiber x base");
  if (family.z_arity() != n || family.w_arity() != m)
    throw InputError("family arity does not match fiber x base");
  if (degree < 0) throw InputError("fiber basis degree must be non-negative");
}

FiberKernel::FiberKernel(FamilyProblem problem) : problem_(std::move(problem)) {
  problem_.validate();
  if (!problem_.weight.depends_on_w()) {
    shared_model_ = std::make_shared<const GramModel>(fiber_model(problem_.base.center));
  }
}

GramModel FiberKernel::fiber_model(std::span<const Complex> w) const {
  if (shared_model_) return *shared_model_;
  return build_model(problem_.fiber, problem_.weight.restrict_to_fiber(w), problem_.degree,
                     problem_.quad);
}

double FiberKernel::operator()(std::span<const Complex> w, std::span<const Complex> z) const {
  if (!problem_.base.contains(w)) throw InputError("base point lies outside the base domain");
  const Functional xi = problem_.family(w);
  if (shared_model_) return xi_kernel(*shared_model_, xi, z);
  return xi_kernel(fiber_model(w), xi, z);
}

double kernel_on_fiber(const FamilyProblem& problem, std::span<const Complex> w,
                       std::span<const Complex> z) {
  return FiberKernel(problem)(w, z);
}

PshReport psh_verify_base(const FiberKernel& kernel, std::span<const Complex> z,
                          std::span<const Complex> w0, double r, int samples,
                          std::span<const Complex> direction, double tolerance) {
  const std::size_t m = kernel.problem().base.arity();
  if (w0.size() != m) throw InputError("base center has wrong arity");
  std::vector<Complex> dir(m, 0.0);
  if (direction.empty()) dir[0] = 1.0;
  else if (direction.size() != m) throw InputError("base direction has wrong arity");
  else dir.assign(direction.begin(), direction.end());

  const std::vector<Complex> zz(z.begin(), z.end());
  const std::vector<Complex> center(w0.begin(), w0.end());
  // The closed disc must sit inside the base.
  for (int i = 0; i < 64; ++i) {
    std::vector<Complex> w = center;
    const Complex t = std::polar(r, 2.0 * std::numbers::pi * i / 64);
    for (std::size_t j = 0; j < m; ++j) w[j] += t * dir[j];
    if (!kernel.problem().base.contains(w))
      throw InputError("sub-mean disc leaves the base domain");
  }
  auto along = [&](Complex t) {
    std::vector<Complex> w = center;
    for (std::size_t j = 0; j < m; ++j) w[j] += t * dir[j];
    return kernel(w, zz);
  };
  auto rep = circle_submean(along, 0.0, r, samples, tolerance);
  rep.center = center;
  return rep;
}

PshReport psh_verify_joint(const FiberKernel& kernel, std::span<const Complex> point,
                           std::span<const Complex> direction, Complex t0, double radius,
                           int samples, double tolerance) {
  const std::size_t n = kernel.problem().fiber.arity(), m = kernel.problem().base.arity();
  if (point.size() != n + m || direction.size() != n + m)
    throw InputError("joint line needs point and direction in C^{n+m}");
  const std::vector<Complex> p(point.begin(), point.end()), d(direction.begin(), direction.end());
  auto at = [&](Complex t) {
    std::vector<Complex> z(n), w(m);
    for (std::size_t i = 0; i < n; ++i) z[i] = p[i] + t * d[i];
    for (std::size_t j = 0; j < m; ++j) w[j] = p[n + j] + t * d[n + j];
    return std::pair{z, w};
  };
  for (int i = 0; i < 64; ++i) {
    auto [z, w] = at(t0 + std::polar(radius, 2.0 * std::numbers::pi * i / 64));
    if (!kernel.problem().fiber.contains(z) || !kernel.problem().base.contains(w))
      throw InputError("sub-mean disc leaves the product domain");
  }
  auto along = [&](Complex t) {
    auto [z, w] = at(t);
    return kernel(w, z);
  };
  auto rep = circle_submean(along, t0, radius, samples, tolerance);
  auto [zc, wc] = at(t0);
  rep.center = zc;
  rep.center.insert(rep.center.end(), wc.begin(), wc.end());
  return rep;
}

UscReport usc_spot_check(const JointKernelFn& kernel, std::span<const Complex> z0,
                         std::span<const Complex> w0, std::span<const double> radii, int angles,
                         double tolerance) {
  if (radii.size() < 3) throw InputError("usc spot check needs at least 3 levels");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] < radii[i - 1])) throw InputError("usc radii must decrease");
  const std::size_t n = z0.size(), m = w0.size(), dim = n + m;
  const std::vector<Complex> zc(z0.begin(), z0.end()), wc(w0.begin(), w0.end());

  UscReport rep;
  rep.tolerance = tolerance;
  rep.center_kernel = kernel(zc, wc);
  const double slack = tolerance * std::max(1.0, rep.center_kernel);

  for (double eps : radii) {
    UscLevel level{eps, 0.0};
    // Each coordinate circle, then the diagonal direction.
    for (std::size_t axis = 0; axis <= dim; ++axis) {
      for (int a = 0; a < angles; ++a) {
        const Complex step = std::polar(eps, 2.0 * std::numbers::pi * (a + 0.5) / angles);
        std::vector<Complex> z = zc, w = wc;
        for (std::size_t i = 0; i < dim; ++i) {
          if (axis < dim && i != axis) continue;
          const Complex s = axis < dim ? step : step / std::sqrt(static_cast<double>(dim));
          if (i < n) z[i] += s;
          else w[i - n] += s;
        }
        level.sup_kernel = std::max(level.sup_kernel, kernel(z, w));
      }
    }
    rep.levels.push_back(level);
  }
  bool ok = rep.levels.back().sup_kernel <= rep.center_kernel + slack;
  for (std::size_t i = 1; i < rep.levels.size(); ++i)
    ok = ok && rep.levels[i].sup_kernel <= rep.levels[i - 1].sup_kernel + slack;
  rep.verdict = ok ? Verdict::Pass : Verdict::Fail;
  return rep;
}

UscReport usc_spot_check(const FiberKernel& kernel, std::span<const Complex> z0,
                         std::span<const Complex> w0, std::span<const double> radii, int angles,
                         double tolerance) {
  auto fn = [&kernel](std::span<const Complex> z, std::span<const Complex> w) {
    return kernel(w, z);
  };
  return usc_spot_check(fn, z0, w0, radii, angles, tolerance);
}

}  // namespace xib
