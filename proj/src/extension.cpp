#include "xibergman/extension.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <optional>

#include "xibergman/quadrature.hpp"

namespace xib {

namespace {

bool uses_range(const Polynomial& p, std::size_t from, std::size_t count) {
  for (const auto& [alpha, c] : p.terms())
    for (std::size_t i = from; i < from + count; ++i)
      if (alpha[i] != 0) return true;
  return false;
}

Polynomial project(const Polynomial& p, std::size_t from, std::size_t count) {
  Polynomial::Terms t;
  for (const auto& [alpha, c] : p.terms()) {
    std::vector<int> e(alpha.entries().begin() + static_cast<long>(from),
                       alpha.entries().begin() + static_cast<long>(from + count));
    t[MultiIndex(std::move(e))] += c;
  }
  return Polynomial(count, std::move(t));
}

using Split = std::pair<WeightSpec, WeightSpec>;

// psi(z, w) = psi_z(z) + psi_w(w), when the catalog structure shows it.
std::optional<Split> split_weight(const WeightSpec& s) {
  const std::size_t n = s.z_arity();
  using K = WeightSpec::Kind;
  switch (s.kind()) {
    case K::Zero:
      return Split{WeightSpec::zero(n), WeightSpec::zero(1)};
    case K::Constant:
      return Split{WeightSpec::constant(n, 0, s.scalar()), WeightSpec::zero(1)};
    case K::Quadratic:
    case K::LogMonomial: {
      std::vector<double> cz(s.coeffs().begin(), s.coeffs().begin() + static_cast<long>(n));
      const double cw = s.coeffs().size() > n ? s.coeffs()[n] : 0.0;
      if (s.kind() == K::Quadratic)
        return Split{WeightSpec::quadratic(n, 0, cz), WeightSpec::quadratic(1, 0, {cw})};
      return Split{WeightSpec::log_monomial(n, 0, cz), WeightSpec::log_monomial(1, 0, {cw})};
    }
    case K::LogDivisor:
    case K::ModulusSquared: {
      const Polynomial& g = s.poly();
      const bool z = uses_range(g, 0, n), w = uses_range(g, n, 1);
      if (z && w) return std::nullopt;
      auto make = [&](std::size_t arity, Polynomial h) {
        return s.kind() == K::LogDivisor ? WeightSpec::log_divisor(arity, std::move(h), s.scalar())
                                         : WeightSpec::modulus_squared(arity, std::move(h), s.scalar());
      };
      if (w) return Split{WeightSpec::zero(n), make(1, project(g, n, 1))};
      return Split{make(n, project(g, 0, n)), WeightSpec::zero(1)};
    }
    case K::Sum: {
      std::vector<WeightSpec> zs, ws;
      for (const auto& t : s.terms()) {
        auto part = split_weight(t);
        if (!part) return std::nullopt;
        zs.push_back(part->first);
        ws.push_back(part->second);
      }
      return Split{WeightSpec::sum(std::move(zs)), WeightSpec::sum(std::move(ws))};
    }
  }
  return std::nullopt;
}

// The joint weight read as a weight on C^{n+1}.
WeightSpec flatten(const WeightSpec& s) {
  const std::size_t d = s.z_arity() + s.w_arity();
  using K = WeightSpec::Kind;
  auto padded = [&] {
    std::vector<double> c = s.coeffs();
    c.resize(d, 0.0);
    return c;
  };
  switch (s.kind()) {
    case K::Zero: return WeightSpec::zero(d);
    case K::Constant: return WeightSpec::constant(d, 0, s.scalar());
    case K::Quadratic: return WeightSpec::quadratic(d, 0, padded());
    case K::LogMonomial: return WeightSpec::log_monomial(d, 0, padded());
    case K::LogDivisor: return WeightSpec::log_divisor(d, s.poly(), s.scalar());
    case K::ModulusSquared: return WeightSpec::modulus_squared(d, s.poly(), s.scalar());
    case K::Sum: {
      std::vector<WeightSpec> t;
      for (const auto& x : s.terms()) t.push_back(flatten(x));
      return WeightSpec::sum(std::move(t));
    }
  }
  return WeightSpec::zero(d);
}

// Basis coefficients of p in a model, by least squares on monomial
// coefficients.
Eigen::VectorXcd coefficients_in(const std::vector<Polynomial>& basis, const Polynomial& p,
                                 double* residual) {
  std::map<MultiIndex, Eigen::Index, GradedLexLess> row;
  auto index_of = [&](const MultiIndex& a) {
    auto [it, fresh] = row.try_emplace(a, static_cast<Eigen::Index>(row.size()));
    return it->second;
  };
  for (const auto& b : basis)
    for (const auto& [a, c] : b.terms()) index_of(a);
  for (const auto& [a, c] : p.terms()) index_of(a);

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(row.size()),
                                              static_cast<Eigen::Index>(basis.size()));
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(row.size()));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (const auto& [a, c] : basis[j].terms()) m(row.at(a), static_cast<Eigen::Index>(j)) = c;
  for (const auto& [a, c] : p.terms()) rhs(row.at(a)) = c;

  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  if (!basis.empty() && m.size() > 0) x = m.completeOrthogonalDecomposition().solve(rhs);
  const double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  *residual = (m * x - rhs).cwiseAbs().maxCoeff() / scale;
  return x;
}

double fiber_poly_norm(const GramModel& model, const Polynomial& p) {
  double residual = 0.0;
  const Eigen::VectorXcd c = coefficients_in(model.basis, p, &residual);
  if (residual > 1e-8) throw InputError("polynomial is not in the fiber model's span");
  return model_norm_squared(model, c);
}

std::shared_ptr<const GramModel> fiber_model(const ExtensionProblem& prob, Complex w) {
  const std::vector<Complex> wv{w};
  return std::make_shared<const GramModel>(
      build_model(prob.fiber, prob.weight.restrict_to_fiber(wv), prob.z_degree, prob.quad));
}

}  // namespace

void ExtensionProblem::validate() const {
  const std::size_t n = fiber.arity();
  if (n == 0) throw InputError("extension needs a fiber of dimension >= 1");
  if (weight.z_arity() != n || weight.w_arity() != 1)
    throw InputError("extension weight must have arity (n, 1)");
  if (!(r > 0.0)) throw InputError("base radius must be positive");
  if (z_degree < 0 || w_degree < 0) throw InputError("basis degrees must be non-negative");
}

JointModel build_joint_model(const ExtensionProblem& prob) {
  prob.validate();
  const std::size_t n = prob.fiber.arity();
  JointModel jm;
  if (auto parts = split_weight(prob.weight)) {
    jm.separable = true;
    const GramModel mz = assemble_gram(prob.fiber, parts->first, prob.z_degree, prob.quad);
    const GramModel mw = assemble_gram(prob.base(), parts->second, prob.w_degree, prob.quad);
    const Eigen::Index pz = static_cast<Eigen::Index>(mz.size());
    const Eigen::Index pw = static_cast<Eigen::Index>(mw.size());
    jm.gram.resize(pz * pw, pz * pw);
    for (Eigen::Index a = 0; a < pz; ++a)
      for (Eigen::Index b = 0; b < pw; ++b) {
        const auto sa = static_cast<std::size_t>(a), sb = static_cast<std::size_t>(b);
        jm.labels.push_back(mz.labels[sa].concat(mw.labels[sb]));
        jm.basis.push_back(mz.basis[sa].embedded(n + 1, 0) * mw.basis[sb].embedded(n + 1, n));
        for (Eigen::Index a2 = 0; a2 < pz; ++a2)
          for (Eigen::Index b2 = 0; b2 < pw; ++b2)
            jm.gram(a * pw + b, a2 * pw + b2) = mz.gram(a, a2) * mw.gram(b, b2);
      }
    return jm;
  }

  std::vector<Complex> center = prob.fiber.center;
  std::vector<double> radii = prob.fiber.radii;
  center.push_back(prob.w0);
  radii.push_back(prob.r);
  const GramModel full = assemble_gram(Polydisc(center, radii), flatten(prob.weight),
                                       prob.z_degree + prob.w_degree, prob.quad);
  std::vector<Eigen::Index> keep;
  for (std::size_t j = 0; j < full.size(); ++j) {
    const MultiIndex& a = full.labels[j];
    if (a.head(n).order() <= prob.z_degree && a[n] <= prob.w_degree)
      keep.push_back(static_cast<Eigen::Index>(j));
  }
  const Eigen::Index k = static_cast<Eigen::Index>(keep.size());
  jm.gram.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    jm.labels.push_back(full.labels[static_cast<std::size_t>(keep[i])]);
    jm.basis.push_back(full.basis[static_cast<std::size_t>(keep[i])]);
    for (Eigen::Index j = 0; j < k; ++j) jm.gram(i, j) = full.gram(keep[i], keep[j]);
  }
  return jm;
}

ExtensionResult minimal_extension(const ExtensionProblem& prob, const Polynomial& f) {
  prob.validate();
  const std::size_t n = prob.fiber.arity();
  if (f.arity() != n) throw InputError("fiber datum has wrong arity");

  ExtensionResult res;
  res.model = build_joint_model(prob);
  const std::vector<Complex> w0{prob.w0};
  const auto& basis = res.model.basis;

  // Restriction map R: joint coefficients -> z-monomial coefficients at w0.
  std::map<MultiIndex, Eigen::Index, GradedLexLess> row;
  std::vector<Polynomial> restricted;
  for (const auto& b : basis) {
    restricted.push_back(b.restrict_trailing(n, w0));
    for (const auto& [a, c] : restricted.back().terms())
      row.try_emplace(a, static_cast<Eigen::Index>(row.size()));
  }
  for (const auto& [a, c] : f.terms()) row.try_emplace(a, static_cast<Eigen::Index>(row.size()));
  const Eigen::Index nr = static_cast<Eigen::Index>(row.size());
  const Eigen::Index p = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXcd rmat = Eigen::MatrixXcd::Zero(nr, p);
  Eigen::VectorXcd target = Eigen::VectorXcd::Zero(nr);
  for (Eigen::Index j = 0; j < p; ++j)
    for (const auto& [a, c] : restricted[static_cast<std::size_t>(j)].terms()) rmat(row.at(a), j) = c;
  for (const auto& [a, c] : f.terms()) target(row.at(a)) = c;

  res.coeffs = Eigen::VectorXcd::Zero(p);
  Eigen::VectorXcd y;
  Eigen::MatrixXcd rt;
  if (p > 0) {
    const auto t = orthonormal_transform(res.model.gram);
    rt = rmat * t.transform;
    y = rt.size() ? Eigen::VectorXcd(rt.completeOrthogonalDecomposition().solve(target))
                  : Eigen::VectorXcd::Zero(t.transform.cols());
    res.coeffs = t.transform * y;
  }
  const double fscale = std::max(1.0, f.max_abs_coeff());
  res.restriction_residual =
      nr ? (rmat * res.coeffs - target).cwiseAbs().maxCoeff() : 0.0;
  if (res.restriction_residual > 1e-9 * fscale)
    throw InputError("fiber datum is not representable by the restricted joint space");

  // Minimum-norm y lies in the row space of R T.
  double kkt = 0.0;
  if (y.size() && y.norm() > 0.0) {
    const Eigen::MatrixXcd rth = rt.adjoint();
    const Eigen::VectorXcd lambda = rth.completeOrthogonalDecomposition().solve(y);
    kkt = (rth * lambda - y).norm() / y.norm();
  }
  res.kkt_residual = std::max(kkt, res.restriction_residual / fscale);

  res.extension = Polynomial(n + 1);
  for (Eigen::Index j = 0; j < p; ++j)
    res.extension += basis[static_cast<std::size_t>(j)] * res.coeffs(j);
  res.joint_norm = p ? (res.coeffs.adjoint() * res.model.gram * res.coeffs)(0, 0).real() : 0.0;
  res.fiber_norm = fiber_poly_norm(*fiber_model(prob, prob.w0), f);
  return res;
}

double optimal_constant_check(const ExtensionProblem& prob, const ExtensionResult& ext) {
  if (!(ext.fiber_norm > 0.0)) throw InputError("fiber datum has zero norm");
  return ext.joint_norm / (std::numbers::pi * prob.r * prob.r * ext.fiber_norm);
}

double fiber_norm_squared(const ExtensionProblem& prob, const Polynomial& joint_poly, Complex w) {
  prob.validate();
  const std::vector<Complex> wv{w};
  return fiber_poly_norm(*fiber_model(prob, w),
                         joint_poly.restrict_trailing(prob.fiber.arity(), wv));
}

JensenReport jensen_chain(const ExtensionProblem& prob, const FamilyEvaluator& family,
                          std::span<const Complex> z0, int radial_nodes, int angular_nodes,
                          double tolerance) {
  prob.validate();
  const std::size_t n = prob.fiber.arity();
  if (family.z_arity() != n || family.w_arity() != 1)
    throw InputError("family arity does not match the extension problem");
  if (z0.size() != n || !prob.fiber.contains(z0)) throw InputError("z0 must lie in the fiber");

  JensenReport rep;
  rep.tolerance = tolerance;
  const std::vector<Complex> w0{prob.w0};
  const auto center_model = fiber_model(prob, prob.w0);
  const Functional xi0 = family(w0);
  const double k0 = xi_kernel(*center_model, xi0, z0);
  if (!(k0 > 0.0)) throw InputError("kernel vanishes at the center; the chain is vacuous");
  rep.log_kernel_center = std::log(k0);
  const Eigen::VectorXcd c0 = extremal_function(*center_model, xi0, z0) / std::sqrt(k0);
  const Polynomial f = model_polynomial(*center_model, c0);

  const ExtensionResult ext = minimal_extension(prob, f);
  rep.l0 = std::log(ext.fiber_norm);
  rep.l1 = std::log(ext.joint_norm / (std::numbers::pi * prob.r * prob.r));

  const int nr = radial_nodes ? radial_nodes : prob.w_degree + 6;
  const int nt = angular_nodes ? angular_nodes : 2 * prob.w_degree + 8;
  const DiscRule rule = disc_rule(prob.w0, prob.r, nr, nt);
  double total = 0.0;
  for (double x : rule.weights) total += x;

  const bool fixed = !prob.weight.depends_on_w();
  double avg_norm = 0.0, l2 = 0.0, l3 = 0.0;
  for (std::size_t k = 0; k < rule.points.size(); ++k) {
    const double omega = rule.weights[k] / total;
    const std::vector<Complex> w{rule.points[k]};
    const auto model = fixed ? center_model : fiber_model(prob, w[0]);
    const Polynomial fw = ext.extension.restrict_trailing(n, w);
    const Functional xi = family(w);
    const double norm = fiber_poly_norm(*model, fw);
    const double kw = xi_kernel(*model, xi, z0);
    const double v = std::norm(act_on_polynomial(xi, fw, z0));
    avg_norm += omega * norm;
    l2 += omega * std::log(norm);
    l3 += omega * (std::log(v) - std::log(kw));
  }
  rep.l1_quadrature = std::log(avg_norm);
  rep.l2 = l2;
  rep.l3 = l3;
  rep.holds = rep.l0 >= rep.l1 - tolerance && rep.l1 >= rep.l2 - tolerance &&
              rep.l2 >= rep.l3 - tolerance;
  return rep;
}

}  // namespace xib
