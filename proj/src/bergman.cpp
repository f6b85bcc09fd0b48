#include "xibergman/bergman.hpp"

#include <algorithm>
#include <cmath>

#include "xibergman/parallel.hpp"
#include "xibergman/quadrature.hpp"

namespace xib {

namespace {

void validate(const QuadSpec& q, const Polydisc& domain) {
  if ((q.radial_nodes && q.radial_nodes < 4) || (q.angular_nodes && q.angular_nodes < 4))
    throw InputError("quadrature node counts must be >= 4");
  const double rmin = *std::min_element(domain.radii.begin(), domain.radii.end());
  if (q.inner_cutoff < 0.0 || q.inner_cutoff >= rmin / 10.0)
    throw InputError("inner cutoff must satisfy 0 <= eps0 < min radius / 10");
}

Polynomial divisor_factor(const FiberWeightParts& parts, std::size_t n) {
  Polynomial factor = Polynomial::constant(n, 1.0);
  for (const auto& [g, c] : parts.divisors) {
    const double k = std::round(c);
    if (std::abs(c - k) > 1e-12 || k < 1)
      throw InputError("log-divisor weights in a Gram model need a positive integer c");
    for (int i = 0; i < static_cast<int>(k); ++i) factor = factor * g;
  }
  return factor;
}

Polynomial shifted_monomial(const MultiIndex& alpha, std::span<const Complex> center) {
  // (z - c)^alpha in absolute coordinates.
  const std::size_t n = alpha.arity();
  Polynomial p = Polynomial::constant(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial lin = Polynomial::variable(n, i) - Polynomial::constant(n, center[i]);
    for (int k = 0; k < alpha[i]; ++k) p = p * lin;
  }
  return p;
}

Eigen::MatrixXcd quadrature_gram(const GramModel& model, const FiberWeightParts& parts,
                                 const QuadSpec& quad) {
  const std::size_t n = model.domain.arity();
  const std::size_t p = model.labels.size();
  const int d = model.degree;
  const bool smooth = !parts.smooth.empty();
  const bool singular = parts.has_log_monomial();
  const int nr = quad.radial_nodes ? quad.radial_nodes
                                   : std::max(8, d + 4 + (smooth ? 12 : 0) + (singular ? 8 : 0));
  const int nt = quad.angular_nodes ? quad.angular_nodes : std::max(8, 2 * d + 8 + (smooth ? 16 : 0));

  std::vector<DiscRule> rules;
  for (std::size_t i = 0; i < n; ++i)
    rules.push_back(disc_rule(model.domain.center[i], model.domain.radii[i], nr, nt,
                              quad.inner_cutoff));
  const std::size_t per = rules.front().points.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= per;

  const std::size_t chunk = 2048;
  const std::size_t chunks = (total + chunk - 1) / chunk;
  std::vector<Eigen::MatrixXcd> partial(chunks);

  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * chunk, end = std::min(total, begin + chunk);
    Eigen::MatrixXcd v(end - begin, p);
    std::vector<Complex> z(n);
    std::vector<std::vector<Complex>> pw(n, std::vector<Complex>(d + 1));
    for (std::size_t node = begin; node < end; ++node) {
      std::size_t rem = node;
      double w = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t k = rem % per;
        rem /= per;
        z[i] = rules[i].points[k];
        w *= rules[i].weights[k];
      }
      double log_weight = -parts.constant - parts.smooth_value(z);
      for (std::size_t i = 0; i < n; ++i)
        if (parts.log_monomial[i] != 0.0)
          log_weight -= 2.0 * parts.log_monomial[i] * std::log(std::abs(z[i]));
      const double scale = std::sqrt(w * std::exp(log_weight));
      for (std::size_t i = 0; i < n; ++i) {
        pw[i][0] = 1.0;
        const Complex u = z[i] - model.domain.center[i];
        for (int e = 1; e <= d; ++e) pw[i][e] = pw[i][e - 1] * u;
      }
      // |factor|^2 cancels the divisor part of e^{-psi}; only monomials remain.
      for (std::size_t j = 0; j < p; ++j) {
        Complex b = scale;
        for (std::size_t i = 0; i < n; ++i) b *= pw[i][model.labels[j][i]];
        v(static_cast<Eigen::Index>(node - begin), static_cast<Eigen::Index>(j)) = b;
      }
    }
    partial[c] = v.adjoint() * v;
  });

  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(p, p);
  for (const auto& m : partial) g += m;
  return 0.5 * (g + g.adjoint());
}

}  // namespace

GramModel assemble_gram(const Polydisc& domain, const WeightSpec& fiber_weight, int degree,
                        const QuadSpec& quad) {
  if (degree < 0) throw InputError("basis degree must be non-negative");
  if (fiber_weight.w_arity() != 0 || fiber_weight.z_arity() != domain.arity())
    throw InputError("model weight must be a fiber weight on the domain's arity");
  validate(quad, domain);
  const std::size_t n = domain.arity();
  const auto parts = decompose(fiber_weight);

  GramModel model;
  model.domain = domain;
  model.weight = fiber_weight;
  model.degree = degree;
  model.factor = Polynomial::constant(n, 1.0);
  if (parts.minus_infinity) {
    model.excluded = indices_up_to(n, degree);
    model.gram.resize(0, 0);
    return model;
  }
  model.factor = divisor_factor(parts, n);
  for (const auto& alpha : indices_up_to(n, degree)) {
    if (std::isinf(monomial_moment(domain.radii, alpha, parts.log_monomial)))
      model.excluded.push_back(alpha);
    else
      model.labels.push_back(alpha);
  }
  for (const auto& alpha : model.labels)
    model.basis.push_back(model.factor * shifted_monomial(alpha, domain.center));

  const std::size_t p = model.labels.size();
  const bool closed = parts.smooth.empty() && !quad.force_quadrature &&
                      (!parts.has_log_monomial() || domain.centered_at_origin());
  model.closed_form = closed;
  if (p == 0) {
    model.gram.resize(0, 0);
    return model;
  }
  if (closed) {
    // Radial weight about the center: monomials are orthogonal and the
    // divisor factor cancels against e^{-2c log|g|}.
    model.gram = Eigen::MatrixXcd::Zero(p, p);
    const double shift = std::exp(-parts.constant);
    for (std::size_t j = 0; j < p; ++j)
      model.gram(j, j) = shift * monomial_moment(domain.radii, model.labels[j], parts.log_monomial);
  } else {
    model.gram = quadrature_gram(model, parts, quad);
  }
  return model;
}

OrthonormalTransform orthonormal_transform(const Eigen::MatrixXcd& gram, double cutoff) {
  OrthonormalTransform out;
  const Eigen::Index p = gram.rows();
  if (p == 0) {
    out.transform.resize(0, 0);
    return out;
  }
  const Eigen::MatrixXcd off = gram - Eigen::MatrixXcd(gram.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() == 0.0) {
    // Diagonal Gram: sort eigenvalues ascending to match the general path.
    std::vector<Eigen::Index> order(p);
    for (Eigen::Index i = 0; i < p; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return gram(a, a).real() < gram(b, b).real();
    });
    out.eigenvalues.resize(p);
    for (Eigen::Index i = 0; i < p; ++i) out.eigenvalues(i) = gram(order[i], order[i]).real();
    const double lmax = out.eigenvalues.maxCoeff();
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < p; ++i)
      if (lmax > 0.0 && gram(i, i).real() > cutoff * lmax) keep.push_back(i);
    out.rank = static_cast<int>(keep.size());
    out.transform = Eigen::MatrixXcd::Zero(p, out.rank);
    for (int k = 0; k < out.rank; ++k)
      out.transform(keep[k], k) = 1.0 / std::sqrt(gram(keep[k], keep[k]).real());
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  out.eigenvalues = es.eigenvalues();
  const double lmax = out.eigenvalues.maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < p; ++i)
    if (lmax > 0.0 && out.eigenvalues(i) > cutoff * lmax) keep.push_back(i);
  out.rank = static_cast<int>(keep.size());
  out.transform.resize(p, out.rank);
  for (int k = 0; k < out.rank; ++k)
    out.transform.col(k) = es.eigenvectors().col(keep[k]) / std::sqrt(out.eigenvalues(keep[k]));
  return out;
}

GramModel orthonormalize(GramModel model, double cutoff) {
  auto t = orthonormal_transform(model.gram, cutoff);
  model.transform = std::move(t.transform);
  model.eigenvalues = std::move(t.eigenvalues);
  model.rank = t.rank;
  return model;
}

GramModel build_model(const Polydisc& domain, const WeightSpec& fiber_weight, int degree,
                      const QuadSpec& quad) {
  return orthonormalize(assemble_gram(domain, fiber_weight, degree, quad));
}

Eigen::VectorXcd functional_on_basis(const GramModel& model, const Functional& xi,
                                     std::span<const Complex> z) {
  if (xi.arity() != model.domain.arity()) throw InputError("functional arity does not match model");
  if (!model.domain.contains(z)) throw InputError("kernel point lies outside the domain");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(model.basis.size()));
  for (std::size_t j = 0; j < model.basis.size(); ++j)
    v(static_cast<Eigen::Index>(j)) = act_on_polynomial(xi, model.basis[j], z);
  return v;
}

double xi_kernel(const GramModel& model, const Functional& xi, std::span<const Complex> z) {
  if (!model.orthonormalized()) throw InputError("model must be orthonormalized");
  const Eigen::VectorXcd v = functional_on_basis(model, xi, z);
  if (model.rank == 0) return 0.0;
  return (model.transform.transpose() * v).squaredNorm();
}

Eigen::VectorXcd extremal_function(const GramModel& model, const Functional& xi,
                                   std::span<const Complex> z) {
  if (!model.orthonormalized()) throw InputError("model must be orthonormalized");
  const Eigen::VectorXcd v = functional_on_basis(model, xi, z);
  if (model.rank == 0) throw InputError("kernel vanishes: no extremal function");
  const Eigen::VectorXcd u = model.transform.transpose() * v;
  if (u.squaredNorm() == 0.0) throw InputError("kernel vanishes: no extremal function");
  return model.transform * u.conjugate();
}

double model_norm_squared(const GramModel& model, const Eigen::VectorXcd& coeffs) {
  return (coeffs.adjoint() * model.gram * coeffs)(0, 0).real();
}

Polynomial model_polynomial(const GramModel& model, const Eigen::VectorXcd& coeffs) {
  Polynomial f(model.domain.arity());
  for (std::size_t j = 0; j < model.basis.size(); ++j)
    f += model.basis[j] * coeffs(static_cast<Eigen::Index>(j));
  return f;
}

double boundedness_constant(const GramModel& model, const Functional& xi,
                            std::span<const std::vector<Complex>> grid) {
  if (grid.empty()) throw InputError("boundedness constant needs a nonempty grid");
  double c = 0.0;
  for (const auto& z : grid) c = std::max(c, xi_kernel(model, xi, z));
  return c;
}

}  // namespace xib
