#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "xibergman/functional.hpp"
#include "xibergman/weights.hpp"

namespace xib {

/// Polar tensor quadrature controls. Zero node counts pick defaults from the
/// basis degree.
struct QuadSpec {
  int radial_nodes = 0;
  int angular_nodes = 0;
  double inner_cutoff = 0.0;
  /// Assemble by quadrature even when a closed form exists.
  bool force_quadrature = false;
};

/// Truncated model of A^2(D, e^{-psi}) on a polydisc.
///
/// Basis elements are factor * (z - center)^alpha, alpha running over the
/// retained labels (|alpha| <= degree, infinite-moment monomials dropped).
/// The factor is prod g_k^{c_k} over the log-divisor terms of psi, which
/// cancels their singularity exactly. gram(j, k) = int conj(b_j) b_k e^{-psi},
/// so a coefficient vector c has norm c^H G c.
struct GramModel {
  Polydisc domain;
  WeightSpec weight = WeightSpec::zero(1);
  int degree = 0;
  Polynomial factor;
  std::vector<MultiIndex> labels;
  std::vector<MultiIndex> excluded;
  std::vector<Polynomial> basis;
  Eigen::MatrixXcd gram;
  bool closed_form = false;

  // Filled by orthonormalize().
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd transform;  // p x rank, columns are orthonormal vectors
  int rank = -1;

  std::size_t size() const { return labels.size(); }
  bool orthonormalized() const { return rank >= 0; }
  /// A^2 model is {0}: every basis element excluded or psi == -inf.
  bool empty() const { return labels.empty(); }
};

GramModel assemble_gram(const Polydisc& domain, const WeightSpec& fiber_weight, int degree,
                        const QuadSpec& quad = {});

struct OrthonormalTransform {
  Eigen::MatrixXcd transform;
  Eigen::VectorXd eigenvalues;  // ascending
  int rank = 0;
};

/// Eigendecomposition G = Q L Q^H, dropping eigenvalues below
/// cutoff * lambda_max; transform = Q_r L_r^{-1/2}.
OrthonormalTransform orthonormal_transform(const Eigen::MatrixXcd& gram, double cutoff = 1e-12);

GramModel orthonormalize(GramModel model, double cutoff = 1e-12);

/// assemble_gram followed by orthonormalize.
GramModel build_model(const Polydisc& domain, const WeightSpec& fiber_weight, int degree,
                      const QuadSpec& quad = {});

/// (xi . b_j)(z) for every basis element.
Eigen::VectorXcd functional_on_basis(const GramModel& model, const Functional& xi,
                                     std::span<const Complex> z);

/// Truncated-space kernel sum_k |(xi . e_k)(z)|^2; 0 for an empty model.
double xi_kernel(const GramModel& model, const Functional& xi, std::span<const Complex> z);

/// Basis coefficients of F0 = sum_k conj((xi . e_k)(z)) e_k, which attains
/// the kernel. Throws when the kernel vanishes.
Eigen::VectorXcd extremal_function(const GramModel& model, const Functional& xi,
                                   std::span<const Complex> z);

/// ||f||^2 = c^H G c for basis coefficients c.
double model_norm_squared(const GramModel& model, const Eigen::VectorXcd& coeffs);

/// Polynomial represented by basis coefficients.
Polynomial model_polynomial(const GramModel& model, const Eigen::VectorXcd& coeffs);

/// Optimal C_K = max of the kernel over the grid.
double boundedness_constant(const GramModel& model, const Functional& xi,
                            std::span<const std::vector<Complex>> grid);

}  // namespace xib
