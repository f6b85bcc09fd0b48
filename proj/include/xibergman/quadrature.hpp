#pragma once

#include <vector>

#include "xibergman/multi_index.hpp"

namespace xib {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree
/// 2n - 1.
QuadratureRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Composite Gauss-Legendre on geometrically graded panels
/// [0, h0], [h0, h0 q], ..., [.., b], resolving integrands that vary on a
/// small scale h0 near the origin.
QuadratureRule graded_gauss_legendre(double b, double h0, double ratio, int points_per_panel);

/// Polar rule on the disc |z - center| < radius (minus |z - center| < inner):
/// Gauss-Legendre in r times the uniform trapezoid in theta. Weights include
/// the Jacobian r. The angular rule integrates e^{ik theta} exactly for
/// |k| < angular_nodes.
struct DiscRule {
  std::vector<Complex> points;
  std::vector<double> weights;
};

DiscRule disc_rule(Complex center, double radius, int radial_nodes, int angular_nodes,
                   double inner = 0.0);

}  // namespace xib
