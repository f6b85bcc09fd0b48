#include "xibergman/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace xib {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw InputError("Gauss-Legendre needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = mid;
  return rule;
}

QuadratureRule graded_gauss_legendre(double b, double h0, double ratio, int points_per_panel) {
  if (!(b > 0.0) || !(h0 > 0.0) || !(ratio > 1.0))
    throw InputError("graded rule needs b > 0, h0 > 0, ratio > 1");
  std::vector<double> edges{0.0};
  double e = std::min(h0, b);
  while (e < b) {
    edges.push_back(e);
    e *= ratio;
  }
  edges.push_back(b);
  QuadratureRule out;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const auto panel = gauss_legendre(points_per_panel, edges[k], edges[k + 1]);
    out.nodes.insert(out.nodes.end(), panel.nodes.begin(), panel.nodes.end());
    out.weights.insert(out.weights.end(), panel.weights.begin(), panel.weights.end());
  }
  return out;
}

DiscRule disc_rule(Complex center, double radius, int radial_nodes, int angular_nodes,
                   double inner) {
  if (!(radius > 0.0) || inner < 0.0 || inner >= radius)
    throw InputError("disc rule needs 0 <= inner < radius");
  const auto radial = gauss_legendre(radial_nodes, inner, radius);
  DiscRule rule;
  rule.points.reserve(static_cast<std::size_t>(radial_nodes * angular_nodes));
  const double dtheta = 2.0 * std::numbers::pi / angular_nodes;
  for (int a = 0; a < angular_nodes; ++a) {
    const Complex dir = std::polar(1.0, a * dtheta);
    for (int k = 0; k < radial_nodes; ++k) {
      const double r = radial.nodes[k];
      rule.points.push_back(center + r * dir);
      rule.weights.push_back(radial.weights[k] * r * dtheta);
    }
  }
  return rule;
}

}  // namespace xib
