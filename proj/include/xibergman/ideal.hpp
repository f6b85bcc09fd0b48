#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "xibergman/bergman.hpp"
#include "xibergman/family.hpp"
#include "xibergman/poly_matrix.hpp"
#include "xibergman/weights.hpp"

namespace xib {

using WGrid = std::vector<std::vector<Complex>>;

/// Ideal I generated by F_1..F_t in O(z, w), studied fiberwise through
/// I_w + m^N with m the maximal ideal at the origin of C^n.
struct IdealFamily {
  std::size_t n = 1;
  std::size_t m = 1;
  std::vector<Polynomial> generators;  // arity n + m
  int order = 2;                       // N

  void validate() const;
  IdealFamily with_order(int n_order) const;
};

/// Jet matrix of I_w mod m^N. Row j is the coefficient of rows[j]; column
/// (beta, i) holds z^beta F_i(., w) reduced mod m^N, entries polynomial in w.
struct CoeffMatrix {
  std::size_t n = 1;
  std::size_t m = 1;
  int order = 2;
  std::vector<MultiIndex> rows;
  std::vector<std::pair<MultiIndex, std::size_t>> columns;
  PolyMatrix a;

  std::size_t p() const { return rows.size(); }
  std::size_t q() const { return columns.size(); }
  /// Coefficient vector of f mod m^N in the row basis.
  Eigen::VectorXcd jet(const Polynomial& f) const;
};

CoeffMatrix build_coeff_matrix(const IdealFamily& fam);

/// Singular values above rel_tol * sigma_max.
int numerical_rank(const Eigen::MatrixXcd& a, double rel_tol = 1e-9);

struct RankResult {
  int rank = 0;
  std::vector<Complex> witness;
};

/// Max numerical rank of A(w) over the grid plus seeded random points of the
/// polydisc of radius 0.9 (the generic points).
RankResult max_rank(const CoeffMatrix& a, const WGrid& grid, std::uint64_t seed = 0,
                    int random_points = 16);

/// Holomorphic left annihilator of A(w) built from bordered-minor cofactors
/// around a nonsingular r x r block C(w).
struct AnnihilatorResult {
  int rank = 0;
  std::size_t p = 0;
  std::vector<Complex> witness;
  std::vector<std::size_t> pivot_rows;  // rows of C in A
  std::vector<std::size_t> pivot_cols;  // columns of C in A
  PolyMatrix c;
  Polynomial det_c;
  PolyMatrix b;  // (p - r) x p

  /// |det C(w)| > 1e-8 * max(1, max |C(w)_ij|)^r.
  bool in_u(std::span<const Complex> w) const;
};

/// Throws InputError when no witness near the given one has a nonsingular
/// pivot block after 10 attempts.
AnnihilatorResult annihilator(const CoeffMatrix& a, const RankResult& rank,
                              std::uint64_t seed = 0);

/// B * A vanishes identically (coefficients below rel_tol times the scale of
/// the factors).
bool annihilates_identically(const AnnihilatorResult& res, const CoeffMatrix& a,
                             double rel_tol = 1e-10);

struct ExactnessReport {
  int rank_a = 0;
  int rank_b = 0;
  int rank_joint = 0;  // rank [A(w) | ker B(w)]
  bool exact = false;
};

ExactnessReport exactness_at(const AnnihilatorResult& res, const CoeffMatrix& a,
                             std::span<const Complex> w);

/// xi_k(w)_alpha = b_{k alpha}(w) for |alpha| <= N - 1.
struct IdealFunctionals {
  std::vector<FunctionalFamily> families;
  AnnihilatorResult annihilator;
  int order = 2;

  bool in_u(std::span<const Complex> w) const { return annihilator.in_u(w); }
};

IdealFunctionals functionals_from_annihilator(const AnnihilatorResult& res, const CoeffMatrix& a);

/// Builds A, finds the max rank, the annihilator and its functionals.
IdealFunctionals ideal_functionals(const IdealFamily& fam, const WGrid& grid,
                                   std::uint64_t seed = 0);

/// f in I_w + m^N decided by (xi_k(w) . f)(o) = 0 for all k. Refuses w
/// outside U.
bool membership_by_functionals(const IdealFunctionals& xis, std::span<const Complex> w,
                               const Polynomial& f);

/// Least-squares test that the jet of f lies in the column span of A(w).
bool membership_oracle(const CoeffMatrix& a, std::span<const Complex> w, const Polynomial& f);

struct FiberModelParams {
  Polydisc fiber = Polydisc::unit(1);
  int degree = 8;
  QuadSpec quad;
};

struct PsiValue {
  std::vector<Complex> w;
  bool in_u = false;
  bool minus_infinity = false;
  double value = 0.0;  // sup_k log K_k, meaningful when in_u and finite
  std::vector<double> kernels;
};

/// Psi_N(w) = sup_k log K^{phi_w}_{xi_k(w)}(o); -inf when every kernel is
/// <= 1e-14. phi is a joint weight of arity (n, m).
std::vector<PsiValue> psi_n(const IdealFunctionals& xis, const WeightSpec& phi,
                            const WGrid& grid, const FiberModelParams& params);

struct LambdaPoint {
  std::vector<Complex> w;
  bool in_u = false;
  PsiValue psi;
  bool by_functionals = false;  // every multiplier generator passes the functionals
  bool by_oracle = false;       // every multiplier generator lies in I_w + m^N
};

/// Grid section of Lambda_N: indices of U-grid points where each set holds.
struct LambdaScan {
  int order = 2;
  std::vector<LambdaPoint> points;
  std::vector<std::size_t> from_psi;
  std::vector<std::size_t> from_functionals;
  std::vector<std::size_t> from_oracle;
  std::vector<std::size_t> mismatches;
  bool agree = true;
};

LambdaScan lambda_scan(const IdealFamily& fam, const WeightSpec& phi, const WGrid& grid,
                       const FiberModelParams& params, std::uint64_t seed = 0);

struct KrullReport {
  std::vector<LambdaScan> levels;  // N = 1..Nmax
  bool nested = true;
  std::vector<std::pair<int, std::size_t>> nesting_violations;  // (N, grid index)
  std::vector<std::size_t> intersection;
  int stabilized_order = 1;
};

KrullReport krull_stabilize(const IdealFamily& fam, const WeightSpec& phi, const WGrid& grid,
                            int max_order, const FiberModelParams& params,
                            std::uint64_t seed = 0);

/// side x side lattice on [-half_width, half_width]^2 in C (m = 1).
WGrid square_grid(int side, double half_width);

}  // namespace xib
