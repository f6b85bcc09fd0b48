#include "xibergman/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>

#include "xibergman/parallel.hpp"

namespace xib {

namespace {

std::vector<Complex> random_point(std::mt19937_64& rng, std::size_t m, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Complex> w(m);
  for (auto& x : w) x = std::polar(radius * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
  return w;
}

Polynomial constant_w(std::size_t m, Complex c) { return Polynomial::constant(m, c); }

}  // namespace

void IdealFamily::validate() const {
  if (n == 0) throw InputError("ideal family needs z-arity >= 1");
  if (generators.empty()) throw InputError("ideal family needs at least one generator");
  if (order < 1) throw InputError("truncation order N must be >= 1");
  for (const auto& g : generators)
    if (g.arity() != n + m) throw InputError("generator arity must be n + m");
}

IdealFamily IdealFamily::with_order(int n_order) const {
  IdealFamily f = *this;
  f.order = n_order;
  return f;
}

Eigen::VectorXcd CoeffMatrix::jet(const Polynomial& f) const {
  if (f.arity() != n) throw InputError("jet of a polynomial with wrong arity");
  Eigen::VectorXcd v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t j = 0; j < rows.size(); ++j) v(static_cast<Eigen::Index>(j)) = f.coeff(rows[j]);
  return v;
}

CoeffMatrix build_coeff_matrix(const IdealFamily& fam) {
  fam.validate();
  CoeffMatrix out;
  out.n = fam.n;
  out.m = fam.m;
  out.order = fam.order;
  out.rows = indices_up_to(fam.n, fam.order - 1);
  for (const auto& beta : out.rows)
    for (std::size_t i = 0; i < fam.generators.size(); ++i) out.columns.emplace_back(beta, i);

  std::vector<std::map<MultiIndex, Polynomial, GradedLexLess>> split;
  for (const auto& g : fam.generators) split.push_back(g.split_leading(fam.n));

  std::map<MultiIndex, std::size_t, GradedLexLess> row_of;
  for (std::size_t j = 0; j < out.rows.size(); ++j) row_of[out.rows[j]] = j;

  out.a = PolyMatrix(out.rows.size(), out.columns.size(), fam.m);
  for (std::size_t col = 0; col < out.columns.size(); ++col) {
    const auto& [beta, i] = out.columns[col];
    for (const auto& [alpha, coeff] : split[i]) {
      const MultiIndex gamma = beta + alpha;
      if (gamma.order() > fam.order - 1) continue;
      out.a(row_of.at(gamma), col) += coeff;
    }
  }
  return out;
}

int numerical_rank(const Eigen::MatrixXcd& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

RankResult max_rank(const CoeffMatrix& a, const WGrid& grid, std::uint64_t seed,
                    int random_points) {
  if (grid.empty()) throw InputError("max_rank needs a nonempty grid");
  WGrid points = grid;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < random_points; ++k) points.push_back(random_point(rng, a.m, 0.9));

  RankResult best{-1, {}};
  double best_gap = -1.0;
  for (const auto& w : points) {
    if (w.size() != a.m) throw InputError("grid point has wrong arity");
    const Eigen::MatrixXcd aw = a.a.evaluate(w);
    const int r = numerical_rank(aw);
    double gap = 1.0;
    if (r > 0) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(aw);
      gap = svd.singularValues()(r - 1) / svd.singularValues()(0);
    }
    if (r > best.rank || (r == best.rank && gap > best_gap)) {
      best = {r, w};
      best_gap = gap;
    }
  }
  return best;
}

bool AnnihilatorResult::in_u(std::span<const Complex> w) const {
  if (rank == 0) return true;
  const Eigen::MatrixXcd cw = c.evaluate(w);
  const double scale = std::pow(std::max(1.0, cw.cwiseAbs().maxCoeff()), rank);
  return std::abs(det_c.evaluate(w)) > 1e-8 * scale;
}

AnnihilatorResult annihilator(const CoeffMatrix& a, const RankResult& rank, std::uint64_t seed) {
  const std::size_t p = a.p();
  const int r = rank.rank;
  if (r < 0 || static_cast<std::size_t>(r) > p) throw InputError("rank out of range");
  AnnihilatorResult res;
  res.rank = r;
  res.p = p;
  res.witness = rank.witness;
  res.det_c = constant_w(a.m, 1.0);
  res.c = PolyMatrix(0, 0, a.m);

  if (r == 0) {
    res.b = PolyMatrix(p, p, a.m);
    for (std::size_t j = 0; j < p; ++j) res.b(j, j) = constant_w(a.m, 1.0);
    return res;
  }

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Complex> w0 = rank.witness;
  bool found = false;
  for (int attempt = 0; attempt < 10 && !found; ++attempt) {
    if (attempt > 0) w0 = random_point(rng, a.m, 0.9);
    const Eigen::MatrixXcd aw = a.a.evaluate(w0);
    if (numerical_rank(aw) != r) continue;

    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr_cols(aw);
    std::vector<std::size_t> cols;
    for (int k = 0; k < r; ++k)
      cols.push_back(static_cast<std::size_t>(qr_cols.colsPermutation().indices()(k)));
    std::sort(cols.begin(), cols.end());

    Eigen::MatrixXcd sub(aw.rows(), r);
    for (int k = 0; k < r; ++k) sub.col(k) = aw.col(static_cast<Eigen::Index>(cols[k]));
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr_rows(sub.transpose());
    std::vector<std::size_t> rows;
    for (int k = 0; k < r; ++k)
      rows.push_back(static_cast<std::size_t>(qr_rows.colsPermutation().indices()(k)));
    std::sort(rows.begin(), rows.end());

    res.pivot_rows = rows;
    res.pivot_cols = cols;
    res.c = a.a.submatrix(rows, cols);
    res.det_c = determinant(res.c);
    res.witness = w0;
    found = res.in_u(w0);
  }
  if (!found) throw InputError("degenerate input: no nonsingular pivot block after 10 witnesses");

  // Rows outside the pivot block, ascending; each borders C once.
  std::vector<std::size_t> free_rows;
  for (std::size_t j = 0; j < p; ++j)
    if (!std::binary_search(res.pivot_rows.begin(), res.pivot_rows.end(), j))
      free_rows.push_back(j);

  res.b = PolyMatrix(free_rows.size(), p, a.m);
  for (std::size_t j = 0; j < free_rows.size(); ++j) {
    std::vector<std::size_t> bordered = res.pivot_rows;
    bordered.push_back(free_rows[j]);
    const PolyMatrix mj = a.a.submatrix(bordered, res.pivot_cols);
    for (int k = 0; k < r; ++k) {
      std::vector<std::size_t> keep, all_cols;
      for (int i = 0; i <= r; ++i)
        if (i != k) keep.push_back(static_cast<std::size_t>(i));
      for (int i = 0; i < r; ++i) all_cols.push_back(static_cast<std::size_t>(i));
      Polynomial minor = determinant(mj.submatrix(keep, all_cols));
      // Cofactor sign (-1)^{(k+1) + (r+1)} with 1-based row k+1 and column r+1.
      if ((k + r) % 2 == 1) minor = -minor;
      res.b(j, res.pivot_rows[static_cast<std::size_t>(k)]) = minor;
    }
    res.b(j, free_rows[j]) = res.det_c;
  }
  return res;
}

bool annihilates_identically(const AnnihilatorResult& res, const CoeffMatrix& a, double rel_tol) {
  if (res.b.rows() == 0) return true;
  const PolyMatrix prod = res.b * a.a;
  const double scale = std::max(1.0, res.b.max_abs_coeff() * std::max(1.0, a.a.max_abs_coeff()));
  return prod.is_zero(rel_tol * scale);
}

ExactnessReport exactness_at(const AnnihilatorResult& res, const CoeffMatrix& a,
                             std::span<const Complex> w) {
  const Eigen::Index p = static_cast<Eigen::Index>(a.p());
  const Eigen::MatrixXcd aw = a.a.evaluate(w);
  ExactnessReport rep;
  rep.rank_a = numerical_rank(aw);

  Eigen::MatrixXcd kernel;
  if (res.b.rows() == 0) {
    rep.rank_b = 0;
    kernel = Eigen::MatrixXcd::Identity(p, p);
  } else {
    const Eigen::MatrixXcd bw = res.b.evaluate(w);
    rep.rank_b = numerical_rank(bw);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(bw, Eigen::ComputeFullV);
    kernel = svd.matrixV().rightCols(p - rep.rank_b);
  }
  Eigen::MatrixXcd joint(p, aw.cols() + kernel.cols());
  joint << aw, kernel;
  rep.rank_joint = numerical_rank(joint);
  const int s = static_cast<int>(p) - res.rank;
  rep.exact = rep.rank_a == res.rank && rep.rank_b == s && rep.rank_joint == res.rank;
  return rep;
}

IdealFunctionals functionals_from_annihilator(const AnnihilatorResult& res, const CoeffMatrix& a) {
  IdealFunctionals out;
  out.annihilator = res;
  out.order = a.order;
  for (std::size_t k = 0; k < res.b.rows(); ++k) {
    FunctionalFamily fam(a.n, a.m);
    for (std::size_t j = 0; j < a.p(); ++j)
      if (!res.b(k, j).is_zero()) fam.set(a.rows[j], res.b(k, j));
    out.families.push_back(std::move(fam));
  }
  return out;
}

IdealFunctionals ideal_functionals(const IdealFamily& fam, const WGrid& grid, std::uint64_t seed) {
  const CoeffMatrix a = build_coeff_matrix(fam);
  const RankResult r = max_rank(a, grid, seed);
  return functionals_from_annihilator(annihilator(a, r, seed), a);
}

bool membership_by_functionals(const IdealFunctionals& xis, std::span<const Complex> w,
                               const Polynomial& f) {
  if (!xis.in_u(w)) throw InputError("base point lies outside U (det C vanishes)");
  const double fscale = std::max(1.0, f.max_abs_coeff());
  for (const auto& fam : xis.families) {
    const Functional xi = eval_family(fam, w);
    Complex v = 0.0;
    for (const auto& [alpha, c] : xi.terms()) v += c * f.coeff(alpha);
    if (std::abs(v) > 1e-9 * fscale * std::max(1.0, norm_at_rho(xi, 1.0))) return false;
  }
  return true;
}

bool membership_oracle(const CoeffMatrix& a, std::span<const Complex> w, const Polynomial& f) {
  const Eigen::VectorXcd b = a.jet(f);
  const double tol = 1e-8 * std::max(1.0, b.norm());
  const Eigen::MatrixXcd aw = a.a.evaluate(w);
  if (aw.cols() == 0 || aw.cwiseAbs().maxCoeff() == 0.0) return b.norm() <= tol;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod;
  cod.setThreshold(1e-9);
  cod.compute(aw);
  const Eigen::VectorXcd x = cod.solve(b);
  return (aw * x - b).norm() <= tol;
}

std::vector<PsiValue> psi_n(const IdealFunctionals& xis, const WeightSpec& phi, const WGrid& grid,
                            const FiberModelParams& params) {
  const std::size_t n = params.fiber.arity();
  if (phi.z_arity() != n) throw InputError("weight z-arity does not match the fiber");
  if (params.degree < xis.order - 1)
    throw InputError("fiber basis degree must be at least N - 1");
  const std::vector<Complex> origin(n, 0.0);
  if (!params.fiber.contains(origin)) throw InputError("fiber must contain the origin");

  std::shared_ptr<const GramModel> shared;
  if (!phi.depends_on_w()) {
    std::vector<Complex> w0(phi.w_arity(), 0.0);
    shared = std::make_shared<const GramModel>(
        build_model(params.fiber, phi.restrict_to_fiber(w0), params.degree, params.quad));
  }

  std::vector<PsiValue> out(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    PsiValue& v = out[i];
    v.w = grid[i];
    v.in_u = xis.in_u(v.w);
    if (!v.in_u) return;
    const GramModel model =
        shared ? *shared
               : build_model(params.fiber, phi.restrict_to_fiber(v.w), params.degree, params.quad);
    double best = 0.0;
    for (const auto& fam : xis.families) {
      const double k = xi_kernel(model, eval_family(fam, v.w), origin);
      v.kernels.push_back(k);
      best = std::max(best, k);
    }
    v.minus_infinity = best <= 1e-14;
    v.value = v.minus_infinity ? -std::numeric_limits<double>::infinity() : std::log(best);
  });
  return out;
}

LambdaScan lambda_scan(const IdealFamily& fam, const WeightSpec& phi, const WGrid& grid,
                       const FiberModelParams& params, std::uint64_t seed) {
  const CoeffMatrix a = build_coeff_matrix(fam);
  const IdealFunctionals xis = functionals_from_annihilator(annihilator(a, max_rank(a, grid, seed), seed), a);
  const auto psi = psi_n(xis, phi, grid, params);

  LambdaScan scan;
  scan.order = fam.order;
  scan.points.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    LambdaPoint& pt = scan.points[i];
    pt.w = grid[i];
    pt.psi = psi[i];
    pt.in_u = psi[i].in_u;
    if (!pt.in_u) continue;
    const auto gens = multiplier_ideal_generators(phi.restrict_to_fiber(pt.w));
    pt.by_functionals = std::all_of(gens.begin(), gens.end(), [&](const Polynomial& g) {
      return membership_by_functionals(xis, pt.w, g);
    });
    pt.by_oracle = std::all_of(gens.begin(), gens.end(), [&](const Polynomial& g) {
      return membership_oracle(a, pt.w, g);
    });
    if (pt.psi.minus_infinity) scan.from_psi.push_back(i);
    if (pt.by_functionals) scan.from_functionals.push_back(i);
    if (pt.by_oracle) scan.from_oracle.push_back(i);
    if (pt.psi.minus_infinity != pt.by_functionals || pt.by_functionals != pt.by_oracle)
      scan.mismatches.push_back(i);
  }
  scan.agree = scan.mismatches.empty();
  return scan;
}

KrullReport krull_stabilize(const IdealFamily& fam, const WeightSpec& phi, const WGrid& grid,
                            int max_order, const FiberModelParams& params, std::uint64_t seed) {
  if (max_order < 2) throw InputError("krull stabilization needs Nmax >= 2");
  KrullReport rep;
  for (int n_order = 1; n_order <= max_order; ++n_order)
    rep.levels.push_back(lambda_scan(fam.with_order(n_order), phi, grid, params, seed));

  auto in_lambda = [](const LambdaScan& s, std::size_t i) {
    return std::binary_search(s.from_psi.begin(), s.from_psi.end(), i);
  };
  for (std::size_t l = 1; l < rep.levels.size(); ++l) {
    const auto& prev = rep.levels[l - 1];
    const auto& cur = rep.levels[l];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (!prev.points[i].in_u || !cur.points[i].in_u) continue;
      if (in_lambda(cur, i) && !in_lambda(prev, i)) {
        rep.nested = false;
        rep.nesting_violations.emplace_back(cur.order, i);
      }
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    bool seen = false, all = true;
    for (const auto& s : rep.levels) {
      if (!s.points[i].in_u) continue;
      seen = true;
      all = all && in_lambda(s, i);
    }
    if (seen && all) rep.intersection.push_back(i);
  }
  rep.stabilized_order = max_order;
  for (int l = static_cast<int>(rep.levels.size()) - 1; l >= 0; --l) {
    if (rep.levels[static_cast<std::size_t>(l)].from_psi != rep.levels.back().from_psi) break;
    rep.stabilized_order = rep.levels[static_cast<std::size_t>(l)].order;
  }
  return rep;
}

WGrid square_grid(int side, double half_width) {
  if (side < 1) throw InputError("grid side must be >= 1");
  WGrid g;
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const double x = side == 1 ? 0.0 : half_width * (2 * i - (side - 1)) / (side - 1);
      const double y = side == 1 ? 0.0 : half_width * (2 * j - (side - 1)) / (side - 1);
      g.push_back({Complex(x, y)});
    }
  return g;
}

}  // namespace xib
