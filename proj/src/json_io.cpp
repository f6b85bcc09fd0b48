#include "xibergman/json_io.hpp"

#include <algorithm>
#include <cmath>

namespace xib {

void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                [&](const char* a) { return key == a; });
    if (!ok) throw InputError(where + ": unknown key '" + key + "'");
  }
}

namespace {

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing key '" + key + "'");
  return j.at(key);
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + ": expected a number");
  return j.get<double>();
}

int integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<int>();
}

MultiIndex index_from_json(const Json& j, std::size_t arity, const std::string& where) {
  if (!j.is_array() || j.size() != arity)
    throw InputError(where + ": exponent list must have length " + std::to_string(arity));
  std::vector<int> e;
  for (const auto& x : j) {
    const int v = integer(x, where);
    if (v < 0) throw InputError(where + ": negative exponent");
    e.push_back(v);
  }
  return MultiIndex(std::move(e));
}

std::vector<double> numbers(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a list of numbers");
  std::vector<double> v;
  for (const auto& x : j) v.push_back(number(x, where));
  return v;
}

}  // namespace

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError("complex value must be a number or [re, im]");
}

Json to_json(Complex c) { return Json::array({c.real() + 0.0, c.imag() + 0.0}); }

std::vector<Complex> complex_vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected a list of complex values");
  std::vector<Complex> v;
  for (const auto& x : j) v.push_back(complex_from_json(x));
  return v;
}

Polynomial polynomial_from_json(const Json& j, std::size_t arity) {
  if (!j.is_array()) throw InputError("polynomial must be a list of terms");
  Polynomial p(arity);
  for (const auto& t : j) {
    require_keys(t, {"exp", "c"}, "polynomial term");
    p.add_term(index_from_json(need(t, "exp", "polynomial term"), arity, "polynomial term"),
               complex_from_json(need(t, "c", "polynomial term")));
  }
  return p;
}

Json to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& [alpha, c] : p.terms())
    out.push_back({{"exp", alpha.entries()}, {"c", to_json(c)}});
  return out;
}

Polydisc polydisc_from_json(const Json& j) {
  require_keys(j, {"center", "radii"}, "polydisc");
  const auto radii = numbers(need(j, "radii", "polydisc"), "polydisc radii");
  std::vector<Complex> center(radii.size(), 0.0);
  if (j.contains("center")) center = complex_vector_from_json(j.at("center"));
  return Polydisc(center, radii);
}

Json to_json(const Polydisc& d) {
  Json c = Json::array();
  for (auto x : d.center) c.push_back(to_json(x));
  return {{"center", c}, {"radii", d.radii}};
}

WeightSpec weight_from_json(const Json& j, std::size_t n, std::size_t m) {
  if (!j.is_object()) throw InputError("weight must be an object");
  const std::string kind = need(j, "kind", "weight").get<std::string>();
  if (kind == "zero") {
    require_keys(j, {"kind"}, "zero weight");
    return WeightSpec::zero(n, m);
  }
  if (kind == "constant") {
    require_keys(j, {"kind", "value"}, "constant weight");
    return WeightSpec::constant(n, m, number(need(j, "value", "constant weight"), "value"));
  }
  if (kind == "quadratic" || kind == "logMonomial") {
    require_keys(j, {"kind", "coeffs"}, kind + " weight");
    auto c = numbers(need(j, "coeffs", kind), kind + " coeffs");
    return kind == "quadratic" ? WeightSpec::quadratic(n, m, std::move(c))
                               : WeightSpec::log_monomial(n, m, std::move(c));
  }
  if (kind == "logDivisor") {
    require_keys(j, {"kind", "g", "c"}, "logDivisor weight");
    const double c = j.contains("c") ? number(j.at("c"), "logDivisor c") : 1.0;
    return WeightSpec::log_divisor(n, polynomial_from_json(need(j, "g", "logDivisor"), n + m), c);
  }
  if (kind == "modulusSquared") {
    require_keys(j, {"kind", "h", "c"}, "modulusSquared weight");
    const double c = j.contains("c") ? number(j.at("c"), "modulusSquared c") : 1.0;
    return WeightSpec::modulus_squared(n, polynomial_from_json(need(j, "h", "modulusSquared"), n + m),
                                       c);
  }
  if (kind == "sum") {
    require_keys(j, {"kind", "terms"}, "sum weight");
    std::vector<WeightSpec> terms;
    for (const auto& t : need(j, "terms", "sum weight")) terms.push_back(weight_from_json(t, n, m));
    if (terms.empty()) throw InputError("sum weight needs at least one term");
    return WeightSpec::sum(std::move(terms));
  }
  throw InputError("unknown weight kind '" + kind + "'");
}

Functional functional_from_json(const Json& j, std::size_t n) {
  if (!j.is_object()) throw InputError("functional must be an object");
  const std::string kind = need(j, "kind", "functional").get<std::string>();
  if (kind == "dirac") {
    require_keys(j, {"kind"}, "dirac functional");
    return Functional::dirac(n);
  }
  if (kind == "derivative") {
    require_keys(j, {"kind", "alpha", "scale"}, "derivative functional");
    const Complex s = j.contains("scale") ? complex_from_json(j.at("scale")) : Complex(1.0);
    return Functional::derivative(index_from_json(need(j, "alpha", "derivative"), n, "alpha"), s);
  }
  if (kind == "terms") {
    require_keys(j, {"kind", "terms"}, "functional");
    Functional xi(n);
    for (const auto& t : need(j, "terms", "functional")) {
      require_keys(t, {"alpha", "c"}, "functional term");
      const MultiIndex a = index_from_json(need(t, "alpha", "functional term"), n, "alpha");
      xi.set(a, xi.coeff(a) + complex_from_json(need(t, "c", "functional term")));
    }
    return xi;
  }
  throw InputError("unknown functional kind '" + kind + "'");
}

FamilyEvaluator family_from_json(const Json& j, std::size_t n, std::size_t m) {
  if (!j.is_object()) throw InputError("family must be an object");
  const std::string kind = need(j, "kind", "family").get<std::string>();
  bool anti = false;
  if (j.contains("antiHolomorphic")) {
    if (!j.at("antiHolomorphic").is_boolean()) throw InputError("antiHolomorphic must be a boolean");
    anti = j.at("antiHolomorphic").get<bool>();
  }
  FunctionalFamily fam(n, m);
  if (kind == "constant") {
    require_keys(j, {"kind", "functional", "antiHolomorphic"}, "constant family");
    fam = FunctionalFamily::constant(functional_from_json(need(j, "functional", "family"), n), m);
  } else if (kind == "terms") {
    require_keys(j, {"kind", "terms", "antiHolomorphic"}, "family");
    for (const auto& t : need(j, "terms", "family")) {
      require_keys(t, {"alpha", "coeff"}, "family term");
      fam.set(index_from_json(need(t, "alpha", "family term"), n, "alpha"),
              polynomial_from_json(need(t, "coeff", "family term"), m));
    }
  } else {
    throw InputError("unknown family kind '" + kind + "'");
  }
  return FamilyEvaluator(std::move(fam), anti);
}

Json to_json(const FunctionalFamily& fam) {
  Json terms = Json::array();
  for (const auto& [alpha, coeff] : fam.terms())
    terms.push_back({{"alpha", alpha.entries()}, {"coeff", to_json(coeff)}});
  return {{"kind", "terms"}, {"terms", terms}};
}

QuadSpec quad_from_json(const Json& j) {
  require_keys(j, {"radialNodes", "angularNodes", "innerCutoff", "forceQuadrature"}, "quadrature");
  QuadSpec q;
  if (j.contains("radialNodes")) q.radial_nodes = integer(j.at("radialNodes"), "radialNodes");
  if (j.contains("angularNodes")) q.angular_nodes = integer(j.at("angularNodes"), "angularNodes");
  if (j.contains("innerCutoff")) q.inner_cutoff = number(j.at("innerCutoff"), "innerCutoff");
  if (j.contains("forceQuadrature")) q.force_quadrature = j.at("forceQuadrature").get<bool>();
  return q;
}

WGrid grid_from_json(const Json& j, std::size_t m) {
  require_keys(j, {"side", "halfWidth", "points"}, "grid");
  if (j.contains("points")) {
    WGrid g;
    for (const auto& p : j.at("points")) {
      auto w = complex_vector_from_json(p);
      if (w.size() != m) throw InputError("grid point has wrong arity");
      g.push_back(std::move(w));
    }
    if (g.empty()) throw InputError("grid has no points");
    return g;
  }
  if (m != 1) throw InputError("lattice grids need base dimension 1; give explicit points");
  return square_grid(integer(need(j, "side", "grid"), "side"),
                     number(need(j, "halfWidth", "grid"), "halfWidth"));
}

IdealFamily ideal_from_json(const Json& j) {
  require_keys(j, {"n", "m", "generators", "order"}, "ideal");
  IdealFamily fam;
  fam.n = static_cast<std::size_t>(integer(need(j, "n", "ideal"), "n"));
  fam.m = static_cast<std::size_t>(integer(need(j, "m", "ideal"), "m"));
  if (j.contains("order")) fam.order = integer(j.at("order"), "order");
  for (const auto& g : need(j, "generators", "ideal"))
    fam.generators.push_back(polynomial_from_json(g, fam.n + fam.m));
  fam.validate();
  return fam;
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json to_json(const PolyMatrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < a.cols(); ++k) row.push_back(to_json(a(i, k)));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const PshReport& r) {
  Json center = Json::array();
  for (auto c : r.center) center.push_back(to_json(c));
  return {{"center", center},
          {"radius", r.radius},
          {"samples", r.samples},
          {"centerValue", finite_or_null(r.center_value)},
          {"circleAverage", finite_or_null(r.circle_average)},
          {"maxViolation", finite_or_null(r.max_violation)},
          {"infinityCount", r.infinity_count},
          {"tolerance", r.tolerance},
          {"verdict", to_string(r.verdict)},
          {"diagnostic", r.diagnostic}};
}

Json to_json(const UscReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) levels.push_back({{"radius", l.radius}, {"supKernel", l.sup_kernel}});
  return {{"centerKernel", r.center_kernel},
          {"levels", levels},
          {"tolerance", r.tolerance},
          {"verdict", to_string(r.verdict)}};
}

Json to_json(const AnnihilatorResult& res, const CoeffMatrix& a) {
  Json rows = Json::array(), cols = Json::array(), witness = Json::array();
  for (const auto& r : a.rows) rows.push_back(r.entries());
  for (const auto& [beta, i] : a.columns) cols.push_back({{"beta", beta.entries()}, {"generator", i}});
  for (auto w : res.witness) witness.push_back(to_json(w));
  return {{"p", a.p()},
          {"q", a.q()},
          {"rank", res.rank},
          {"rowBasis", rows},
          {"columns", cols},
          {"witness", witness},
          {"pivotRows", res.pivot_rows},
          {"pivotCols", res.pivot_cols},
          {"detC", to_json(res.det_c)},
          {"A", to_json(a.a)},
          {"B", to_json(res.b)},
          {"identityHolds", annihilates_identically(res, a)}};
}

namespace {

Json point_list(const LambdaScan& s, const std::vector<std::size_t>& idx) {
  Json out = Json::array();
  for (auto i : idx) {
    Json w = Json::array();
    for (auto x : s.points[i].w) w.push_back(to_json(x));
    out.push_back(w);
  }
  return out;
}

}  // namespace

Json to_json(const LambdaScan& s) {
  std::size_t in_u = 0;
  for (const auto& p : s.points) in_u += p.in_u ? 1 : 0;
  return {{"order", s.order},
          {"label", "grid section of Lambda_N"},
          {"gridPoints", s.points.size()},
          {"uPoints", in_u},
          {"lambdaFromPsi", point_list(s, s.from_psi)},
          {"lambdaFromFunctionals", point_list(s, s.from_functionals)},
          {"lambdaFromOracle", point_list(s, s.from_oracle)},
          {"mismatches", point_list(s, s.mismatches)},
          {"agree", s.agree}};
}

Json to_json(const KrullReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) levels.push_back(to_json(l));
  Json violations = Json::array();
  for (const auto& [order, i] : r.nesting_violations)
    violations.push_back({{"order", order}, {"gridIndex", i}});
  Json inter = r.levels.empty() ? Json::array() : point_list(r.levels.front(), r.intersection);
  return {{"levels", levels},
          {"nested", r.nested},
          {"nestingViolations", violations},
          {"intersection", inter},
          {"stabilizedOrder", r.stabilized_order}};
}

Json to_json(const JensenReport& r) {
  return {{"L0", finite_or_null(r.l0)},
          {"L1", finite_or_null(r.l1)},
          {"L1Quadrature", finite_or_null(r.l1_quadrature)},
          {"L2", finite_or_null(r.l2)},
          {"L3", finite_or_null(r.l3)},
          {"logKernelCenter", finite_or_null(r.log_kernel_center)},
          {"tolerance", r.tolerance},
          {"holds", r.holds}};
}

}  // namespace xib
