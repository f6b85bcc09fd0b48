#pragma once

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "xibergman/bergman.hpp"
#include "xibergman/extension.hpp"
#include "xibergman/family.hpp"
#include "xibergman/fiberwise.hpp"
#include "xibergman/ideal.hpp"
#include "xibergman/weights.hpp"

namespace xib {

using Json = nlohmann::json;

/// Throws InputError naming the first key of j not in allowed.
void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                  const std::string& where);

// A complex number is a JSON number or a pair [re, im].
Complex complex_from_json(const Json& j);
Json to_json(Complex c);
std::vector<Complex> complex_vector_from_json(const Json& j);

// Polynomial: list of {"exp": [...], "c": complex}.
Polynomial polynomial_from_json(const Json& j, std::size_t arity);
Json to_json(const Polynomial& p);

// Polydisc: {"center": [...], "radii": [...]}; center defaults to the origin.
Polydisc polydisc_from_json(const Json& j);
Json to_json(const Polydisc& d);

// Weight: {"kind": "zero" | "constant" | "quadratic" | "logMonomial" |
// "logDivisor" | "modulusSquared" | "sum", ...}.
WeightSpec weight_from_json(const Json& j, std::size_t n, std::size_t m);

// Functional: {"kind": "dirac"} | {"kind": "derivative", "alpha", "scale"} |
// {"kind": "terms", "terms": [{"alpha", "c"}]}.
Functional functional_from_json(const Json& j, std::size_t n);

// Family: {"kind": "constant", "functional"} | {"kind": "terms", "terms":
// [{"alpha", "coeff": polynomial in w}]}, optional "antiHolomorphic".
FamilyEvaluator family_from_json(const Json& j, std::size_t n, std::size_t m);
Json to_json(const FunctionalFamily& fam);

// {"radialNodes", "angularNodes", "innerCutoff", "forceQuadrature"}.
QuadSpec quad_from_json(const Json& j);

// {"side", "halfWidth"} (m = 1) or {"points": [[...], ...]}.
WGrid grid_from_json(const Json& j, std::size_t m);

// {"n", "m", "generators": [polynomial], "order"}.
IdealFamily ideal_from_json(const Json& j);

Json to_json(const PolyMatrix& a);
Json to_json(const PshReport& r);
Json to_json(const UscReport& r);
Json to_json(const AnnihilatorResult& res, const CoeffMatrix& a);
Json to_json(const LambdaScan& s);
Json to_json(const KrullReport& r);
Json to_json(const JensenReport& r);

/// Finite doubles as numbers, infinities as null.
Json finite_or_null(double x);

}  // namespace xib
