#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "commands.hpp"
#include "xibergman/bergman.hpp"
#include "xibergman/ideal.hpp"
#include "xibergman/json_io.hpp"

namespace py = pybind11;
using namespace xib;

namespace {

Json parse(const std::string& s) { return s.empty() ? Json::object() : Json::parse(s); }

py::tuple run(const std::string& command, const std::string& config, std::optional<std::uint64_t> seed,
              std::optional<int> threads) {
  cli::RunOptions opts;
  opts.seed = seed;
  opts.threads = threads;
  cli::CommandResult res;
  {
    py::gil_scoped_release release;
    res = cli::run_command(command, parse(config), opts);
  }
  py::dict files;
  for (const auto& f : res.files) files[py::str(f.name)] = f.contents;
  return py::make_tuple(res.exit_code, res.summary.dump(), files, res.warnings, res.error);
}

GramModel model_of(const std::string& domain, const std::string& weight, int degree,
                   const std::string& quad) {
  const Polydisc d = polydisc_from_json(parse(domain));
  const WeightSpec w = weight_from_json(parse(weight), d.arity(), 0);
  return build_model(d, w, degree, quad_from_json(parse(quad)));
}

py::tuple gram(const std::string& domain, const std::string& weight, int degree, const std::string& quad) {
  const GramModel m = model_of(domain, weight, degree, quad);
  std::vector<std::vector<int>> labels;
  for (const auto& a : m.labels) labels.push_back(a.entries());
  return py::make_tuple(labels, m.gram, m.rank, m.closed_form);
}

std::vector<double> kernel(const std::string& domain, const std::string& weight,
                           const std::string& functional, const std::vector<std::vector<Complex>>& points,
                           int degree, const std::string& quad) {
  const GramModel m = model_of(domain, weight, degree, quad);
  const Functional xi = functional_from_json(parse(functional), m.domain.arity());
  std::vector<double> out;
  for (const auto& z : points) out.push_back(xi_kernel(m, xi, z));
  return out;
}

std::pair<bool, bool> membership(const std::string& ideal, const std::string& grid,
                                 const std::vector<Complex>& w, const std::string& f, std::uint64_t seed) {
  const IdealFamily fam = ideal_from_json(parse(ideal));
  const WGrid g = grid_from_json(parse(grid), fam.m);
  const CoeffMatrix a = build_coeff_matrix(fam);
  const IdealFunctionals xis = functionals_from_annihilator(annihilator(a, max_rank(a, g, seed), seed), a);
  const Polynomial p = polynomial_from_json(parse(f), fam.n);
  return {membership_by_functionals(xis, w, p), membership_oracle(a, w, p)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Weighted xi-Bergman kernels, fiberwise psh checks, ideal annihilators and extensions";
  m.def("run_command", &run, py::arg("command"), py::arg("config"), py::arg("seed") = py::none(),
        py::arg("threads") = py::none(),
        "Runs a CLI pipeline on a JSON config string; returns (exit_code, summary_json, files, "
        "warnings, error).");
  m.def("command_names", &cli::command_names);
  m.def("gram", &gram, py::arg("domain"), py::arg("weight"), py::arg("degree"), py::arg("quadrature") = "",
        "Returns (labels, Gram matrix, numerical rank, closed_form).");
  m.def("kernel", &kernel, py::arg("domain"), py::arg("weight"), py::arg("functional"), py::arg("points"),
        py::arg("degree") = 20, py::arg("quadrature") = "");
  m.def("membership", &membership, py::arg("ideal"), py::arg("grid"), py::arg("w"), py::arg("f"),
        py::arg("seed") = 0, "Returns (by_functionals, by_oracle).");
}
