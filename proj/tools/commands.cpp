#include "commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "xibergman/parallel.hpp"

namespace xib::cli {

namespace {

const Json& need(const Json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("config: missing key '") + key + "'");
  return j.at(key);
}

int int_or(const Json& j, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) throw InputError(std::string("config: ") + key + " must be an integer");
  return j.at(key).get<int>();
}

double double_or(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw InputError(std::string("config: ") + key + " must be a number");
  return j.at(key).get<double>();
}

QuadSpec quad_of(const Json& cfg) {
  return cfg.contains("quadrature") ? quad_from_json(cfg.at("quadrature")) : QuadSpec{};
}

std::string fmt(double x) {
  if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

CommandResult cmd_kernel(const Json& cfg) {
  require_keys(cfg, {"command", "seed", "threads", "description", "domain", "weight",
                     "functional", "point", "degree", "quadrature"},
               "kernel config");
  const Polydisc domain = polydisc_from_json(need(cfg, "domain"));
  const std::size_t n = domain.arity();
  const WeightSpec weight = weight_from_json(need(cfg, "weight"), n, 0);
  const Functional xi = functional_from_json(need(cfg, "functional"), n);
  const auto z = complex_vector_from_json(need(cfg, "point"));
  if (z.size() != n) throw InputError("config: point has wrong arity");
  const int degree = int_or(cfg, "degree", 20);

  const GramModel model = build_model(domain, weight, degree, quad_of(cfg));
  const double k = xi_kernel(model, xi, z);
  CommandResult res;
  if (model.empty()) res.warnings.push_back("model space is {0}; K = 0");
  res.summary = {{"K", k},
                 {"logK", finite_or_null(k > 0 ? std::log(k) : -std::numeric_limits<double>::infinity())},
                 {"modelRank", model.rank},
                 {"modelSize", model.size()},
                 {"closedForm", model.closed_form},
                 {"warnings", res.warnings}};
  res.files.push_back({"kernel.json", dump(res.summary)});
  return res;
}

CommandResult cmd_scan_psh(const Json& cfg) {
  require_keys(cfg, {"command", "seed", "threads", "description", "fiber", "base", "weight",
                     "family", "degree", "quadrature", "z", "grid", "disc"},
               "scan-psh config");
  FamilyProblem prob;
  prob.fiber = polydisc_from_json(need(cfg, "fiber"));
  prob.base = polydisc_from_json(need(cfg, "base"));
  const std::size_t n = prob.fiber.arity(), m = prob.base.arity();
  prob.weight = weight_from_json(need(cfg, "weight"), n, m);
  prob.family = family_from_json(need(cfg, "family"), n, m);
  prob.degree = int_or(cfg, "degree", 12);
  prob.quad = quad_of(cfg);
  prob.validate();
  const auto z = complex_vector_from_json(need(cfg, "z"));
  if (z.size() != n || !prob.fiber.contains(z)) throw InputError("config: z must lie in the fiber");
  const WGrid grid = grid_from_json(need(cfg, "grid"), m);
  const Json& disc = need(cfg, "disc");
  require_keys(disc, {"radius", "samples", "tolerance"}, "disc");
  const double radius = double_or(disc, "radius", 0.05);
  const int samples = int_or(disc, "samples", 32);
  const double tol = double_or(disc, "tolerance", 1e-3);
  if (!(radius > 0.0)) throw InputError("config: disc radius must be positive");
  if (samples < 16) throw InputError("config: disc samples must be >= 16");
  for (const auto& w : grid) {
    if (!prob.base.contains(w)) throw InputError("config: grid point outside the base");
    const double room = prob.base.radii[0] - std::abs(w[0] - prob.base.center[0]);
    if (!(radius < room)) throw InputError("config: disc radius exceeds the base domain");
  }

  const FiberKernel kernel(prob);
  std::ostringstream csv;
  for (std::size_t j = 0; j < m; ++j) csv << (j ? "," : "") << "w" << j + 1 << "_re,w" << j + 1 << "_im";
  csv << ",K,logK,verdict\n";
  Json reports = Json::array();
  int failures = 0;
  for (const auto& w : grid) {
    const double k = kernel(w, z);
    const PshReport rep = psh_verify_base(kernel, z, w, radius, samples, {}, tol);
    if (rep.verdict == Verdict::Fail) ++failures;
    for (std::size_t j = 0; j < m; ++j) csv << (j ? "," : "") << fmt(w[j].real()) << "," << fmt(w[j].imag());
    csv << "," << fmt(k) << "," << fmt(k > 0 ? std::log(k) : -std::numeric_limits<double>::infinity())
        << "," << to_string(rep.verdict) << "\n";
    reports.push_back(to_json(rep));
  }
  CommandResult res;
  res.summary = {{"points", grid.size()}, {"failures", failures}, {"holomorphicFamily", prob.family.holomorphic()}};
  res.files.push_back({"surface.csv", csv.str()});
  res.files.push_back({"psh_reports.json", dump(reports)});
  if (failures) res.exit_code = kVerificationFailed;
  return res;
}

CommandResult cmd_annihilate(const Json& cfg, std::uint64_t seed) {
  require_keys(cfg, {"command", "seed", "threads", "description", "ideal", "grid"},
               "annihilate config");
  const IdealFamily fam = ideal_from_json(need(cfg, "ideal"));
  const WGrid grid = cfg.contains("grid") ? grid_from_json(cfg.at("grid"), fam.m)
                                          : WGrid{std::vector<Complex>(fam.m, 0.0)};
  const CoeffMatrix a = build_coeff_matrix(fam);
  const RankResult r = max_rank(a, grid, seed);
  const AnnihilatorResult ann = annihilator(a, r, seed);
  const IdealFunctionals xis = functionals_from_annihilator(ann, a);

  Json out = to_json(ann, a);
  Json fams = Json::array();
  for (const auto& f : xis.families) fams.push_back(to_json(f));
  out["functionals"] = fams;
  CommandResult res;
  res.summary = {{"rank", ann.rank}, {"p", a.p()}, {"rows", ann.b.rows()},
                 {"identityHolds", out["identityHolds"]}};
  res.files.push_back({"annihilator.json", dump(out)});
  if (!out["identityHolds"].get<bool>()) res.exit_code = kVerificationFailed;
  return res;
}

CommandResult cmd_lambda(const Json& cfg, std::uint64_t seed) {
  require_keys(cfg, {"command", "seed", "threads", "description", "ideal", "weight", "fiber",
                     "degree", "quadrature", "grid", "krullMaxOrder"},
               "lambda config");
  const IdealFamily fam = ideal_from_json(need(cfg, "ideal"));
  const WeightSpec phi = weight_from_json(need(cfg, "weight"), fam.n, fam.m);
  FiberModelParams params;
  params.fiber = cfg.contains("fiber") ? polydisc_from_json(cfg.at("fiber")) : Polydisc::unit(fam.n);
  if (params.fiber.arity() != fam.n) throw InputError("config: fiber arity must equal ideal n");
  params.degree = int_or(cfg, "degree", std::max(fam.order - 1, 4));
  params.quad = quad_of(cfg);
  const WGrid grid = grid_from_json(need(cfg, "grid"), fam.m);
  const int krull = int_or(cfg, "krullMaxOrder", 0);
  if (krull != 0 && krull < 2) throw InputError("config: krullMaxOrder must be >= 2");
  if (params.degree < std::max(fam.order, krull) - 1)
    throw InputError("config: degree must be at least N - 1");

  const LambdaScan scan = lambda_scan(fam, phi, grid, params, seed);
  std::ostringstream csv;
  for (std::size_t j = 0; j < fam.m; ++j) csv << (j ? "," : "") << "w" << j + 1 << "_re,w" << j + 1 << "_im";
  csv << (fam.m ? "," : "") << "in_U,in_Lambda,PsiN\n";
  for (const auto& p : scan.points) {
    for (std::size_t j = 0; j < fam.m; ++j) csv << (j ? "," : "") << fmt(p.w[j].real()) << "," << fmt(p.w[j].imag());
    csv << (fam.m ? "," : "") << (p.in_u ? 1 : 0) << "," << (p.in_u && p.psi.minus_infinity ? 1 : 0)
        << "," << (p.in_u ? fmt(p.psi.value) : "nan") << "\n";
  }
  Json out = {{"scan", to_json(scan)}};
  bool ok = scan.agree;
  if (krull) {
    const KrullReport rep = krull_stabilize(fam, phi, grid, krull, params, seed);
    out["krull"] = to_json(rep);
    ok = ok && rep.nested;
    for (const auto& l : rep.levels) ok = ok && l.agree;
  }
  CommandResult res;
  res.summary = {{"order", fam.order}, {"lambdaPoints", scan.from_psi.size()}, {"agree", ok}};
  res.files.push_back({"lambda.csv", csv.str()});
  res.files.push_back({"lambda.json", dump(out)});
  if (!ok) res.exit_code = kVerificationFailed;
  return res;
}

CommandResult cmd_extend(const Json& cfg) {
  require_keys(cfg, {"command", "seed", "threads", "description", "fiber", "w0", "r", "weight",
                     "zDegree", "wDegree", "f", "quadrature", "jensen", "ratioSlack"},
               "extend config");
  ExtensionProblem prob;
  prob.fiber = polydisc_from_json(need(cfg, "fiber"));
  const std::size_t n = prob.fiber.arity();
  prob.w0 = cfg.contains("w0") ? complex_from_json(cfg.at("w0")) : Complex(0.0);
  prob.r = double_or(cfg, "r", 1.0);
  prob.weight = weight_from_json(need(cfg, "weight"), n, 1);
  prob.z_degree = int_or(cfg, "zDegree", 6);
  prob.w_degree = int_or(cfg, "wDegree", 6);
  prob.quad = quad_of(cfg);
  prob.validate();
  const Polynomial f = polynomial_from_json(need(cfg, "f"), n);
  const double slack = double_or(cfg, "ratioSlack", 5e-3);

  std::optional<FamilyEvaluator> family;
  std::vector<Complex> z0;
  int jr = 0, jt = 0;
  double jtol = 1e-3;
  if (cfg.contains("jensen")) {
    const Json& j = cfg.at("jensen");
    require_keys(j, {"family", "z0", "radialNodes", "angularNodes", "tolerance"}, "jensen");
    family = family_from_json(need(j, "family"), n, 1);
    z0 = complex_vector_from_json(need(j, "z0"));
    jr = int_or(j, "radialNodes", 0);
    jt = int_or(j, "angularNodes", 0);
    jtol = double_or(j, "tolerance", 1e-3);
  }

  const ExtensionResult ext = minimal_extension(prob, f);
  const double ratio = optimal_constant_check(prob, ext);
  Json out = {{"ratio", ratio},
              {"fiberNorm", ext.fiber_norm},
              {"jointNorm", ext.joint_norm},
              {"kktResidual", ext.kkt_residual},
              {"restrictionResidual", ext.restriction_residual},
              {"separable", ext.model.separable},
              {"extension", to_json(ext.extension)}};
  bool ok = ratio <= 1.0 + slack;
  if (family) {
    const JensenReport jr_rep = jensen_chain(prob, *family, z0, jr, jt, jtol);
    out["jensen"] = to_json(jr_rep);
    ok = ok && jr_rep.holds;
  }
  CommandResult res;
  res.summary = {{"ratio", ratio}, {"ok", ok}};
  res.files.push_back({"extension.json", dump(out)});
  if (!ok) res.exit_code = kVerificationFailed;
  return res;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"kernel", "scan-psh", "annihilate", "lambda", "extend"};
  return names;
}

CommandResult run_command(const std::string& command, const Json& config, const RunOptions& opts) {
  CommandResult res;
  try {
    if (!config.is_object()) throw InputError("config must be a JSON object");
    if (config.contains("command") && config.at("command") != command)
      throw InputError("config command '" + config.at("command").get<std::string>() +
                       "' does not match '" + command + "'");
    std::uint64_t seed = 0;
    if (config.contains("seed")) seed = config.at("seed").get<std::uint64_t>();
    if (opts.seed) seed = *opts.seed;
    int threads = config.contains("threads") ? config.at("threads").get<int>() : 1;
    if (opts.threads) threads = *opts.threads;
    if (threads < 1) throw InputError("threads must be >= 1");
    set_thread_count(threads);

    if (command == "kernel") res = cmd_kernel(config);
    else if (command == "scan-psh") res = cmd_scan_psh(config);
    else if (command == "annihilate") res = cmd_annihilate(config, seed);
    else if (command == "lambda") res = cmd_lambda(config, seed);
    else if (command == "extend") res = cmd_extend(config);
    else throw InputError("unknown command '" + command + "'");
  } catch (const InputError& e) {
    res = CommandResult{};
    res.exit_code = kUsageError;
    res.error = e.what();
  } catch (const Json::exception& e) {
    res = CommandResult{};
    res.exit_code = kUsageError;
    res.error = std::string("config: ") + e.what();
  }
  return res;
}

CommandResult execute(const std::string& command, const std::string& config_path,
                      const RunOptions& opts) {
  Json cfg;
  {
    std::ifstream in(config_path);
    if (!in) {
      CommandResult res;
      res.exit_code = kUsageError;
      res.error = "cannot open config " + config_path;
      return res;
    }
    try {
      in >> cfg;
    } catch (const Json::exception& e) {
      CommandResult res;
      res.exit_code = kUsageError;
      res.error = std::string("config is not valid JSON: ") + e.what();
      return res;
    }
  }
  CommandResult res = run_command(command, cfg, opts);
  if (res.exit_code == kUsageError) return res;
  std::filesystem::create_directories(opts.out_dir);
  for (const auto& f : res.files) {
    std::ofstream out(std::filesystem::path(opts.out_dir) / f.name);
    out << f.contents;
  }
  return res;
}

}  // namespace xib::cli
