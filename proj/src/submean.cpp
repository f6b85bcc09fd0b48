#include "xibergman/submean.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "xibergman/parallel.hpp"

namespace xib {

std::string to_string(Verdict v) { return v == Verdict::Pass ? "PASS" : "FAIL"; }

PshReport circle_submean(const std::function<double(Complex)>& kernel, Complex t0, double r,
                         int samples, double tolerance) {
  if (samples < 16) throw InputError("submean check needs at least 16 circle samples");
  if (!(r > 0.0)) throw InputError("submean radius must be positive");
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  PshReport rep;
  rep.center = {t0};
  rep.radius = r;
  rep.samples = samples;
  rep.tolerance = tolerance;

  const double k0 = kernel(t0);
  rep.center_value = k0 > 0.0 ? std::log(k0) : kNegInf;

  std::vector<double> values(static_cast<std::size_t>(samples));
  parallel_for(values.size(), [&](std::size_t i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / samples;
    values[i] = kernel(t0 + std::polar(r, theta));
  });
  double sum = 0.0;
  for (double k : values) {
    if (k > 0.0) sum += std::log(k);
    else ++rep.infinity_count;
  }
  rep.circle_average = rep.infinity_count ? kNegInf : sum / samples;

  if (rep.center_value == kNegInf) {
    rep.max_violation = kNegInf;
    rep.verdict = Verdict::Pass;
    rep.diagnostic = "center is -inf";
  } else if (rep.infinity_count > 0) {
    rep.max_violation = std::numeric_limits<double>::infinity();
    rep.verdict = Verdict::Fail;
    std::ostringstream os;
    os << rep.infinity_count << " circle samples have K = 0 while the center is positive";
    rep.diagnostic = os.str();
  } else {
    rep.max_violation = rep.center_value - rep.circle_average;
    rep.verdict = rep.max_violation <= tolerance ? Verdict::Pass : Verdict::Fail;
  }
  return rep;
}

}  // namespace xib
