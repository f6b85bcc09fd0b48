#pragma once

#include <functional>
#include <string>
#include <vector>

#include "xibergman/multi_index.hpp"

namespace xib {

enum class Verdict { Pass, Fail };
std::string to_string(Verdict v);

/// Sub-mean value check of log K on one circle.
///
/// PASS iff the center is -infinity, or every sample is finite and
/// center - circle average <= tolerance. A zero sample (log K = -inf) with a
/// positive center is a FAIL, counted in infinity_count.
struct PshReport {
  std::vector<Complex> center;  // point in the scanned coordinates
  double radius = 0.0;
  int samples = 0;
  double center_value = 0.0;    // log K at the center, may be -inf
  double circle_average = 0.0;  // may be -inf
  double max_violation = 0.0;   // center_value - circle_average
  int infinity_count = 0;
  double tolerance = 1e-3;
  Verdict verdict = Verdict::Pass;
  std::string diagnostic;
};

/// Evaluates the sub-mean inequality for t -> log K(t) on |t - t0| = r using
/// s equally spaced angles starting at angle 0. kernel returns K >= 0.
PshReport circle_submean(const std::function<double(Complex)>& kernel, Complex t0, double r,
                         int samples, double tolerance = 1e-3);

}  // namespace xib
