#pragma once

#include <functional>

namespace fpoly {

// Adaptive Simpson on a finite interval. Deterministic: the refinement
// tree depends only on (f, a, b, abs_tol). Throws QuadratureError when
// the depth cap is reached before the local error estimates fit the
// requested absolute tolerance.
double integrate_adaptive_simpson(const std::function<double(double)>& f,
                                  double a, double b,
                                  double abs_tol = 1e-10,
                                  int max_depth = 60);

} // namespace fpoly
