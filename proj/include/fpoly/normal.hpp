#pragma once

namespace fpoly {

double norm_pdf(double x);

// Φ via erfc; relative error at machine level over the whole line.
double norm_cdf(double x);

// Φ^{-1} on (0,1). AS241 rational approximation refined by one guarded
// Newton step. Throws std::domain_error outside (0,1).
double norm_quantile(double p);

// P(Z1 ∈ [a1,b1), Z2 ∈ [a2,b2)) for standard bivariate normal with
// correlation rho, |rho| < 1. Conditional-CDF reduction to a 1-d
// adaptive integral; absolute accuracy ~1e-10.
double bvn_rect_probability(double a1, double b1, double a2, double b2, double rho);

} // namespace fpoly
