#include "fpoly/normal.hpp"
#include "fpoly/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fpoly {

namespace {
constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;
} // namespace

double norm_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x * kInvSqrt2);
}

// ALGORITHM AS241 (Wichura 1988), PPND16 variant: the normal deviate z
// for a lower tail area p, accurate to ~1 part in 1e16.
static double ppnd16(double p) {
    constexpr double split1 = 0.425;
    constexpr double split2 = 5.0;
    constexpr double const1 = 0.180625;
    constexpr double const2 = 1.6;

    static constexpr double A[8] = {
        3.3871328727963666080E0,  1.3314166789178437745E+2,
        1.9715909503065514427E+3, 1.3731693765509461125E+4,
        4.5921953931549871457E+4, 6.7265770927008700853E+4,
        3.3430575583588128105E+4, 2.5090809287301226727E+3};
    static constexpr double B[8] = {
        1.0,                      4.2313330701600911252E+1,
        6.8718700749205790830E+2, 5.3941960214247511077E+3,
        2.1213794301586595867E+4, 3.9307895800092710610E+4,
        2.8729085735721942674E+4, 5.2264952788528545610E+3};
    static constexpr double C[8] = {
        1.42343711074968357734E0,  4.63033784615654529590E0,
        5.76949722146069140550E0,  3.64784832476320460504E0,
        1.27045825245236838258E0,  2.41780725177450611770E-1,
        2.27238449892691845833E-2, 7.74545014278341407640E-4};
    static constexpr double D[8] = {
        1.0,                       2.05319162663775882187E0,
        1.67638483018380384940E0,  6.89767334985100004550E-1,
        1.48103976427480074590E-1, 1.51986665636164571966E-2,
        5.47593808499534494600E-4, 1.05075007164441684324E-9};
    static constexpr double E[8] = {
        6.65790464350110377720E0,  5.46378491116411436990E0,
        1.78482653991729133580E0,  2.96560571828504891230E-1,
        2.65321895265761230930E-2, 1.24266094738807843860E-3,
        2.71155556874348757815E-5, 2.01033439929228813265E-7};
    static constexpr double F[8] = {
        1.0,                       5.99832206555887937690E-1,
        1.36929880922735805310E-1, 1.48753612908506148525E-2,
        7.86869131145613259100E-4, 1.84631831751005468180E-5,
        1.42151175831644588870E-7, 2.04426310338993978564E-15};

    auto ratpoly = [](const double (&num)[8], const double (&den)[8], double r) {
        double n = num[7], d = den[7];
        for (int i = 6; i >= 0; --i) {
            n = n * r + num[i];
            d = d * r + den[i];
        }
        return n / d;
    };

    const double q = p - 0.5;
    if (std::fabs(q) <= split1) {
        const double r = const1 - q * q;
        return q * ratpoly(A, B, r);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= split2)
        z = ratpoly(C, D, r - const2);
    else
        z = ratpoly(E, F, r - split2);
    return q < 0.0 ? -z : z;
}

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("norm_quantile: p must lie in (0,1)");
    double z = ppnd16(p);
    // One Newton step on Φ(z)=p. Skipped deep in the tails where the
    // density underflows and the correction is pure noise.
    const double fz = norm_pdf(z);
    if (fz > 1e-300) {
        const double err = norm_cdf(z) - p;
        if (std::fabs(err) < 0.5 * fz)
            z -= err / fz;
    }
    return z;
}

double bvn_rect_probability(double a1, double b1, double a2, double b2, double rho) {
    if (!(std::fabs(rho) < 1.0))
        throw std::domain_error("bvn_rect_probability: |rho| must be < 1");
    if (!(a1 < b1) || !(a2 < b2))
        return 0.0;
    if (rho == 0.0)
        return (norm_cdf(b1) - norm_cdf(a1)) * (norm_cdf(b2) - norm_cdf(a2));

    // Everything outside ±9 carries < 1e-18 mass; clip so the integrand
    // stays well scaled.
    const double lo = std::max(a1, -9.0);
    const double hi = std::min(b1, 9.0);
    if (!(lo < hi))
        return 0.0;

    const double s = std::sqrt(1.0 - rho * rho);
    auto integrand = [&](double z) {
        const double u = (b2 - rho * z) / s;
        const double l = (a2 - rho * z) / s;
        return norm_pdf(z) * (norm_cdf(u) - norm_cdf(l));
    };
    return integrate_adaptive_simpson(integrand, lo, hi, 1e-11);
}

} // namespace fpoly
