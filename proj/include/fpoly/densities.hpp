#pragma once

#include "fpoly/grid.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace fpoly {

struct Interval {
    double lo;
    double hi;
};

// A univariate marginal density with the pieces every oracle needs:
// cdf for exact bin masses, quantile for inverse-transform sampling,
// and an interval-wise bound on |f'| for Taylor envelopes.
class TargetDensity {
public:
    virtual ~TargetDensity() = default;

    virtual double pdf(double x) const = 0;
    virtual double cdf(double x) const = 0;
    // p in (0,1). Default: safeguarded Newton on cdf, |cdf(x)-p| <= 1e-13.
    virtual double quantile(double p) const;
    // sup |f'| over [lo, hi] (an upper bound is acceptable).
    virtual double derivative_bound(double lo, double hi) const = 0;
    virtual Interval support() const = 0;
    virtual std::string name() const = 0;
};

class UniformDensity final : public TargetDensity {
public:
    double pdf(double x) const override;
    double cdf(double x) const override;
    double quantile(double p) const override;
    double derivative_bound(double, double) const override { return 0.0; }
    Interval support() const override { return {0.0, 1.0}; }
    std::string name() const override { return "uniform"; }
};

// f(u) = 2(1-u) on [0,1].
class TriangularDensity final : public TargetDensity {
public:
    double pdf(double x) const override;
    double cdf(double x) const override;
    double quantile(double p) const override;
    double derivative_bound(double lo, double hi) const override;
    Interval support() const override { return {0.0, 1.0}; }
    std::string name() const override { return "triangular"; }
};

class NormalDensity final : public TargetDensity {
public:
    explicit NormalDensity(double mu = 0.0, double sigma = 1.0);
    double pdf(double x) const override;
    double cdf(double x) const override;
    double quantile(double p) const override;
    double derivative_bound(double lo, double hi) const override;
    Interval support() const override;
    std::string name() const override;
    double mu() const noexcept { return mu_; }
    double sigma() const noexcept { return sigma_; }

private:
    double mu_, sigma_;
};

// w * N(mu1, s1) + (1-w) * N(mu2, s2). Quantile via the base-class solver.
class NormalMixtureDensity final : public TargetDensity {
public:
    NormalMixtureDensity(double w, double mu1, double s1, double mu2, double s2);
    double pdf(double x) const override;
    double cdf(double x) const override;
    double derivative_bound(double lo, double hi) const override;
    Interval support() const override;
    std::string name() const override;

private:
    double w_;
    NormalDensity c1_, c2_;
};

// Adapter for densities given only by a pdf: cdf by adaptive quadrature
// from the lower support end (abs tol 1e-10). Support must be bounded.
class QuadratureDensity final : public TargetDensity {
public:
    QuadratureDensity(std::function<double(double)> pdf, Interval support,
                      double derivative_bound, std::string name);
    double pdf(double x) const override;
    double cdf(double x) const override;
    double derivative_bound(double, double) const override { return dbound_; }
    Interval support() const override { return support_; }
    std::string name() const override { return name_; }

private:
    std::function<double(double)> pdf_;
    Interval support_;
    double dbound_;
    std::string name_;
};

// Catalog lookup backing the {"density": name, "params": [...]} config form.
std::shared_ptr<const TargetDensity> make_density(const std::string& name,
                                                  const std::vector<double>& params);

struct BinProbability {
    long long s;
    double p;
};

// Mass of bin I_s = [(s-1)b, sb): cdf(sb) - cdf((s-1)b), clamped to [0,1].
BinProbability bin_probability(const TargetDensity& f, const BinGrid& g, long long s);

struct TaylorEnvelopeReport {
    long long k;       // polygon cell of x
    double kappa;      // sup |f'| over [x-2b, x+2b]
    double lower;      // max{0, f(x) b - kappa b^2}
    double upper;      // f(x) b + kappa b^2
    double p_k;
    double p_k1;
    bool inside;       // both masses within the envelope (1e-12 slack)
};

// Checks that the two cell masses around x sit inside the first-order
// Taylor envelope. Requires f(x) > 0.
TaylorEnvelopeReport taylor_bounds_check(const TargetDensity& f, const BinGrid& g, double x);

} // namespace fpoly
