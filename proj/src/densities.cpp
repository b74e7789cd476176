#include "fpoly/densities.hpp"
#include "fpoly/errors.hpp"
#include "fpoly/normal.hpp"
#include "fpoly/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fpoly {

double TargetDensity::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("quantile: p must lie in (0,1)");

    Interval sp = support();
    double lo = sp.lo, hi = sp.hi;
    if (!std::isfinite(lo)) {
        lo = std::isfinite(hi) ? hi - 1.0 : -1.0;
        while (cdf(lo) > p)
            lo = 2.0 * lo - (std::isfinite(hi) ? hi : 0.0) - 1.0;
    }
    if (!std::isfinite(hi)) {
        hi = lo + 1.0;
        while (cdf(hi) < p)
            hi = 2.0 * hi - lo + 1.0;
    }

    // Newton from the midpoint, bisection whenever the step escapes the
    // bracket or the density is too flat.
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double err = cdf(x) - p;
        if (std::fabs(err) <= 1e-13)
            return x;
        if (err > 0.0)
            hi = x;
        else
            lo = x;
        const double dens = pdf(x);
        double next = dens > 1e-15 ? x - err / dens : x;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (next == x)
            break;
        x = next;
    }
    return x;
}

// ---- uniform on [0,1] ----

double UniformDensity::pdf(double x) const {
    return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;
}

double UniformDensity::cdf(double x) const {
    return std::clamp(x, 0.0, 1.0);
}

double UniformDensity::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("quantile: p must lie in (0,1)");
    return p;
}

// ---- triangular f(u) = 2(1-u) on [0,1] ----

double TriangularDensity::pdf(double x) const {
    return (x >= 0.0 && x < 1.0) ? 2.0 * (1.0 - x) : 0.0;
}

double TriangularDensity::cdf(double x) const {
    if (x <= 0.0)
        return 0.0;
    if (x >= 1.0)
        return 1.0;
    return x * (2.0 - x);
}

double TriangularDensity::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("quantile: p must lie in (0,1)");
    return 1.0 - std::sqrt(1.0 - p);
}

double TriangularDensity::derivative_bound(double lo, double hi) const {
    return (hi > 0.0 && lo < 1.0) ? 2.0 : 0.0;
}

// ---- normal ----

NormalDensity::NormalDensity(double mu, double sigma) : mu_(mu), sigma_(sigma) {
    if (!(std::isfinite(mu) && std::isfinite(sigma) && sigma > 0.0))
        throw std::invalid_argument("NormalDensity: need finite mu and sigma > 0");
}

double NormalDensity::pdf(double x) const {
    return norm_pdf((x - mu_) / sigma_) / sigma_;
}

double NormalDensity::cdf(double x) const {
    return norm_cdf((x - mu_) / sigma_);
}

double NormalDensity::quantile(double p) const {
    return mu_ + sigma_ * norm_quantile(p);
}

double NormalDensity::derivative_bound(double lo, double hi) const {
    // |f'(x)| = |z| phi(z) / sigma^2, z = (x-mu)/sigma; peaks at z = +-1
    // and is monotone away from the peaks on each side of mu.
    auto df = [this](double x) {
        const double z = (x - mu_) / sigma_;
        return std::fabs(z) * norm_pdf(z) / (sigma_ * sigma_);
    };
    double bound = std::max(df(lo), df(hi));
    if (lo < mu_ + sigma_ && hi > mu_ + sigma_)
        bound = std::max(bound, df(mu_ + sigma_));
    if (lo < mu_ - sigma_ && hi > mu_ - sigma_)
        bound = std::max(bound, df(mu_ - sigma_));
    return bound;
}

Interval NormalDensity::support() const {
    return {-std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
}

std::string NormalDensity::name() const {
    std::ostringstream os;
    os << "normal(" << mu_ << "," << sigma_ << ")";
    return os.str();
}

// ---- two-component normal mixture ----

NormalMixtureDensity::NormalMixtureDensity(double w, double mu1, double s1,
                                           double mu2, double s2)
    : w_(w), c1_(mu1, s1), c2_(mu2, s2) {
    if (!(w > 0.0 && w < 1.0))
        throw std::invalid_argument("NormalMixtureDensity: weight must lie in (0,1)");
}

double NormalMixtureDensity::pdf(double x) const {
    return w_ * c1_.pdf(x) + (1.0 - w_) * c2_.pdf(x);
}

double NormalMixtureDensity::cdf(double x) const {
    return w_ * c1_.cdf(x) + (1.0 - w_) * c2_.cdf(x);
}

double NormalMixtureDensity::derivative_bound(double lo, double hi) const {
    return w_ * c1_.derivative_bound(lo, hi) + (1.0 - w_) * c2_.derivative_bound(lo, hi);
}

Interval NormalMixtureDensity::support() const {
    return c1_.support();
}

std::string NormalMixtureDensity::name() const {
    std::ostringstream os;
    os << "normal_mixture(" << w_ << ";" << c1_.mu() << "," << c1_.sigma() << ";"
       << c2_.mu() << "," << c2_.sigma() << ")";
    return os.str();
}

// ---- quadrature-backed adapter ----

QuadratureDensity::QuadratureDensity(std::function<double(double)> pdf, Interval support,
                                     double derivative_bound, std::string name)
    : pdf_(std::move(pdf)), support_(support), dbound_(derivative_bound),
      name_(std::move(name)) {
    if (!(std::isfinite(support_.lo) && std::isfinite(support_.hi) && support_.lo < support_.hi))
        throw std::invalid_argument("QuadratureDensity: support must be a bounded interval");
}

double QuadratureDensity::pdf(double x) const {
    return pdf_(x);
}

double QuadratureDensity::cdf(double x) const {
    if (x <= support_.lo)
        return 0.0;
    const double hi = std::min(x, support_.hi);
    const double v = integrate_adaptive_simpson(pdf_, support_.lo, hi, 1e-10);
    return std::clamp(v, 0.0, 1.0);
}

// ---- catalog ----

std::shared_ptr<const TargetDensity> make_density(const std::string& name,
                                                  const std::vector<double>& params) {
    if (name == "uniform") {
        if (!params.empty())
            throw std::invalid_argument("density 'uniform' takes no params");
        return std::make_shared<UniformDensity>();
    }
    if (name == "triangular") {
        if (!params.empty())
            throw std::invalid_argument("density 'triangular' takes no params");
        return std::make_shared<TriangularDensity>();
    }
    if (name == "normal") {
        if (params.empty())
            return std::make_shared<NormalDensity>();
        if (params.size() != 2)
            throw std::invalid_argument("density 'normal' takes params [mu, sigma]");
        return std::make_shared<NormalDensity>(params[0], params[1]);
    }
    if (name == "normal_mixture") {
        if (params.size() != 5)
            throw std::invalid_argument(
                "density 'normal_mixture' takes params [w, mu1, s1, mu2, s2]");
        return std::make_shared<NormalMixtureDensity>(params[0], params[1], params[2],
                                                      params[3], params[4]);
    }
    throw std::invalid_argument("unknown density '" + name + "'");
}

BinProbability bin_probability(const TargetDensity& f, const BinGrid& g, long long s) {
    const double b = g.bin_width();
    const double p = f.cdf(static_cast<double>(s) * b) -
                     f.cdf(static_cast<double>(s - 1) * b);
    return BinProbability{s, std::clamp(p, 0.0, 1.0)};
}

TaylorEnvelopeReport taylor_bounds_check(const TargetDensity& f, const BinGrid& g, double x) {
    const double fx = f.pdf(x);
    if (!(fx > 0.0))
        throw std::domain_error("taylor_bounds_check: f(x) must be positive");
    const double b = g.bin_width();
    const long long k = polygon_index(x, g);
    const double kappa = f.derivative_bound(x - 2.0 * b, x + 2.0 * b);

    TaylorEnvelopeReport r;
    r.k = k;
    r.kappa = kappa;
    r.lower = std::max(0.0, fx * b - kappa * b * b);
    r.upper = fx * b + kappa * b * b;
    r.p_k = bin_probability(f, g, k).p;
    r.p_k1 = bin_probability(f, g, k + 1).p;
    const double slack = 1e-12;
    r.inside = r.p_k >= r.lower - slack && r.p_k <= r.upper + slack &&
               r.p_k1 >= r.lower - slack && r.p_k1 <= r.upper + slack;
    return r;
}

} // namespace fpoly
