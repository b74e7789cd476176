#include "fpoly/fields.hpp"
#include "fpoly/normal.hpp"
#include "fpoly/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace fpoly {

namespace {

// Stream tags keep innovation draws, direct draws and anything else
// derived from one seed in disjoint counter spaces.
constexpr std::uint64_t kTagIid = 0x69696469ULL;
constexpr std::uint64_t kTagInnovation = 0x6d614d41ULL;

// Guard against the (practically unreachable) p = 0 / p = 1 endpoints
// before handing a probability to a quantile function.
double clamp_open_unit(double p) {
    constexpr double lo = 1e-300;
    const double hi = 1.0 - 0x1.0p-53;
    return p < lo ? lo : (p > hi ? hi : p);
}

} // namespace

FieldModel FieldModel::iid(std::shared_ptr<const TargetDensity> marginal) {
    if (!marginal)
        throw std::invalid_argument("FieldModel::iid: marginal required");
    FieldModel m;
    m.kind_ = FieldKind::iid;
    m.marginal_ = std::move(marginal);
    return m;
}

FieldModel FieldModel::m_dependent(std::shared_ptr<const TargetDensity> marginal,
                                   int dimension, int range,
                                   std::vector<double> weights) {
    if (!marginal)
        throw std::invalid_argument("FieldModel::m_dependent: marginal required");
    if (dimension < 1 || range < 1)
        throw std::invalid_argument("FieldModel::m_dependent: need d >= 1 and m >= 1");
    std::size_t expect = 1;
    for (int i = 0; i < dimension; ++i)
        expect *= static_cast<std::size_t>(2 * range + 1);
    if (weights.size() != expect)
        throw std::invalid_argument("FieldModel::m_dependent: weights must have (2m+1)^d entries");
    bool any = false;
    for (double w : weights)
        any = any || w != 0.0;
    if (!any)
        throw std::invalid_argument("FieldModel::m_dependent: weights must not all be zero");

    FieldModel m;
    m.kind_ = FieldKind::m_dependent_gaussian_ma;
    m.marginal_ = std::move(marginal);
    m.d_ = dimension;
    m.m_ = range;
    m.weights_ = std::move(weights);
    return m;
}

std::string FieldModel::id() const {
    if (kind_ == FieldKind::iid)
        return "iid(" + marginal_->name() + ")";
    return "ma_m" + std::to_string(m_) + "_d" + std::to_string(d_) + "(" +
           marginal_->name() + ")";
}

double FieldModel::ma_correlation(const Site& lag) const {
    if (kind_ == FieldKind::iid)
        return lag == Site(lag.size(), 0) ? 1.0 : 0.0;
    if (static_cast<int>(lag.size()) != d_)
        throw std::invalid_argument("ma_correlation: lag dimension mismatch");

    const long long side = 2 * m_ + 1;
    double var = 0.0;
    for (double w : weights_)
        var += w * w;

    // Cov(G_0, G_j) = sum_u c_u c_{u+j} over overlapping window offsets.
    double cov = 0.0;
    for (std::size_t idx = 0; idx < weights_.size(); ++idx) {
        std::size_t rest = idx;
        std::size_t shifted = 0;
        bool inside = true;
        std::size_t stride = weights_.size();
        for (int ax = 0; ax < d_; ++ax) {
            stride /= static_cast<std::size_t>(side);
            const long long u = static_cast<long long>(rest / stride) - m_;
            rest %= stride;
            const long long v = u + lag[static_cast<std::size_t>(ax)];
            if (v < -m_ || v > m_) {
                inside = false;
                break;
            }
            shifted += static_cast<std::size_t>(v + m_) * stride;
        }
        if (inside)
            cov += weights_[idx] * weights_[shifted];
    }
    return cov / var;
}

FieldSample sample_iid(std::shared_ptr<const TargetDensity> marginal,
                       std::shared_ptr<const SiteSet> region, std::uint64_t seed) {
    if (!marginal || !region)
        throw std::invalid_argument("sample_iid: marginal and region required");
    const std::uint64_t stream = rng::derive_stream(seed, kTagIid);
    FieldSample out;
    out.region = region;
    out.seed = seed;
    out.model_id = "iid(" + marginal->name() + ")";
    out.values.resize(region->size());
    for (std::size_t i = 0; i < region->size(); ++i) {
        const double u = rng::unit_open(rng::site_key(stream, region->site(i)));
        out.values[i] = marginal->quantile(u);
    }
    return out;
}

FieldSample sample_m_dependent(const FieldModel& model,
                               std::shared_ptr<const SiteSet> region, std::uint64_t seed) {
    if (model.kind() != FieldKind::m_dependent_gaussian_ma)
        throw std::invalid_argument("sample_m_dependent: model kind mismatch");
    if (!region)
        throw std::invalid_argument("sample_m_dependent: region required");
    if (region->dimension() != model.dimension())
        throw std::invalid_argument("sample_m_dependent: region dimension mismatch");

    const int d = model.dimension();
    const int m = model.range();
    const long long side = 2 * m + 1;
    const std::vector<double>& w = model.weights();

    double var = 0.0;
    for (double c : w)
        var += c * c;
    const double inv_sigma = 1.0 / std::sqrt(var);

    const std::uint64_t stream = rng::derive_stream(seed, kTagInnovation);
    // Innovations are addressed by absolute lattice coordinates, so
    // overlapping windows agree without materializing the dilated region.
    auto innovation = [&](std::span<const long long> coords) {
        return norm_quantile(rng::unit_open(rng::site_key(stream, coords)));
    };

    FieldSample out;
    out.region = region;
    out.seed = seed;
    out.model_id = model.id();
    out.values.resize(region->size());

    std::vector<long long> shifted(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < region->size(); ++i) {
        const auto site = region->site(i);
        double g = 0.0;
        // Window offsets in the weights' own row-major order: the
        // summation order is fixed, so sums are bitwise stable.
        for (std::size_t idx = 0; idx < w.size(); ++idx) {
            if (w[idx] == 0.0)
                continue;
            std::size_t rest = idx;
            std::size_t stride = w.size();
            for (int ax = 0; ax < d; ++ax) {
                stride /= static_cast<std::size_t>(side);
                const long long u = static_cast<long long>(rest / stride) - m;
                rest %= stride;
                shifted[static_cast<std::size_t>(ax)] = site[static_cast<std::size_t>(ax)] + u;
            }
            g += w[idx] * innovation(shifted);
        }
        const double p = clamp_open_unit(norm_cdf(g * inv_sigma));
        out.values[i] = model.marginal().quantile(p);
    }
    return out;
}

FieldSample sample_field(const FieldModel& model,
                         std::shared_ptr<const SiteSet> region, std::uint64_t seed) {
    if (model.kind() == FieldKind::iid)
        return sample_iid(model.marginal_ptr(), std::move(region), seed);
    return sample_m_dependent(model, std::move(region), seed);
}

MixingCertificate certify_mixing(const FieldModel& model) {
    MixingCertificate cert;
    const long long range = model.kind() == FieldKind::iid
                                ? 0
                                : 2LL * model.range();
    cert.alpha = MixingProfile{MixingKind::alpha, TauBound::inf(),
                               FiniteRangeDecay{range, 0.25}};
    cert.rho = MixingProfile{MixingKind::rho, TauBound::inf(),
                             FiniteRangeDecay{range, 1.0}};
    return cert;
}

double joint_bin_probability(const FieldModel& model, const Site& lag,
                             long long s, long long t, const BinGrid& g) {
    const TargetDensity& f = model.marginal();
    const double ps = bin_probability(f, g, s).p;
    const double pt = bin_probability(f, g, t).p;

    double rho = model.ma_correlation(lag);
    if (rho == 0.0)
        return ps * pt;
    if (std::fabs(rho) >= 1.0)
        throw std::domain_error("joint_bin_probability: degenerate latent correlation");

    const double b = g.bin_width();
    // X in I_s  <=>  Z in [q(F(lo)), q(F(hi))) for the latent standard
    // normal Z, because X = Q(Phi(Z)) is monotone.
    auto z_edge = [&](double x) {
        const double p = f.cdf(x);
        if (p <= 0.0)
            return -40.0;
        if (p >= 1.0)
            return 40.0;
        return norm_quantile(p);
    };
    const double a1 = z_edge(static_cast<double>(s - 1) * b);
    const double b1 = z_edge(static_cast<double>(s) * b);
    const double a2 = z_edge(static_cast<double>(t - 1) * b);
    const double b2 = z_edge(static_cast<double>(t) * b);
    return bvn_rect_probability(a1, b1, a2, b2, rho);
}

} // namespace fpoly
