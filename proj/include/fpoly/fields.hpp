#pragma once

#include "fpoly/densities.hpp"
#include "fpoly/grid.hpp"
#include "fpoly/mixing.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace fpoly {

// One realization of a field on a region. values[i] belongs to
// region->site(i); the enumeration order is the SiteSet's.
struct FieldSample {
    std::shared_ptr<const SiteSet> region;
    std::vector<double> values;
    std::string model_id;
    std::uint64_t seed = 0;
};

enum class FieldKind { iid, m_dependent_gaussian_ma };

// A stationary generator with an exactly known marginal law. The moving
// average variant drives a Gaussian window through iid innovations and
// maps the result through the probability integral transform, so the
// marginal is exact and sites farther apart than 2m are independent.
class FieldModel {
public:
    static FieldModel iid(std::shared_ptr<const TargetDensity> marginal);
    // weights: (2m+1)^d coefficients over the window {-m..m}^d, row-major
    // with the first coordinate slowest; not all zero.
    static FieldModel m_dependent(std::shared_ptr<const TargetDensity> marginal,
                                  int dimension, int range,
                                  std::vector<double> weights);

    FieldKind kind() const noexcept { return kind_; }
    const TargetDensity& marginal() const noexcept { return *marginal_; }
    std::shared_ptr<const TargetDensity> marginal_ptr() const noexcept { return marginal_; }
    int range() const noexcept { return m_; }
    int dimension() const noexcept { return d_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    std::string id() const;

    // Correlation of the latent Gaussians at lag j (all zero at |j| > 2m).
    double ma_correlation(const Site& lag) const;

private:
    FieldModel() = default;
    FieldKind kind_ = FieldKind::iid;
    std::shared_ptr<const TargetDensity> marginal_;
    int m_ = 0;
    int d_ = 0; // 0 for iid: any region dimension accepted
    std::vector<double> weights_;
};

// Values are a pure function of (marginal, region, seed); identical
// inputs reproduce bitwise-identical samples.
FieldSample sample_iid(std::shared_ptr<const TargetDensity> marginal,
                       std::shared_ptr<const SiteSet> region, std::uint64_t seed);

FieldSample sample_m_dependent(const FieldModel& model,
                               std::shared_ptr<const SiteSet> region, std::uint64_t seed);

// Dispatch on model kind.
FieldSample sample_field(const FieldModel& model,
                         std::shared_ptr<const SiteSet> region, std::uint64_t seed);

// Certified upper-bound profiles for the generator: zero beyond the
// dependence range, the universal constants inside it.
struct MixingCertificate {
    MixingProfile alpha;
    MixingProfile rho;
};

MixingCertificate certify_mixing(const FieldModel& model);

// P(X_0 in I_s, X_j in I_t) for the model, via the latent bivariate
// normal at lag j. Exact product when the lag exceeds the range.
double joint_bin_probability(const FieldModel& model, const Site& lag,
                             long long s, long long t, const BinGrid& g);

} // namespace fpoly
