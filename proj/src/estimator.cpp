#include "fpoly/estimator.hpp"

#include <cmath>
#include <iterator>
#include <stdexcept>

namespace fpoly {

BinCounts bin_counts(const FieldSample& sample, const BinGrid& g) {
    if (!sample.region || sample.values.empty())
        throw std::invalid_argument("bin_counts: sample must be nonempty");
    BinCounts bc{g, {}, sample.values.size()};
    for (double v : sample.values)
        ++bc.counts[bin_index(v, g)];
    return bc;
}

BinCounts make_bin_counts(const BinGrid& g,
                          std::map<long long, unsigned long long> counts) {
    unsigned long long total = 0;
    for (auto it = counts.begin(); it != counts.end();) {
        total += it->second;
        it = it->second == 0 ? counts.erase(it) : std::next(it);
    }
    if (total == 0)
        throw std::invalid_argument("make_bin_counts: total count must be positive");
    return BinCounts{g, std::move(counts), total};
}

double fp_evaluate(const BinCounts& counts, double x) {
    const PolygonWeights w = polygon_weights(x, counts.grid);
    const double nu_k = static_cast<double>(counts.at(w.k));
    const double nu_k1 = static_cast<double>(counts.at(w.k + 1));
    const double denom = static_cast<double>(counts.total) * counts.grid.bin_width();
    return (w.a * nu_k + w.a_bar * nu_k1) / denom;
}

SigmaKernel sigma_kernel(double x, const BinGrid& g, double fx) {
    if (!(fx > 0.0))
        throw std::domain_error("sigma_kernel: requires f(x) > 0");
    const long long k = polygon_index(x, g);
    const double s = static_cast<double>(k) - x / g.bin_width();
    return SigmaKernel{k, x, (0.5 + 2.0 * s * s) * fx};
}

double fn_normalized(const BinCounts& counts, double x, const TargetDensity& f) {
    const double fx = f.pdf(x);
    if (!(fx > 0.0))
        throw std::domain_error("fn_normalized: defined only where f(x) > 0");
    return fp_evaluate(counts, x) / std::sqrt(sigma_kernel(x, counts.grid, fx).value);
}

double expected_fp(const TargetDensity& f, const BinGrid& g, double x) {
    const PolygonWeights w = polygon_weights(x, g);
    const double p_k = bin_probability(f, g, w.k).p;
    const double p_k1 = bin_probability(f, g, w.k + 1).p;
    return (w.a * p_k + w.a_bar * p_k1) / g.bin_width();
}

IidVarianceOracle iid_variance_oracle(const TargetDensity& f, const BinGrid& g, double x) {
    if (!std::isfinite(x))
        throw std::invalid_argument("iid_variance_oracle: x must be finite");
    const PolygonWeights pw = polygon_weights(x, g);
    const double p_k = bin_probability(f, g, pw.k).p;
    const double p_k1 = bin_probability(f, g, pw.k + 1).p;
    const double a = pw.a, ab = pw.a_bar;
    const double w = (a * a * p_k * (1.0 - p_k) + ab * ab * p_k1 * (1.0 - p_k1) -
                      2.0 * a * ab * p_k * p_k1) /
                     g.bin_width();
    IidVarianceOracle out{w, std::nullopt};
    const double fx = f.pdf(x);
    if (fx > 0.0)
        out.ratio = w / sigma_kernel(x, g, fx).value;
    return out;
}

double clt_statistic(const BinCounts& counts, double x, const TargetDensity& f) {
    const double fx = f.pdf(x);
    if (!(fx > 0.0))
        throw std::domain_error("clt_statistic: defined only where f(x) > 0");
    const double sigma = std::sqrt(sigma_kernel(x, counts.grid, fx).value);
    const double scale =
        std::sqrt(static_cast<double>(counts.total) * counts.grid.bin_width());
    return scale * (fn_normalized(counts, x, f) -
                    expected_fp(f, counts.grid, x) / sigma);
}

double fp_integral(const BinCounts& counts) {
    if (counts.counts.empty())
        return 0.0;
    // Each cell J_k contributes b (nu_k + nu_{k+1}) / (2 |Lambda| b);
    // summed over k from one below the lowest occupied bin to the highest.
    const long long k_lo = counts.counts.begin()->first - 1;
    const long long k_hi = counts.counts.rbegin()->first;
    const double denom = 2.0 * static_cast<double>(counts.total);
    double sum = 0.0;
    for (long long k = k_lo; k <= k_hi; ++k)
        sum += (static_cast<double>(counts.at(k)) + static_cast<double>(counts.at(k + 1))) / denom;
    return sum;
}

} // namespace fpoly
