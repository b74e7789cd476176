#pragma once

#include "fpoly/densities.hpp"
#include "fpoly/fields.hpp"
#include "fpoly/grid.hpp"

#include <map>
#include <optional>

namespace fpoly {

// Histogram counts nu_k over the bins I_k. Keys with zero count are
// absent; the sum of counts always equals total.
struct BinCounts {
    BinGrid grid;
    std::map<long long, unsigned long long> counts;
    unsigned long long total = 0;

    unsigned long long at(long long k) const {
        auto it = counts.find(k);
        return it == counts.end() ? 0ULL : it->second;
    }
};

BinCounts bin_counts(const FieldSample& sample, const BinGrid& g);

// Counts assembled directly (synthetic fixtures, exact enumerations).
BinCounts make_bin_counts(const BinGrid& g,
                          std::map<long long, unsigned long long> counts);

// Raw frequency polygon: on cell J_k the line from the histogram height
// of bin k (left edge) to that of bin k+1 (right edge).
double fp_evaluate(const BinCounts& counts, double x);

struct SigmaKernel {
    long long k;
    double x;
    double value; // (1/2 + 2 (k - x/b)^2) f(x)
};

// Pointwise normalizing variance kernel. Requires fx > 0.
SigmaKernel sigma_kernel(double x, const BinGrid& g, double fx);

// Polygon divided by the square root of the variance kernel. Only
// meaningful when the true marginal is known (simulation mode).
double fn_normalized(const BinCounts& counts, double x, const TargetDensity& f);

// Exact E[fp_evaluate(., x)] for any stationary field with marginal f:
// (a p_k + a_bar p_{k+1}) / b.
double expected_fp(const TargetDensity& f, const BinGrid& g, double x);

struct IidVarianceOracle {
    double w;                    // |Lambda| b Var(fp) under iid sampling, exact
    std::optional<double> ratio; // w / sigma^2(x), present when f(x) > 0
};

IidVarianceOracle iid_variance_oracle(const TargetDensity& f, const BinGrid& g, double x);

// sqrt(|Lambda| b) * (fn(x) - E fn(x)); the quantity whose per-point law
// tends to the standard normal.
double clt_statistic(const BinCounts& counts, double x, const TargetDensity& f);

// Integral of the polygon over the line, evaluated as the telescoping
// trapezoid sum; equals 1 up to rounding for every nonempty sample.
double fp_integral(const BinCounts& counts);

} // namespace fpoly
