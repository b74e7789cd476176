#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace fpoly {

// A point of the integer lattice Z^d.
using Site = std::vector<long long>;

// sup-norm distance max_k |i_k - j_k|. Throws on dimension mismatch.
long long sup_distance(std::span<const long long> i, std::span<const long long> j);

// A finite set of distinct lattice sites, all of one dimension. Shape is
// unconstrained; sites are stored flat in insertion order and that order
// is the canonical enumeration everywhere (samples, CSV export).
class SiteSet {
public:
    SiteSet(int dimension, std::vector<long long> flat_coords);
    explicit SiteSet(const std::vector<Site>& sites);

    static SiteSet rectangle(const std::vector<long long>& extents);
    static SiteSet sup_ball(int dimension, long long radius, const Site& center = {});
    // Random connected (nearest-neighbour) subset grown from the origin.
    static SiteSet random_connected(int dimension, std::size_t count, std::uint64_t seed);

    int dimension() const noexcept { return d_; }
    std::size_t size() const noexcept { return flat_.size() / static_cast<std::size_t>(d_); }
    std::span<const long long> site(std::size_t idx) const noexcept {
        return {flat_.data() + idx * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
    }
    const std::vector<long long>& flat() const noexcept { return flat_; }

    // Smallest/largest coordinate per axis.
    std::pair<Site, Site> bounding_box() const;

private:
    int d_;
    std::vector<long long> flat_;
    void validate() const;
};

// min over pairs of sup_distance. Throws if either set is empty
// (impossible for constructed SiteSets) or dimensions differ.
long long set_distance(const SiteSet& b1, const SiteSet& b2);

// The two interleaved partitions of the real line used by the histogram
// and the polygon: bins I_k = [(k-1)b, kb) and cells J_k = [(k-1/2)b, (k+1/2)b).
class BinGrid {
public:
    explicit BinGrid(double bin_width);
    double bin_width() const noexcept { return b_; }

private:
    double b_;
};

struct PolygonWeights {
    long long k = 0;   // polygon cell index
    double a = 0.0;    // weight of bin k
    double a_bar = 0.0; // weight of bin k+1; a + a_bar = 1
};

// Index k with (k-1)b <= x < kb. The contract is floor(x/b) + 1 evaluated
// in double precision; boundary behaviour follows that expression.
long long bin_index(double x, const BinGrid& g);

// Index k with (k-1/2)b <= x < (k+1/2)b, i.e. floor(x/b + 1/2).
long long polygon_index(double x, const BinGrid& g);

// Interpolation weights at x: a = 1/2 + k - x/b on cell J_k.
PolygonWeights polygon_weights(double x, const BinGrid& g);

} // namespace fpoly
