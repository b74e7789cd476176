#include "fpoly/grid.hpp"
#include "fpoly/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace fpoly {

long long sup_distance(std::span<const long long> i, std::span<const long long> j) {
    if (i.size() != j.size() || i.empty())
        throw std::invalid_argument("sup_distance: sites must share a positive dimension");
    long long d = 0;
    for (std::size_t k = 0; k < i.size(); ++k) {
        const long long diff = i[k] > j[k] ? i[k] - j[k] : j[k] - i[k];
        d = std::max(d, diff);
    }
    return d;
}

SiteSet::SiteSet(int dimension, std::vector<long long> flat_coords)
    : d_(dimension), flat_(std::move(flat_coords)) {
    validate();
}

SiteSet::SiteSet(const std::vector<Site>& sites)
    : d_(sites.empty() ? 0 : static_cast<int>(sites.front().size())) {
    flat_.reserve(sites.size() * static_cast<std::size_t>(d_));
    for (const Site& s : sites) {
        if (static_cast<int>(s.size()) != d_)
            throw std::invalid_argument("SiteSet: all sites must share one dimension");
        flat_.insert(flat_.end(), s.begin(), s.end());
    }
    validate();
}

void SiteSet::validate() const {
    if (d_ < 1)
        throw std::invalid_argument("SiteSet: dimension must be >= 1");
    if (flat_.empty())
        throw std::invalid_argument("SiteSet: at least one site required");
    if (flat_.size() % static_cast<std::size_t>(d_) != 0)
        throw std::invalid_argument("SiteSet: flat coordinate list not a multiple of d");

    // Duplicate detection via lexicographic sort of site indices.
    const std::size_t n = size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto cmp = [this](std::size_t a, std::size_t b) {
        const auto sa = site(a), sb = site(b);
        return std::lexicographical_compare(sa.begin(), sa.end(), sb.begin(), sb.end());
    };
    std::sort(order.begin(), order.end(), cmp);
    for (std::size_t i = 1; i < n; ++i) {
        const auto a = site(order[i - 1]), b = site(order[i]);
        if (std::equal(a.begin(), a.end(), b.begin()))
            throw std::invalid_argument("SiteSet: duplicate site");
    }
}

SiteSet SiteSet::rectangle(const std::vector<long long>& extents) {
    if (extents.empty())
        throw std::invalid_argument("SiteSet::rectangle: need at least one extent");
    std::size_t n = 1;
    for (long long e : extents) {
        if (e < 1)
            throw std::invalid_argument("SiteSet::rectangle: extents must be positive");
        n *= static_cast<std::size_t>(e);
    }
    const int d = static_cast<int>(extents.size());
    std::vector<long long> flat;
    flat.reserve(n * static_cast<std::size_t>(d));
    std::vector<long long> cur(extents.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        flat.insert(flat.end(), cur.begin(), cur.end());
        for (int ax = d - 1; ax >= 0; --ax) {
            if (++cur[ax] < extents[ax])
                break;
            cur[ax] = 0;
        }
    }
    return SiteSet(d, std::move(flat));
}

SiteSet SiteSet::sup_ball(int dimension, long long radius, const Site& center) {
    if (dimension < 1 || radius < 0)
        throw std::invalid_argument("SiteSet::sup_ball: need d >= 1 and radius >= 0");
    Site c = center.empty() ? Site(dimension, 0) : center;
    if (static_cast<int>(c.size()) != dimension)
        throw std::invalid_argument("SiteSet::sup_ball: center dimension mismatch");
    const long long side = 2 * radius + 1;
    SiteSet cube = rectangle(std::vector<long long>(dimension, side));
    std::vector<long long> flat = cube.flat();
    for (std::size_t i = 0; i < flat.size(); ++i)
        flat[i] += c[i % dimension] - radius;
    return SiteSet(dimension, std::move(flat));
}

namespace {
struct SiteHash {
    std::size_t operator()(const Site& s) const noexcept {
        std::uint64_t h = 0x6a09e667f3bcc909ULL;
        for (long long c : s)
            h = rng::mix64(h ^ static_cast<std::uint64_t>(c));
        return static_cast<std::size_t>(h);
    }
};
} // namespace

SiteSet SiteSet::random_connected(int dimension, std::size_t count, std::uint64_t seed) {
    if (dimension < 1 || count < 1)
        throw std::invalid_argument("SiteSet::random_connected: need d >= 1 and count >= 1");
    std::vector<Site> chosen;
    std::unordered_set<Site, SiteHash> in;
    std::vector<Site> frontier;

    auto push_neighbours = [&](const Site& s) {
        for (int ax = 0; ax < dimension; ++ax) {
            for (int step : {-1, 1}) {
                Site nb = s;
                nb[ax] += step;
                if (!in.count(nb))
                    frontier.push_back(nb);
            }
        }
    };

    Site origin(dimension, 0);
    chosen.push_back(origin);
    in.insert(origin);
    push_neighbours(origin);

    const std::uint64_t stream = rng::derive_stream(seed, 0xC0FFEEULL);
    std::uint64_t draw = 0;
    while (chosen.size() < count) {
        // frontier may hold already-absorbed duplicates; skip them.
        const std::uint64_t r = rng::mix64(stream + draw++);
        const std::size_t pick = static_cast<std::size_t>(r % frontier.size());
        Site s = frontier[pick];
        frontier[pick] = frontier.back();
        frontier.pop_back();
        if (in.count(s))
            continue;
        in.insert(s);
        chosen.push_back(s);
        push_neighbours(s);
    }
    return SiteSet(chosen);
}

std::pair<Site, Site> SiteSet::bounding_box() const {
    Site lo(static_cast<std::size_t>(d_), std::numeric_limits<long long>::max());
    Site hi(static_cast<std::size_t>(d_), std::numeric_limits<long long>::min());
    for (std::size_t i = 0; i < size(); ++i) {
        const auto s = site(i);
        for (int k = 0; k < d_; ++k) {
            lo[static_cast<std::size_t>(k)] = std::min(lo[static_cast<std::size_t>(k)], s[static_cast<std::size_t>(k)]);
            hi[static_cast<std::size_t>(k)] = std::max(hi[static_cast<std::size_t>(k)], s[static_cast<std::size_t>(k)]);
        }
    }
    return {lo, hi};
}

long long set_distance(const SiteSet& b1, const SiteSet& b2) {
    if (b1.dimension() != b2.dimension())
        throw std::invalid_argument("set_distance: dimension mismatch");
    long long best = std::numeric_limits<long long>::max();
    for (std::size_t i = 0; i < b1.size(); ++i)
        for (std::size_t j = 0; j < b2.size(); ++j)
            best = std::min(best, sup_distance(b1.site(i), b2.site(j)));
    return best;
}

BinGrid::BinGrid(double bin_width) : b_(bin_width) {
    if (!(std::isfinite(bin_width) && bin_width > 0.0))
        throw std::invalid_argument("BinGrid: bin width must be finite and positive");
}

long long bin_index(double x, const BinGrid& g) {
    if (!std::isfinite(x))
        throw std::invalid_argument("bin_index: x must be finite");
    return static_cast<long long>(std::floor(x / g.bin_width())) + 1;
}

long long polygon_index(double x, const BinGrid& g) {
    if (!std::isfinite(x))
        throw std::invalid_argument("polygon_index: x must be finite");
    return static_cast<long long>(std::floor(x / g.bin_width() + 0.5));
}

PolygonWeights polygon_weights(double x, const BinGrid& g) {
    if (!std::isfinite(x))
        throw std::invalid_argument("polygon_weights: x must be finite");
    const double t = x / g.bin_width();
    const long long k = static_cast<long long>(std::floor(t + 0.5));
    // Both weights from the single residual s = k - t keeps a + a_bar = 1
    // to within one ulp.
    const double s = static_cast<double>(k) - t;
    return PolygonWeights{k, 0.5 + s, 0.5 - s};
}

} // namespace fpoly
