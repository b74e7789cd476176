#pragma once

#include <cstdint>
#include <span>

namespace fpoly::rng {

// Counter-based generation: every variate is a pure function of
// (stream key, address). Streams derive from a master seed and a
// replicate index, addresses from lattice coordinates, so parallel
// generation is order-independent and replayable bit for bit.

// splitmix64 finalizer (Steele, Lea, Flood 2014). Full 64-bit avalanche.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Child stream `index` of `seed`. Double mixing breaks the additive
// structure between adjacent indices.
inline constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(seed ^ mix64(index));
}

// Key addressed by lattice coordinates; enumeration order never enters.
inline std::uint64_t site_key(std::uint64_t stream, std::span<const long long> coords) noexcept {
    std::uint64_t k = mix64(stream);
    for (long long c : coords)
        k = mix64(k ^ mix64(static_cast<std::uint64_t>(c)));
    return k;
}

// Uniform on the open interval (0,1): 52-bit grid offset by half a step,
// so 0 and 1 are unreachable and the set of values is symmetric about 1/2.
inline constexpr double unit_open(std::uint64_t key) noexcept {
    return (static_cast<double>(mix64(key) >> 12) + 0.5) * 0x1.0p-52;
}

} // namespace fpoly::rng
