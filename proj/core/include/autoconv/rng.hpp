#ifndef AUTOCONV_RNG_HPP
#define AUTOCONV_RNG_HPP

#include <cmath>
#include <cstdint>

// Counter-based random streams.  Every draw is a pure function of
// (seed, stream, candidate, step, index), so batched optimization gives
// bit-identical results no matter how candidates are scheduled across
// threads.  The generator is the splitmix64 finalizer applied as a sponge
// over the key words; statistical quality is ample for gradient noise and
// uniform restarts.

namespace autoconv::rng {

enum class Stream : std::uint64_t {
    init = 0,         ///< initial uniform batch
    noise = 1,        ///< per-step gradient noise
    respawn = 2,      ///< scheduled elitist respawn
    nan_respawn = 3,  ///< replacement of a candidate that went non-finite
};

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline std::uint64_t draw_u64(std::uint64_t seed, Stream stream, std::uint64_t candidate,
                              std::uint64_t step, std::uint64_t index) {
    std::uint64_t z = mix64(seed + 0x9e3779b97f4a7c15ULL);
    z = mix64(z ^ (static_cast<std::uint64_t>(stream) + 0xd1b54a32d192ed03ULL));
    z = mix64(z ^ (candidate + 0x8cb92ba72f3d8dd7ULL));
    z = mix64(z ^ (step + 0x2545f4914f6cdd1dULL));
    z = mix64(z ^ (index + 0x9e3779b97f4a7c15ULL));
    return z;
}

/// Uniform double in [0, 1), 53-bit resolution.
inline double draw_uniform01(std::uint64_t seed, Stream stream, std::uint64_t candidate,
                             std::uint64_t step, std::uint64_t index) {
    return static_cast<double>(draw_u64(seed, stream, candidate, step, index) >> 11) * 0x1.0p-53;
}

/// Standard normal pair via Box-Muller from draws (2*index, 2*index + 1).
inline void draw_gaussian_pair(std::uint64_t seed, Stream stream, std::uint64_t candidate,
                               std::uint64_t step, std::uint64_t index, double& z0, double& z1) {
    const std::uint64_t a = draw_u64(seed, stream, candidate, step, 2 * index);
    const std::uint64_t b = draw_u64(seed, stream, candidate, step, 2 * index + 1);
    // u1 in (0,1] keeps the log finite
    const double u1 = static_cast<double>((a >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(b >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    z0 = r * std::cos(theta);
    z1 = r * std::sin(theta);
}

}  // namespace autoconv::rng

#endif
