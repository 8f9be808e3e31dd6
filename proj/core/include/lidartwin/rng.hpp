#pragma once

#include <cmath>
#include <cstdint>

namespace lidartwin {

// Counter-based generator: the value stream is a pure function of
// (seed, stream, index, draw counter), so any draw can be produced without
// generating its predecessors and parallel consumers stay bit-identical to
// sequential execution. Mixing is the splitmix64 finalizer.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
        : key_(mix(mix(mix(seed) ^ (0x6a09e667f3bcc909ULL + stream)) ^
                   (0xbb67ae8584caa73bULL + index))) {}

    std::uint64_t next_u64() { return mix(key_ + kGamma * ++counter_); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n).
    std::uint64_t uniform_below(std::uint64_t n) { return next_u64() % n; }

    // Box-Muller; u1 shifted away from zero so log() stays finite.
    double normal(double sigma) {
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

    static std::uint64_t mix(std::uint64_t z) {
        z += kGamma;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

// Stream ids keep independent consumers of one run seed decorrelated.
namespace rng_stream {
inline constexpr std::uint64_t kSensorRay = 1;    // index = frame * rays + ray
inline constexpr std::uint64_t kSpawnClass = 2;   // index = actor slot
inline constexpr std::uint64_t kSpawnPoint = 3;   // index = shuffle step
}  // namespace rng_stream

}  // namespace lidartwin
