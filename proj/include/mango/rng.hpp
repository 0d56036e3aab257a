#pragma once

#include <cstdint>
#include <random>

namespace mango::rng {

// 64-bit avalanche mixer (splitmix64 finalizer). Used to derive independent
// engine seeds from a (seed, stream, index...) key so that every draw in the
// pipeline is fully determined by its key, independent of thread scheduling.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
    return mix(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

// Named sub-streams. Keeping the ids explicit (rather than call-site ordinals)
// makes keyed draws stable across refactors.
enum Stream : std::uint64_t {
    kDataGen = 1,
    kDataRemoval = 2,
    kTrainStep = 3,
    kNetInit = 4,
    kChainInit = 5,
    kChainStep = 6,
    kDuplicate = 7,
    kCategorical = 8,
    kSystematic = 9,
    kMonteCarlo = 10,
};

inline std::mt19937_64 engine(std::uint64_t seed, std::uint64_t a = 0,
                              std::uint64_t b = 0, std::uint64_t c = 0,
                              std::uint64_t d = 0) {
    std::uint64_t h = mix(seed);
    h = combine(h, a);
    h = combine(h, b);
    h = combine(h, c);
    h = combine(h, d);
    return std::mt19937_64(h);
}

}  // namespace mango::rng
