#ifndef MVB_RNG_HPP
#define MVB_RNG_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace mvb {

// std::shuffle and the std distributions are implementation-defined, so
// seeded runs would not reproduce across standard libraries. These helpers
// consume raw mt19937_64 output only.

inline double uniform_double(std::mt19937_64& rng) {
    // 53 random bits mapped to [0, 1)
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    // rejection sampling, unbiased
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

template <typename T>
void shuffle_vector(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(v[i - 1], v[j]);
    }
}

} // namespace mvb

#endif
