#pragma once

// Deterministic random stream. The mt19937_64 engine is bit-exact across
// standard library implementations; the distribution mappings here are our
// own because std::uniform_real_distribution and std::normal_distribution
// are not pinned down by the standard. Substreams derived from (seed, index)
// make parallel sweeps independent of thread scheduling.

#include <cmath>
#include <cstdint>
#include <random>

namespace qcorr {

class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, 1) with 53 significant bits
    double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // standard normal via Box-Muller, pair cached
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(2.0 * M_PI * u2);
        have_cached_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    // independent stream for work item `index`, stable under any schedule
    RandomStream substream(std::uint64_t index) const {
        return RandomStream(splitmix(seed_ + 0x9e3779b97f4a7c15ull * (index + 1)));
    }

    static std::uint64_t splitmix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace qcorr
