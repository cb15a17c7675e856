#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace precode {

// Counter-keyed xoshiro256** stream. Substreams are derived from
// (seed, tag, index) so that block i sees the same draws no matter how work
// is scheduled across threads.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) { init(seed); }

    static RngStream substream(std::uint64_t seed, std::uint64_t tag,
                               std::uint64_t index) {
        std::uint64_t z = seed;
        z = mix(z ^ (0x9E3779B97F4A7C15ULL * (tag + 1)));
        z = mix(z ^ (0xBF58476D1CE4E5B9ULL * (index + 1)));
        return RngStream(z);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    int bit() { return static_cast<int>(next_u64() >> 63); }

    // Standard real normal via Box-Muller.
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    // CN(0,1): independent real/imag parts with variance 1/2 each.
    std::complex<double> cgauss() {
        const double inv_sqrt2 = 0.70710678118654752440;
        const double re = gauss();
        const double im = gauss();
        return {re * inv_sqrt2, im * inv_sqrt2};
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    void init(std::uint64_t seed) {
        std::uint64_t z = seed;
        for (auto& s : s_) {
            z = mix(z);
            s = z;
        }
        // A zero state would be absorbing.
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t s_[4] = {};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace precode
