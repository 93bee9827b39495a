#pragma once

#include <cmath>
#include <cstdint>

namespace grandlab {

// Counter-derived per-trial random stream: each (seed, stream) pair yields an
// independent deterministic sequence, so trials can be dealt to workers in
// any order without changing results. splitmix64 core.
class TrialRng {
  public:
    TrialRng(uint64_t seed, uint64_t stream) {
        s_ = mix(seed + 0x9E3779B97F4A7C15ull * (stream + 1));
        s_ = mix(s_ ^ 0xBF58476D1CE4E5B9ull);
    }

    uint64_t next_u64() {
        s_ += 0x9E3779B97F4A7C15ull;
        uint64_t z = s_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 bits
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // standard normal via the polar method
    double next_gauss() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_unit() - 1.0;
            v = 2.0 * next_unit() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

  private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 33)) * 0xFF51AFD7ED558CCDull;
        z = (z ^ (z >> 33)) * 0xC4CEB9FE1A85EC53ull;
        return z ^ (z >> 33);
    }

    uint64_t s_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace grandlab
