#ifndef DOMAINMINER_RNG_HPP
#define DOMAINMINER_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace domainminer {

// Deterministic splitmix64 stream. Benchmark instances must be reproducible
// across platforms, so no <random> engines or distributions are used anywhere;
// every consumer derives a stream from an explicit seed tuple.
class Rng {
  public:
    explicit Rng(uint64_t seed) : state_(mix(seed ^ 0x9e3779b97f4a7c15ull)) {}

    // Key a stream by a tuple, e.g. (suite seed, m_star, n, replicate).
    static Rng keyed(std::initializer_list<uint64_t> key) {
        uint64_t h = 0x243f6a8885a308d3ull;
        for (uint64_t k : key) h = mix(h ^ mix(k));
        return Rng(h);
    }

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ull;
        return mix(state_);
    }

    // Uniform integer in [0, bound), exact via rejection. bound >= 1.
    uint64_t below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    int below_int(int bound) { return static_cast<int>(below(static_cast<uint64_t>(bound))); }

    // True with probability num/den.
    bool chance(uint64_t num, uint64_t den) { return below(den) < num; }

    // True with probability p (p given as per-mille to stay integral).
    bool chance_permille(unsigned permille) { return below(1000) < permille; }

  private:
    static uint64_t mix(uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    uint64_t state_;
};

} // namespace domainminer

#endif
