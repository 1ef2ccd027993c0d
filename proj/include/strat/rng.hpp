#pragma once

#include <cstdint>
#include <string_view>

namespace strat {

// Deterministic splittable RNG (splitmix64). Every random choice in the
// project flows from one seed through named substreams, so adding a new
// consumer never perturbs existing ones.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n > 0.
    uint64_t below(uint64_t n) { return next() % n; }

    int range(int lo, int hi) {  // inclusive ends
        return lo + static_cast<int>(below(static_cast<uint64_t>(hi - lo + 1)));
    }

    // Derive an independent substream keyed by a name and indices.
    Rng stream(std::string_view name, uint64_t a = 0, uint64_t b = 0, uint64_t c = 0) const {
        uint64_t h = 0xcbf29ce484222325ULL ^ state_;
        auto mix = [&h](uint64_t v) {
            h ^= v;
            h *= 0x100000001b3ULL;
            h ^= h >> 29;
        };
        for (char ch : name) mix(static_cast<uint64_t>(static_cast<unsigned char>(ch)));
        mix(a + 1);
        mix(b + 1);
        mix(c + 1);
        Rng r(h);
        r.next();  // decorrelate from the raw hash
        return r;
    }

private:
    uint64_t state_;
};

}  // namespace strat
