#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace srgg {

// SplitMix64 stepper, used for seeding and stream derivation.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
};

// murmur3 finalizer; bijective 64-bit mixer
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xFF51AFD7ED558CCDULL;
    x ^= x >> 33;
    x *= 0xC4CEB9FE1A85EC53ULL;
    x ^= x >> 33;
    return x;
}

// Identifies the random stream a replication was drawn from.
struct StreamId {
    std::uint64_t master_seed = 0;
    std::uint64_t index = 0;

    bool operator==(const StreamId&) const = default;
};

// xoshiro256++ with streams derived from (master seed, stream index).
//
// Stream derivation: the four state words come from SplitMix64 seeded with
// mix64(mix64(master ^ GOLDEN) ^ (index + LEAP)), so distinct replication
// indices under one master seed give statistically independent streams and
// the whole construction is reproducible from the pair alone.
class Rng {
  public:
    explicit Rng(StreamId id) : id_(id) {
        const std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
        const std::uint64_t leap = 0xD1B54A32D192ED03ULL;
        SplitMix64 sm(mix64(mix64(id.master_seed ^ golden) ^ (id.index + leap)));
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = golden;
    }

    Rng(std::uint64_t master_seed, std::uint64_t index) : Rng(StreamId{master_seed, index}) {}

    StreamId stream() const { return id_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal via Marsaglia polar method
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, q;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            q = u * u + v * v;
        } while (q >= 1.0 || q == 0.0);
        const double f = std::sqrt(-2.0 * std::log(q) / q);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    // Poisson draw; inversion chain for small means, PTRS otherwise
    long poisson(double mean);

    // Number of failures before the next success in a Bernoulli(p) sequence.
    // Returns a huge sentinel when p == 0.
    std::uint64_t geometric_skip(double p) {
        if (p >= 1.0) return 0;
        if (p <= 0.0) return std::numeric_limits<std::uint64_t>::max();
        const double u = 1.0 - uniform();  // in (0, 1]
        const double g = std::floor(std::log(u) / std::log1p(-p));
        if (g >= 9.2e18) return std::numeric_limits<std::uint64_t>::max();
        return static_cast<std::uint64_t>(g);
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    StreamId id_;
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace srgg
