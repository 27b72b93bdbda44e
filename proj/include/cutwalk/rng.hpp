#pragma once

#include <cstdint>
#include <string_view>

namespace cutwalk {

/// splitmix64 finalizer; good avalanche, cheap, stable across platforms.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

/// Identifies one reproducible random sequence. (master_seed, stream_id)
/// fully determines the sequence; distinct stream_ids give statistically
/// independent streams, so replicate r of experiment e can use
/// stream_id = stream_id_of(e, r) and be generated on any worker.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;

    /// Independent sub-stream; O(1), no sequence sharing with the parent.
    RngStream derive(std::uint64_t salt) const {
        return RngStream{master_seed, mix64(stream_id ^ mix64(salt ^ 0xa0761d6478bd642fULL))};
    }
};

/// stream_id = hash(experiment tag, replicate index).
inline std::uint64_t stream_id_of(std::string_view tag, std::uint64_t replicate) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return mix64(h ^ mix64(replicate ^ 0xe7037ed1a0b428dbULL));
}

/// Counter-based generator: output k is mix64 of (base + k*gamma), so
/// jump-ahead is O(1) and replay never depends on shared state.
class CounterRng {
public:
    explicit CounterRng(const RngStream& s)
        : state_(mix64(s.master_seed ^ mix64(s.stream_id ^ 0x2545f4914f6cdd1dULL))) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Unbiased uniform draw from {0, ..., n-1} (Lemire rejection).
    std::uint32_t uniform_below(std::uint32_t n) {
        std::uint64_t m = static_cast<std::uint64_t>(static_cast<std::uint32_t>(next_u64())) * n;
        auto lo = static_cast<std::uint32_t>(m);
        if (lo < n) {
            const std::uint32_t t = (0u - n) % n;
            while (lo < t) {
                m = static_cast<std::uint64_t>(static_cast<std::uint32_t>(next_u64())) * n;
                lo = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace cutwalk
