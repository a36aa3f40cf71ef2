#pragma once

#include <cstdint>
#include <vector>
#include <algorithm>

namespace ldpc {

// SplitMix64. Used everywhere instead of <random> engines so that seeded
// results are identical across platforms and standard library versions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), rejection sampled to avoid modulo bias
    std::uint64_t bounded(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % n;
        }
    }

    // uniform in [0, 1)
    double unit_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

inline std::uint64_t mix_u64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

// Counter-based stream: the generator state depends only on (seed, stream,
// counter), so Monte-Carlo trials can be sharded across threads in any order
// and still reproduce bit-identical results.
inline SplitMix64 trial_rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t s = mix_u64(seed + 0x9e3779b97f4a7c15ULL);
    s = mix_u64(s ^ mix_u64(stream + 0xd1b54a32d192ed03ULL));
    s = mix_u64(s ^ mix_u64(counter + 0x8cb92ba72f3d8dd7ULL));
    return SplitMix64(s);
}

// k distinct values from [0, n), sorted. Partial Fisher-Yates on an index pool.
inline std::vector<int> sample_without_replacement(int n, int k, SplitMix64& rng) {
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    for (int i = 0; i < k; ++i) {
        int j = i + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(n - i)));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

} // namespace ldpc
