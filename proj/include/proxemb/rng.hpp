#pragma once
#include <cstdint>
#include <vector>

namespace proxemb {

// splitmix64 generator. std:: distributions are not pinned across platforms,
// so anything that must reproduce bit-for-bit goes through this.
class rng {
public:
    explicit rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform integer on [0, n), rejection sampled to avoid modulo bias
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t lim = ~0ULL - ~0ULL % n;
        std::uint64_t v;
        do { v = next_u64(); } while (v >= lim);
        return v % n;
    }

    // uniform double on [0, 1) with 53 random bits
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[next_below(i)]);
    }

private:
    std::uint64_t state_;
};

} // namespace proxemb
