#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dbc {

// Deterministic RNG helpers. std::mt19937_64 output is standardized, but the
// std distributions are not, so all sampling goes through these functions to
// keep generated data byte-identical across platforms and library versions.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next_u64() { return eng_(); }

    // uniform in [0, 1)
    double next_double() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // uniform integer in [0, n)
    uint64_t next_below(uint64_t n) {
        // rejection to avoid modulo bias
        uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = eng_();
        } while (v >= lim);
        return v % n;
    }

    // standard normal via Box-Muller (cached second value)
    double next_gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1, u2;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[next_below(i)]);
    }

private:
    std::mt19937_64 eng_;
    bool has_cached_ = false;
    double cached_ = 0.0;
};

}  // namespace dbc
