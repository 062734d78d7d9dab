#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace betadel {

namespace detail {

inline constexpr std::uint64_t rotl64(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

inline std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace detail

// xoshiro256++ (Blackman/Vigna). State is seeded through SplitMix64 so that
// any 64-bit seed, including 0, yields a well-mixed nonzero state.
class Xoshiro256pp {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = detail::splitmix64_next(sm);
    }

    explicit Xoshiro256pp(const std::array<std::uint64_t, 4>& state)
        : state_(state) {
        if (state[0] == 0 && state[1] == 0 && state[2] == 0 && state[3] == 0)
            throw std::invalid_argument("xoshiro256++ state must be nonzero");
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~std::uint64_t{0}; }

    result_type operator()() noexcept {
        const std::uint64_t result =
            detail::rotl64(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = detail::rotl64(state_[3], 45);
        return result;
    }

    // advances 2^192 steps; partitions the period into independent substreams
    void long_jump() noexcept {
        static constexpr std::uint64_t kLongJump[] = {
            0x76e15d3efefdcbbfull, 0xc5004e441c522fb3ull,
            0x77710069854ee241ull, 0x39109bb02acbe635ull};
        std::array<std::uint64_t, 4> acc{};
        for (const std::uint64_t word : kLongJump)
            for (int b = 0; b < 64; ++b) {
                if (word & (std::uint64_t{1} << b))
                    for (int i = 0; i < 4; ++i) acc[i] ^= state_[i];
                (*this)();
            }
        state_ = acc;
    }

private:
    std::array<std::uint64_t, 4> state_;
};

// Reproducible stream of variates: identical (seed, stream id) pairs yield
// identical sequences. Stream id 0 seeds the engine exactly like
// Xoshiro256pp(seed); a nonzero id is absorbed into the SplitMix64 chain, so
// construction is O(1) even for structured 64-bit ids and distinct ids start
// from unrelated 256-bit states.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : engine_(derive_state(seed, stream_id)),
          seed_(seed),
          stream_id_(stream_id) {}

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    std::uint64_t bits() noexcept { return engine_(); }

    double uniform() noexcept { // [0, 1)
        return double(bits() >> 11) * 0x1.0p-53;
    }

    double uniform_pos() noexcept { // (0, 1], safe under log
        return double((bits() >> 11) + 1) * 0x1.0p-53;
    }

    double exponential() noexcept { return -std::log(uniform_pos()); }

    double normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    // unit-scale gamma variate; squeeze/acceptance for shape >= 1, boosted by
    // the U^{1/a} power trick below that
    double gamma_variate(double shape) {
        if (!(shape > 0.0))
            throw std::invalid_argument("gamma shape must be positive");
        if (shape < 1.0)
            return gamma_variate(shape + 1.0) *
                   std::pow(uniform_pos(), 1.0 / shape);
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / (3.0 * std::sqrt(d));
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_pos();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
                return d * v;
        }
    }

    double beta_variate(double a, double b) {
        const double x = gamma_variate(a);
        const double y = gamma_variate(b);
        return x / (x + y);
    }

private:
    static std::array<std::uint64_t, 4> derive_state(std::uint64_t seed,
                                                     std::uint64_t stream) {
        std::uint64_t sm = seed;
        if (stream != 0) sm = detail::splitmix64_next(sm) ^ stream;
        std::array<std::uint64_t, 4> words;
        for (auto& w : words) w = detail::splitmix64_next(sm);
        return words;
    }

    Xoshiro256pp engine_;
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace betadel
