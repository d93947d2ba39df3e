#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace nnauth {

/// Secret 64-bit authentication key. All pseudorandom material (weight
/// sequences, default code bits, the descriptor fingerprint) derives from it.
struct AuthKey {
    std::uint64_t k = 0;

    friend bool operator==(const AuthKey&, const AuthKey&) = default;
};

namespace detail {

// SplitMix64 output/finalization function (Vigna). Stateless; also used as a
// generic 64-bit mixer for seed derivation.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kCodeTag = 0xC0DEC0DEC0DEC0DEull;
constexpr std::uint64_t kFingerprintTag = 0xF1A6F1A6F1A6F1A6ull;

}  // namespace detail

/// Deterministic SplitMix64 stream. Copyable; equal states produce equal
/// futures.
class Stream {
public:
    constexpr explicit Stream(std::uint64_t state) noexcept : state_(state) {}

    constexpr std::uint64_t next() noexcept {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    /// Next value mapped to [0, 1) with 64-bit numerator resolution.
    double next_unit() noexcept { return static_cast<double>(next()) * 0x1p-64; }

    constexpr std::uint64_t state() const noexcept { return state_; }

    friend bool operator==(const Stream&, const Stream&) = default;

private:
    std::uint64_t state_;
};

/// Independent stream for one (channel, block, repetition) triple, so blocks
/// can be signed or verified in any order and in parallel.
constexpr Stream derive_block_seed(AuthKey key, std::uint32_t channel,
                                   std::uint32_t block_index,
                                   std::uint32_t repetition) noexcept {
    using detail::mix64;
    std::uint64_t s = mix64(key.k);
    s = mix64(s ^ channel);
    s = mix64(s ^ block_index);
    s = mix64(s ^ repetition);
    return Stream(s);
}

/// n weights in [0, 1) drawn from the stream. Throws on n == 0.
inline std::vector<double> gen_weights(Stream seed, std::size_t n) {
    if (n == 0) throw std::invalid_argument("gen_weights: n must be >= 1");
    std::vector<double> w(n);
    for (double& v : w) v = seed.next_unit();
    return w;
}

/// Default authentication-code bit for one (channel, block); key-derived so
/// no external code bitmap is required.
constexpr int gen_code_bit(AuthKey key, std::uint32_t channel,
                           std::uint32_t block_index) noexcept {
    using detail::mix64;
    std::uint64_t s = mix64(key.k ^ detail::kCodeTag);
    s = mix64(s ^ channel);
    s = mix64(s ^ block_index);
    return static_cast<int>(s >> 63);
}

/// 64-bit key fingerprint stored in descriptors; lets verification reject a
/// wrong key outright instead of reporting everything as tampered.
constexpr std::uint64_t key_fingerprint(AuthKey key) noexcept {
    return detail::mix64(key.k ^ detail::kFingerprintTag);
}

}  // namespace nnauth
