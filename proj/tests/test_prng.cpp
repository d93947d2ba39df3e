#include <doctest.h>

#include <cstdint>
#include <set>

#include "nnauth/prng.hpp"

using namespace nnauth;

namespace {

// Independent straight-from-definition SplitMix64 evaluator, kept separate
// from the library implementation on purpose.
struct OracleSplitMix {
    std::uint64_t x;
    std::uint64_t operator()() {
        x = x + 0x9E3779B97F4A7C15ull;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

}  // namespace

TEST_CASE("splitmix64 golden vectors from state 0") {
    // frozen from the oracle before the main build; these also match the
    // published reference stream for seed 0
    const std::uint64_t expected[4] = {
        0xE220A8397B1DCDAFull,
        0x6E789E6AA1B965F4ull,
        0x06C45D188009454Full,
        0xF88BB8A8724C81ECull,
    };
    OracleSplitMix oracle{0};
    Stream stream(0);
    for (std::uint64_t want : expected) {
        CHECK(oracle() == want);
        CHECK(stream.next() == want);
    }
}

TEST_CASE("stream determinism and purity") {
    Stream a(0xDEADBEEFull), b(0xDEADBEEFull);
    for (int i = 0; i < 1000; ++i) CHECK(a.next() == b.next());
    CHECK(a == b);
}

TEST_CASE("derive_block_seed separates blocks and keys") {
    const AuthKey k1{123}, k2{456};
    CHECK(derive_block_seed(k1, 0, 0, 0) == derive_block_seed(k1, 0, 0, 0));
    CHECK(derive_block_seed(k1, 0, 0, 0) != derive_block_seed(k1, 0, 1, 0));
    CHECK(derive_block_seed(k1, 0, 0, 0) != derive_block_seed(k2, 0, 0, 0));
    CHECK(derive_block_seed(k1, 0, 0, 0) != derive_block_seed(k1, 1, 0, 0));
    CHECK(derive_block_seed(k1, 0, 0, 0) != derive_block_seed(k1, 0, 0, 1));
}

TEST_CASE("block streams are pairwise distinct across 1000 blocks") {
    const AuthKey key{0xABCDEF0123456789ull};
    std::set<std::uint64_t> first_outputs;
    for (std::uint32_t block = 0; block < 1000; ++block) {
        Stream s = derive_block_seed(key, 0, block, 0);
        first_outputs.insert(s.next());
    }
    CHECK(first_outputs.size() == 1000);
}

TEST_CASE("gen_weights: range, length, determinism, oracle agreement") {
    const AuthKey key{77};
    const Stream seed = derive_block_seed(key, 0, 0, 0);
    const auto w = gen_weights(seed, 64);
    REQUIRE(w.size() == 64);
    for (double v : w) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
    CHECK(w == gen_weights(seed, 64));

    OracleSplitMix oracle{seed.state()};
    const auto w4 = gen_weights(seed, 4);
    for (int i = 0; i < 4; ++i)
        CHECK(w4[i] == static_cast<double>(oracle()) * 0x1p-64);

    CHECK_THROWS_AS(gen_weights(seed, 0), std::invalid_argument);
}

TEST_CASE("weight sample mean is near 0.5") {
    Stream seed = derive_block_seed(AuthKey{5}, 0, 0, 0);
    const auto w = gen_weights(seed, 1 << 12);
    double mean = 0.0;
    for (double v : w) mean += v;
    mean /= static_cast<double>(w.size());
    CHECK(mean > 0.48);
    CHECK(mean < 0.52);
}

TEST_CASE("gen_code_bit: domain, determinism, balance") {
    const AuthKey key{0x1122334455667788ull};
    int ones = 0;
    for (std::uint32_t block = 0; block < 4096; ++block) {
        const int bit = gen_code_bit(key, 0, block);
        CHECK((bit == 0 || bit == 1));
        CHECK(bit == gen_code_bit(key, 0, block));
        ones += bit;
    }
    const double frac = ones / 4096.0;
    CHECK(frac > 0.45);
    CHECK(frac < 0.55);
}

TEST_CASE("key fingerprint distinguishes keys") {
    CHECK(key_fingerprint(AuthKey{1}) == key_fingerprint(AuthKey{1}));
    CHECK(key_fingerprint(AuthKey{1}) != key_fingerprint(AuthKey{2}));
}
