#include <doctest.h>

#include <algorithm>
#include <array>
#include <bit>
#include <filesystem>
#include <string>

#include "nnauth/descriptor.hpp"
#include "nnauth/pipeline.hpp"
#include "nnauth/prng.hpp"
#include "support/synthimage.hpp"

using namespace nnauth;

namespace {

Descriptor sample_descriptor(std::uint32_t reps = 2) {
    const ImageBuffer img = testsupport::natural_image(64, 48, 12);
    SignConfig cfg;
    cfg.repetitions = reps;
    cfg.margin = Margin{0.25};
    return sign_image(img, AuthKey{0x1234567890ABCDEFull}, cfg);
}

Descriptor random_descriptor(Stream& rng) {
    Descriptor d;
    d.block_size = 2 + static_cast<std::uint32_t>(rng.next() % 6);
    d.width = d.block_size * (1 + static_cast<std::uint32_t>(rng.next() % 7));
    d.height = d.block_size * (1 + static_cast<std::uint32_t>(rng.next() % 7));
    d.channels = (rng.next() & 1) ? 3 : 1;
    d.channel_mode = (rng.next() & 1) ? ChannelMode::Luma : ChannelMode::PerChannel;
    d.repetitions = 1 + static_cast<std::uint32_t>(rng.next() % 3);
    d.margin = 0.5 * rng.next_unit();
    d.key_fingerprint = rng.next();
    d.code_bits.resize(d.code_bit_count());
    for (auto& bit : d.code_bits) bit = static_cast<std::uint8_t>(rng.next() & 1);
    d.biases.resize(d.code_bit_count() * d.repetitions);
    for (auto& b : d.biases) b = 4.0 * (rng.next_unit() - 0.5);
    return d;
}

}  // namespace

TEST_CASE("encode is deterministic and round-trips") {
    const Descriptor d = sample_descriptor();
    const auto bytes = encode(d);
    CHECK(bytes == encode(d));
    CHECK(decode(bytes) == d);
    CHECK(encode(decode(bytes)) == bytes);
}

TEST_CASE("payload size arithmetic for 512x512 gray B=8 R=1") {
    const ImageBuffer img = testsupport::random_image(512, 512, 1, 2);
    const Descriptor d = sign_image(img, AuthKey{1}, {});
    CHECK(d.code_bit_count() == 4096);
    const auto bytes = encode(d);
    CHECK(bytes.size() == 44 + 4096 / 8 + 4096 * 8);
}

// Frozen byte-level vector; docs/formats.md documents the same payload
// field by field. Any change here is a format break.
TEST_CASE("golden descriptor vector") {
    ImageBuffer img = make_image(16, 8, 1);
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 16; ++x)
            img.at(x, y, 0) = static_cast<std::uint8_t>((x + 2 * y) % 256);
    SignConfig cfg;
    cfg.margin = Margin{0.25};
    cfg.repetitions = 2;
    const auto bytes = encode(sign_image(img, AuthKey{0x0123456789ABCDEFull}, cfg));

    static constexpr const char* kGoldenHex =
        "4e4e414301000000100000000800000001000000080000000200000000000000"
        "0000d03f5dd523a1f28966dd00f8aac426e033d73f36e24bac051af63f68071b"
        "92e401ab3f86b085a99231d6bf";
    std::string hex;
    hex.reserve(bytes.size() * 2);
    for (std::uint8_t b : bytes) {
        static constexpr char digits[] = "0123456789abcdef";
        hex += digits[b >> 4];
        hex += digits[b & 0xF];
    }
    CHECK(bytes.size() == 77);
    CHECK(hex == kGoldenHex);
}

TEST_CASE("random descriptors round-trip") {
    Stream rng(314);
    for (int trial = 0; trial < 100; ++trial) {
        const Descriptor d = random_descriptor(rng);
        CHECK(decode(encode(d)) == d);
    }
}

TEST_CASE("decode rejects malformed input with distinct categories") {
    const auto bytes = encode(sample_descriptor());

    SUBCASE("corrupted magic") {
        auto bad = bytes;
        bad[0] ^= 0xFF;
        CHECK_THROWS_WITH_AS(decode(bad), "bad descriptor magic", DecodeError);
        try {
            decode(bad);
        } catch (const DecodeError& e) {
            CHECK(e.kind() == DecodeErrorKind::MalformedHeader);
        }
    }
    SUBCASE("unknown version") {
        auto bad = bytes;
        bad[4] = 9;
        try {
            decode(bad);
            FAIL("expected DecodeError");
        } catch (const DecodeError& e) {
            CHECK(e.kind() == DecodeErrorKind::MalformedHeader);
        }
    }
    SUBCASE("truncated payload") {
        auto bad = bytes;
        bad.resize(bad.size() - 8);
        try {
            decode(bad);
            FAIL("expected DecodeError");
        } catch (const DecodeError& e) {
            CHECK(e.kind() == DecodeErrorKind::TruncatedPayload);
        }
    }
    SUBCASE("header-only input") {
        std::vector<std::uint8_t> bad(bytes.begin(), bytes.begin() + 10);
        try {
            decode(bad);
            FAIL("expected DecodeError");
        } catch (const DecodeError& e) {
            CHECK(e.kind() == DecodeErrorKind::MalformedHeader);
        }
    }
    SUBCASE("margin out of range") {
        Descriptor d = sample_descriptor();
        d.margin = 0.75;
        CHECK_THROWS_AS(encode(d), std::invalid_argument);
        auto bad = bytes;
        // margin field starts at offset 28; overwrite with 1.0
        const auto one = std::bit_cast<std::array<std::uint8_t, 8>>(1.0);
        std::copy(one.begin(), one.end(), bad.begin() + 28);
        try {
            decode(bad);
            FAIL("expected DecodeError");
        } catch (const DecodeError& e) {
            CHECK(e.kind() == DecodeErrorKind::InvariantViolation);
        }
    }
    SUBCASE("trailing garbage") {
        auto bad = bytes;
        bad.push_back(0);
        try {
            decode(bad);
            FAIL("expected DecodeError");
        } catch (const DecodeError& e) {
            CHECK(e.kind() == DecodeErrorKind::InvariantViolation);
        }
    }
}

TEST_CASE("fuzzed descriptors never crash the parser") {
    const auto base = encode(sample_descriptor(1));
    Stream rng(2718);
    int rejected = 0;
    for (int i = 0; i < 20000; ++i) {
        auto fuzzed = base;
        const int flips = 1 + static_cast<int>(rng.next() % 16);
        for (int f = 0; f < flips; ++f)
            fuzzed[rng.next() % fuzzed.size()] ^= static_cast<std::uint8_t>(rng.next());
        if (rng.next() % 4 == 0) fuzzed.resize(rng.next() % (fuzzed.size() + 1));
        try {
            (void)decode(fuzzed);
        } catch (const DecodeError&) {
            ++rejected;
        }
    }
    CHECK(rejected > 0);
}

TEST_CASE("descriptor files round-trip on disk") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "nnauth_sidecar_test.nnac";
    const Descriptor d = sample_descriptor();
    save_descriptor(d, path.string());
    CHECK(load_descriptor(path.string()) == d);
    fs::remove(path);
    CHECK_THROWS(load_descriptor(path.string()));
}
