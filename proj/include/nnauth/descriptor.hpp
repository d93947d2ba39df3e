#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nnauth/image.hpp"

namespace nnauth {

/// The stored secret for one image: geometry, parameters, code bits, and one
/// bias per (channel, block, repetition). This file IS the secret material;
/// protecting it in transit is the caller's problem.
///
/// Serialized layout (all multi-byte fields little-endian):
///   magic "NNAC" | u32 version=1 | u32 width | u32 height
///   u8 channels | u8 channel_mode | u16 reserved=0
///   u32 block_size | u32 repetitions | f64 margin | u64 key_fingerprint
///   code bits packed MSB-first, channel-major then block raster order
///   biases as f64, ordered channel -> block raster -> repetition
struct Descriptor {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint8_t channels = 1;
    ChannelMode channel_mode = ChannelMode::PerChannel;
    std::uint32_t block_size = 8;
    std::uint32_t repetitions = 1;
    double margin = 0.2;
    std::uint64_t key_fingerprint = 0;
    std::vector<std::uint8_t> code_bits;  // one 0/1 entry per (channel, block)
    std::vector<double> biases;

    std::uint32_t rows() const { return height / block_size; }
    std::uint32_t cols() const { return width / block_size; }
    std::uint32_t effective_channels() const {
        return channel_mode == ChannelMode::Luma ? 1 : channels;
    }
    std::size_t code_bit_count() const {
        return static_cast<std::size_t>(effective_channels()) * rows() * cols();
    }

    friend bool operator==(const Descriptor&, const Descriptor&) = default;
};

enum class DecodeErrorKind {
    MalformedHeader,
    TruncatedPayload,
    InvariantViolation,
};

class DecodeError : public std::runtime_error {
public:
    DecodeError(DecodeErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    DecodeErrorKind kind() const { return kind_; }

private:
    DecodeErrorKind kind_;
};

/// Throws std::invalid_argument if the descriptor violates its invariants.
void validate(const Descriptor& descriptor);

std::vector<std::uint8_t> encode(const Descriptor& descriptor);

/// Throws DecodeError; never reads past the input.
Descriptor decode(std::span<const std::uint8_t> bytes);

Descriptor load_descriptor(const std::string& path);
void save_descriptor(const Descriptor& descriptor, const std::string& path);

}  // namespace nnauth
