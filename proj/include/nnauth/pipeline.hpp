#pragma once

#include <optional>
#include <vector>

#include "nnauth/authcore.hpp"
#include "nnauth/descriptor.hpp"
#include "nnauth/image.hpp"

namespace nnauth {

struct SignConfig {
    int block_size = 8;
    Margin margin{0.2};
    std::uint32_t repetitions = 1;
    ChannelMode channel_mode = ChannelMode::PerChannel;
    /// Optional user-supplied authentication code, one 0/1 entry per
    /// (channel, block) in channel-major block-raster order. Defaults to
    /// key-derived bits.
    std::optional<std::vector<std::uint8_t>> code_bits;
};

struct BlockResult {
    std::vector<int> bits;  // extracted bit per repetition
    bool match = false;
};

struct VerificationReport {
    BlockGrid grid;
    std::uint32_t channels_effective = 1;
    std::uint32_t repetitions = 1;
    double margin = 0.0;
    std::uint64_t key_fingerprint = 0;
    /// channel-major, then block raster order; channels_effective*rows*cols
    /// entries.
    std::vector<BlockResult> blocks;
    std::size_t matched_bits = 0;
    std::size_t total_bits = 0;
    double cdr = 0.0;

    bool block_matches(int channel, int row, int col) const {
        return blocks[static_cast<std::size_t>(channel) * grid.blocks_per_channel() +
                      static_cast<std::size_t>(row) * grid.cols + col]
            .match;
    }
    /// Fraction of (channel, block) entries flagged as mismatching.
    double mismatch_fraction() const;
};

/// Signs every block of every effective channel; the image itself is never
/// modified.
Descriptor sign_image(const ImageBuffer& image, AuthKey key, const SignConfig& config);

struct VerifyOptions {
    Aggregation aggregation = Aggregation::AnyMismatch;
    /// Testing hook; a production verify should always check the fingerprint.
    bool check_fingerprint = true;
};

/// Throws std::invalid_argument on geometry mismatch and WrongKeyError on a
/// fingerprint mismatch; neither is a tamper verdict.
VerificationReport verify_image(const ImageBuffer& image, const Descriptor& descriptor,
                                AuthKey key, const VerifyOptions& options = {});

class WrongKeyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Block-resolution tamper map over the covered area: a B x B square is 0
/// (black) where any channel's block mismatches, 255 elsewhere.
ImageBuffer render_tamper_map(const VerificationReport& report);

}  // namespace nnauth
