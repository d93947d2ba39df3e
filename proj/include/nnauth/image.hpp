#pragma once

#include <cstdint>
#include <vector>

namespace nnauth {

/// 8-bit image, row-major, channel-interleaved. channels is 1 (gray) or 3
/// (RGB).
struct ImageBuffer {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> samples;

    std::uint8_t at(int x, int y, int c) const {
        return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }
    std::uint8_t& at(int x, int y, int c) {
        return samples[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    friend bool operator==(const ImageBuffer&, const ImageBuffer&) = default;
};

ImageBuffer make_image(int width, int height, int channels,
                       std::uint8_t fill = 0);

/// How a color image maps to authenticated channels.
enum class ChannelMode : std::uint8_t {
    PerChannel = 0,  // every channel gets its own code bits and biases
    Luma = 1,        // a single luminance plane is authenticated
};

/// Floor partition of an image into B x B blocks. Trailing strips narrower
/// than B are left uncovered (and unauthenticated).
struct BlockGrid {
    int block_size = 0;
    int rows = 0;
    int cols = 0;
    int covered_width = 0;
    int covered_height = 0;

    int blocks_per_channel() const { return rows * cols; }

    friend bool operator==(const BlockGrid&, const BlockGrid&) = default;
};

BlockGrid make_grid(const ImageBuffer& image, int block_size);

/// Number of authenticated channels under the given mode.
int effective_channels(const ImageBuffer& image, ChannelMode mode);

/// Rec. 601 integer luma, exact for gray inputs.
std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// B*B pixels of one block from one effective channel, raster order within
/// the block. block_index = row * cols + col.
std::vector<std::uint8_t> extract_block(const ImageBuffer& image, const BlockGrid& grid,
                                        ChannelMode mode, int channel, int block_index);

}  // namespace nnauth
