#include "nnauth/image.hpp"

#include <stdexcept>

namespace nnauth {

ImageBuffer make_image(int width, int height, int channels, std::uint8_t fill) {
    if (width < 1 || height < 1 || (channels != 1 && channels != 3))
        throw std::invalid_argument("make_image: bad geometry");
    ImageBuffer img;
    img.width = width;
    img.height = height;
    img.channels = channels;
    img.samples.assign(static_cast<std::size_t>(width) * height * channels, fill);
    return img;
}

BlockGrid make_grid(const ImageBuffer& image, int block_size) {
    if (block_size < 2)
        throw std::invalid_argument("block size must be >= 2");
    if (image.width < block_size || image.height < block_size)
        throw std::invalid_argument("image smaller than one block");
    BlockGrid grid;
    grid.block_size = block_size;
    grid.rows = image.height / block_size;
    grid.cols = image.width / block_size;
    grid.covered_width = grid.cols * block_size;
    grid.covered_height = grid.rows * block_size;
    return grid;
}

int effective_channels(const ImageBuffer& image, ChannelMode mode) {
    return mode == ChannelMode::Luma ? 1 : image.channels;
}

std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return static_cast<std::uint8_t>((299 * r + 587 * g + 114 * b + 500) / 1000);
}

std::vector<std::uint8_t> extract_block(const ImageBuffer& image, const BlockGrid& grid,
                                        ChannelMode mode, int channel, int block_index) {
    const int eff = effective_channels(image, mode);
    if (channel < 0 || channel >= eff)
        throw std::invalid_argument("extract_block: channel out of range");
    if (block_index < 0 || block_index >= grid.blocks_per_channel())
        throw std::invalid_argument("extract_block: block index out of range");
    const int B = grid.block_size;
    const int row = block_index / grid.cols;
    const int col = block_index % grid.cols;
    const int x0 = col * B;
    const int y0 = row * B;

    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(B) * B);
    const bool use_luma = mode == ChannelMode::Luma && image.channels == 3;
    for (int dy = 0; dy < B; ++dy) {
        for (int dx = 0; dx < B; ++dx) {
            if (use_luma) {
                out.push_back(luma(image.at(x0 + dx, y0 + dy, 0),
                                   image.at(x0 + dx, y0 + dy, 1),
                                   image.at(x0 + dx, y0 + dy, 2)));
            } else {
                out.push_back(image.at(x0 + dx, y0 + dy, channel));
            }
        }
    }
    return out;
}

}  // namespace nnauth
