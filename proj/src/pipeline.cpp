#include "nnauth/pipeline.hpp"

#include <stdexcept>

namespace nnauth {

double VerificationReport::mismatch_fraction() const {
    if (blocks.empty()) return 0.0;
    std::size_t bad = 0;
    for (const BlockResult& b : blocks)
        if (!b.match) ++bad;
    return static_cast<double>(bad) / static_cast<double>(blocks.size());
}

Descriptor sign_image(const ImageBuffer& image, AuthKey key, const SignConfig& config) {
    const BlockGrid grid = make_grid(image, config.block_size);
    const int eff = effective_channels(image, config.channel_mode);
    const std::size_t nblocks =
        static_cast<std::size_t>(eff) * grid.blocks_per_channel();

    if (config.code_bits && config.code_bits->size() != nblocks)
        throw std::invalid_argument("sign_image: code bitmap size mismatch");

    Descriptor d;
    d.width = static_cast<std::uint32_t>(image.width);
    d.height = static_cast<std::uint32_t>(image.height);
    d.channels = static_cast<std::uint8_t>(image.channels);
    d.channel_mode = config.channel_mode;
    d.block_size = static_cast<std::uint32_t>(config.block_size);
    d.repetitions = config.repetitions;
    d.margin = config.margin.t;
    d.key_fingerprint = key_fingerprint(key);
    d.code_bits.reserve(nblocks);
    d.biases.reserve(nblocks * config.repetitions);

    for (int c = 0; c < eff; ++c) {
        for (int i = 0; i < grid.blocks_per_channel(); ++i) {
            const std::size_t flat =
                static_cast<std::size_t>(c) * grid.blocks_per_channel() + i;
            const int s = config.code_bits
                              ? (*config.code_bits)[flat] != 0
                              : gen_code_bit(key, static_cast<std::uint32_t>(c),
                                             static_cast<std::uint32_t>(i));
            const auto pixels = extract_block(image, grid, config.channel_mode, c, i);
            const BlockSecret secret =
                sign_block(pixels, key, static_cast<std::uint32_t>(c),
                           static_cast<std::uint32_t>(i), s, config.margin,
                           config.repetitions);
            d.code_bits.push_back(static_cast<std::uint8_t>(secret.code_bit));
            d.biases.insert(d.biases.end(), secret.biases.begin(), secret.biases.end());
        }
    }
    validate(d);
    return d;
}

VerificationReport verify_image(const ImageBuffer& image, const Descriptor& descriptor,
                                AuthKey key, const VerifyOptions& options) {
    validate(descriptor);
    if (descriptor.width != static_cast<std::uint32_t>(image.width) ||
        descriptor.height != static_cast<std::uint32_t>(image.height) ||
        descriptor.channels != static_cast<std::uint8_t>(image.channels))
        throw std::invalid_argument("verify_image: image geometry does not match descriptor");
    if (options.check_fingerprint && descriptor.key_fingerprint != key_fingerprint(key))
        throw WrongKeyError("verify_image: key fingerprint mismatch (wrong key?)");

    const BlockGrid grid = make_grid(image, static_cast<int>(descriptor.block_size));
    const int eff = static_cast<int>(descriptor.effective_channels());
    const std::uint32_t R = descriptor.repetitions;

    VerificationReport report;
    report.grid = grid;
    report.channels_effective = static_cast<std::uint32_t>(eff);
    report.repetitions = R;
    report.margin = descriptor.margin;
    report.key_fingerprint = descriptor.key_fingerprint;
    report.blocks.reserve(descriptor.code_bits.size());
    report.total_bits = descriptor.code_bits.size() * R;

    for (int c = 0; c < eff; ++c) {
        for (int i = 0; i < grid.blocks_per_channel(); ++i) {
            const std::size_t flat =
                static_cast<std::size_t>(c) * grid.blocks_per_channel() + i;
            BlockSecret secret;
            secret.code_bit = descriptor.code_bits[flat];
            secret.biases.assign(descriptor.biases.begin() + flat * R,
                                 descriptor.biases.begin() + (flat + 1) * R);
            const auto pixels =
                extract_block(image, grid, descriptor.channel_mode, c, i);
            const BlockVerdict verdict =
                verify_block(pixels, key, static_cast<std::uint32_t>(c),
                             static_cast<std::uint32_t>(i), secret, options.aggregation);
            for (int bit : verdict.bits)
                if (bit == secret.code_bit) ++report.matched_bits;
            report.blocks.push_back(BlockResult{verdict.bits, verdict.match});
        }
    }
    report.cdr = report.total_bits == 0
                     ? 0.0
                     : static_cast<double>(report.matched_bits) /
                           static_cast<double>(report.total_bits);
    return report;
}

ImageBuffer render_tamper_map(const VerificationReport& report) {
    const BlockGrid& grid = report.grid;
    ImageBuffer map =
        make_image(grid.covered_width, grid.covered_height, 1, 255);
    const int B = grid.block_size;
    for (int row = 0; row < grid.rows; ++row) {
        for (int col = 0; col < grid.cols; ++col) {
            bool tampered = false;
            for (int c = 0; c < static_cast<int>(report.channels_effective); ++c)
                tampered = tampered || !report.block_matches(c, row, col);
            if (!tampered) continue;
            for (int dy = 0; dy < B; ++dy)
                for (int dx = 0; dx < B; ++dx)
                    map.at(col * B + dx, row * B + dy, 0) = 0;
        }
    }
    return map;
}

}  // namespace nnauth
