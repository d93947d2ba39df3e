#include "nnauth/authcore.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace nnauth {

namespace {

void check_margin(Margin margin) {
    if (!(margin.t >= 0.0 && margin.t <= 0.5))
        throw std::invalid_argument("margin must lie in [0, 0.5]");
}

double weighted_sum(std::span<const double> p, std::span<const double> w) {
    if (p.size() != w.size())
        throw std::invalid_argument("weight/pixel length mismatch");
    double sum = 0.0;
    for (std::size_t j = 0; j < p.size(); ++j) sum += w[j] * p[j];
    return sum;
}

}  // namespace

NormalizedBlock normalize_block(std::span<const std::uint8_t> pixels) {
    if (pixels.empty())
        throw std::invalid_argument("normalize_block: empty block");
    const std::size_t n = pixels.size();
    double mean = 0.0;
    for (std::uint8_t x : pixels) mean += x;
    mean /= static_cast<double>(n);

    NormalizedBlock out;
    out.p.resize(n);
    double amplitude = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        out.p[j] = static_cast<double>(pixels[j]) - mean;
        amplitude = std::max(amplitude, std::abs(out.p[j]));
    }
    if (amplitude > 0.0) {
        for (double& v : out.p) v /= amplitude;
    } else {
        // constant block: all deviations are zero already
    }
    return out;
}

double compute_bias(const NormalizedBlock& block, std::span<const double> weights,
                    int code_bit, Margin margin) {
    check_margin(margin);
    const double sum = weighted_sum(block.p, weights);
    return (code_bit != 0 ? margin.t : -margin.t) - sum;
}

ExtractedBit extract_bit(const NormalizedBlock& block, std::span<const double> weights,
                         double bias) {
    if (!std::isfinite(bias))
        throw std::invalid_argument("extract_bit: bias must be finite");
    ExtractedBit out;
    out.activation = weighted_sum(block.p, weights) + bias;
    out.bit = out.activation > 0.0 ? 1 : 0;
    return out;
}

BlockSecret sign_block(std::span<const std::uint8_t> pixels, AuthKey key,
                       std::uint32_t channel, std::uint32_t block_index, int code_bit,
                       Margin margin, std::uint32_t repetitions) {
    if (repetitions < 1)
        throw std::invalid_argument("sign_block: repetitions must be >= 1");
    const NormalizedBlock block = normalize_block(pixels);
    BlockSecret secret;
    secret.code_bit = code_bit != 0 ? 1 : 0;
    secret.biases.reserve(repetitions);
    for (std::uint32_t r = 0; r < repetitions; ++r) {
        const auto w =
            gen_weights(derive_block_seed(key, channel, block_index, r), block.p.size());
        secret.biases.push_back(compute_bias(block, w, secret.code_bit, margin));
    }
    return secret;
}

BlockVerdict verify_block(std::span<const std::uint8_t> pixels, AuthKey key,
                          std::uint32_t channel, std::uint32_t block_index,
                          const BlockSecret& secret, Aggregation aggregation) {
    if (secret.biases.empty())
        throw std::invalid_argument("verify_block: secret has no biases");
    const NormalizedBlock block = normalize_block(pixels);
    BlockVerdict verdict;
    verdict.bits.reserve(secret.biases.size());
    std::size_t agree = 0;
    for (std::uint32_t r = 0; r < secret.biases.size(); ++r) {
        const auto w =
            gen_weights(derive_block_seed(key, channel, block_index, r), block.p.size());
        const int bit = extract_bit(block, w, secret.biases[r]).bit;
        verdict.bits.push_back(bit);
        if (bit == secret.code_bit) ++agree;
    }
    const std::size_t reps = secret.biases.size();
    verdict.match = aggregation == Aggregation::AnyMismatch
                        ? agree == reps
                        : 2 * agree > reps;
    return verdict;
}

}  // namespace nnauth
