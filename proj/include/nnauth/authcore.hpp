#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nnauth/prng.hpp"

namespace nnauth {

/// Block pixels mapped to zero-mean values with max amplitude 1 (all zero for
/// a constant block). Invariant under constant brightness shifts.
struct NormalizedBlock {
    std::vector<double> p;
};

/// Adjustable decision margin, valid range [0, 0.5]. Larger values tolerate
/// larger benign perturbations at the cost of tamper sensitivity.
struct Margin {
    double t = 0.2;
};

/// Per-block secret: one bias per repetition plus the code bit the biases
/// were solved for.
struct BlockSecret {
    std::vector<double> biases;
    int code_bit = 0;
};

struct ExtractedBit {
    int bit = 0;
    double activation = 0.0;  // pre-threshold sum, kept for diagnostics
};

enum class Aggregation {
    AnyMismatch,   // flag the block if any repetition disagrees (default)
    MajorityVote,  // flag only if most repetitions disagree
};

struct BlockVerdict {
    std::vector<int> bits;  // one extracted bit per repetition
    bool match = false;
};

NormalizedBlock normalize_block(std::span<const std::uint8_t> pixels);

/// Bias solving the threshold equation so the neuron outputs s with
/// activation exactly +T (s=1) or -T (s=0) on the unmodified block.
double compute_bias(const NormalizedBlock& block, std::span<const double> weights,
                    int code_bit, Margin margin);

/// Threshold extraction: bit = 1 iff sum(w_j * p_j) + b > 0.
ExtractedBit extract_bit(const NormalizedBlock& block, std::span<const double> weights,
                         double bias);

BlockSecret sign_block(std::span<const std::uint8_t> pixels, AuthKey key,
                       std::uint32_t channel, std::uint32_t block_index, int code_bit,
                       Margin margin, std::uint32_t repetitions);

BlockVerdict verify_block(std::span<const std::uint8_t> pixels, AuthKey key,
                          std::uint32_t channel, std::uint32_t block_index,
                          const BlockSecret& secret,
                          Aggregation aggregation = Aggregation::AnyMismatch);

}  // namespace nnauth
