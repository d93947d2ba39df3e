#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nnauth/descriptor.hpp"
#include "nnauth/image.hpp"
#include "nnauth/pipeline.hpp"

namespace nnauth {

enum class DistortionKind { Gaussian, Jpeg };

/// One robustness experiment: a full cross product of block sizes, margins
/// and distortion levels, repeated over deterministic trials.
struct SweepSpec {
    ImageBuffer image;
    AuthKey key;
    DistortionKind kind = DistortionKind::Gaussian;
    std::vector<int> block_sizes = {4, 8, 16, 32};
    std::vector<double> margins = {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
    /// Gaussian variances on the [0,1] scale, or JPEG qualities.
    std::vector<double> levels = {0.001, 0.0025, 0.005, 0.0075, 0.01, 0.02};
    int trials = 10;
    std::uint64_t base_seed = 1;
    std::uint32_t repetitions = 1;
    ChannelMode channel_mode = ChannelMode::PerChannel;
};

struct SweepRow {
    int block_size;
    double margin;
    double level;
    int trial;
    double cdr;
    std::size_t blocks;  // authenticated blocks per image (localization granularity)
    std::size_t bits;    // total extracted bits (blocks * repetitions)
};

struct CellAggregate {
    int block_size;
    double margin;
    double level;
    double mean_cdr;
    double std_cdr;  // sample standard deviation over trials
};

struct SweepResult {
    DistortionKind kind;
    std::vector<SweepRow> rows;
    std::vector<CellAggregate> cells;

    const CellAggregate& cell(int block_size, double margin, double level) const;
};

double cdr(std::span<const std::uint8_t> original_bits,
           std::span<const std::uint8_t> extracted_bits);

SweepResult run_noise_sweep(const SweepSpec& spec);
SweepResult run_jpeg_sweep(const SweepSpec& spec);

/// Fixed-schema CSV; identical specs yield byte-identical output. Aggregate
/// rows carry "mean"/"std" in the trial column.
std::string to_csv(const SweepResult& result);

struct SecurityReport {
    std::size_t total_bits = 0;  // N: one code bit per (channel, block)
    std::size_t log2_space = 0;  // brute-force space is 2^N
    bool weak = false;           // N below 64
};

SecurityReport estimate_security(const Descriptor& descriptor);

}  // namespace nnauth
