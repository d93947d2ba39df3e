#include "nnauth/bench.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "nnauth/distort.hpp"

namespace nnauth {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

SweepResult run_sweep(const SweepSpec& spec) {
    if (spec.block_sizes.empty() || spec.margins.empty() || spec.levels.empty())
        throw std::invalid_argument("sweep: value lists must be non-empty");
    if (spec.trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
    if (spec.kind == DistortionKind::Jpeg)
        for (double q : spec.levels)
            if (q < 1 || q > 100 || q != std::floor(q))
                throw std::invalid_argument("sweep: JPEG qualities must be integers in [1,100]");

    SweepResult result;
    result.kind = spec.kind;

    // distorted images depend only on (level, trial), not on (B, T)
    std::map<std::pair<double, int>, ImageBuffer> distorted;
    auto distort = [&](double level, int trial) -> const ImageBuffer& {
        const auto key = std::make_pair(level, trial);
        auto it = distorted.find(key);
        if (it != distorted.end()) return it->second;
        ImageBuffer img =
            spec.kind == DistortionKind::Gaussian
                ? add_gaussian_noise(spec.image, level,
                                     spec.base_seed + static_cast<std::uint64_t>(trial))
                : jpeg_roundtrip(spec.image, static_cast<int>(level));
        return distorted.emplace(key, std::move(img)).first->second;
    };

    for (int B : spec.block_sizes) {
        for (double T : spec.margins) {
            SignConfig cfg;
            cfg.block_size = B;
            cfg.margin = Margin{T};
            cfg.repetitions = spec.repetitions;
            cfg.channel_mode = spec.channel_mode;
            const Descriptor d = sign_image(spec.image, spec.key, cfg);
            for (double level : spec.levels) {
                double sum = 0.0, sumsq = 0.0;
                for (int trial = 0; trial < spec.trials; ++trial) {
                    const VerificationReport report =
                        verify_image(distort(level, trial), d, spec.key);
                    result.rows.push_back(SweepRow{B, T, level, trial, report.cdr,
                                                   d.code_bit_count(),
                                                   report.total_bits});
                    sum += report.cdr;
                    sumsq += report.cdr * report.cdr;
                }
                const double mean = sum / spec.trials;
                const double var =
                    spec.trials > 1
                        ? std::max(0.0, (sumsq - sum * mean) / (spec.trials - 1))
                        : 0.0;
                result.cells.push_back(
                    CellAggregate{B, T, level, mean, std::sqrt(var)});
            }
        }
    }
    return result;
}

}  // namespace

const CellAggregate& SweepResult::cell(int block_size, double margin,
                                       double level) const {
    for (const CellAggregate& c : cells)
        if (c.block_size == block_size && c.margin == margin && c.level == level)
            return c;
    throw std::out_of_range("sweep cell not found");
}

double cdr(std::span<const std::uint8_t> original_bits,
           std::span<const std::uint8_t> extracted_bits) {
    if (original_bits.empty() || original_bits.size() != extracted_bits.size())
        throw std::invalid_argument("cdr: bit vectors must be non-empty and equal length");
    std::size_t agree = 0;
    for (std::size_t i = 0; i < original_bits.size(); ++i)
        if ((original_bits[i] != 0) == (extracted_bits[i] != 0)) ++agree;
    return static_cast<double>(agree) / static_cast<double>(original_bits.size());
}

SweepResult run_noise_sweep(const SweepSpec& spec) {
    if (spec.kind != DistortionKind::Gaussian)
        throw std::invalid_argument("run_noise_sweep: spec.kind must be Gaussian");
    return run_sweep(spec);
}

SweepResult run_jpeg_sweep(const SweepSpec& spec) {
    if (spec.kind != DistortionKind::Jpeg)
        throw std::invalid_argument("run_jpeg_sweep: spec.kind must be Jpeg");
    return run_sweep(spec);
}

std::string to_csv(const SweepResult& result) {
    const char* kind = result.kind == DistortionKind::Gaussian ? "noise" : "jpeg";
    std::string out = "sweep,B,T,level,trial,cdr,blocks,bits\n";
    std::size_t cell_index = 0;
    std::size_t rows_per_cell = result.cells.empty()
                                    ? result.rows.size()
                                    : result.rows.size() / result.cells.size();
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const SweepRow& r = result.rows[i];
        out += kind;
        out += ',' + std::to_string(r.block_size) + ',' + fmt(r.margin) + ',' +
               fmt(r.level) + ',' + std::to_string(r.trial) + ',' + fmt(r.cdr) + ',' +
               std::to_string(r.blocks) + ',' + std::to_string(r.bits) + '\n';
        if ((i + 1) % rows_per_cell == 0 && cell_index < result.cells.size()) {
            const CellAggregate& c = result.cells[cell_index++];
            const std::string prefix = std::string(kind) + ',' +
                                       std::to_string(c.block_size) + ',' +
                                       fmt(c.margin) + ',' + fmt(c.level) + ',';
            out += prefix + "mean," + fmt(c.mean_cdr) + ",,\n";
            out += prefix + "std," + fmt(c.std_cdr) + ",,\n";
        }
    }
    return out;
}

SecurityReport estimate_security(const Descriptor& descriptor) {
    validate(descriptor);
    SecurityReport report;
    report.total_bits = descriptor.code_bit_count();
    report.log2_space = report.total_bits;
    report.weak = report.total_bits < 64;
    return report;
}

}  // namespace nnauth
