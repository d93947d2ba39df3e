#include <CLI11.hpp>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "nnauth/bench.hpp"
#include "nnauth/distort.hpp"
#include "nnauth/imageio.hpp"
#include "nnauth/pipeline.hpp"
#include "nnauth/prng.hpp"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitTampered = 1;
constexpr int kExitError = 2;

nnauth::AuthKey parse_key(const std::string& hex) {
    if (hex.size() != 16 || hex.find_first_not_of("0123456789abcdefABCDEF") !=
                                std::string::npos)
        throw std::invalid_argument("key must be exactly 16 hex digits");
    return nnauth::AuthKey{std::strtoull(hex.c_str(), nullptr, 16)};
}

nnauth::AuthKey resolve_key(const std::string& flag_value) {
    if (!flag_value.empty()) return parse_key(flag_value);
    if (const char* env = std::getenv("AUTH_KEY")) return parse_key(env);
    throw std::invalid_argument("no key given: use --key or the AUTH_KEY environment variable");
}

nnauth::ChannelMode parse_mode(const std::string& mode) {
    if (mode == "per-channel") return nnauth::ChannelMode::PerChannel;
    if (mode == "luma") return nnauth::ChannelMode::Luma;
    throw std::invalid_argument("mode must be 'per-channel' or 'luma'");
}

// Code bitmap: a gray image, one pixel per block (>=128 means bit 1), either
// rows high (replicated per channel) or rows*channels high.
std::vector<std::uint8_t> load_code_bitmap(const std::string& path,
                                           const nnauth::BlockGrid& grid, int channels) {
    const nnauth::ImageBuffer img = nnauth::load_image(path);
    if (img.channels != 1 || img.width != grid.cols ||
        (img.height != grid.rows && img.height != grid.rows * channels))
        throw std::invalid_argument(
            "code bitmap must be a gray image of size cols x rows (or cols x rows*channels)");
    std::vector<std::uint8_t> bits;
    bits.reserve(static_cast<std::size_t>(channels) * grid.rows * grid.cols);
    const bool replicate = img.height == grid.rows;
    for (int c = 0; c < channels; ++c)
        for (int r = 0; r < grid.rows; ++r)
            for (int x = 0; x < grid.cols; ++x)
                bits.push_back(img.at(x, replicate ? r : c * grid.rows + r, 0) >= 128);
    return bits;
}

void write_report(std::ostream& out, const nnauth::VerificationReport& report,
                  double tau, bool tampered) {
    out << "cdr: " << report.cdr << '\n'
        << "matched_bits: " << report.matched_bits << '\n'
        << "total_bits: " << report.total_bits << '\n'
        << "mismatch_fraction: " << report.mismatch_fraction() << '\n'
        << "block_size: " << report.grid.block_size << '\n'
        << "rows: " << report.grid.rows << '\n'
        << "cols: " << report.grid.cols << '\n'
        << "channels_effective: " << report.channels_effective << '\n'
        << "repetitions: " << report.repetitions << '\n'
        << "margin: " << report.margin << '\n'
        << "tau: " << tau << '\n'
        << "verdict: " << (tampered ? "tampered" : "clean") << '\n';
    // per-row run lengths, alternating match/mismatch counts, starting with match
    char header[64];
    for (int c = 0; c < static_cast<int>(report.channels_effective); ++c) {
        for (int r = 0; r < report.grid.rows; ++r) {
            std::snprintf(header, sizeof(header), "mask c%d r%d:", c, r);
            out << header;
            int run = 0;
            bool counting_match = true;
            for (int x = 0; x < report.grid.cols; ++x) {
                const bool match = report.block_matches(c, r, x);
                if (match == counting_match) {
                    ++run;
                } else {
                    out << ' ' << run;
                    counting_match = match;
                    run = 1;
                }
            }
            out << ' ' << run << '\n';
        }
    }
}

struct CommonOpts {
    std::string key_hex;
    int block_size = 8;
    double margin = 0.2;
    std::uint32_t reps = 1;
    std::string mode = "per-channel";
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-k,--key", opts.key_hex, "64-bit key as 16 hex digits (or env AUTH_KEY)");
    cmd->add_option("-B,--block-size", opts.block_size, "block size in pixels")
        ->check(CLI::Range(2, 1 << 15));
    cmd->add_option("-T,--margin", opts.margin, "decision margin in [0, 0.5]")
        ->check(CLI::Range(0.0, 0.5));
    cmd->add_option("-R,--reps", opts.reps, "repetitions (weight sequences per block)")
        ->check(CLI::Range(1u, 1u << 16));
    cmd->add_option("--mode", opts.mode, "channel policy: per-channel | luma");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block-wise image authentication: keyed threshold signatures per block"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string image_path, desc_path, out_path, map_out, code_path, csv_path;
    double tau = 0.0;

    auto* sign = app.add_subcommand("sign", "sign an image into a descriptor file");
    sign->add_option("image", image_path, "input image (pgm/ppm/png/jpeg)")->required();
    add_common(sign, opts);
    sign->add_option("-o,--out", out_path, "output descriptor path")->required();
    sign->add_option("--code", code_path, "code bitmap image (one pixel per block)");

    auto* verify = app.add_subcommand("verify", "verify an image against a descriptor");
    verify->add_option("image", image_path, "input image")->required();
    verify->add_option("descriptor", desc_path, "descriptor file")->required();
    verify->add_option("-k,--key", opts.key_hex, "64-bit key as 16 hex digits (or env AUTH_KEY)");
    verify->add_option("--tau", tau, "tamper verdict threshold on the block mismatch fraction")
        ->check(CLI::Range(0.0, 1.0));
    verify->add_option("-o,--out", out_path, "write the text report here instead of stdout");
    verify->add_option("--map-out", map_out, "write the tamper map image (pgm/png)");

    auto* bench = app.add_subcommand("bench", "run a robustness sweep and emit CSV");
    std::string sweep_kind = "noise";
    std::vector<int> bench_Bs = {4, 8, 16, 32};
    std::vector<double> bench_Ts = {0.0, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
    std::vector<double> bench_levels;
    int trials = 10;
    std::uint64_t seed = 1;
    bench->add_option("image", image_path, "input image")->required();
    add_common(bench, opts);
    bench->add_option("--sweep", sweep_kind, "distortion kind: noise | jpeg");
    bench->add_option("--Bs", bench_Bs, "block sizes to sweep");
    bench->add_option("--Ts", bench_Ts, "margins to sweep");
    bench->add_option("--levels", bench_levels,
                      "noise variances ([0,1] scale) or JPEG qualities");
    bench->add_option("--trials", trials, "trials per cell")->check(CLI::Range(1, 10000));
    bench->add_option("--seed", seed, "base noise seed (trial t uses seed+t)");
    bench->add_option("--csv", csv_path, "write CSV here instead of stdout");

    auto* security = app.add_subcommand("security", "report brute-force strength of a descriptor");
    security->add_option("descriptor", desc_path, "descriptor file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitError;
    }

    try {
        if (sign->parsed()) {
            const nnauth::AuthKey key = resolve_key(opts.key_hex);
            const nnauth::ImageBuffer image = nnauth::load_image(image_path);
            nnauth::SignConfig cfg;
            cfg.block_size = opts.block_size;
            cfg.margin = nnauth::Margin{opts.margin};
            cfg.repetitions = opts.reps;
            cfg.channel_mode = parse_mode(opts.mode);
            if (!code_path.empty()) {
                const auto grid = nnauth::make_grid(image, cfg.block_size);
                cfg.code_bits = load_code_bitmap(
                    code_path, grid, nnauth::effective_channels(image, cfg.channel_mode));
            }
            const nnauth::Descriptor d = nnauth::sign_image(image, key, cfg);
            nnauth::save_descriptor(d, out_path);
            const nnauth::SecurityReport sec = nnauth::estimate_security(d);
            std::cout << "signed: " << out_path << '\n'
                      << "code_bits: " << sec.total_bits << '\n'
                      << "log2_bruteforce_space: " << sec.log2_space << '\n'
                      << "uncovered_right_px: "
                      << image.width - d.cols() * d.block_size << '\n'
                      << "uncovered_bottom_px: "
                      << image.height - d.rows() * d.block_size << '\n';
            if (sec.weak)
                std::cout << "warning: fewer than 64 code bits; brute-force space is weak\n";
            return kExitClean;
        }

        if (verify->parsed()) {
            const nnauth::AuthKey key = resolve_key(opts.key_hex);
            const nnauth::ImageBuffer image = nnauth::load_image(image_path);
            const nnauth::Descriptor d = nnauth::load_descriptor(desc_path);
            const nnauth::VerificationReport report = nnauth::verify_image(image, d, key);
            const bool tampered = report.mismatch_fraction() > tau;
            if (!map_out.empty())
                nnauth::save_image(nnauth::render_tamper_map(report), map_out);
            if (out_path.empty()) {
                write_report(std::cout, report, tau, tampered);
            } else {
                std::ofstream out(out_path, std::ios::trunc);
                if (!out) throw std::runtime_error("cannot write " + out_path);
                write_report(out, report, tau, tampered);
            }
            return tampered ? kExitTampered : kExitClean;
        }

        if (bench->parsed()) {
            const nnauth::AuthKey key = resolve_key(opts.key_hex);
            nnauth::SweepSpec spec;
            spec.image = nnauth::load_image(image_path);
            spec.key = key;
            spec.block_sizes = bench_Bs;
            spec.margins = bench_Ts;
            spec.trials = trials;
            spec.base_seed = seed;
            spec.repetitions = opts.reps;
            spec.channel_mode = parse_mode(opts.mode);
            if (sweep_kind == "noise") {
                spec.kind = nnauth::DistortionKind::Gaussian;
            } else if (sweep_kind == "jpeg") {
                spec.kind = nnauth::DistortionKind::Jpeg;
                spec.levels = {100, 90, 80, 70, 60, 50, 40};
            } else {
                throw std::invalid_argument("--sweep must be 'noise' or 'jpeg'");
            }
            if (!bench_levels.empty()) spec.levels = bench_levels;
            const nnauth::SweepResult result =
                spec.kind == nnauth::DistortionKind::Gaussian ? run_noise_sweep(spec)
                                                              : run_jpeg_sweep(spec);
            const std::string csv = nnauth::to_csv(result);
            if (csv_path.empty()) {
                std::cout << csv;
            } else {
                std::ofstream out(csv_path, std::ios::trunc | std::ios::binary);
                if (!out) throw std::runtime_error("cannot write " + csv_path);
                out << csv;
            }
            return kExitClean;
        }

        // security
        const nnauth::Descriptor d = nnauth::load_descriptor(desc_path);
        const nnauth::SecurityReport sec = nnauth::estimate_security(d);
        std::cout << "code_bits: " << sec.total_bits << '\n'
                  << "log2_bruteforce_space: " << sec.log2_space << '\n'
                  << "weak: " << (sec.weak ? "yes" : "no") << '\n';
        return kExitClean;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
}
