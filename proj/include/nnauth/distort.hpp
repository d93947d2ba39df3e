#pragma once

#include <cstdint>

#include "nnauth/image.hpp"

namespace nnauth {

/// Additive Gaussian noise with the given variance on the [0,1] intensity
/// scale: x -> clamp(round(x + 255 * g), 0, 255), g ~ N(0, variance).
/// Deviates come from a SplitMix64 stream seeded with noise_seed via
/// Box-Muller, so results are bit-for-bit reproducible. variance = 0 is the
/// identity.
ImageBuffer add_gaussian_noise(const ImageBuffer& image, double variance,
                               std::uint64_t noise_seed);

/// Baseline JPEG encode at the given quality (1..100) followed by decode,
/// entirely in memory. Geometry and channel count are preserved.
ImageBuffer jpeg_roundtrip(const ImageBuffer& image, int quality);

/// Identity of the JPEG codec behind jpeg_roundtrip, for experiment reports.
const char* jpeg_codec_name();

}  // namespace nnauth
