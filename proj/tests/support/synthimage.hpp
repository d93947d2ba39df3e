#pragma once

// Deterministic synthetic images for tests: no binary assets in the repo.

#include <cmath>
#include <cstdint>

#include "nnauth/image.hpp"
#include "nnauth/prng.hpp"

namespace nnauth::testsupport {

inline double lattice(std::uint64_t seed, int ix, int iy) {
    using detail::mix64;
    const std::uint64_t h =
        mix64(mix64(mix64(seed) ^ static_cast<std::uint64_t>(ix + 0x10000)) ^
              static_cast<std::uint64_t>(iy + 0x10000));
    return static_cast<double>(h) * 0x1p-63 - 1.0;  // [-1, 1)
}

inline double smoothstep(double t) { return t * t * (3.0 - 2.0 * t); }

// bilinear-interpolated lattice noise at one scale
inline double value_noise(std::uint64_t seed, double x, double y, int scale) {
    const double fx = x / scale, fy = y / scale;
    const int ix = static_cast<int>(std::floor(fx));
    const int iy = static_cast<int>(std::floor(fy));
    const double tx = smoothstep(fx - ix), ty = smoothstep(fy - iy);
    const std::uint64_t s = seed ^ (static_cast<std::uint64_t>(scale) << 32);
    const double a = lattice(s, ix, iy), b = lattice(s, ix + 1, iy);
    const double c = lattice(s, ix, iy + 1), d = lattice(s, ix + 1, iy + 1);
    return (a * (1 - tx) + b * tx) * (1 - ty) + (c * (1 - tx) + d * tx) * ty;
}

/// Natural-looking grayscale test image: a low-frequency base plus several
/// octaves of value noise, giving textured blocks at every block size.
inline ImageBuffer natural_image(int width, int height, std::uint64_t seed = 42) {
    ImageBuffer img = make_image(width, height, 1);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double v = 128.0;
            v += 55.0 * std::sin(2.0 * M_PI * x / 97.0) * std::sin(2.0 * M_PI * y / 121.0);
            v += 48.0 * value_noise(seed, x, y, 32);
            v += 36.0 * value_noise(seed + 1, x, y, 16);
            v += 28.0 * value_noise(seed + 2, x, y, 8);
            v += 22.0 * value_noise(seed + 3, x, y, 4);
            v += 14.0 * value_noise(seed + 4, x, y, 2);
            v = std::round(v);
            img.at(x, y, 0) = static_cast<std::uint8_t>(v < 0 ? 0 : (v > 255 ? 255 : v));
        }
    }
    return img;
}

/// iid uniform pixels; maximally textured, useful for statistical oracles.
inline ImageBuffer random_image(int width, int height, int channels,
                                std::uint64_t seed) {
    ImageBuffer img = make_image(width, height, channels);
    Stream stream(detail::mix64(seed));
    for (std::uint8_t& s : img.samples)
        s = static_cast<std::uint8_t>(stream.next() >> 56);
    return img;
}

}  // namespace nnauth::testsupport
