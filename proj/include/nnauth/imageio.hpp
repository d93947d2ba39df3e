#pragma once

#include <string>

#include "nnauth/image.hpp"

namespace nnauth {

/// Loads PGM (P5), PPM (P6), PNG, or JPEG based on file extension
/// (.pgm/.ppm/.png/.jpg/.jpeg). 8-bit samples only; 16-bit PNM maxval is
/// rejected. PNG alpha is stripped; palette and gray PNG decode to 1 or 3
/// channels as stored.
ImageBuffer load_image(const std::string& path);

/// Writes PGM for 1-channel and PPM for 3-channel images, or PNG when the
/// extension is .png.
void save_image(const ImageBuffer& image, const std::string& path);

ImageBuffer load_pnm(const std::string& path);
void save_pnm(const ImageBuffer& image, const std::string& path);

ImageBuffer load_png(const std::string& path);
void save_png(const ImageBuffer& image, const std::string& path);

ImageBuffer load_jpeg(const std::string& path);

}  // namespace nnauth
