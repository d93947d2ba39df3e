#include "nnauth/distort.hpp"

#include <cstdio>

#include <jpeglib.h>

#include <cmath>
#include <csetjmp>
#include <cstring>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nnauth/prng.hpp"

namespace nnauth {

namespace {

// Standard normal deviates via Box-Muller; generates pairs and hands out the
// cached second value on alternate calls.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : stream_(seed) {}

    double next() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so the log stays finite
        const double u1 = (static_cast<double>(stream_.next() >> 11) + 1.0) * 0x1p-53;
        const double u2 = static_cast<double>(stream_.next() >> 11) * 0x1p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    Stream stream_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
    char message[JMSG_LENGTH_MAX] = {};
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    (*cinfo->err->format_message)(cinfo, err->message);
    std::longjmp(err->jump, 1);
}

}  // namespace

ImageBuffer add_gaussian_noise(const ImageBuffer& image, double variance,
                               std::uint64_t noise_seed) {
    if (variance < 0.0)
        throw std::invalid_argument("add_gaussian_noise: variance must be >= 0");
    if (variance == 0.0) return image;
    const double sigma = 255.0 * std::sqrt(variance);
    GaussianStream gauss(noise_seed);
    ImageBuffer out = image;
    for (std::uint8_t& s : out.samples) {
        const double v = std::round(static_cast<double>(s) + sigma * gauss.next());
        s = static_cast<std::uint8_t>(v < 0.0 ? 0.0 : (v > 255.0 ? 255.0 : v));
    }
    return out;
}

ImageBuffer jpeg_roundtrip(const ImageBuffer& image, int quality) {
    if (quality < 1 || quality > 100)
        throw std::invalid_argument("jpeg_roundtrip: quality must be in [1, 100]");

    JpegErrorMgr err;
    unsigned char* buffer = nullptr;
    unsigned long buffer_size = 0;

    {
        jpeg_compress_struct cinfo;
        cinfo.err = jpeg_std_error(&err.pub);
        err.pub.error_exit = jpeg_error_exit;
        if (setjmp(err.jump)) {
            jpeg_destroy_compress(&cinfo);
            std::free(buffer);
            throw std::runtime_error(std::string("jpeg encode failed: ") + err.message);
        }
        jpeg_create_compress(&cinfo);
        jpeg_mem_dest(&cinfo, &buffer, &buffer_size);
        cinfo.image_width = static_cast<JDIMENSION>(image.width);
        cinfo.image_height = static_cast<JDIMENSION>(image.height);
        cinfo.input_components = image.channels;
        cinfo.in_color_space = image.channels == 1 ? JCS_GRAYSCALE : JCS_RGB;
        jpeg_set_defaults(&cinfo);
        jpeg_set_quality(&cinfo, quality, TRUE);
        jpeg_start_compress(&cinfo, TRUE);
        const std::size_t stride =
            static_cast<std::size_t>(image.width) * image.channels;
        while (cinfo.next_scanline < cinfo.image_height) {
            JSAMPROW row = const_cast<JSAMPROW>(
                image.samples.data() + cinfo.next_scanline * stride);
            jpeg_write_scanlines(&cinfo, &row, 1);
        }
        jpeg_finish_compress(&cinfo);
        jpeg_destroy_compress(&cinfo);
    }

    ImageBuffer out;
    {
        jpeg_decompress_struct dinfo;
        dinfo.err = jpeg_std_error(&err.pub);
        err.pub.error_exit = jpeg_error_exit;
        if (setjmp(err.jump)) {
            jpeg_destroy_decompress(&dinfo);
            std::free(buffer);
            throw std::runtime_error(std::string("jpeg decode failed: ") + err.message);
        }
        jpeg_create_decompress(&dinfo);
        jpeg_mem_src(&dinfo, buffer, buffer_size);
        jpeg_read_header(&dinfo, TRUE);
        dinfo.out_color_space = image.channels == 1 ? JCS_GRAYSCALE : JCS_RGB;
        jpeg_start_decompress(&dinfo);
        out = make_image(static_cast<int>(dinfo.output_width),
                         static_cast<int>(dinfo.output_height), image.channels);
        const std::size_t stride =
            static_cast<std::size_t>(out.width) * out.channels;
        while (dinfo.output_scanline < dinfo.output_height) {
            JSAMPROW row = out.samples.data() + dinfo.output_scanline * stride;
            jpeg_read_scanlines(&dinfo, &row, 1);
        }
        jpeg_finish_decompress(&dinfo);
        jpeg_destroy_decompress(&dinfo);
    }
    std::free(buffer);

    if (out.width != image.width || out.height != image.height)
        throw std::runtime_error("jpeg_roundtrip: codec changed the geometry");
    return out;
}

const char* jpeg_codec_name() {
#ifdef LIBJPEG_TURBO_VERSION
    return "libjpeg-turbo";
#else
    return "libjpeg (IJG API)";
#endif
}

}  // namespace nnauth
