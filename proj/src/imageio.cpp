#include "nnauth/imageio.hpp"

#include <jpeglib.h>
#include <png.h>

#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <stdexcept>

namespace nnauth {

namespace {

std::string lower_ext(const std::string& path) {
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos) return {};
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

int read_pnm_token(std::istream& in) {
    // skips whitespace and '#' comments between header fields
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
    int value = -1;
    in >> value;
    return value;
}

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

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw std::runtime_error("cannot open " + path);
    return f;
}

}  // namespace

ImageBuffer load_pnm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    char magic[2] = {};
    in.read(magic, 2);
    int channels = 0;
    if (magic[0] == 'P' && magic[1] == '5') channels = 1;
    else if (magic[0] == 'P' && magic[1] == '6') channels = 3;
    else throw std::runtime_error(path + ": not a binary PGM/PPM file");

    const int width = read_pnm_token(in);
    const int height = read_pnm_token(in);
    const int maxval = read_pnm_token(in);
    if (width < 1 || height < 1) throw std::runtime_error(path + ": bad PNM dimensions");
    if (maxval != 255) throw std::runtime_error(path + ": only maxval 255 is supported");
    in.get();  // single whitespace byte before the raster

    ImageBuffer img = make_image(width, height, channels);
    in.read(reinterpret_cast<char*>(img.samples.data()),
            static_cast<std::streamsize>(img.samples.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.samples.size()))
        throw std::runtime_error(path + ": truncated PNM raster");
    return img;
}

void save_pnm(const ImageBuffer& image, const std::string& path) {
    if (image.channels != 1 && image.channels != 3)
        throw std::invalid_argument("save_pnm: 1 or 3 channels required");
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << (image.channels == 1 ? "P5" : "P6") << '\n'
        << image.width << ' ' << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.samples.data()),
              static_cast<std::streamsize>(image.samples.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

ImageBuffer load_png(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    png_image pimg;
    std::memset(&pimg, 0, sizeof(pimg));
    pimg.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_stdio(&pimg, f.get()))
        throw std::runtime_error(path + ": " + pimg.message);
    const bool gray = (pimg.format & PNG_FORMAT_FLAG_COLOR) == 0;
    pimg.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    ImageBuffer img = make_image(static_cast<int>(pimg.width),
                                 static_cast<int>(pimg.height), gray ? 1 : 3);
    if (!png_image_finish_read(&pimg, nullptr, img.samples.data(), 0, nullptr)) {
        std::string msg = pimg.message;
        png_image_free(&pimg);
        throw std::runtime_error(path + ": " + msg);
    }
    return img;
}

void save_png(const ImageBuffer& image, const std::string& path) {
    png_image pimg;
    std::memset(&pimg, 0, sizeof(pimg));
    pimg.version = PNG_IMAGE_VERSION;
    pimg.width = static_cast<png_uint_32>(image.width);
    pimg.height = static_cast<png_uint_32>(image.height);
    pimg.format = image.channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    FilePtr f = open_file(path, "wb");
    if (!png_image_write_to_stdio(&pimg, f.get(), 0, image.samples.data(), 0, nullptr))
        throw std::runtime_error(path + ": " + pimg.message);
}

ImageBuffer load_jpeg(const std::string& path) {
    FilePtr f = open_file(path, "rb");
    jpeg_decompress_struct cinfo;
    JpegErrorMgr err;
    cinfo.err = jpeg_std_error(&err.pub);
    err.pub.error_exit = jpeg_error_exit;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw std::runtime_error(path + ": " + err.message);
    }
    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f.get());
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);
    ImageBuffer img = make_image(static_cast<int>(cinfo.output_width),
                                 static_cast<int>(cinfo.output_height),
                                 cinfo.output_components == 1 ? 1 : 3);
    const std::size_t stride =
        static_cast<std::size_t>(img.width) * img.channels;
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = img.samples.data() + cinfo.output_scanline * stride;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return img;
}

ImageBuffer load_image(const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "pgm" || ext == "ppm" || ext == "pnm") return load_pnm(path);
    if (ext == "png") return load_png(path);
    if (ext == "jpg" || ext == "jpeg") return load_jpeg(path);
    throw std::runtime_error(path + ": unsupported image extension ." + ext);
}

void save_image(const ImageBuffer& image, const std::string& path) {
    const std::string ext = lower_ext(path);
    if (ext == "png") return save_png(image, path);
    if (ext == "pgm" || ext == "ppm" || ext == "pnm") return save_pnm(image, path);
    throw std::runtime_error(path + ": unsupported output extension ." + ext);
}

}  // namespace nnauth
