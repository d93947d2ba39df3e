// Python bindings for the main operations: sign/verify, distortions, the
// descriptor format, and the security estimate. Images cross the boundary as
// uint8 numpy arrays of shape (h, w) or (h, w, 3).

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nnauth/bench.hpp"
#include "nnauth/distort.hpp"
#include "nnauth/pipeline.hpp"

namespace py = pybind11;
using namespace nnauth;

namespace {

ImageBuffer to_image(const py::array_t<std::uint8_t, py::array::c_style>& array) {
    const py::buffer_info info = array.request();
    if (info.ndim != 2 && !(info.ndim == 3 && info.shape[2] == 3))
        throw std::invalid_argument("expected a (h, w) or (h, w, 3) uint8 array");
    ImageBuffer img;
    img.height = static_cast<int>(info.shape[0]);
    img.width = static_cast<int>(info.shape[1]);
    img.channels = info.ndim == 2 ? 1 : 3;
    const auto* data = static_cast<const std::uint8_t*>(info.ptr);
    img.samples.assign(data, data + static_cast<std::size_t>(img.width) * img.height *
                                       img.channels);
    return img;
}

py::array_t<std::uint8_t> from_image(const ImageBuffer& img) {
    std::vector<py::ssize_t> shape{img.height, img.width};
    if (img.channels == 3) shape.push_back(3);
    py::array_t<std::uint8_t> out(shape);
    std::copy(img.samples.begin(), img.samples.end(),
              static_cast<std::uint8_t*>(out.request().ptr));
    return out;
}

Descriptor descriptor_from_bytes(const py::bytes& blob) {
    const std::string_view view = blob;
    return decode(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(view.data()), view.size()));
}

ChannelMode mode_from_string(const std::string& mode) {
    if (mode == "per-channel") return ChannelMode::PerChannel;
    if (mode == "luma") return ChannelMode::Luma;
    throw std::invalid_argument("mode must be 'per-channel' or 'luma'");
}

}  // namespace

PYBIND11_MODULE(_nnauth, m) {
    m.doc() = "block-wise keyed image authentication";

    m.def(
        "sign",
        [](const py::array_t<std::uint8_t, py::array::c_style>& image,
           std::uint64_t key, int block_size, double margin, std::uint32_t reps,
           const std::string& mode) {
            SignConfig cfg;
            cfg.block_size = block_size;
            cfg.margin = Margin{margin};
            cfg.repetitions = reps;
            cfg.channel_mode = mode_from_string(mode);
            const auto bytes = encode(sign_image(to_image(image), AuthKey{key}, cfg));
            return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        },
        py::arg("image"), py::arg("key"), py::arg("block_size") = 8,
        py::arg("margin") = 0.2, py::arg("reps") = 1,
        py::arg("mode") = "per-channel",
        "Sign an image; returns the serialized descriptor (secret material).");

    m.def(
        "verify",
        [](const py::array_t<std::uint8_t, py::array::c_style>& image,
           const py::bytes& descriptor, std::uint64_t key, bool check_fingerprint) {
            const Descriptor d = descriptor_from_bytes(descriptor);
            VerifyOptions opts;
            opts.check_fingerprint = check_fingerprint;
            const VerificationReport rep =
                verify_image(to_image(image), d, AuthKey{key}, opts);

            py::array_t<bool> mask({static_cast<py::ssize_t>(rep.channels_effective),
                                    static_cast<py::ssize_t>(rep.grid.rows),
                                    static_cast<py::ssize_t>(rep.grid.cols)});
            auto* mp = static_cast<bool*>(mask.request().ptr);
            for (std::size_t i = 0; i < rep.blocks.size(); ++i)
                mp[i] = !rep.blocks[i].match;

            py::dict out;
            out["cdr"] = rep.cdr;
            out["matched_bits"] = rep.matched_bits;
            out["total_bits"] = rep.total_bits;
            out["mismatch_fraction"] = rep.mismatch_fraction();
            out["tamper_mask"] = mask;
            out["tamper_map"] = from_image(render_tamper_map(rep));
            return out;
        },
        py::arg("image"), py::arg("descriptor"), py::arg("key"),
        py::arg("check_fingerprint") = true,
        "Verify an image against a descriptor; returns cdr and tamper mask.");

    m.def(
        "add_gaussian_noise",
        [](const py::array_t<std::uint8_t, py::array::c_style>& image, double variance,
           std::uint64_t seed) {
            return from_image(add_gaussian_noise(to_image(image), variance, seed));
        },
        py::arg("image"), py::arg("variance"), py::arg("seed"),
        "Reproducible additive Gaussian noise (variance on the [0,1] scale).");

    m.def(
        "jpeg_roundtrip",
        [](const py::array_t<std::uint8_t, py::array::c_style>& image, int quality) {
            return from_image(jpeg_roundtrip(to_image(image), quality));
        },
        py::arg("image"), py::arg("quality"),
        "Baseline JPEG encode/decode round trip at the given quality.");

    m.def(
        "estimate_security",
        [](const py::bytes& descriptor) {
            const SecurityReport rep =
                estimate_security(descriptor_from_bytes(descriptor));
            py::dict out;
            out["code_bits"] = rep.total_bits;
            out["log2_bruteforce_space"] = rep.log2_space;
            out["weak"] = rep.weak;
            return out;
        },
        py::arg("descriptor"),
        "Brute-force strength of a descriptor (flags fewer than 64 bits).");

    m.def(
        "cdr",
        [](const std::vector<std::uint8_t>& original,
           const std::vector<std::uint8_t>& extracted) {
            return cdr(std::span<const std::uint8_t>(original),
                       std::span<const std::uint8_t>(extracted));
        },
        py::arg("original"), py::arg("extracted"),
        "Fraction of positions where the two bit vectors agree.");
}
