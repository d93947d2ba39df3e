#include "nnauth/descriptor.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>

namespace nnauth {

namespace {

constexpr char kMagic[4] = {'N', 'N', 'A', 'C'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderSize = 44;

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    put_u64(out, std::bit_cast<std::uint64_t>(v));
}

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    bool need(std::size_t n) const { return pos_ + n <= bytes_.size(); }

    std::uint8_t u8() { return bytes_[pos_++]; }
    std::uint16_t u16() {
        const std::uint16_t lo = u8();
        const std::uint16_t hi = u8();
        return static_cast<std::uint16_t>(lo | (hi << 8));
    }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }

    std::size_t remaining() const { return bytes_.size() - pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

void validate(const Descriptor& d) {
    auto fail = [](const char* msg) { throw std::invalid_argument(msg); };
    if (d.block_size < 2) fail("descriptor: block size must be >= 2");
    if (d.repetitions < 1) fail("descriptor: repetitions must be >= 1");
    if (d.channels != 1 && d.channels != 3) fail("descriptor: channels must be 1 or 3");
    if (d.channel_mode != ChannelMode::PerChannel && d.channel_mode != ChannelMode::Luma)
        fail("descriptor: unknown channel mode");
    if (!(d.margin >= 0.0 && d.margin <= 0.5)) fail("descriptor: margin outside [0, 0.5]");
    if (d.width < d.block_size || d.height < d.block_size)
        fail("descriptor: image smaller than one block");
    if (d.code_bits.size() != d.code_bit_count())
        fail("descriptor: code bit count mismatch");
    if (d.biases.size() != d.code_bit_count() * d.repetitions)
        fail("descriptor: bias count mismatch");
    for (std::uint8_t bit : d.code_bits)
        if (bit > 1) fail("descriptor: code bits must be 0 or 1");
    for (double b : d.biases)
        if (!std::isfinite(b)) fail("descriptor: biases must be finite");
}

std::vector<std::uint8_t> encode(const Descriptor& d) {
    validate(d);
    std::vector<std::uint8_t> out;
    const std::size_t nbits = d.code_bits.size();
    out.reserve(kHeaderSize + (nbits + 7) / 8 + d.biases.size() * 8);

    out.insert(out.end(), kMagic, kMagic + 4);
    put_u32(out, kVersion);
    put_u32(out, d.width);
    put_u32(out, d.height);
    out.push_back(d.channels);
    out.push_back(static_cast<std::uint8_t>(d.channel_mode));
    put_u16(out, 0);
    put_u32(out, d.block_size);
    put_u32(out, d.repetitions);
    put_f64(out, d.margin);
    put_u64(out, d.key_fingerprint);

    std::uint8_t acc = 0;
    for (std::size_t i = 0; i < nbits; ++i) {
        acc = static_cast<std::uint8_t>((acc << 1) | d.code_bits[i]);
        if (i % 8 == 7) {
            out.push_back(acc);
            acc = 0;
        }
    }
    if (nbits % 8 != 0) out.push_back(static_cast<std::uint8_t>(acc << (8 - nbits % 8)));

    for (double b : d.biases) put_f64(out, b);
    return out;
}

Descriptor decode(std::span<const std::uint8_t> bytes) {
    Reader r(bytes);
    if (!r.need(kHeaderSize))
        throw DecodeError(DecodeErrorKind::MalformedHeader, "descriptor header too short");
    char magic[4];
    for (char& c : magic) c = static_cast<char>(r.u8());
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw DecodeError(DecodeErrorKind::MalformedHeader, "bad descriptor magic");
    const std::uint32_t version = r.u32();
    if (version != kVersion)
        throw DecodeError(DecodeErrorKind::MalformedHeader,
                          "unknown descriptor version " + std::to_string(version));

    Descriptor d;
    d.width = r.u32();
    d.height = r.u32();
    d.channels = r.u8();
    const std::uint8_t mode = r.u8();
    r.u16();  // reserved
    d.block_size = r.u32();
    d.repetitions = r.u32();
    d.margin = r.f64();
    d.key_fingerprint = r.u64();

    if (mode > 1)
        throw DecodeError(DecodeErrorKind::InvariantViolation, "unknown channel mode");
    d.channel_mode = static_cast<ChannelMode>(mode);
    if (d.block_size < 2 || d.repetitions < 1 ||
        (d.channels != 1 && d.channels != 3) ||
        !(d.margin >= 0.0 && d.margin <= 0.5) || d.width < d.block_size ||
        d.height < d.block_size)
        throw DecodeError(DecodeErrorKind::InvariantViolation,
                          "descriptor parameters violate invariants");

    const std::size_t nbits = d.code_bit_count();
    const std::size_t code_bytes = (nbits + 7) / 8;
    const std::size_t bias_count = nbits * d.repetitions;
    if (bias_count / d.repetitions != nbits ||
        bias_count > (std::size_t(1) << 40))
        throw DecodeError(DecodeErrorKind::InvariantViolation,
                          "descriptor payload implausibly large");
    if (!r.need(code_bytes + bias_count * 8))
        throw DecodeError(DecodeErrorKind::TruncatedPayload,
                          "descriptor payload truncated");

    d.code_bits.resize(nbits);
    std::uint8_t acc = 0;
    for (std::size_t i = 0; i < nbits; ++i) {
        if (i % 8 == 0) acc = r.u8();
        d.code_bits[i] = (acc >> (7 - i % 8)) & 1;
    }
    d.biases.resize(bias_count);
    for (double& b : d.biases) {
        b = r.f64();
        if (!std::isfinite(b))
            throw DecodeError(DecodeErrorKind::InvariantViolation,
                              "descriptor contains a non-finite bias");
    }
    if (r.remaining() != 0)
        throw DecodeError(DecodeErrorKind::InvariantViolation,
                          "trailing bytes after descriptor payload");
    return d;
}

Descriptor load_descriptor(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return decode(bytes);
}

void save_descriptor(const Descriptor& descriptor, const std::string& path) {
    const auto bytes = encode(descriptor);
    // write to a temp file first so a failed run leaves no partial descriptor
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp);
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write failed: " + tmp);
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace nnauth
