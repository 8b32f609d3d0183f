#include "sfdbp/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

namespace sfdbp {

namespace {

std::vector<unsigned char> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StructuralError("cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spill(const std::string& path, const std::string& header, const std::vector<unsigned char>& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char*>(body.data()), static_cast<std::streamsize>(body.size()));
    if (!out) throw std::runtime_error("failed writing " + path);
}

// Minimal Netpbm header tokenizer: whitespace-separated tokens, '#' comments to end of line.
class HeaderReader {
public:
    HeaderReader(const std::vector<unsigned char>& bytes, std::string path)
        : bytes_(bytes), path_(std::move(path)) {}

    std::string token() {
        skip_space_and_comments();
        std::string tok;
        while (pos_ < bytes_.size() && !std::isspace(bytes_[pos_])) tok += static_cast<char>(bytes_[pos_++]);
        if (tok.empty()) throw StructuralError(path_ + ": truncated header");
        return tok;
    }

    long integer() {
        const std::string tok = token();
        try {
            std::size_t used = 0;
            const long v = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw StructuralError(path_ + ": bad header field '" + tok + "'");
        }
    }

    double real() {
        const std::string tok = token();
        try {
            return std::stod(tok);
        } catch (const std::exception&) {
            throw StructuralError(path_ + ": bad header field '" + tok + "'");
        }
    }

    // Exactly one whitespace byte separates the header from the raster.
    std::size_t raster_start() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
            throw StructuralError(path_ + ": missing header terminator");
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::vector<unsigned char>& bytes_;
    std::string path_;
    std::size_t pos_ = 0;
};

struct PgmData {
    int width = 0;
    int height = 0;
    int maxval = 0;
    std::vector<int> samples;
};

PgmData parse_pgm(const std::string& path) {
    const auto bytes = slurp(path);
    HeaderReader header(bytes, path);
    if (header.token() != "P5") throw StructuralError(path + ": not a binary PGM (P5)");
    PgmData pgm;
    const long w = header.integer();
    const long h = header.integer();
    const long maxval = header.integer();
    if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535)
        throw StructuralError(path + ": invalid PGM dimensions or maxval");
    pgm.width = static_cast<int>(w);
    pgm.height = static_cast<int>(h);
    pgm.maxval = static_cast<int>(maxval);
    const std::size_t start = header.raster_start();
    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    const std::size_t bps = maxval > 255 ? 2 : 1;
    if (bytes.size() < start + n * bps) throw StructuralError(path + ": truncated PGM raster");
    pgm.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t o = start + i * bps;
        pgm.samples[i] = bps == 2 ? (bytes[o] << 8) | bytes[o + 1] : bytes[o];
    }
    return pgm;
}

void emit_pgm(const std::string& path, int width, int height, int maxval, const std::vector<int>& samples) {
    const std::size_t bps = maxval > 255 ? 2 : 1;
    std::vector<unsigned char> body(samples.size() * bps);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (bps == 2) {
            body[2 * i] = static_cast<unsigned char>(samples[i] >> 8);
            body[2 * i + 1] = static_cast<unsigned char>(samples[i] & 0xff);
        } else {
            body[i] = static_cast<unsigned char>(samples[i]);
        }
    }
    std::ostringstream header;
    header << "P5\n" << width << ' ' << height << '\n' << maxval << '\n';
    spill(path, header.str(), body);
}

}  // namespace

GrayImage read_pgm(const std::string& path) {
    const PgmData pgm = parse_pgm(path);
    GrayImage image(pgm.width, pgm.height);
    for (std::size_t i = 0; i < image.size(); ++i)
        image[i] = static_cast<double>(pgm.samples[i]) / pgm.maxval;
    return image;
}

void write_pgm(const std::string& path, const GrayImage& image, int maxval) {
    if (maxval != 255 && maxval != 65535) throw UsageError("PGM maxval must be 255 or 65535");
    std::vector<int> samples(image.size());
    for (std::size_t i = 0; i < image.size(); ++i)
        samples[i] = static_cast<int>(std::lround(std::clamp(image[i], 0.0, 1.0) * maxval));
    emit_pgm(path, image.width(), image.height(), maxval, samples);
}

LabelMap read_pgm_labels(const std::string& path) {
    PgmData pgm = parse_pgm(path);
    return LabelMap(pgm.width, pgm.height, std::move(pgm.samples));
}

void write_pgm_labels(const std::string& path, const LabelMap& labels) {
    for (int l : labels.data()) {
        if (l < 0 || l > 65535) throw UsageError("label outside 16-bit PGM range");
    }
    emit_pgm(path, labels.width(), labels.height(), 65535, labels.data());
}

Raster<double> read_pfm(const std::string& path) {
    const auto bytes = slurp(path);
    HeaderReader header(bytes, path);
    const std::string magic = header.token();
    if (magic != "Pf") throw StructuralError(path + ": not a grayscale PFM (Pf)");
    const long w = header.integer();
    const long h = header.integer();
    const double scale = header.real();
    if (w <= 0 || h <= 0 || scale == 0.0) throw StructuralError(path + ": invalid PFM header");
    const std::size_t start = header.raster_start();
    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
    if (bytes.size() < start + 4 * n) throw StructuralError(path + ": truncated PFM raster");
    const bool little = scale < 0.0;

    Raster<double> image(static_cast<int>(w), static_cast<int>(h));
    for (long row = 0; row < h; ++row) {
        const long y = h - 1 - row;
        for (long x = 0; x < w; ++x) {
            const std::size_t o = start + 4 * (static_cast<std::size_t>(row) * w + x);
            std::uint32_t bits = 0;
            for (int b = 0; b < 4; ++b) {
                const std::uint32_t byte = bytes[o + b];
                bits |= little ? byte << (8 * b) : byte << (8 * (3 - b));
            }
            image(static_cast<int>(x), static_cast<int>(y)) = std::bit_cast<float>(bits);
        }
    }
    return image;
}

void write_pfm(const std::string& path, const Raster<double>& image) {
    const int w = image.width();
    const int h = image.height();
    std::vector<unsigned char> body(4 * image.size());
    std::size_t o = 0;
    for (int y = h - 1; y >= 0; --y) {
        for (int x = 0; x < w; ++x) {
            const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(image(x, y)));
            for (int b = 0; b < 4; ++b) body[o++] = static_cast<unsigned char>(bits >> (8 * b));
        }
    }
    std::ostringstream header;
    header << "Pf\n" << w << ' ' << h << "\n-1.0\n";
    spill(path, header.str(), body);
}

GrayImage read_image(const std::string& path) {
    auto ends_with = [&](const std::string& ext) {
        if (path.size() < ext.size()) return false;
        std::string tail = path.substr(path.size() - ext.size());
        std::transform(tail.begin(), tail.end(), tail.begin(), [](unsigned char c) { return std::tolower(c); });
        return tail == ext;
    };
    if (ends_with(".pfm")) return read_pfm(path);
    if (ends_with(".pgm")) return read_pgm(path);
    throw UsageError("unsupported image extension: " + path + " (expected .pgm or .pfm)");
}

}  // namespace sfdbp
