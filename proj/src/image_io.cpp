#include "tdm3d/image_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tdm3d/errors.hpp"

namespace tdm3d {
namespace {

int parse_header_int(const std::string& bytes, std::size_t& pos) {
    while (pos < bytes.size() &&
           (std::isspace(static_cast<unsigned char>(bytes[pos])) || bytes[pos] == '#')) {
        if (bytes[pos] == '#') {
            while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        } else {
            ++pos;
        }
    }
    std::size_t start = pos;
    while (pos < bytes.size() && std::isdigit(static_cast<unsigned char>(bytes[pos]))) ++pos;
    if (pos == start) throw ParseError(0, "malformed PGM header");
    return std::stoi(bytes.substr(start, pos - start));
}

}  // namespace

std::string encode_pgm(const ViewImage& image) {
    std::ostringstream out;
    out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
    std::string body;
    body.reserve(image.samples.size());
    for (double v : image.samples) {
        const double clamped = std::clamp(v, 0.0, 1.0);
        body += static_cast<char>(static_cast<unsigned char>(std::lround(clamped * 255.0)));
    }
    return out.str() + body;
}

ViewImage decode_pgm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5')
        throw ParseError(1, "not a binary PGM (P5) file");
    std::size_t pos = 2;
    const int width = parse_header_int(bytes, pos);
    const int height = parse_header_int(bytes, pos);
    const int maxval = parse_header_int(bytes, pos);
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255)
        throw ParseError(1, "unsupported PGM dimensions or maxval");
    ++pos;  // single whitespace byte after maxval
    const std::size_t need = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() - pos < need) throw ParseError(1, "truncated PGM payload");
    ViewImage image(width, height);
    for (std::size_t i = 0; i < need; ++i)
        image.samples[i] = static_cast<unsigned char>(bytes[pos + i]) / static_cast<double>(maxval);
    return image;
}

std::string encode_ppm(int width, int height, const std::vector<std::uint8_t>& rgb) {
    if (rgb.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3)
        throw DimensionMismatch("encode_ppm: rgb size");
    std::ostringstream out;
    out << "P6\n" << width << ' ' << height << "\n255\n";
    return out.str() + std::string(rgb.begin(), rgb.end());
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("short write: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace tdm3d
