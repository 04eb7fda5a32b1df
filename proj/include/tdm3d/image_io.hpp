#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tdm3d/interleave.hpp"

namespace tdm3d {

/// Binary PGM (P5, maxval 255). Values are clamped to [0,1] and scaled.
std::string encode_pgm(const ViewImage& image);

/// Parses binary P5; values come back in [0,1]. Throws ParseError.
ViewImage decode_pgm(const std::string& bytes);

/// Binary PPM (P6, maxval 255) from packed RGB triples.
std::string encode_ppm(int width, int height, const std::vector<std::uint8_t>& rgb);

/// Writes via a temp file in the same directory, then renames into place.
void write_file_atomic(const std::string& path, const std::string& bytes);

std::string read_file(const std::string& path);

}  // namespace tdm3d
