#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tdm3d/errors.hpp"

namespace tdm3d {

/// Monochrome sub-pixel raster, row-major, values nominally in [0,1].
struct ViewImage {
    int width = 0;   // sub-pixel columns
    int height = 0;  // rows
    std::vector<double> samples;

    ViewImage() = default;
    ViewImage(int w, int h, double fill = 0.0)
        : width(w), height(h), samples(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    double at(int r, int c) const {
        return samples[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) +
                       static_cast<std::size_t>(c)];
    }
    double& at(int r, int c) {
        return samples[static_cast<std::size_t>(r) * static_cast<std::size_t>(width) +
                       static_cast<std::size_t>(c)];
    }
};

struct InterleavePattern {
    int columns_per_lens = 2;
    double slant_columns_per_row = 0.0;  // horizontal column offset per row
    int field_shift = 1;                 // columns shifted per field index
};

/// True when panel sub-pixel column c of row r shows the left view.
bool is_left_column(const InterleavePattern& pattern, int row, int col, int field);

/// Weaves the two views into one panel frame twice the source width; column c
/// samples source column floor(c/2) of whichever view owns (row, c) for this
/// field.
ViewImage interleave(const ViewImage& left, const ViewImage& right,
                     const InterleavePattern& pattern, int field);

/// Inverse of interleave on the sampled positions; unsampled positions are 0.
std::pair<ViewImage, ViewImage> deinterleave(const ViewImage& frame,
                                             const InterleavePattern& pattern, int field);

}  // namespace tdm3d
