#include "tdm3d/interleave.hpp"

#include <cmath>

namespace tdm3d {
namespace {

long long positive_mod(long long v, long long m) {
    const long long r = v % m;
    return r < 0 ? r + m : r;
}

}  // namespace

bool is_left_column(const InterleavePattern& pattern, int row, int col, int field) {
    const long long period = 2LL * pattern.columns_per_lens;
    const long long shifted = col -
                              static_cast<long long>(std::floor(row * pattern.slant_columns_per_row)) -
                              static_cast<long long>(field) * pattern.field_shift;
    return positive_mod(shifted, period) < pattern.columns_per_lens;
}

ViewImage interleave(const ViewImage& left, const ViewImage& right,
                     const InterleavePattern& pattern, int field) {
    if (left.width != right.width || left.height != right.height)
        throw DimensionMismatch("interleave: views differ in size");
    if (pattern.columns_per_lens < 1)
        throw ValidationError("columns_per_lens", "must be >= 1");

    ViewImage frame(left.width * 2, left.height);
    for (int r = 0; r < frame.height; ++r) {
        for (int c = 0; c < frame.width; ++c) {
            const ViewImage& src = is_left_column(pattern, r, c, field) ? left : right;
            frame.at(r, c) = src.at(r, c / 2);
        }
    }
    return frame;
}

std::pair<ViewImage, ViewImage> deinterleave(const ViewImage& frame,
                                             const InterleavePattern& pattern, int field) {
    if (frame.width % 2 != 0) throw DimensionMismatch("deinterleave: frame width must be even");
    ViewImage left(frame.width / 2, frame.height);
    ViewImage right(frame.width / 2, frame.height);
    for (int r = 0; r < frame.height; ++r) {
        for (int c = 0; c < frame.width; ++c) {
            ViewImage& dst = is_left_column(pattern, r, c, field) ? left : right;
            dst.at(r, c / 2) = frame.at(r, c);
        }
    }
    return {std::move(left), std::move(right)};
}

}  // namespace tdm3d
