#include "tdm3d/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace tdm3d {

namespace {
constexpr double kInchesToMeters = 0.0254;
}

void validate(const DisplayGeometry& g) {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0)) throw ValidationError(name, "must be > 0");
    };
    positive(g.screen_width, "screen_width");
    positive(g.screen_height, "screen_height");
    positive(g.led_pitch, "led_pitch");
    positive(g.led_strip_width, "led_strip_width");
    positive(g.lens_pitch, "lens_pitch");
    positive(g.lens_aperture, "lens_aperture");
    positive(g.focal_length, "focal_length");
    positive(g.led_lens_gap, "led_lens_gap");
    positive(g.design_distance, "design_distance");
    positive(g.panel_field_rate, "panel_field_rate");
    positive(g.lens_acceptance_halfwidth, "lens_acceptance_halfwidth");
    positive(g.selection_tolerance, "selection_tolerance");
    if (g.diffuser_sigma < 0.0) throw ValidationError("diffuser_sigma", "must be >= 0");
    if (g.panel_cols <= 0) throw ValidationError("panel_cols", "must be > 0");
    if (g.panel_rows <= 0) throw ValidationError("panel_rows", "must be > 0");
    if (g.subpixels_per_pixel <= 0) throw ValidationError("subpixels_per_pixel", "must be > 0");
    if (g.led_column_count < 2) throw ValidationError("led_column_count", "must be >= 2");
    if (g.lens_count < 1) throw ValidationError("lens_count", "must be >= 1");
    if (g.lens_aperture > g.lens_pitch)
        throw ValidationError("lens_aperture", "must be <= lens_pitch");
    if (g.led_pitch * g.led_column_count > g.screen_width * 1.01)
        throw ValidationError("led_pitch", "columns do not fit the panel width");
}

bool is_design_matched(const DisplayGeometry& g) {
    const double residual =
        1.0 / g.led_lens_gap + 1.0 / g.design_distance - 1.0 / g.focal_length;
    return std::abs(residual) < 1e-9;
}

DisplayGeometry default_geometry() {
    DisplayGeometry g;
    const double diagonal = 27.0 * kInchesToMeters;
    g.screen_width = diagonal * 16.0 / std::hypot(16.0, 9.0);
    g.screen_height = diagonal * 9.0 / std::hypot(16.0, 9.0);
    g.panel_cols = 2560;
    g.panel_rows = 1440;
    g.subpixels_per_pixel = 3;
    g.led_column_count = 96;
    g.led_pitch = g.screen_width / 96.0;
    g.led_strip_width = 0.15 * g.led_pitch;
    g.lens_pitch = g.led_pitch;
    g.lens_count = 96;
    g.lens_aperture = g.lens_pitch;
    g.led_lens_gap = 0.05;
    g.design_distance = 1.0;
    g.focal_length = 1.0 / (1.0 / g.led_lens_gap + 1.0 / g.design_distance);
    g.diffuser_sigma = 0.03 * g.led_pitch;
    g.panel_field_rate = 240.0;
    g.lens_acceptance_halfwidth = 1.5 * g.lens_pitch;
    g.selection_tolerance = 0.06 * g.led_pitch;
    return g;
}

bool LedMask::any() const {
    return std::any_of(bits_.begin(), bits_.end(), [](bool b) { return b; });
}

std::size_t LedMask::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

LedMask LedMask::operator&(const LedMask& o) const {
    if (o.size() != size()) throw MaskLengthMismatch("operator&");
    LedMask r(size());
    for (std::size_t i = 0; i < size(); ++i) r.bits_[i] = bits_[i] && o.bits_[i];
    return r;
}

LedMask LedMask::operator|(const LedMask& o) const {
    if (o.size() != size()) throw MaskLengthMismatch("operator|");
    LedMask r(size());
    for (std::size_t i = 0; i < size(); ++i) r.bits_[i] = bits_[i] || o.bits_[i];
    return r;
}

LedMask LedMask::operator~() const {
    LedMask r(size());
    for (std::size_t i = 0; i < size(); ++i) r.bits_[i] = !bits_[i];
    return r;
}

LedMask LedMask::dilated(std::size_t columns) const {
    LedMask r(size());
    for (std::size_t i = 0; i < size(); ++i) {
        if (!bits_[i]) continue;
        const std::size_t lo = i > columns ? i - columns : 0;
        const std::size_t hi = std::min(size() - 1, i + columns);
        for (std::size_t j = lo; j <= hi; ++j) r.bits_[j] = true;
    }
    return r;
}

std::string LedMask::to_hex() const {
    const std::size_t digits = (size() + 3) / 4;
    std::string out(digits, '0');
    static const char* hex = "0123456789abcdef";
    for (std::size_t d = 0; d < digits; ++d) {
        int v = 0;
        for (std::size_t b = 0; b < 4; ++b) {
            const std::size_t bit = d * 4 + b;
            if (bit < size() && bits_[bit]) v |= 1 << b;
        }
        out[digits - 1 - d] = hex[v];
    }
    return out;
}

}  // namespace tdm3d
