#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tdm3d/errors.hpp"

namespace tdm3d {

/// Physical parameters of the LED / diffuser / lens-array / LCD stack.
/// Lateral coordinate x has its origin at the screen center; the lens plane
/// sits at z = 0, the LED plane at z = -led_lens_gap, viewers at z > 0.
struct DisplayGeometry {
    double screen_width = 0.0;   // meters
    double screen_height = 0.0;  // meters
    int panel_cols = 0;
    int panel_rows = 0;
    int subpixels_per_pixel = 3;

    int led_column_count = 0;
    double led_pitch = 0.0;        // center-to-center, meters
    double led_strip_width = 0.0;  // emissive width of one column, meters

    double lens_pitch = 0.0;
    int lens_count = 0;
    double lens_aperture = 0.0;  // <= lens_pitch
    double focal_length = 0.0;
    double led_lens_gap = 0.0;  // object distance g

    double diffuser_sigma = 0.0;    // Gaussian blur stddev at the LED plane
    double design_distance = 0.0;   // nominal viewing plane D
    double panel_field_rate = 0.0;  // Hz

    // Lateral half-width of the source region a lens accepts light from.
    // Limits conjugate orders the way baffling does on the bench.
    double lens_acceptance_halfwidth = 0.0;

    // Largest |led_x* - column center| (source space) at which select_columns
    // still claims a column for a lens. led_pitch/2 selects the nearest column
    // unconditionally; smaller values keep only well-placed exit pupils.
    double selection_tolerance = 0.0;

    int panel_subpixel_cols() const { return panel_cols * subpixels_per_pixel; }
};

/// Throws ValidationError if any invariant fails.
void validate(const DisplayGeometry& g);

/// True when 1/g + 1/D = 1/f holds to 1e-9 1/m (sharp pupils at D).
bool is_design_matched(const DisplayGeometry& g);

/// The default bench: 27-inch 16:9 2560x1440 panel, 96 LED columns,
/// 240 Hz field rate, design distance 1 m, design-matched focal length.
DisplayGeometry default_geometry();

enum class Side : std::uint8_t { Left, Right };

struct Eye {
    double x = 0.0;  // meters, lateral
    double z = 0.0;  // meters, distance from the lens plane, > 0
    Side side = Side::Left;
    int viewer_id = 0;
};

/// On/off state of the backlight columns for one phase.
class LedMask {
   public:
    LedMask() = default;
    explicit LedMask(std::size_t column_count) : bits_(column_count, false) {}

    std::size_t size() const { return bits_.size(); }
    bool test(std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, bool v = true) { bits_[i] = v; }

    bool any() const;
    bool none() const { return !any(); }
    std::size_t count() const;

    LedMask operator&(const LedMask& o) const;
    LedMask operator|(const LedMask& o) const;
    LedMask operator~() const;
    bool operator==(const LedMask& o) const { return bits_ == o.bits_; }

    /// Widens every lit bit by `columns` on each side (clamped at the ends).
    LedMask dilated(std::size_t columns) const;

    /// Lowercase hex, column 0 in the least significant bit.
    std::string to_hex() const;

   private:
    std::vector<bool> bits_;
};

/// Sampled backlight intensity along a lateral line at distance z.
struct IntensityProfile {
    double z = 0.0;
    std::vector<double> xs;      // strictly increasing, meters
    std::vector<double> values;  // >= 0, same length as xs
};

}  // namespace tdm3d
