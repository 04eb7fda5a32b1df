#pragma once

#include <vector>

#include "tdm3d/geometry.hpp"

namespace tdm3d {

/// Equally spaced lens centers, symmetric about x = 0.
std::vector<double> lens_centers(const DisplayGeometry& g);

/// Equally spaced LED column centers, symmetric about x = 0.
std::vector<double> column_centers(const DisplayGeometry& g);

/// Center of the ray bundle from a point source at (led_x, -g) through the
/// lens at lens_x, evaluated at plane z. The chief ray through the lens
/// center gives the bundle center at every z, including the image plane.
double image_point(const DisplayGeometry& g, double led_x, double lens_x, double z);

struct ConjugatePupil {
    int lens_index;
    double pupil_x;     // meters, at the queried plane
    double acceptance;  // fraction of the Lambertian emission cone captured
};

/// Pupils of one source through the lens nearest to it plus max_neighbors
/// lenses on each side, ordered by lens index.
std::vector<ConjugatePupil> conjugate_pupils(const DisplayGeometry& g, double led_x, double z,
                                             int max_neighbors);

/// Backlight intensity at plane z on the grid xs for the lit columns in mask.
/// Each column is a Lambertian strip blurred by the diffuser, imaged through
/// every lens whose acceptance window covers it. Linear in the mask.
IntensityProfile illumination_profile(const DisplayGeometry& g, const LedMask& mask, double z,
                                      const std::vector<double>& xs);

/// Columns whose exit pupils land on the eye: for each lens the source
/// position imaging onto the eye is computed and the nearest column claimed
/// when it sits within selection_tolerance and the lens acceptance window.
LedMask select_columns(const DisplayGeometry& g, const Eye& eye);

/// Union of the other eyes' select_columns masks, dilated by
/// ceil(margin/led_pitch) columns on each side. A phase mask is region-X
/// clean when its AND with this mask is all-false.
LedMask forbidden_columns(const DisplayGeometry& g, const std::vector<Eye>& other_eyes,
                          double margin);

/// Integral of `unintended` over [eye_x - window/2, eye_x + window/2] divided
/// by the same integral of `intended`. Throws ZeroIntendedSignal when the
/// intended window integral is below 1e-15 of the intended profile total.
double crosstalk_ratio(const IntensityProfile& intended, const IntensityProfile& unintended,
                       double eye_x, double window);

}  // namespace tdm3d
