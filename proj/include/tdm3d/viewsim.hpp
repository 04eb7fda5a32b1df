#pragma once

#include <vector>

#include "tdm3d/geometry.hpp"
#include "tdm3d/interleave.hpp"
#include "tdm3d/scheduler.hpp"

namespace tdm3d {

struct Viewer {
    int id = 0;
    Eye left;
    Eye right;
};

/// Backlight weight seen through each panel sub-pixel column from `eye`:
/// the eye ray is traced through the covering lens back to the LED plane and
/// evaluated against the diffused emission of the lit columns. The panel is
/// taken coincident with the lens plane; `column_count` panel columns span
/// the screen width.
std::vector<double> perceived_weights(const DisplayGeometry& g, const Eye& eye,
                                      const LedMask& mask, int column_count);

/// Time-weighted sum over Illuminate phases of the per-column weights applied
/// to that phase's panel image. One frame per Illuminate phase, all equally
/// sized; Refresh phases contribute nothing.
ViewImage render_perceived(const DisplayGeometry& g, const FrameSchedule& schedule,
                           const std::vector<ViewImage>& frames, const Eye& eye);

enum class BandClass : std::uint8_t { LeftView, RightView, Gap, Mixed };

struct SweepEntry {
    double x = 0.0;
    BandClass cls = BandClass::Gap;
    double left_signal = 0.0;
    double right_signal = 0.0;
};

struct Band {
    BandClass cls = BandClass::Gap;
    double x_start = 0.0;
    double x_end = 0.0;
};

struct SweepReport {
    double z = 0.0;
    std::vector<SweepEntry> entries;
    std::vector<Band> bands;
};

/// Per-column content of one field split by owning view.
struct FieldContent {
    std::vector<double> left;
    std::vector<double> right;
};

/// Column means of `frame` attributed to left/right by the interleave pattern.
FieldContent split_views(const ViewImage& frame, const InterleavePattern& pattern, int field);

/// A field whose whole panel belongs to one view (the per-eye drive style).
FieldContent whole_view_content(const ViewImage& frame, bool left);

/// Walks eye positions [x_min, x_max] in `step` at distance z, accumulating
/// per-view perceived energy per field, classifies each position, and merges
/// equal neighbors into bands. One FieldContent per Illuminate phase.
SweepReport sweep_viewing_plane(const DisplayGeometry& g, const FrameSchedule& schedule,
                                const std::vector<FieldContent>& fields, double z, double x_min,
                                double x_max, double step, double gap_threshold,
                                double mix_threshold);

struct EyeCrosstalk {
    int viewer_id = 0;
    Side side = Side::Left;
    double ratio = 0.0;
};

/// Crosstalk per eye: backlight energy arriving in a window of half the
/// viewer's IPD during foreign Illuminate phases over energy during its own.
std::vector<EyeCrosstalk> crosstalk_report(const DisplayGeometry& g,
                                           const FrameSchedule& schedule,
                                           const std::vector<Viewer>& viewers);

}  // namespace tdm3d
