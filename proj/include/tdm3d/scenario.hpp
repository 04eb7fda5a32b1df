#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tdm3d/geometry.hpp"
#include "tdm3d/interleave.hpp"
#include "tdm3d/scheduler.hpp"
#include "tdm3d/viewsim.hpp"

namespace tdm3d {

struct ViewerSpec {
    int id = 0;
    double x = 0.0;
    double z = 0.0;
    double ipd = 0.063;
};

struct SweepParams {
    double z = 1.0;
    double x_min = -0.2;
    double x_max = 0.2;
    double step = 1e-3;
    double gap_threshold = 0.1;
    double mix_threshold = 0.5;
};

struct Scenario {
    DisplayGeometry geometry;
    std::vector<ViewerSpec> viewers;
    ScheduleMode mode = ScheduleMode::PerEye;
    double refresh_fraction = 0.25;
    double margin = 0.0;       // region-X dilation, meters
    bool region_x_clean = true;  // subtract forbidden columns from per-viewer masks
    InterleavePattern pattern;
    SweepParams sweep;
    int trace_cycles = 2;
    int image_height = 120;
    std::string left_image_path;   // optional PGM sources; uniform white when empty
    std::string right_image_path;
    std::string output_dir = "out";

    std::vector<Viewer> make_viewers() const;
};

/// Parses the flat dotted key=value scenario text. Unknown keys are rejected;
/// absent optional keys take the documented defaults; geometry and at least
/// one viewer are required.
Scenario parse_scenario(const std::string& text);

/// parse_scenario over the file contents; relative image paths resolve
/// against the scenario file's directory.
Scenario load_scenario(const std::string& path);

/// The scenario text for the default bench (written next to the binary by
/// packaging; also used by tests).
std::string default_scenario_text();

}  // namespace tdm3d
