#include "tdm3d/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "tdm3d/image_io.hpp"

namespace tdm3d {
namespace {

struct KeyValue {
    std::string value;
    int line = 0;
    bool used = false;
};

using KeyMap = std::map<std::string, KeyValue>;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

KeyMap tokenize(const std::string& text) {
    KeyMap map;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) throw ParseError(line, "expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ParseError(line, "empty key");
        if (map.count(key)) throw ParseError(line, "duplicate key: " + key);
        map[key] = {value, line, false};
    }
    return map;
}

class Reader {
   public:
    explicit Reader(KeyMap& map) : map_(map) {}

    std::optional<std::string> raw(const std::string& key) {
        auto it = map_.find(key);
        if (it == map_.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }

    double number(const std::string& key, double fallback) {
        return parse_number(key).value_or(fallback);
    }

    std::optional<double> parse_number(const std::string& key) {
        const auto v = raw(key);
        if (!v) return std::nullopt;
        try {
            std::size_t consumed = 0;
            // accept "a/b" rationals for the slant
            const auto slash = v->find('/');
            if (slash != std::string::npos) {
                const double num = std::stod(v->substr(0, slash));
                const double den = std::stod(v->substr(slash + 1));
                if (den == 0.0) throw ValidationError(key, "division by zero");
                return num / den;
            }
            const double d = std::stod(*v, &consumed);
            if (consumed != v->size()) throw ValidationError(key, "trailing characters");
            return d;
        } catch (const std::invalid_argument&) {
            throw ValidationError(key, "not a number: " + *v);
        } catch (const std::out_of_range&) {
            throw ValidationError(key, "out of range: " + *v);
        }
    }

    int integer(const std::string& key, int fallback) {
        const auto d = parse_number(key);
        if (!d) return fallback;
        const double r = std::round(*d);
        if (std::abs(*d - r) > 1e-9) throw ValidationError(key, "expected an integer");
        return static_cast<int>(r);
    }

    void reject_unused() const {
        for (const auto& [key, kv] : map_) {
            if (!kv.used) throw ParseError(kv.line, "unknown key: " + key);
        }
    }

   private:
    KeyMap& map_;
};

}  // namespace

std::vector<Viewer> Scenario::make_viewers() const {
    std::vector<Viewer> out;
    out.reserve(viewers.size());
    for (const ViewerSpec& v : viewers) {
        Viewer viewer;
        viewer.id = v.id;
        viewer.left = {v.x - v.ipd / 2.0, v.z, Side::Left, v.id};
        viewer.right = {v.x + v.ipd / 2.0, v.z, Side::Right, v.id};
        out.push_back(viewer);
    }
    return out;
}

Scenario parse_scenario(const std::string& text) {
    KeyMap map = tokenize(text);
    Reader r(map);
    Scenario s;

    const auto width = r.parse_number("geometry.screen_width");
    if (!width) throw ValidationError("geometry", "geometry.screen_width is required");

    DisplayGeometry& g = s.geometry;
    g.screen_width = *width;
    g.screen_height = r.number("geometry.screen_height", g.screen_width * 9.0 / 16.0);
    g.panel_cols = r.integer("geometry.panel_cols", 2560);
    g.panel_rows = r.integer("geometry.panel_rows", 1440);
    g.subpixels_per_pixel = r.integer("geometry.subpixels_per_pixel", 3);
    g.led_column_count = r.integer("geometry.led_column_count", 96);
    if (g.led_column_count <= 0)
        throw ValidationError("geometry.led_column_count", "must be >= 2");
    g.led_pitch = r.number("geometry.led_pitch", g.screen_width / g.led_column_count);
    g.led_strip_width = r.number("geometry.led_strip_width", 0.15 * g.led_pitch);
    g.lens_pitch = r.number("geometry.lens_pitch", g.led_pitch);
    g.lens_count = r.integer("geometry.lens_count", g.led_column_count);
    g.lens_aperture = r.number("geometry.lens_aperture", g.lens_pitch);
    g.led_lens_gap = r.number("geometry.led_lens_gap", 0.05);
    g.design_distance = r.number("geometry.design_distance", 1.0);
    const double matched = 1.0 / (1.0 / g.led_lens_gap + 1.0 / g.design_distance);
    g.focal_length = r.number("geometry.focal_length", matched);
    g.diffuser_sigma = r.number("geometry.diffuser_sigma", 0.03 * g.led_pitch);
    g.panel_field_rate = r.number("geometry.panel_field_rate", 240.0);
    g.lens_acceptance_halfwidth =
        r.number("geometry.lens_acceptance_halfwidth", 1.5 * g.lens_pitch);
    g.selection_tolerance = r.number("geometry.selection_tolerance", 0.06 * g.led_pitch);
    validate(g);

    const auto mode = r.raw("mode");
    if (mode) {
        if (*mode == "per_eye") s.mode = ScheduleMode::PerEye;
        else if (*mode == "per_viewer") s.mode = ScheduleMode::PerViewer;
        else throw ValidationError("mode", "expected per_eye or per_viewer");
    }
    s.refresh_fraction = r.number("refresh_fraction", 0.25);
    if (!(s.refresh_fraction > 0.0 && s.refresh_fraction < 1.0))
        throw ValidationError("refresh_fraction", "must be in (0, 1)");
    s.margin = r.number("margin", g.led_pitch);
    if (const auto v = r.raw("region_x_clean")) {
        if (*v == "true") s.region_x_clean = true;
        else if (*v == "false") s.region_x_clean = false;
        else throw ValidationError("region_x_clean", "expected true or false");
    }

    s.pattern.columns_per_lens = r.integer("pattern.columns_per_lens", 2);
    if (s.pattern.columns_per_lens < 1)
        throw ValidationError("pattern.columns_per_lens", "must be >= 1");
    s.pattern.slant_columns_per_row = r.number("pattern.slant_columns_per_row", 0.0);
    s.pattern.field_shift = r.integer("pattern.field_shift", 1);

    s.sweep.z = r.number("sweep.z", g.design_distance);
    s.sweep.x_min = r.number("sweep.x_min", -0.2);
    s.sweep.x_max = r.number("sweep.x_max", 0.2);
    s.sweep.step = r.number("sweep.step", 1e-3);
    s.sweep.gap_threshold = r.number("sweep.gap_threshold", 0.1);
    s.sweep.mix_threshold = r.number("sweep.mix_threshold", 0.5);
    if (!(s.sweep.step > 0.0)) throw ValidationError("sweep.step", "must be > 0");
    if (!(s.sweep.gap_threshold > 0.0 && s.sweep.gap_threshold < s.sweep.mix_threshold &&
          s.sweep.mix_threshold <= 1.0))
        throw ValidationError("sweep.gap_threshold",
                              "need 0 < gap_threshold < mix_threshold <= 1");

    s.trace_cycles = r.integer("trace_cycles", 2);
    if (s.trace_cycles < 1) throw ValidationError("trace_cycles", "must be >= 1");
    s.image_height = r.integer("image_height", 120);
    if (s.image_height < 1) throw ValidationError("image_height", "must be >= 1");
    if (const auto v = r.raw("images.left")) s.left_image_path = *v;
    if (const auto v = r.raw("images.right")) s.right_image_path = *v;
    if (const auto v = r.raw("output_dir")) s.output_dir = *v;

    for (int i = 0;; ++i) {
        const std::string prefix = "viewer." + std::to_string(i) + ".";
        const auto x = r.parse_number(prefix + "x");
        if (!x) break;
        ViewerSpec v;
        v.id = i;
        v.x = *x;
        v.z = r.number(prefix + "z", g.design_distance);
        v.ipd = r.number(prefix + "ipd", 0.063);
        if (!(v.z > 0.0)) throw ValidationError(prefix + "z", "must be > 0");
        if (!(v.ipd > 0.0)) throw ValidationError(prefix + "ipd", "must be > 0");
        s.viewers.push_back(v);
    }
    if (s.viewers.empty()) throw ValidationError("viewer.0.x", "at least one viewer required");
    if (s.mode == ScheduleMode::PerEye && s.viewers.size() != 1)
        throw ValidationError("mode", "per_eye mode requires exactly one viewer");

    r.reject_unused();
    return s;
}

Scenario load_scenario(const std::string& path) {
    Scenario s = parse_scenario(read_file(path));
    const auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&](std::string& p) {
        if (p.empty()) return;
        const std::filesystem::path fp(p);
        if (fp.is_relative()) p = (base / fp).string();
        if (!std::filesystem::exists(p)) throw ValidationError("images", "missing file: " + p);
    };
    resolve(s.left_image_path);
    resolve(s.right_image_path);
    return s;
}

std::string default_scenario_text() {
    return R"(# 27-inch 2560x1440 panel, 96 LED columns, 240 Hz, viewer at 1 m
geometry.screen_width = 0.59772650
geometry.panel_cols = 2560
geometry.panel_rows = 1440
geometry.led_column_count = 96
geometry.panel_field_rate = 240
mode = per_eye
viewer.0.x = 0.0
viewer.0.z = 1.0
viewer.0.ipd = 0.063
)";
}

}  // namespace tdm3d
