#include "tdm3d/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "tdm3d/image_io.hpp"
#include "tdm3d/optics.hpp"

namespace tdm3d {
namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

const char* side_label(Side s) { return s == Side::Left ? "L" : "R"; }

const char* band_label(BandClass c) {
    switch (c) {
        case BandClass::LeftView: return "left";
        case BandClass::RightView: return "right";
        case BandClass::Gap: return "gap";
        case BandClass::Mixed: return "mixed";
    }
    return "?";
}

struct Pipeline {
    Scenario scenario;
    std::vector<Viewer> viewers;
    std::vector<LedMask> masks;  // one per view
    std::vector<std::pair<int, LedMask>> forbidden;
    FrameSchedule schedule;
};

Pipeline build_pipeline(Scenario scenario) {
    Pipeline p;
    p.scenario = std::move(scenario);
    p.viewers = p.scenario.make_viewers();
    const DisplayGeometry& g = p.scenario.geometry;

    if (p.scenario.mode == ScheduleMode::PerEye) {
        const Viewer& v = p.viewers.front();
        p.masks = {select_columns(g, v.left), select_columns(g, v.right)};
        p.forbidden = {
            {0, forbidden_columns(g, {v.right}, p.scenario.margin)},
            {1, forbidden_columns(g, {v.left}, p.scenario.margin)},
        };
    } else {
        for (std::size_t k = 0; k < p.viewers.size(); ++k) {
            std::vector<Eye> others;
            for (std::size_t j = 0; j < p.viewers.size(); ++j) {
                if (j == k) continue;
                others.push_back(p.viewers[j].left);
                others.push_back(p.viewers[j].right);
            }
            const LedMask forbid = forbidden_columns(g, others, p.scenario.margin);
            LedMask mask = select_columns(g, p.viewers[k].left) |
                           select_columns(g, p.viewers[k].right);
            if (p.scenario.region_x_clean) mask = mask & ~forbid;
            p.masks.push_back(mask);
            p.forbidden.emplace_back(static_cast<int>(k), forbid);
        }
    }
    p.schedule = build_schedule(p.scenario.mode, p.masks, g.panel_field_rate,
                                p.scenario.refresh_fraction);
    return p;
}

ViewImage source_view(const Scenario& s, bool left) {
    const std::string& path = left ? s.left_image_path : s.right_image_path;
    if (!path.empty()) return decode_pgm(read_file(path));
    const int width = s.geometry.panel_subpixel_cols() / 2;
    return ViewImage(width, s.image_height, 1.0);
}

// the per-eye drive shows one whole view per field; double each source
// column to fill the panel grid
ViewImage upscale_columns(const ViewImage& src) {
    ViewImage out(src.width * 2, src.height);
    for (int r = 0; r < src.height; ++r)
        for (int c = 0; c < out.width; ++c) out.at(r, c) = src.at(r, c / 2);
    return out;
}

std::vector<ViewImage> panel_frames(const Scenario& s, const ViewImage& left,
                                    const ViewImage& right, int fields) {
    std::vector<ViewImage> frames;
    for (int k = 0; k < fields; ++k) {
        if (s.mode == ScheduleMode::PerEye) {
            frames.push_back(upscale_columns(k == 0 ? left : right));
        } else {
            frames.push_back(interleave(left, right, s.pattern, k));
        }
    }
    return frames;
}

std::vector<FieldContent> field_contents(const Scenario& s,
                                         const std::vector<ViewImage>& frames) {
    std::vector<FieldContent> out;
    for (std::size_t k = 0; k < frames.size(); ++k) {
        if (s.mode == ScheduleMode::PerEye) {
            out.push_back(whole_view_content(frames[k], k == 0));
        } else {
            out.push_back(split_views(frames[k], s.pattern, static_cast<int>(k)));
        }
    }
    return out;
}

std::vector<double> sweep_grid(const SweepParams& sw) {
    std::vector<double> xs;
    const int n = static_cast<int>(std::floor((sw.x_max - sw.x_min) / sw.step + 0.5)) + 1;
    for (int i = 0; i < n; ++i) xs.push_back(sw.x_min + i * sw.step);
    return xs;
}

class ArtifactWriter {
   public:
    ArtifactWriter(std::string dir, std::string sub, std::string hash)
        : dir_(std::move(dir)), sub_(std::move(sub)), hash_(std::move(hash)) {
        std::filesystem::create_directories(dir_);
    }

    std::string path(const std::string& qualifier, const std::string& ext) const {
        std::string name = sub_ + "_" + hash_;
        if (!qualifier.empty()) name += "_" + qualifier;
        return (std::filesystem::path(dir_) / (name + "." + ext)).string();
    }

    void write(const std::string& qualifier, const std::string& ext,
               const std::string& bytes) const {
        write_file_atomic(path(qualifier, ext), bytes);
    }

   private:
    std::string dir_, sub_, hash_;
};

int run_select(const Pipeline& p, const ArtifactWriter& w) {
    std::ostringstream csv;
    csv << "viewer_id,side,mask_hex\n";
    const DisplayGeometry& g = p.scenario.geometry;
    for (const Viewer& v : p.viewers) {
        csv << v.id << ",L," << select_columns(g, v.left).to_hex() << '\n';
        csv << v.id << ",R," << select_columns(g, v.right).to_hex() << '\n';
    }
    w.write("", "csv", csv.str());
    return 0;
}

int run_profile(const Pipeline& p, const ArtifactWriter& w) {
    const DisplayGeometry& g = p.scenario.geometry;
    const std::vector<double> xs = sweep_grid(p.scenario.sweep);
    for (const Viewer& v : p.viewers) {
        for (const Eye* eye : {&v.left, &v.right}) {
            const IntensityProfile profile =
                illumination_profile(g, select_columns(g, *eye), eye->z, xs);
            std::ostringstream csv;
            csv << "x_m,intensity\n";
            for (std::size_t i = 0; i < profile.xs.size(); ++i)
                csv << sci(profile.xs[i]) << ',' << sci(profile.values[i]) << '\n';
            w.write("v" + std::to_string(v.id) + side_label(eye->side), "csv", csv.str());
        }
    }
    return 0;
}

int run_schedule(const Pipeline& p, const ArtifactWriter& w, std::ostream& err) {
    const std::vector<Violation> violations = validate(p.schedule, p.forbidden);
    if (!violations.empty()) {
        for (const Violation& v : violations) {
            err << "violation: " << v.message;
            if (v.phase_index >= 0) err << " (phase " << v.phase_index << ')';
            if (v.column >= 0) err << " (column " << v.column << ')';
            err << '\n';
        }
        return 1;
    }
    w.write("", "csv", export_trace(p.schedule, p.scenario.trace_cycles, TraceFormat::Csv));
    w.write("", "vcd", export_trace(p.schedule, p.scenario.trace_cycles, TraceFormat::Vcd));
    return 0;
}

int run_interleave(const Pipeline& p, const ArtifactWriter& w) {
    const ViewImage left = source_view(p.scenario, true);
    const ViewImage right = source_view(p.scenario, false);
    for (int k = 0; k < p.schedule.view_count; ++k) {
        w.write("f" + std::to_string(k), "pgm",
                encode_pgm(interleave(left, right, p.scenario.pattern, k)));
    }
    return 0;
}

int run_render(const Pipeline& p, const ArtifactWriter& w) {
    const ViewImage left = source_view(p.scenario, true);
    const ViewImage right = source_view(p.scenario, false);
    const std::vector<ViewImage> frames =
        panel_frames(p.scenario, left, right, p.schedule.view_count);
    for (const Viewer& v : p.viewers) {
        for (const Eye* eye : {&v.left, &v.right}) {
            ViewImage img = render_perceived(p.scenario.geometry, p.schedule, frames, *eye);
            double peak = 0.0;
            for (double s : img.samples) peak = std::max(peak, s);
            if (peak > 0.0)
                for (double& s : img.samples) s /= peak;
            w.write("v" + std::to_string(v.id) + side_label(eye->side), "pgm",
                    encode_pgm(img));
        }
    }
    return 0;
}

int run_sweep(const Pipeline& p, const ArtifactWriter& w) {
    const ViewImage left = source_view(p.scenario, true);
    const ViewImage right = source_view(p.scenario, false);
    const std::vector<ViewImage> frames =
        panel_frames(p.scenario, left, right, p.schedule.view_count);
    const SweepParams& sw = p.scenario.sweep;
    const SweepReport report = sweep_viewing_plane(
        p.scenario.geometry, p.schedule, field_contents(p.scenario, frames), sw.z, sw.x_min,
        sw.x_max, sw.step, sw.gap_threshold, sw.mix_threshold);

    std::ostringstream csv;
    csv << "x_m,class,left,right\n";
    for (const SweepEntry& e : report.entries) {
        csv << sci(e.x) << ',' << band_label(e.cls) << ',' << sci(e.left_signal) << ','
            << sci(e.right_signal) << '\n';
    }
    w.write("", "csv", csv.str());

    // band strip: right bands red, left bands green, gaps black
    const int height = 24;
    const int width = static_cast<int>(report.entries.size());
    std::vector<std::uint8_t> rgb(static_cast<std::size_t>(width) * height * 3, 0);
    for (int c = 0; c < width; ++c) {
        std::uint8_t r = 0, g = 0, b = 0;
        switch (report.entries[static_cast<std::size_t>(c)].cls) {
            case BandClass::RightView: r = 255; break;
            case BandClass::LeftView: g = 255; break;
            case BandClass::Mixed: r = 255; g = 255; break;
            case BandClass::Gap: break;
        }
        for (int row = 0; row < height; ++row) {
            const std::size_t base =
                (static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                 static_cast<std::size_t>(c)) * 3;
            rgb[base] = r;
            rgb[base + 1] = g;
            rgb[base + 2] = b;
        }
    }
    w.write("", "ppm", encode_ppm(width, height, rgb));
    return 0;
}

int run_crosstalk(const Pipeline& p, const ArtifactWriter& w) {
    const std::vector<EyeCrosstalk> report =
        crosstalk_report(p.scenario.geometry, p.schedule, p.viewers);
    std::ostringstream csv;
    csv << "viewer_id,side,crosstalk\n";
    for (const EyeCrosstalk& e : report)
        csv << e.viewer_id << ',' << side_label(e.side) << ',' << sci(e.ratio) << '\n';
    w.write("", "csv", csv.str());
    return 0;
}

}  // namespace

std::string scenario_hash(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int run(const RunOptions& options, std::ostream& err) {
    try {
        const std::string bytes = read_file(options.scenario_path);
        Scenario scenario = parse_scenario(bytes);
        const auto base = std::filesystem::path(options.scenario_path).parent_path();
        for (std::string* path : {&scenario.left_image_path, &scenario.right_image_path}) {
            if (path->empty()) continue;
            if (std::filesystem::path(*path).is_relative())
                *path = (base / *path).string();
            if (!std::filesystem::exists(*path))
                throw ValidationError("images", "missing file: " + *path);
        }
        if (!options.out_dir_override.empty()) scenario.output_dir = options.out_dir_override;

        Pipeline pipeline = build_pipeline(std::move(scenario));
        const ArtifactWriter writer(pipeline.scenario.output_dir, options.subcommand,
                                    scenario_hash(bytes));

        if (options.subcommand == "select") return run_select(pipeline, writer);
        if (options.subcommand == "profile") return run_profile(pipeline, writer);
        if (options.subcommand == "schedule") return run_schedule(pipeline, writer, err);
        if (options.subcommand == "interleave") return run_interleave(pipeline, writer);
        if (options.subcommand == "render") return run_render(pipeline, writer);
        if (options.subcommand == "sweep") return run_sweep(pipeline, writer);
        if (options.subcommand == "crosstalk") return run_crosstalk(pipeline, writer);
        err << "unknown subcommand: " << options.subcommand << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        err << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << e.what() << '\n';
        return 2;
    }
}

}  // namespace tdm3d
