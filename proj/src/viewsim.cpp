#include "tdm3d/viewsim.hpp"

#include <algorithm>
#include <cmath>

#include "tdm3d/kernels.hpp"
#include "tdm3d/optics.hpp"

namespace tdm3d {
namespace {

std::vector<const Phase*> illuminate_phases(const FrameSchedule& schedule) {
    std::vector<const Phase*> out;
    for (const Phase& p : schedule.phases) {
        if (p.kind == PhaseKind::Illuminate) out.push_back(&p);
    }
    return out;
}

}  // namespace

std::vector<double> perceived_weights(const DisplayGeometry& g, const Eye& eye,
                                      const LedMask& mask, int column_count) {
    if (!(eye.z > 0.0)) throw NonPositiveDistance("eye.z");
    if (mask.size() != static_cast<std::size_t>(g.led_column_count))
        throw MaskLengthMismatch("perceived_weights");

    const std::vector<double> lenses = lens_centers(g);
    const std::vector<double> cols = column_centers(g);
    const double col_pitch = g.screen_width / column_count;
    const double offset = (column_count - 1) / 2.0;
    const double gap = g.led_lens_gap;

    // landing point on the LED plane for each panel column ray that survives
    // the aperture and acceptance-window checks
    std::vector<double> landings;
    std::vector<std::size_t> indices;
    landings.reserve(static_cast<std::size_t>(column_count));
    indices.reserve(static_cast<std::size_t>(column_count));
    for (int c = 0; c < column_count; ++c) {
        const double xc = (c - offset) * col_pitch;
        const double raw = xc / g.lens_pitch + (g.lens_count - 1) / 2.0;
        const int j = std::clamp(static_cast<int>(std::lround(raw)), 0, g.lens_count - 1);
        const double lens_x = lenses[static_cast<std::size_t>(j)];
        if (std::abs(xc - lens_x) > g.lens_aperture / 2.0) continue;
        const double led = xc - gap * ((eye.x - xc) / eye.z + (xc - lens_x) / g.focal_length);
        if (std::abs(led - lens_x) > g.lens_acceptance_halfwidth) continue;
        landings.push_back(led);
        indices.push_back(static_cast<std::size_t>(c));
    }

    std::vector<double> emission(landings.size(), 0.0);
    const auto& ops = kernels::active();
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask.test(i)) continue;
        ops.accumulate_strip(emission.data(), landings.data(), landings.size(), 1.0, cols[i],
                             g.led_strip_width / 2.0, g.diffuser_sigma);
    }

    std::vector<double> weights(static_cast<std::size_t>(column_count), 0.0);
    for (std::size_t k = 0; k < indices.size(); ++k) weights[indices[k]] = emission[k];
    return weights;
}

ViewImage render_perceived(const DisplayGeometry& g, const FrameSchedule& schedule,
                           const std::vector<ViewImage>& frames, const Eye& eye) {
    const auto phases = illuminate_phases(schedule);
    if (frames.size() != phases.size())
        throw FrameCountMismatch("one panel image per Illuminate phase required");
    for (const ViewImage& f : frames) {
        if (f.width != frames.front().width || f.height != frames.front().height)
            throw DimensionMismatch("render_perceived: frames differ in size");
    }

    ViewImage out(frames.front().width, frames.front().height);
    const auto& ops = kernels::active();
    for (std::size_t k = 0; k < phases.size(); ++k) {
        const std::vector<double> w = perceived_weights(g, eye, phases[k]->mask, out.width);
        const ViewImage& f = frames[k];
        for (int r = 0; r < out.height; ++r) {
            const std::size_t row = static_cast<std::size_t>(r) * static_cast<std::size_t>(out.width);
            ops.weighted_accumulate(out.samples.data() + row, w.data(), f.samples.data() + row,
                                    phases[k]->duration, static_cast<std::size_t>(out.width));
        }
    }
    return out;
}

FieldContent split_views(const ViewImage& frame, const InterleavePattern& pattern, int field) {
    FieldContent fc;
    fc.left.assign(static_cast<std::size_t>(frame.width), 0.0);
    fc.right.assign(static_cast<std::size_t>(frame.width), 0.0);
    for (int c = 0; c < frame.width; ++c) {
        double l = 0.0, r = 0.0;
        for (int row = 0; row < frame.height; ++row) {
            (is_left_column(pattern, row, c, field) ? l : r) += frame.at(row, c);
        }
        fc.left[static_cast<std::size_t>(c)] = l / frame.height;
        fc.right[static_cast<std::size_t>(c)] = r / frame.height;
    }
    return fc;
}

FieldContent whole_view_content(const ViewImage& frame, bool left) {
    FieldContent fc;
    fc.left.assign(static_cast<std::size_t>(frame.width), 0.0);
    fc.right.assign(static_cast<std::size_t>(frame.width), 0.0);
    auto& dst = left ? fc.left : fc.right;
    for (int c = 0; c < frame.width; ++c) {
        double sum = 0.0;
        for (int row = 0; row < frame.height; ++row) sum += frame.at(row, c);
        dst[static_cast<std::size_t>(c)] = sum / frame.height;
    }
    return fc;
}

SweepReport sweep_viewing_plane(const DisplayGeometry& g, const FrameSchedule& schedule,
                                const std::vector<FieldContent>& fields, double z, double x_min,
                                double x_max, double step, double gap_threshold,
                                double mix_threshold) {
    if (!(step > 0.0) || x_max < x_min) throw EmptyRange();
    const auto phases = illuminate_phases(schedule);
    if (fields.size() != phases.size())
        throw FrameCountMismatch("one field content per Illuminate phase required");
    const int columns = static_cast<int>(fields.front().left.size());

    SweepReport report;
    report.z = z;
    const int n = static_cast<int>(std::floor((x_max - x_min) / step + 0.5)) + 1;
    if (n < 1) throw EmptyRange();
    report.entries.reserve(static_cast<std::size_t>(n));

    for (int i = 0; i < n; ++i) {
        SweepEntry e;
        e.x = x_min + i * step;
        Eye probe{e.x, z, Side::Left, -1};
        for (std::size_t k = 0; k < phases.size(); ++k) {
            const std::vector<double> w = perceived_weights(g, probe, phases[k]->mask, columns);
            double l = 0.0, r = 0.0;
            for (int c = 0; c < columns; ++c) {
                l += w[static_cast<std::size_t>(c)] * fields[k].left[static_cast<std::size_t>(c)];
                r += w[static_cast<std::size_t>(c)] * fields[k].right[static_cast<std::size_t>(c)];
            }
            e.left_signal += phases[k]->duration * l;
            e.right_signal += phases[k]->duration * r;
        }
        report.entries.push_back(e);
    }

    double sweep_max = 0.0;
    for (const SweepEntry& e : report.entries)
        sweep_max = std::max({sweep_max, e.left_signal, e.right_signal});

    for (SweepEntry& e : report.entries) {
        const double hi = std::max(e.left_signal, e.right_signal);
        const double lo = std::min(e.left_signal, e.right_signal);
        if (hi < gap_threshold * sweep_max || sweep_max == 0.0) {
            e.cls = BandClass::Gap;
        } else if (hi > 0.0 && lo / hi > mix_threshold) {
            e.cls = BandClass::Mixed;
        } else {
            e.cls = e.left_signal > e.right_signal ? BandClass::LeftView : BandClass::RightView;
        }
    }

    for (const SweepEntry& e : report.entries) {
        if (!report.bands.empty() && report.bands.back().cls == e.cls) {
            report.bands.back().x_end = e.x;
        } else {
            report.bands.push_back({e.cls, e.x, e.x});
        }
    }
    return report;
}

std::vector<EyeCrosstalk> crosstalk_report(const DisplayGeometry& g,
                                           const FrameSchedule& schedule,
                                           const std::vector<Viewer>& viewers) {
    if (viewers.empty()) throw ValidationError("viewers", "must be non-empty");
    const auto phases = illuminate_phases(schedule);

    std::vector<EyeCrosstalk> out;
    for (std::size_t v = 0; v < viewers.size(); ++v) {
        const Viewer& viewer = viewers[v];
        const double ipd = std::abs(viewer.right.x - viewer.left.x);
        for (const Eye* eye : {&viewer.left, &viewer.right}) {
            // in PerEye mode the eye's own view is its side; in PerViewer mode
            // it is the viewer's field
            const int own_view = schedule.mode == ScheduleMode::PerEye
                                     ? (eye->side == Side::Left ? 0 : 1)
                                     : static_cast<int>(v);

            std::vector<double> xs;
            const double span = ipd;
            const int samples = 257;
            xs.reserve(samples);
            for (int i = 0; i < samples; ++i)
                xs.push_back(eye->x - span + 2.0 * span * i / (samples - 1));

            IntensityProfile intended{eye->z, xs, std::vector<double>(xs.size(), 0.0)};
            IntensityProfile unintended = intended;
            for (const Phase* p : phases) {
                const IntensityProfile contribution = illumination_profile(g, p->mask, eye->z, xs);
                auto& target = p->view_id == own_view ? intended : unintended;
                for (std::size_t i = 0; i < xs.size(); ++i)
                    target.values[i] += p->duration * contribution.values[i];
            }
            out.push_back({viewer.id, eye->side,
                           crosstalk_ratio(intended, unintended, eye->x, ipd / 2.0)});
        }
    }
    return out;
}

}  // namespace tdm3d
