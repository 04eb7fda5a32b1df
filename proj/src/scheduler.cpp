#include "tdm3d/scheduler.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace tdm3d {
namespace {

std::string format_seconds(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9e", t);
    return buf;
}

int lcd_code(const LcdState& s) { return s.view_id * 2 + (s.refreshing ? 0 : 1); }

std::string lcd_label(const LcdState& s) {
    return (s.refreshing ? "refresh" : "hold") + std::to_string(s.view_id);
}

}  // namespace

FrameSchedule build_schedule(ScheduleMode mode, const std::vector<LedMask>& masks,
                             double panel_field_rate, double refresh_fraction) {
    if (masks.empty()) throw EmptyMaskList();
    if (mode == ScheduleMode::PerEye && masks.size() != 2)
        throw BadViewCount("PerEye mode requires exactly 2 views");
    if (!(panel_field_rate > 0.0)) throw ValidationError("panel_field_rate", "must be > 0");
    if (!(refresh_fraction > 0.0 && refresh_fraction < 1.0))
        throw ValidationError("refresh_fraction", "must be in (0, 1)");
    const std::size_t columns = masks.front().size();
    for (const LedMask& m : masks) {
        if (m.size() != columns) throw MaskLengthMismatch("build_schedule");
    }

    const int n = static_cast<int>(masks.size());
    FrameSchedule schedule;
    schedule.mode = mode;
    schedule.view_count = n;
    schedule.frame_period = n / panel_field_rate;
    schedule.phases.reserve(static_cast<std::size_t>(2 * n));
    for (int k = 0; k < n; ++k) {
        Phase refresh;
        refresh.kind = PhaseKind::Refresh;
        refresh.view_id = k;
        refresh.duration = refresh_fraction / panel_field_rate;
        refresh.mask = LedMask(columns);
        schedule.phases.push_back(std::move(refresh));

        Phase illuminate;
        illuminate.kind = PhaseKind::Illuminate;
        illuminate.view_id = k;
        illuminate.duration = (1.0 - refresh_fraction) / panel_field_rate;
        illuminate.mask = masks[static_cast<std::size_t>(k)];
        schedule.phases.push_back(std::move(illuminate));
    }
    return schedule;
}

ScheduleState state_at(const FrameSchedule& schedule, double t) {
    if (t < 0.0) throw ValidationError("t", "must be >= 0");
    double local = std::fmod(t, schedule.frame_period);
    if (local < 0.0) local = 0.0;
    // fmod of a near-multiple can land one ulp shy of the period; that instant
    // belongs to the start of the next frame
    if (schedule.frame_period - local <= 1e-9 * schedule.frame_period) local = 0.0;
    double boundary = 0.0;
    for (std::size_t i = 0; i < schedule.phases.size(); ++i) {
        boundary += schedule.phases[i].duration;
        const bool last = i + 1 == schedule.phases.size();
        if (local < boundary || last) {
            const Phase& p = schedule.phases[i];
            return {static_cast<int>(i), p.mask,
                    {p.kind == PhaseKind::Refresh, p.view_id}};
        }
    }
    throw ValidationError("schedule", "has no phases");
}

std::vector<Violation> validate(const FrameSchedule& schedule,
                                const std::vector<std::pair<int, LedMask>>& forbidden) {
    std::vector<Violation> out;
    double sum = 0.0;
    std::vector<int> refresh_seen(static_cast<std::size_t>(schedule.view_count), 0);
    std::vector<int> illuminate_seen(static_cast<std::size_t>(schedule.view_count), 0);

    for (std::size_t i = 0; i < schedule.phases.size(); ++i) {
        const Phase& p = schedule.phases[i];
        sum += p.duration;
        if (!(p.duration > 0.0)) {
            out.push_back({ViolationKind::NonPositiveDuration, static_cast<int>(i), p.view_id,
                           -1, "phase duration must be > 0"});
        }
        if (p.kind == PhaseKind::Refresh && p.mask.any()) {
            out.push_back({ViolationKind::BacklightDuringRefresh, static_cast<int>(i),
                           p.view_id, -1, "backlight lit during refresh"});
        }
        if (p.view_id >= 0 && p.view_id < schedule.view_count) {
            (p.kind == PhaseKind::Refresh ? refresh_seen : illuminate_seen)
                [static_cast<std::size_t>(p.view_id)]++;
        }
        if (p.kind == PhaseKind::Illuminate) {
            for (const auto& [view, fmask] : forbidden) {
                if (view != p.view_id || fmask.size() != p.mask.size()) continue;
                for (std::size_t c = 0; c < p.mask.size(); ++c) {
                    if (p.mask.test(c) && fmask.test(c)) {
                        out.push_back({ViolationKind::RegionXLit, static_cast<int>(i),
                                       p.view_id, static_cast<int>(c),
                                       "forbidden column lit"});
                    }
                }
            }
        }
    }

    if (std::abs(sum - schedule.frame_period) > 1e-12 * schedule.frame_period) {
        out.push_back({ViolationKind::PeriodMismatch, -1, -1, -1,
                       "phase durations do not sum to frame_period"});
    }
    for (int k = 0; k < schedule.view_count; ++k) {
        if (refresh_seen[static_cast<std::size_t>(k)] != 1 ||
            illuminate_seen[static_cast<std::size_t>(k)] != 1) {
            out.push_back({ViolationKind::ViewCoverage, -1, k, -1,
                           "view must be refreshed and illuminated exactly once"});
        }
    }
    return out;
}

double effective_view_rate(const FrameSchedule& schedule) {
    return 1.0 / schedule.frame_period;
}

ScheduleTrace make_trace(const FrameSchedule& schedule, int cycles) {
    if (cycles < 1) throw ValidationError("cycles", "must be >= 1");
    ScheduleTrace trace;
    double t = 0.0;
    for (int c = 0; c < cycles; ++c) {
        for (const Phase& p : schedule.phases) {
            trace.events.push_back({t, p.mask, {p.kind == PhaseKind::Refresh, p.view_id}});
            t += p.duration;
        }
    }
    return trace;
}

std::string export_trace(const FrameSchedule& schedule, int cycles, TraceFormat format) {
    const ScheduleTrace trace = make_trace(schedule, cycles);
    std::ostringstream out;

    if (format == TraceFormat::Csv) {
        out << "t_s,lcd_state,mask_hex\n";
        for (const TraceEvent& e : trace.events) {
            out << format_seconds(e.time) << ',' << lcd_label(e.lcd) << ',' << e.mask.to_hex()
                << '\n';
        }
        return out.str();
    }

    const std::size_t columns = schedule.phases.front().mask.size();
    out << "$comment frame_period_s=" << format_seconds(schedule.frame_period) << " $end\n";
    out << "$timescale 1 us $end\n";
    out << "$scope module tdm $end\n";
    for (std::size_t c = 0; c < columns; ++c)
        out << "$var wire 1 l" << c << " led" << c << " $end\n";
    out << "$var reg 8 s lcd_state $end\n";
    out << "$upscope $end\n$enddefinitions $end\n";

    auto state_bits = [](int code) {
        std::string b = "b";
        for (int bit = 7; bit >= 0; --bit) b += (code >> bit) & 1 ? '1' : '0';
        return b;
    };

    std::vector<bool> last(columns, false);
    int last_code = -1;
    long long last_stamp = -1;
    for (const TraceEvent& e : trace.events) {
        const long long stamp = std::llround(e.time * 1e6);
        std::string changes;
        for (std::size_t c = 0; c < columns; ++c) {
            const bool v = e.mask.test(c);
            if (v != last[c] || last_code < 0) {
                changes += v ? '1' : '0';
                changes += 'l' + std::to_string(c) + '\n';
                last[c] = v;
            }
        }
        const int code = lcd_code(e.lcd);
        if (code != last_code) {
            changes += state_bits(code) + " s\n";
            last_code = code;
        }
        if (!changes.empty()) {
            if (stamp != last_stamp) {
                out << '#' << stamp << '\n';
                last_stamp = stamp;
            }
            out << changes;
        }
    }
    out << '#' << std::llround(cycles * schedule.frame_period * 1e6) << '\n';
    return out.str();
}

}  // namespace tdm3d
