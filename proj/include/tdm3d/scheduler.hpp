#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tdm3d/geometry.hpp"

namespace tdm3d {

enum class PhaseKind : std::uint8_t { Refresh, Illuminate };
enum class ScheduleMode : std::uint8_t { PerEye, PerViewer };

struct Phase {
    PhaseKind kind = PhaseKind::Refresh;
    int view_id = 0;
    double duration = 0.0;  // seconds
    LedMask mask;           // all-false for Refresh phases
};

/// One frame of the field-sequential schedule: Refresh(k), Illuminate(k) for
/// k = 0..N-1, 2N phases summing to frame_period.
struct FrameSchedule {
    ScheduleMode mode = ScheduleMode::PerEye;
    int view_count = 0;
    std::vector<Phase> phases;
    double frame_period = 0.0;  // seconds
};

struct LcdState {
    bool refreshing = false;
    int view_id = 0;
};

struct TraceEvent {
    double time = 0.0;  // seconds
    LedMask mask;
    LcdState lcd;
};

struct ScheduleTrace {
    std::vector<TraceEvent> events;  // strictly increasing times, first at 0
};

struct ScheduleState {
    int phase_index = 0;
    LedMask mask;
    LcdState lcd;
};

enum class ViolationKind : std::uint8_t {
    BacklightDuringRefresh,
    NonPositiveDuration,
    PeriodMismatch,
    RegionXLit,
    ViewCoverage,
};

struct Violation {
    ViolationKind kind;
    int phase_index = -1;  // -1 when not tied to a phase
    int view_id = -1;
    int column = -1;
    std::string message;
};

/// PerEye requires N == 2 (left, right of one viewer); PerViewer takes one
/// mask per viewer. frame_period = N / panel_field_rate; each view gets a
/// Refresh of refresh_fraction/rate with an all-off mask, then an Illuminate
/// of (1 - refresh_fraction)/rate with its mask.
FrameSchedule build_schedule(ScheduleMode mode, const std::vector<LedMask>& masks,
                             double panel_field_rate, double refresh_fraction);

/// State at time t (>= 0), taken mod frame_period; right-continuous at
/// phase boundaries.
ScheduleState state_at(const FrameSchedule& schedule, double t);

/// Empty iff the schedule honors darkness-during-refresh, positive durations
/// summing to the frame period, one Refresh and one Illuminate per view, and
/// no Illuminate mask intersecting its forbidden mask.
std::vector<Violation> validate(const FrameSchedule& schedule,
                                const std::vector<std::pair<int, LedMask>>& forbidden = {});

/// Content update rate each view receives: 1 / frame_period.
double effective_view_rate(const FrameSchedule& schedule);

enum class TraceFormat : std::uint8_t { Csv, Vcd };

ScheduleTrace make_trace(const FrameSchedule& schedule, int cycles);

/// CSV rows `t_s,lcd_state,mask_hex` at each change event, or an IEEE-1364
/// value-change dump with one 1-bit signal per LED column (led0..ledN-1) and
/// an 8-bit lcd_state (view_id * 2, +1 while holding). Timescale 1 us.
/// Byte-deterministic for equal inputs.
std::string export_trace(const FrameSchedule& schedule, int cycles, TraceFormat format);

}  // namespace tdm3d
