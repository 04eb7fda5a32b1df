#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tdm3d/optics.hpp"
#include "tdm3d/viewsim.hpp"

using namespace tdm3d;

namespace {

Viewer centered_viewer(double z, double ipd) {
    Viewer v;
    v.id = 0;
    v.left = Eye{-ipd / 2.0, z, Side::Left, 0};
    v.right = Eye{+ipd / 2.0, z, Side::Right, 0};
    return v;
}

}  // namespace

TEST_CASE("perceived_weights") {
    const DisplayGeometry g = default_geometry();
    const int cols = 480;
    const Eye eye{0.0, 1.0, Side::Left, 0};

    SUBCASE("all-off backlight weighs nothing") {
        const auto w = perceived_weights(g, eye, LedMask(static_cast<std::size_t>(g.led_column_count)), cols);
        REQUIRE(w.size() == static_cast<std::size_t>(cols));
        for (double x : w) CHECK(x == 0.0);
    }
    SUBCASE("superposition over disjoint masks") {
        LedMask a(static_cast<std::size_t>(g.led_column_count));
        LedMask b(static_cast<std::size_t>(g.led_column_count));
        a.set(40);
        b.set(55);
        const auto wa = perceived_weights(g, eye, a, cols);
        const auto wb = perceived_weights(g, eye, b, cols);
        const auto wab = perceived_weights(g, eye, a | b, cols);
        for (int c = 0; c < cols; ++c) {
            const double sum = wa[static_cast<std::size_t>(c)] + wb[static_cast<std::size_t>(c)];
            CHECK(std::abs(wab[static_cast<std::size_t>(c)] - sum) <=
                  1e-12 * std::max(1.0, std::abs(sum)));
        }
    }
    SUBCASE("the eye's own selection lights several bright patches") {
        const auto w = perceived_weights(g, eye, select_columns(g, eye), cols);
        const double total = std::accumulate(w.begin(), w.end(), 0.0);
        CHECK(total > 0.0);
        // the selected columns repeat across the screen, so the perceived
        // brightness shows multiple disjoint bumps rather than one
        const double peak = *std::max_element(w.begin(), w.end());
        int bumps = 0;
        bool inside = false;
        for (double x : w) {
            CHECK(x >= 0.0);
            const bool bright = x > 0.5 * peak;
            if (bright && !inside) ++bumps;
            inside = bright;
        }
        CHECK(bumps >= 2);
    }
}

TEST_CASE("render_perceived") {
    const DisplayGeometry g = default_geometry();
    const Eye eye{0.0, 1.0, Side::Left, 0};
    const LedMask sel = select_columns(g, eye);
    const LedMask off(static_cast<std::size_t>(g.led_column_count));
    const FrameSchedule s = build_schedule(ScheduleMode::PerEye, {sel, sel}, 240.0, 0.25);
    const int w = 64, h = 8;

    SUBCASE("black frames render black") {
        const std::vector<ViewImage> frames(2, ViewImage(w, h, 0.0));
        const ViewImage out = render_perceived(g, s, frames, eye);
        REQUIRE(out.width == w);
        REQUIRE(out.height == h);
        for (double v : out.samples) CHECK(v == 0.0);
    }
    SUBCASE("linear in the frame content") {
        std::vector<ViewImage> frames(2, ViewImage(w, h, 0.0));
        for (int c = 0; c < w; ++c) frames[0].at(3, c) = 0.25 * c;
        frames[1] = frames[0];
        const ViewImage once = render_perceived(g, s, frames, eye);
        for (auto& f : frames)
            for (double& v : f.samples) v *= 3.0;
        const ViewImage thrice = render_perceived(g, s, frames, eye);
        for (std::size_t i = 0; i < once.samples.size(); ++i)
            CHECK(thrice.samples[i] == doctest::Approx(3.0 * once.samples[i]).epsilon(1e-12));
    }
    SUBCASE("dark illuminate phases contribute nothing") {
        const FrameSchedule dark = build_schedule(ScheduleMode::PerEye, {sel, off}, 240.0, 0.25);
        std::vector<ViewImage> frames{ViewImage(w, h, 0.0), ViewImage(w, h, 1.0)};
        const ViewImage out = render_perceived(g, dark, frames, eye);
        for (double v : out.samples) CHECK(v == 0.0);
    }
    SUBCASE("frame count must match the illuminate phases") {
        const std::vector<ViewImage> frames(3, ViewImage(w, h, 0.0));
        CHECK_THROWS_AS(render_perceived(g, s, frames, eye), FrameCountMismatch);
    }
}

TEST_CASE("sweep_viewing_plane") {
    const DisplayGeometry g = default_geometry();
    const Viewer v = centered_viewer(1.0, 0.063);
    const LedMask left = select_columns(g, v.left);
    const LedMask right = select_columns(g, v.right);
    const FrameSchedule s = build_schedule(ScheduleMode::PerEye, {left, right}, 240.0, 0.25);
    const int cols = g.panel_subpixel_cols();
    const std::vector<FieldContent> fields{
        whole_view_content(ViewImage(cols, 1, 1.0), true),
        whole_view_content(ViewImage(cols, 1, 1.0), false),
    };

    SUBCASE("all-off schedule yields one gap band") {
        const LedMask off(static_cast<std::size_t>(g.led_column_count));
        const FrameSchedule dark = build_schedule(ScheduleMode::PerEye, {off, off}, 240.0, 0.25);
        const SweepReport r = sweep_viewing_plane(g, dark, fields, 1.0, -0.1, 0.1, 1e-3, 0.1, 0.5);
        REQUIRE(r.bands.size() == 1);
        CHECK(r.bands[0].cls == BandClass::Gap);
        CHECK(r.bands[0].x_start == doctest::Approx(-0.1));
        CHECK(r.bands[0].x_end == doctest::Approx(0.1));
    }
    SUBCASE("default drive alternates left/right bands symmetrically") {
        const SweepReport r = sweep_viewing_plane(g, s, fields, 1.0, -0.12, 0.12, 1e-3, 0.1, 0.5);
        REQUIRE(r.entries.size() == 241);
        // mirror symmetry: left at +x matches right at -x
        for (std::size_t i = 0; i < r.entries.size(); ++i) {
            const SweepEntry& a = r.entries[i];
            const SweepEntry& b = r.entries[r.entries.size() - 1 - i];
            CHECK(a.left_signal == doctest::Approx(b.right_signal).epsilon(1e-9));
        }
        int left_bands = 0, right_bands = 0;
        BandClass prev = BandClass::Gap;
        for (const Band& band : r.bands) {
            CHECK(band.x_end > band.x_start - 1e-12);
            if (band.cls == BandClass::LeftView) {
                ++left_bands;
                CHECK(prev != BandClass::LeftView);
            }
            if (band.cls == BandClass::RightView) {
                ++right_bands;
                CHECK(prev != BandClass::RightView);
            }
            prev = band.cls;
        }
        CHECK(left_bands >= 2);
        CHECK(right_bands >= 2);
    }
    SUBCASE("entries record non-negative signals on the requested grid") {
        const SweepReport r = sweep_viewing_plane(g, s, fields, 1.0, -0.02, 0.02, 1e-3, 0.1, 0.5);
        REQUIRE(r.entries.size() == 41);
        CHECK(r.entries.front().x == doctest::Approx(-0.02));
        CHECK(r.entries.back().x == doctest::Approx(0.02));
        for (const SweepEntry& e : r.entries) {
            CHECK(e.left_signal >= 0.0);
            CHECK(e.right_signal >= 0.0);
        }
    }
    SUBCASE("bands tile the sweep range") {
        const SweepReport r = sweep_viewing_plane(g, s, fields, 1.0, -0.12, 0.12, 1e-3, 0.1, 0.5);
        REQUIRE_FALSE(r.bands.empty());
        CHECK(r.bands.front().x_start == doctest::Approx(-0.12));
        CHECK(r.bands.back().x_end == doctest::Approx(0.12));
        // bands cover the grid: each starts one step after its predecessor ends
        for (std::size_t i = 1; i < r.bands.size(); ++i)
            CHECK(r.bands[i].x_start == doctest::Approx(r.bands[i - 1].x_end + 1e-3));
    }
    SUBCASE("empty range throws") {
        CHECK_THROWS_AS(sweep_viewing_plane(g, s, fields, 1.0, 0.1, -0.1, 1e-3, 0.1, 0.5),
                        EmptyRange);
    }
}

TEST_CASE("split_views and whole_view_content") {
    SUBCASE("whole view content assigns all energy to one side") {
        const FieldContent fc = whole_view_content(ViewImage(6, 2, 0.5), true);
        REQUIRE(fc.left.size() == 6);
        for (double v : fc.left) CHECK(v == doctest::Approx(0.5));
        for (double v : fc.right) CHECK(v == 0.0);
    }
    SUBCASE("split respects the interleave ownership") {
        const InterleavePattern p{};
        const ViewImage frame = interleave(ViewImage(4, 3, 1.0), ViewImage(4, 3, 2.0), p, 0);
        const FieldContent fc = split_views(frame, p, 0);
        REQUIRE(fc.left.size() == 8);
        for (int c = 0; c < 8; ++c) {
            if (is_left_column(p, 0, c, 0)) {
                CHECK(fc.left[static_cast<std::size_t>(c)] == doctest::Approx(1.0));
                CHECK(fc.right[static_cast<std::size_t>(c)] == 0.0);
            } else {
                CHECK(fc.left[static_cast<std::size_t>(c)] == 0.0);
                CHECK(fc.right[static_cast<std::size_t>(c)] == doctest::Approx(2.0));
            }
        }
    }
}

TEST_CASE("crosstalk_report") {
    const DisplayGeometry g = default_geometry();
    const Viewer v = centered_viewer(1.0, 0.063);

    SUBCASE("identical masks for both eyes give ratio near one") {
        const LedMask both = select_columns(g, v.left) | select_columns(g, v.right);
        const FrameSchedule s = build_schedule(ScheduleMode::PerEye, {both, both}, 240.0, 0.25);
        const auto report = crosstalk_report(g, s, {v});
        REQUIRE(report.size() == 2);
        for (const auto& e : report) CHECK(e.ratio == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("per-eye selection keeps crosstalk low") {
        const FrameSchedule s = build_schedule(
            ScheduleMode::PerEye, {select_columns(g, v.left), select_columns(g, v.right)}, 240.0,
            0.25);
        const auto report = crosstalk_report(g, s, {v});
        REQUIRE(report.size() == 2);
        CHECK(report[0].side == Side::Left);
        CHECK(report[1].side == Side::Right);
        for (const auto& e : report) {
            CHECK(e.ratio >= 0.0);
            CHECK(e.ratio < 0.05);
        }
    }
}
