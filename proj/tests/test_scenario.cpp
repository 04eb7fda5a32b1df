#include <doctest.h>

#include "tdm3d/scenario.hpp"

using namespace tdm3d;

TEST_CASE("default scenario parses with the documented defaults") {
    const Scenario s = parse_scenario(default_scenario_text());

    CHECK(s.geometry.screen_width == doctest::Approx(0.59772650));
    CHECK(s.geometry.screen_height == doctest::Approx(0.59772650 * 9.0 / 16.0));
    CHECK(s.geometry.panel_cols == 2560);
    CHECK(s.geometry.panel_rows == 1440);
    CHECK(s.geometry.subpixels_per_pixel == 3);
    CHECK(s.geometry.led_column_count == 96);
    CHECK(s.geometry.led_pitch == doctest::Approx(0.59772650 / 96.0));
    CHECK(s.geometry.led_strip_width == doctest::Approx(0.15 * s.geometry.led_pitch));
    CHECK(s.geometry.lens_pitch == doctest::Approx(s.geometry.led_pitch));
    CHECK(s.geometry.lens_count == 96);
    CHECK(s.geometry.lens_aperture == doctest::Approx(s.geometry.lens_pitch));
    CHECK(s.geometry.led_lens_gap == doctest::Approx(0.05));
    CHECK(s.geometry.design_distance == doctest::Approx(1.0));
    CHECK(s.geometry.focal_length == doctest::Approx(1.0 / (1.0 / 0.05 + 1.0)));
    CHECK(is_design_matched(s.geometry));
    CHECK(s.geometry.diffuser_sigma == doctest::Approx(0.03 * s.geometry.led_pitch));
    CHECK(s.geometry.panel_field_rate == doctest::Approx(240.0));
    CHECK(s.geometry.lens_acceptance_halfwidth == doctest::Approx(1.5 * s.geometry.lens_pitch));
    CHECK(s.geometry.selection_tolerance == doctest::Approx(0.06 * s.geometry.led_pitch));

    CHECK(s.mode == ScheduleMode::PerEye);
    CHECK(s.refresh_fraction == doctest::Approx(0.25));
    CHECK(s.margin == doctest::Approx(s.geometry.led_pitch));
    CHECK(s.region_x_clean);
    CHECK(s.pattern.columns_per_lens == 2);
    CHECK(s.pattern.slant_columns_per_row == 0.0);
    CHECK(s.pattern.field_shift == 1);
    CHECK(s.sweep.z == doctest::Approx(1.0));
    CHECK(s.sweep.x_min == doctest::Approx(-0.2));
    CHECK(s.sweep.x_max == doctest::Approx(0.2));
    CHECK(s.trace_cycles == 2);
    CHECK(s.image_height == 120);
    CHECK(s.output_dir == "out");

    REQUIRE(s.viewers.size() == 1);
    CHECK(s.viewers[0].x == 0.0);
    CHECK(s.viewers[0].z == doctest::Approx(1.0));
    CHECK(s.viewers[0].ipd == doctest::Approx(0.063));

    const auto viewers = s.make_viewers();
    REQUIRE(viewers.size() == 1);
    CHECK(viewers[0].left.x == doctest::Approx(-0.0315));
    CHECK(viewers[0].right.x == doctest::Approx(0.0315));
    CHECK(viewers[0].left.side == Side::Left);
}

TEST_CASE("scenario parse errors") {
    SUBCASE("empty text lacks required keys") {
        CHECK_THROWS_AS(parse_scenario(""), ValidationError);
    }
    SUBCASE("missing viewer") {
        CHECK_THROWS_AS(parse_scenario("geometry.screen_width = 0.6\n"), ValidationError);
    }
    SUBCASE("unknown key") {
        CHECK_THROWS_AS(parse_scenario(default_scenario_text() + "geometry.bogus = 1\n"),
                        ParseError);
    }
    SUBCASE("duplicate key") {
        CHECK_THROWS_AS(parse_scenario(default_scenario_text() + "viewer.0.x = 0.1\n"),
                        ParseError);
    }
    SUBCASE("malformed line") {
        CHECK_THROWS_AS(parse_scenario("geometry.screen_width 0.6\n"), ParseError);
        try {
            parse_scenario("# comment\n\nnonsense\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 3);
        }
    }
    SUBCASE("non-numeric value") {
        CHECK_THROWS_AS(parse_scenario("geometry.screen_width = wide\nviewer.0.x = 0\n"),
                        ValidationError);
    }
    SUBCASE("bad led_column_count") {
        CHECK_THROWS_AS(
            parse_scenario("geometry.screen_width = 0.6\ngeometry.led_column_count = 0\n"
                           "viewer.0.x = 0\n"),
            ValidationError);
    }
    SUBCASE("per_eye mode rejects multiple viewers") {
        CHECK_THROWS_AS(parse_scenario("geometry.screen_width = 0.6\nmode = per_eye\n"
                                       "viewer.0.x = -0.1\nviewer.1.x = 0.1\n"),
                        ValidationError);
    }
    SUBCASE("bad mode string") {
        CHECK_THROWS_AS(parse_scenario("geometry.screen_width = 0.6\nmode = interlaced\n"
                                       "viewer.0.x = 0\n"),
                        ValidationError);
    }
}

TEST_CASE("scenario overrides and conveniences") {
    SUBCASE("comments, spacing, and rationals") {
        const Scenario s = parse_scenario(
            "geometry.screen_width=0.6   # inline comment\n"
            "   pattern.slant_columns_per_row = 1/3\n"
            "mode = per_viewer\n"
            "viewer.0.x = -0.15\nviewer.1.x = 0.15\nviewer.1.z = 1.5\n");
        CHECK(s.pattern.slant_columns_per_row == doctest::Approx(1.0 / 3.0));
        CHECK(s.mode == ScheduleMode::PerViewer);
        REQUIRE(s.viewers.size() == 2);
        CHECK(s.viewers[1].z == doctest::Approx(1.5));
        CHECK(s.viewers[0].z == doctest::Approx(1.0));  // defaults to design distance
    }
    SUBCASE("explicit geometry wins over derived defaults") {
        const Scenario s = parse_scenario(
            "geometry.screen_width = 0.6\ngeometry.led_column_count = 48\n"
            "geometry.led_strip_width = 0.001\ngeometry.focal_length = 0.04\n"
            "viewer.0.x = 0\n");
        CHECK(s.geometry.led_pitch == doctest::Approx(0.0125));
        CHECK(s.geometry.led_strip_width == doctest::Approx(0.001));
        CHECK(s.geometry.focal_length == doctest::Approx(0.04));
        CHECK_FALSE(is_design_matched(s.geometry));
    }
    SUBCASE("region_x_clean flag") {
        const Scenario s = parse_scenario(default_scenario_text() + "region_x_clean = false\n");
        CHECK_FALSE(s.region_x_clean);
    }
}
