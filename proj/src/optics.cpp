#include "tdm3d/optics.hpp"

#include <algorithm>
#include <cmath>

#include "tdm3d/kernels.hpp"

namespace tdm3d {
namespace {

std::vector<double> grid_centers(int count, double pitch) {
    std::vector<double> out(static_cast<std::size_t>(count));
    const double offset = (count - 1) / 2.0;
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = (i - offset) * pitch;
    return out;
}

// Fraction of a Lambertian line source's emission captured by the aperture of
// the lens at lens_x, seen from a source point at lateral position src.
double lambertian_acceptance(const DisplayGeometry& g, double src, double lens_x) {
    const double gap = g.led_lens_gap;
    const double x1 = lens_x - g.lens_aperture / 2.0 - src;
    const double x2 = lens_x + g.lens_aperture / 2.0 - src;
    const double s1 = x1 / std::hypot(x1, gap);
    const double s2 = x2 / std::hypot(x2, gap);
    return 0.5 * (s2 - s1);
}

int nearest_index(double x, double pitch, int count) {
    const double offset = (count - 1) / 2.0;
    const double raw = x / pitch + offset;
    // ties go to the lower index
    int i = static_cast<int>(std::ceil(raw - 0.5));
    return std::clamp(i, 0, count - 1);
}

void check_grid(const std::vector<double>& xs) {
    if (xs.empty()) throw EmptyGrid();
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (!(xs[i] > xs[i - 1]))
            throw ValidationError("xs", "grid must be strictly increasing");
    }
}

}  // namespace

std::vector<double> lens_centers(const DisplayGeometry& g) {
    return grid_centers(g.lens_count, g.lens_pitch);
}

std::vector<double> column_centers(const DisplayGeometry& g) {
    return grid_centers(g.led_column_count, g.led_pitch);
}

double image_point(const DisplayGeometry& g, double led_x, double lens_x, double z) {
    if (!(z > 0.0)) throw NonPositiveDistance("z");
    if (!(g.led_lens_gap > 0.0)) throw NonPositiveDistance("led_lens_gap");
    return lens_x - (led_x - lens_x) * (z / g.led_lens_gap);
}

std::vector<ConjugatePupil> conjugate_pupils(const DisplayGeometry& g, double led_x, double z,
                                             int max_neighbors) {
    if (!(z > 0.0)) throw NonPositiveDistance("z");
    if (!(g.led_lens_gap > 0.0)) throw NonPositiveDistance("led_lens_gap");
    const std::vector<double> lenses = lens_centers(g);
    const int nearest = nearest_index(led_x, g.lens_pitch, g.lens_count);
    const int lo = std::max(0, nearest - max_neighbors);
    const int hi = std::min(g.lens_count - 1, nearest + max_neighbors);
    std::vector<ConjugatePupil> out;
    out.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (int j = lo; j <= hi; ++j) {
        const double lens_x = lenses[static_cast<std::size_t>(j)];
        const double acc = lambertian_acceptance(g, led_x, lens_x);
        if (!(acc > 0.0)) continue;
        out.push_back({j, image_point(g, led_x, lens_x, z), acc});
    }
    return out;
}

IntensityProfile illumination_profile(const DisplayGeometry& g, const LedMask& mask, double z,
                                      const std::vector<double>& xs) {
    if (!(z > 0.0)) throw NonPositiveDistance("z");
    check_grid(xs);
    if (mask.size() != static_cast<std::size_t>(g.led_column_count))
        throw MaskLengthMismatch("illumination_profile");

    IntensityProfile profile;
    profile.z = z;
    profile.xs = xs;
    profile.values.assign(xs.size(), 0.0);

    const std::vector<double> lenses = lens_centers(g);
    const std::vector<double> cols = column_centers(g);
    const double magnification = z / g.led_lens_gap;
    // defocus disk width from the lens equation; zero at the design plane of
    // a design-matched stack, folded into the Gaussian as an equal-variance blur
    const double inv_image = 1.0 / g.focal_length - 1.0 / g.led_lens_gap;
    const double defocus = g.lens_aperture * std::abs(1.0 - z * inv_image);
    const double sigma_img = std::hypot(g.diffuser_sigma * magnification,
                                        defocus / 3.4641016151377545871);  // sqrt(12)
    const double half_width_img = 0.5 * g.led_strip_width * magnification;

    const auto& ops = kernels::active();
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask.test(i)) continue;
        const double src = cols[i];
        for (int j = 0; j < g.lens_count; ++j) {
            const double lens_x = lenses[static_cast<std::size_t>(j)];
            if (std::abs(src - lens_x) > g.lens_acceptance_halfwidth) continue;
            const double acc = lambertian_acceptance(g, src, lens_x);
            if (!(acc > 0.0)) continue;
            const double center = lens_x - (src - lens_x) * magnification;
            ops.accumulate_strip(profile.values.data(), xs.data(), xs.size(), acc, center,
                                 half_width_img, sigma_img);
        }
    }
    return profile;
}

LedMask select_columns(const DisplayGeometry& g, const Eye& eye) {
    if (!(eye.z > 0.0)) throw NonPositiveDistance("eye.z");
    LedMask mask(static_cast<std::size_t>(g.led_column_count));
    const std::vector<double> lenses = lens_centers(g);
    const std::vector<double> cols = column_centers(g);
    const double ratio = g.led_lens_gap / eye.z;
    for (int j = 0; j < g.lens_count; ++j) {
        const double lens_x = lenses[static_cast<std::size_t>(j)];
        const double wanted = lens_x - (eye.x - lens_x) * ratio;
        if (std::abs(wanted - lens_x) > g.lens_acceptance_halfwidth) continue;
        const int i = nearest_index(wanted, g.led_pitch, g.led_column_count);
        if (std::abs(wanted - cols[static_cast<std::size_t>(i)]) <= g.selection_tolerance)
            mask.set(static_cast<std::size_t>(i));
    }
    return mask;
}

LedMask forbidden_columns(const DisplayGeometry& g, const std::vector<Eye>& other_eyes,
                          double margin) {
    if (margin < 0.0) throw ValidationError("margin", "must be >= 0");
    LedMask result(static_cast<std::size_t>(g.led_column_count));
    for (const Eye& eye : other_eyes) result = result | select_columns(g, eye);
    const auto dilation = static_cast<std::size_t>(std::ceil(margin / g.led_pitch));
    return result.dilated(dilation);
}

double crosstalk_ratio(const IntensityProfile& intended, const IntensityProfile& unintended,
                       double eye_x, double window) {
    if (intended.xs != unintended.xs || intended.z != unintended.z)
        throw ValidationError("profiles", "must share plane and grid");
    if (!(window > 0.0)) throw ValidationError("window", "must be > 0");

    auto integral = [](const IntensityProfile& p, double lo, double hi) {
        double sum = 0.0;
        for (std::size_t i = 1; i < p.xs.size(); ++i) {
            if (p.xs[i - 1] < lo || p.xs[i] > hi) continue;
            sum += 0.5 * (p.values[i - 1] + p.values[i]) * (p.xs[i] - p.xs[i - 1]);
        }
        return sum;
    };

    const double lo = eye_x - window / 2.0;
    const double hi = eye_x + window / 2.0;
    const double denom = integral(intended, lo, hi);
    const double total = integral(intended, intended.xs.front(), intended.xs.back());
    if (denom <= 1e-15 * total || !(denom > 0.0)) throw ZeroIntendedSignal();
    return integral(unintended, lo, hi) / denom;
}

}  // namespace tdm3d
