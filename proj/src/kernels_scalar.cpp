#include <cmath>
#include <cstddef>

#include "tdm3d/kernels.hpp"

namespace tdm3d::kernels {
namespace {

void accumulate_strip_scalar(double* out, const double* xs, std::size_t n, double amp,
                             double center, double half_width, double sigma) {
    if (n == 0 || amp == 0.0) return;
    if (half_width <= 0.0 && sigma <= 0.0) return;  // point source, zero measure on any grid

    if (sigma <= 0.0) {
        const double density = amp / (2.0 * half_width);
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(xs[i] - center) <= half_width) out[i] += density;
        }
        return;
    }
    if (half_width <= 0.0) {
        const double inv_s = 1.0 / sigma;
        const double norm = amp * inv_s * 0.3989422804014326779;  // 1/sqrt(2*pi)
        for (std::size_t i = 0; i < n; ++i) {
            const double u = (xs[i] - center) * inv_s;
            out[i] += norm * std::exp(-0.5 * u * u);
        }
        return;
    }

    const double k = 1.0 / (sigma * 1.4142135623730950488);
    const double norm = amp / (4.0 * half_width);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = xs[i] - center;
        const double term = norm * (std::erf((d + half_width) * k) - std::erf((d - half_width) * k));
        if (term > 0.0) out[i] += term;
    }
}

void weighted_accumulate_scalar(double* dst, const double* w, const double* v, double scale,
                                std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += scale * w[i] * v[i];
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{accumulate_strip_scalar, weighted_accumulate_scalar, "scalar"};
    return ops;
}

}  // namespace tdm3d::kernels
