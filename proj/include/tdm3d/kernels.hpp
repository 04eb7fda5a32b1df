#pragma once

#include <cstddef>
#include <string>

namespace tdm3d::kernels {

// Grid kernels behind the optics hot loops. The scalar variants are the
// reference; SIMD variants must agree within the tolerances asserted in
// tests/test_kernels.cpp.
struct Ops {
    // out[i] += amp * s(xs[i]) where s is the unit-energy profile of a strip
    // of full width 2*half_width convolved with a Gaussian of stddev sigma,
    // centered at `center`. half_width == 0 degenerates to the Gaussian pdf,
    // sigma == 0 to the box density. Never adds a negative term.
    void (*accumulate_strip)(double* out, const double* xs, std::size_t n, double amp,
                             double center, double half_width, double sigma);

    // dst[i] += scale * w[i] * v[i]
    void (*weighted_accumulate)(double* dst, const double* w, const double* v, double scale,
                                std::size_t n);

    const char* name;
};

const Ops& scalar_ops();

/// nullptr when the CPU (or build) lacks AVX2.
const Ops* avx2_ops();

/// Best available variant; honors the TDM3D_KERNEL environment variable
/// ("scalar" or "avx2") on first use.
const Ops& active();

/// Force a variant by name for the rest of the process. Throws
/// std::invalid_argument for unknown or unavailable names.
void force(const std::string& name);

}  // namespace tdm3d::kernels
