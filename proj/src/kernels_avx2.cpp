// AVX2 variants of the grid kernels. Built with -mavx2 -mfma; selected at
// runtime only when the CPU reports AVX2.

#include "tdm3d/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace tdm3d::kernels {
namespace {

// exp(x) for x in roughly [-700, 0]; enough range for the erf tail factor
// exp(-x^2) with |x| clamped to 6. Max relative error ~2 ulp.
inline __m256d exp_pd(__m256d x) {
    const __m256d log2e = _mm256_set1_pd(1.4426950408889634074);
    const __m256d ln2_hi = _mm256_set1_pd(6.93147180369123816490e-01);
    const __m256d ln2_lo = _mm256_set1_pd(1.90821492927058770002e-10);

    x = _mm256_max_pd(x, _mm256_set1_pd(-700.0));
    x = _mm256_min_pd(x, _mm256_set1_pd(700.0));

    const __m256d nf = _mm256_round_pd(_mm256_mul_pd(x, log2e),
                                       _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(nf, ln2_hi, x);
    r = _mm256_fnmadd_pd(nf, ln2_lo, r);

    // Taylor polynomial for e^r on |r| <= ln(2)/2, degree 13.
    __m256d p = _mm256_set1_pd(1.6059043836821614599e-10);  // 1/13!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.0876756987868098979e-09));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.5052108385441718775e-08));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.7557319223985890653e-07));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.7557319223985892511e-06));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(2.4801587301587301566e-05));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.9841269841269841253e-04));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.3888888888888889419e-03));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(8.3333333333333332177e-03));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(4.1666666666666664354e-02));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.6666666666666665741e-01));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(5.0e-01));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    // scale by 2^n
    const __m128i n32 = _mm256_cvtpd_epi32(nf);
    const __m256i n64 = _mm256_cvtepi32_epi64(n32);
    const __m256i bias = _mm256_add_epi64(n64, _mm256_set1_epi64x(1023));
    const __m256d scale = _mm256_castsi256_pd(_mm256_slli_epi64(bias, 52));
    return _mm256_mul_pd(p, scale);
}

// Abramowitz & Stegun 7.1.26 rational approximation; |error| <= 1.5e-7.
inline __m256d erf_pd(__m256d x) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d sign = _mm256_and_pd(x, sign_mask);
    __m256d a = _mm256_andnot_pd(sign_mask, x);
    a = _mm256_min_pd(a, _mm256_set1_pd(6.0));

    const __m256d t = _mm256_div_pd(
        _mm256_set1_pd(1.0),
        _mm256_fmadd_pd(_mm256_set1_pd(0.3275911), a, _mm256_set1_pd(1.0)));

    __m256d p = _mm256_set1_pd(1.061405429);
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(-1.453152027));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(1.421413741));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(-0.284496736));
    p = _mm256_fmadd_pd(p, t, _mm256_set1_pd(0.254829592));
    p = _mm256_mul_pd(p, t);

    const __m256d e = exp_pd(_mm256_mul_pd(_mm256_sub_pd(_mm256_setzero_pd(), a), a));
    const __m256d y = _mm256_fnmadd_pd(p, e, _mm256_set1_pd(1.0));
    return _mm256_or_pd(y, sign);
}

inline double erf_approx(double x) {
    const double s = x < 0.0 ? -1.0 : 1.0;
    double a = std::abs(x);
    if (a > 6.0) a = 6.0;
    const double t = 1.0 / (1.0 + 0.3275911 * a);
    const double p =
        ((((1.061405429 * t - 1.453152027) * t + 1.421413741) * t - 0.284496736) * t +
         0.254829592) *
        t;
    return s * (1.0 - p * std::exp(-a * a));
}

void accumulate_strip_avx2(double* out, const double* xs, std::size_t n, double amp,
                           double center, double half_width, double sigma) {
    if (n == 0 || amp == 0.0) return;
    if (half_width <= 0.0 || sigma <= 0.0) {
        // degenerate shapes are not hot; reuse the reference
        scalar_ops().accumulate_strip(out, xs, n, amp, center, half_width, sigma);
        return;
    }

    const double k = 1.0 / (sigma * 1.4142135623730950488);
    const double norm = amp / (4.0 * half_width);

    const __m256d vc = _mm256_set1_pd(center);
    const __m256d vhw = _mm256_set1_pd(half_width);
    const __m256d vk = _mm256_set1_pd(k);
    const __m256d vnorm = _mm256_set1_pd(norm);
    const __m256d zero = _mm256_setzero_pd();

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vc);
        const __m256d hi = erf_pd(_mm256_mul_pd(_mm256_add_pd(d, vhw), vk));
        const __m256d lo = erf_pd(_mm256_mul_pd(_mm256_sub_pd(d, vhw), vk));
        __m256d term = _mm256_mul_pd(vnorm, _mm256_sub_pd(hi, lo));
        term = _mm256_max_pd(term, zero);
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(out + i), term));
    }
    for (; i < n; ++i) {
        const double d = xs[i] - center;
        const double term = norm * (erf_approx((d + half_width) * k) - erf_approx((d - half_width) * k));
        if (term > 0.0) out[i] += term;
    }
}

void weighted_accumulate_avx2(double* dst, const double* w, const double* v, double scale,
                              std::size_t n) {
    const __m256d vs = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(v + i));
        _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(vs, prod, _mm256_loadu_pd(dst + i)));
    }
    for (; i < n; ++i) dst[i] += scale * w[i] * v[i];
}

}  // namespace

const Ops* avx2_ops() {
    if (!__builtin_cpu_supports("avx2") || !__builtin_cpu_supports("fma")) return nullptr;
    static const Ops ops{accumulate_strip_avx2, weighted_accumulate_avx2, "avx2"};
    return &ops;
}

}  // namespace tdm3d::kernels

#else

namespace tdm3d::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace tdm3d::kernels

#endif
