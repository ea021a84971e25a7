#include <cmath>

#include "rogue/kernel.hpp"

#if defined(ROGUE_HAVE_AVX2)
#include <immintrin.h>

namespace rogue::detail {
namespace {

struct V4 {
    __m256d v = _mm256_setzero_pd();
};

inline V4 operator+(V4 a, V4 b) { return {_mm256_add_pd(a.v, b.v)}; }
inline V4 operator-(V4 a, V4 b) { return {_mm256_sub_pd(a.v, b.v)}; }
inline V4 operator*(V4 a, V4 b) { return {_mm256_mul_pd(a.v, b.v)}; }
inline V4 operator/(V4 a, V4 b) { return {_mm256_div_pd(a.v, b.v)}; }
inline V4 lane_sqrt(V4 a) { return {_mm256_sqrt_pd(a.v)}; }
inline void store(double* p, V4 a) { _mm256_storeu_pd(p, a.v); }

#include "kernel_body.hpp"

template <>
inline V4 broadcast<V4>(double v)
{
    return {_mm256_set1_pd(v)};
}

template <>
inline V4 load<V4>(const double* p)
{
    return {_mm256_loadu_pd(p)};
}

} // namespace

void dress_batch_avx2(KernelBatch& batch, std::size_t begin, std::size_t end)
{
    std::size_t p = begin;
    for (; p + 4 <= end; p += 4) {
        dress_lanes<V4>(batch, p);
    }
    for (; p < end; ++p) {
        dress_lanes<double>(batch, p);
    }
}

bool avx2_compiled()
{
    return true;
}

} // namespace rogue::detail

#else

namespace rogue::detail {

void dress_batch_avx2(KernelBatch& batch, std::size_t begin, std::size_t end)
{
    dress_batch_scalar(batch, begin, end);
}

bool avx2_compiled()
{
    return false;
}

} // namespace rogue::detail

#endif
