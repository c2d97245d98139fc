#include "critfield/kernel.hpp"

namespace critfield::kernel {
namespace {

bool cpu_has_avx2() {
#if defined(CRITFIELD_HAVE_AVX2) && defined(__GNUC__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

MinDistSqFn pick_single() {
#if defined(CRITFIELD_HAVE_AVX2)
    if (cpu_has_avx2()) return avx2::min_dist_sq;
#endif
    return scalar::min_dist_sq;
}

MinDistSqBatchFn pick_batch() {
#if defined(CRITFIELD_HAVE_AVX2)
    if (cpu_has_avx2()) return avx2::min_dist_sq_batch;
#endif
    return scalar::min_dist_sq_batch;
}

TwoMinDistSqFn pick_two_min() {
#if defined(CRITFIELD_HAVE_AVX2)
    if (cpu_has_avx2()) return avx2::two_min_dist_sq;
#endif
    return scalar::two_min_dist_sq;
}

}  // namespace

const MinDistSqFn min_dist_sq = pick_single();
const MinDistSqBatchFn min_dist_sq_batch = pick_batch();
const TwoMinDistSqFn two_min_dist_sq = pick_two_min();

const char* active_backend() {
#if defined(CRITFIELD_HAVE_AVX2)
    if (cpu_has_avx2()) return "avx2";
#endif
    return "scalar";
}

}  // namespace critfield::kernel
