#include "rogue/kernel.hpp"

#include "rogue/errors.hpp"

namespace rogue {

std::string_view isa_name(KernelIsa isa)
{
    return isa == KernelIsa::Avx2 ? "avx2" : "scalar";
}

bool isa_available(KernelIsa isa)
{
    if (isa == KernelIsa::Scalar) {
        return true;
    }
#if defined(__x86_64__) || defined(__i386__)
    return detail::avx2_compiled() && __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

KernelIsa best_isa()
{
    return isa_available(KernelIsa::Avx2) ? KernelIsa::Avx2 : KernelIsa::Scalar;
}

void KernelBatch::resize(int d, int n, std::size_t c)
{
    if (d != 2 && d != 3) {
        throw UsageError("kernel dimension must be 2 or 3");
    }
    if (n < 1 || n > 10) {
        throw UsageError("kernel order must be in [1, 10]");
    }
    dim = d;
    order = n;
    count = c;
    const std::size_t cells = 2 * static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(d) * c;
    psi_re.assign(cells, 0.0);
    psi_im.assign(cells, 0.0);
    seed_re.assign(c, 0.0);
    seed_im.assign(c, 0.0);
    out_re.assign(static_cast<std::size_t>(d - 1) * c, 0.0);
    out_im.assign(static_cast<std::size_t>(d - 1) * c, 0.0);
    rel_den.assign(static_cast<std::size_t>(n) * c, 0.0);
    den_re.assign(c, 0.0);
    den_im.assign(c, 0.0);
}

void dress_batch(KernelBatch& batch, KernelIsa isa)
{
    if (isa == KernelIsa::Avx2 && !isa_available(KernelIsa::Avx2)) {
        throw UsageError("AVX2 kernel requested but not available");
    }
    if (isa == KernelIsa::Avx2) {
        detail::dress_batch_avx2(batch, 0, batch.count);
    } else {
        detail::dress_batch_scalar(batch, 0, batch.count);
    }
}

int pole_level(const KernelBatch& batch, std::size_t p, double pole_tolerance)
{
    for (int m = 1; m <= batch.order; ++m) {
        // NaN compares false, so it is flagged as well.
        if (!(batch.rel_den[static_cast<std::size_t>(m - 1) * batch.count + p] >= pole_tolerance)) {
            return m;
        }
    }
    return 0;
}

} // namespace rogue
