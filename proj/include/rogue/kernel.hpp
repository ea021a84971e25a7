#pragma once

// Batched dressing kernel: the chain and potential updates for many points at
// once, in structure-of-arrays layout. A scalar reference and an AVX2 variant
// share one arithmetic body and produce bit-identical results.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace rogue {

enum class KernelIsa { Scalar, Avx2 };

std::string_view isa_name(KernelIsa isa);
bool isa_available(KernelIsa isa);
/// Widest ISA compiled in and supported by the running CPU.
KernelIsa best_isa();

struct KernelBatch {
    int dim = 2;
    int order = 1;
    std::size_t count = 0;
    double rho = 1.0;
    int sign = -1;

    // Inputs. psi_*[index(side, n, i, p)], side 0 = (x, t), 1 = (x, -t);
    // both sequences already scaled by normalize_expansion.
    std::vector<double> psi_re, psi_im;
    std::vector<double> seed_re, seed_im; // first component of psi^[0] at (x, t)

    // Outputs.
    std::vector<double> out_re, out_im;   // psi^[N] component j at [j * count + p]
    std::vector<double> rel_den;          // |den| / (|here| |mirror|) at [(level - 1) * count + p]
    std::vector<double> den_re, den_im;   // product over levels of den / (|here| |mirror|)

    void resize(int dim, int order, std::size_t count);
    std::size_t index(int side, int n, int i, std::size_t p) const
    {
        return ((static_cast<std::size_t>(side) * static_cast<std::size_t>(order + 1) + static_cast<std::size_t>(n)) *
                    static_cast<std::size_t>(dim) +
                static_cast<std::size_t>(i)) *
                   count +
               p;
    }
};

/// Runs the kernel over all points of the batch.
void dress_batch(KernelBatch& batch, KernelIsa isa);

/// First level whose relative denominator is below the tolerance, or 0.
int pole_level(const KernelBatch& batch, std::size_t p, double pole_tolerance);

namespace detail {
void dress_batch_scalar(KernelBatch& batch, std::size_t begin, std::size_t end);
void dress_batch_avx2(KernelBatch& batch, std::size_t begin, std::size_t end);
bool avx2_compiled();
} // namespace detail

} // namespace rogue
