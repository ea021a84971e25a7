#include <cmath>

#include "rogue/kernel.hpp"

namespace rogue::detail {
namespace {
#include "kernel_body.hpp"
} // namespace

void dress_batch_scalar(KernelBatch& batch, std::size_t begin, std::size_t end)
{
    for (std::size_t p = begin; p < end; ++p) {
        dress_lanes<double>(batch, p);
    }
}

} // namespace rogue::detail
