#pragma once

// Grid evaluation of psi^[N] with the batched kernel.

#include <cstdint>
#include <optional>
#include <vector>

#include "rogue/cmat.hpp"
#include "rogue/ddtchain.hpp"
#include "rogue/expansion.hpp"
#include "rogue/kernel.hpp"

namespace rogue {

struct FieldGrid {
    double x0 = -10.0;
    double x1 = 10.0;
    int nx = 2;
    double t0 = -10.0;
    double t1 = 10.0;
    int nt = 2;

    /// Throws UsageError unless x1 > x0, t1 > t0, nx >= 2, nt >= 2.
    void validate() const;
    double x_at(int i) const { return x0 + (x1 - x0) * i / (nx - 1); }
    double t_at(int j) const { return t0 + (t1 - t0) * j / (nt - 1); }
    std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(nt); }
    friend bool operator==(const FieldGrid&, const FieldGrid&) = default;
};

enum class FieldEngine { Kernel, Reference };

struct FieldOptions {
    int threads = 0; // 0: ROGUE_THREADS or hardware concurrency
    KernelIsa isa = best_isa();
    FieldEngine engine = FieldEngine::Kernel;
    int sign = kUpdateSign;
    double pole_tolerance = kDefaultPoleTolerance;
};

/// Values are stored t-major: index = j * nx + i for t_at(j), x_at(i).
struct Field {
    FieldGrid grid;
    int components = 1;
    std::vector<cplx> values;      // [c * size + k]
    std::vector<std::uint8_t> pole; // pole level, 0 if regular
    std::vector<cplx> den_product;  // product of relative projector denominators

    cplx at(int c, std::size_t k) const { return values[static_cast<std::size_t>(c) * grid.size() + k]; }
    /// Euclidean norm over components; +inf at poles.
    double magnitude(std::size_t k) const;
};

/// Thread count from ROGUE_THREADS, falling back to hardware concurrency.
int default_threads();

/// Throws UsageError when the grid would overflow the vector third component.
void check_field_range(const ResolvedWave& wave, const FieldGrid& grid);

Field evaluate_field(const ResolvedWave& wave, const FieldGrid& grid, const FieldOptions& options = {});

} // namespace rogue
