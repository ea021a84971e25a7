#include "rogue/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <string>
#include <thread>

namespace rogue {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void evaluate_rows_kernel(const ResolvedWave& wave, const FieldOptions& opt, Field& f, int row_begin, int row_end)
{
    const FieldGrid& g = f.grid;
    const int dim = wave.setup.dim();
    KernelBatch batch;
    batch.rho = wave.setup.rho();
    batch.sign = opt.sign;
    for (int j = row_begin; j < row_end; ++j) {
        const double t = g.t_at(j);
        batch.resize(dim, wave.order, static_cast<std::size_t>(g.nx));
        const CVec seed = seed_potential(wave.setup, t);
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t p = static_cast<std::size_t>(i);
            const double x = g.x_at(i);
            for (int side = 0; side < 2; ++side) {
                std::vector<CVec> psi = psi_expansion(wave, x, side == 0 ? t : -t);
                normalize_expansion(psi);
                for (int n = 0; n <= wave.order; ++n) {
                    for (int c = 0; c < dim; ++c) {
                        const cplx v = psi[static_cast<std::size_t>(n)][c];
                        batch.psi_re[batch.index(side, n, c, p)] = v.real();
                        batch.psi_im[batch.index(side, n, c, p)] = v.imag();
                    }
                }
            }
            batch.seed_re[p] = seed[0].real();
            batch.seed_im[p] = seed[0].imag();
        }
        dress_batch(batch, opt.isa);
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t p = static_cast<std::size_t>(i);
            const std::size_t k = static_cast<std::size_t>(j) * static_cast<std::size_t>(g.nx) + p;
            const int level = pole_level(batch, p, opt.pole_tolerance);
            f.pole[k] = static_cast<std::uint8_t>(level);
            f.den_product[k] = cplx(batch.den_re[p], batch.den_im[p]);
            for (int c = 0; c < dim - 1; ++c) {
                const std::size_t o = static_cast<std::size_t>(c) * g.size();
                const std::size_t b = static_cast<std::size_t>(c) * batch.count + p;
                f.values[o + k] = level > 0 ? cplx(kInf, kInf) : cplx(batch.out_re[b], batch.out_im[b]);
            }
        }
    }
}

void evaluate_rows_reference(const ResolvedWave& wave, const FieldOptions& opt, Field& f, int row_begin, int row_end)
{
    const FieldGrid& g = f.grid;
    const DressOptions dopt{opt.sign, opt.pole_tolerance, ExpansionPath::Tables, false};
    for (int j = row_begin; j < row_end; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * static_cast<std::size_t>(g.nx) + static_cast<std::size_t>(i);
            const RoguePoint rp = rogue_point(wave, g.x_at(i), g.t_at(j), dopt);
            f.pole[k] = static_cast<std::uint8_t>(rp.pole.value_or(0));
            cplx prod = 1.0;
            for (std::size_t l = 0; l < rp.denominators.size(); ++l) {
                prod *= rp.denominators[l] / std::abs(rp.denominators[l]) * rp.relative_denominators[l];
            }
            f.den_product[k] = prod;
            const CVec& psi = rp.psi.back();
            for (int c = 0; c < f.components; ++c) {
                f.values[static_cast<std::size_t>(c) * g.size() + k] = psi[c];
            }
        }
    }
}

} // namespace

void FieldGrid::validate() const
{
    if (!(x1 > x0) || !(t1 > t0) || !std::isfinite(x0) || !std::isfinite(x1) || !std::isfinite(t0) ||
        !std::isfinite(t1)) {
        throw UsageError("grid needs finite bounds with x1 > x0 and t1 > t0");
    }
    if (nx < 2 || nt < 2) {
        throw UsageError("grid needs nx >= 2 and nt >= 2");
    }
}

double Field::magnitude(std::size_t k) const
{
    if (pole[k] != 0) {
        return kInf;
    }
    double s = 0.0;
    for (int c = 0; c < components; ++c) {
        s += std::norm(at(c, k));
    }
    return std::sqrt(s);
}

int default_threads()
{
    if (const char* env = std::getenv("ROGUE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v <= 1024) {
            return static_cast<int>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void check_field_range(const ResolvedWave& wave, const FieldGrid& grid)
{
    grid.validate();
    if (wave.setup.dim() == 3) {
        const double reach = wave.setup.rho() * std::max(std::abs(grid.x0), std::abs(grid.x1));
        if (reach > 700.0) {
            throw UsageError("vector grid exceeds |rho x| <= 700 (got " + std::to_string(reach) + ")");
        }
    }
}

Field evaluate_field(const ResolvedWave& wave, const FieldGrid& grid, const FieldOptions& options)
{
    check_field_range(wave, grid);
    Field f;
    f.grid = grid;
    f.components = wave.setup.components();
    f.values.assign(static_cast<std::size_t>(f.components) * grid.size(), cplx(0.0));
    f.pole.assign(grid.size(), 0);
    f.den_product.assign(grid.size(), cplx(0.0));

    const int threads = std::clamp(options.threads > 0 ? options.threads : default_threads(), 1, grid.nt);
    auto work = [&](int begin, int end) {
        if (options.engine == FieldEngine::Kernel) {
            evaluate_rows_kernel(wave, options, f, begin, end);
        } else {
            evaluate_rows_reference(wave, options, f, begin, end);
        }
    };
    if (threads == 1) {
        work(0, grid.nt);
        return f;
    }
    // Fixed contiguous row blocks; every point is computed independently, so
    // the partition never affects the values.
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int k = 0; k < threads; ++k) {
        const int begin = grid.nt * k / threads;
        const int end = grid.nt * (k + 1) / threads;
        pool.emplace_back([&, k, begin, end] {
            try {
                work(begin, end);
            } catch (...) {
                errors[static_cast<std::size_t>(k)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return f;
}

} // namespace rogue
