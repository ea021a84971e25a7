#include "rogue/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace rogue {
namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double radical_inverse(std::size_t k, unsigned base)
{
    double inv = 1.0 / base;
    double f = inv;
    double r = 0.0;
    while (k > 0) {
        r += f * static_cast<double>(k % base);
        k /= base;
        f *= inv;
    }
    return r;
}

Point shifted(Point p, Axis axis, double d)
{
    return axis == Axis::X ? Point{p.x + d, p.t} : Point{p.x, p.t + d};
}

double median(std::vector<double> v)
{
    if (v.empty()) {
        return kNaN;
    }
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    double m = v[mid];
    if (v.size() % 2 == 0) {
        m = 0.5 * (m + *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid)));
    }
    return m;
}

// Fills the finest-step residuals, the order estimate and the verdict.
// floors[p][k] is the estimated roundoff floor of sweep[p][k].
void finish_report(ResidualReport& rep, const std::vector<std::vector<double>>& floors)
{
    rep.residuals.clear();
    std::vector<double> orders;
    for (std::size_t p = 0; p < rep.sweep.size(); ++p) {
        const auto& r = rep.sweep[p];
        rep.residuals.push_back(r.back());
        // Finest pair whose finer member is still clearly above the floor.
        for (std::size_t k = r.size() - 1; k >= 1; --k) {
            if (r[k] > kFloorMargin * floors[p][k] && r[k - 1] > 0.0) {
                orders.push_back(std::log(r[k - 1] / r[k]) / std::log(rep.h_sequence[k - 1] / rep.h_sequence[k]));
                break;
            }
        }
    }
    rep.order_samples = orders.size();
    rep.estimated_order = median(orders);
    const bool within = !rep.residuals.empty() && rep.max_residual() <= rep.tolerance;
    rep.passed = within || (!rep.residuals.empty() && rep.estimated_order >= 3.5);
}

double vnorm(const CVec& v)
{
    return norm2(v);
}

CVec row_times(const CVec& row, const CMat& m)
{
    return transpose(m) * row;
}

} // namespace

Point halton_point(std::size_t k, const Window& w)
{
    return {w.x0 + (w.x1 - w.x0) * radical_inverse(k, 2), w.t0 + (w.t1 - w.t0) * radical_inverse(k, 3)};
}

std::vector<Point> halton_points(std::size_t count, const Window& w, std::size_t skip)
{
    std::vector<Point> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        out.push_back(halton_point(skip + k + 1, w));
    }
    return out;
}

CVec fd_diff(const std::function<CVec(double, double)>& f, Point at, Axis axis, int degree, double h)
{
    if (!(h > 0.0)) {
        throw UsageError("finite-difference step must be positive");
    }
    if (degree != 1 && degree != 2) {
        throw UsageError("finite-difference degree must be 1 or 2");
    }
    auto eval = [&](double d) {
        const Point p = shifted(at, axis, d);
        try {
            return f(p.x, p.t);
        } catch (const SingularPoint& e) {
            throw StencilHitPole(e.level());
        }
    };
    const CVec fp1 = eval(h);
    const CVec fm1 = eval(-h);
    const CVec fp2 = eval(2.0 * h);
    const CVec fm2 = eval(-2.0 * h);
    if (degree == 1) {
        return (1.0 / (12.0 * h)) * ((fm2 - fp2) + 8.0 * (fp1 - fm1));
    }
    const CVec f0 = eval(0.0);
    return (1.0 / (12.0 * h * h)) * ((16.0 * (fp1 + fm1) - (fp2 + fm2)) - 30.0 * f0);
}

cplx fd_diff(const std::function<cplx(double, double)>& f, Point at, Axis axis, int degree, double h)
{
    const CVec r = fd_diff([&](double x, double t) { return CVec(1, f(x, t)); }, at, axis, degree, h);
    return r[0];
}

PairedEval wave_evaluator(const ResolvedWave& wave, int level, const DressOptions& options)
{
    if (level < 0 || level > wave.order) {
        throw UsageError("evaluator level outside [0, order]");
    }
    return [wave, level, options](double x, double t) {
        ChainResult res = dress(wave, x, t, options);
        if (res.pole && *res.pole <= level) {
            throw SingularPoint(*res.pole);
        }
        return res.solutions[static_cast<std::size_t>(level)];
    };
}

CVec pde_residual(const PairedEval& f, Point at, double h, Equation eq)
{
    Paired<CVec> c;
    try {
        c = f(at.x, at.t);
    } catch (const SingularPoint& e) {
        throw StencilHitPole(e.level());
    }
    auto here = [&](double x, double t) { return f(x, t).here; };
    const CVec psi_t = fd_diff(here, at, Axis::T, 1, h);
    const CVec psi_xx = fd_diff(here, at, Axis::X, 2, h);

    cplx coupling;
    if (eq == Equation::LocalScalar) {
        coupling = vnorm(c.here) * vnorm(c.here);
    } else {
        coupling = dot(c.mirror, c.here);
    }
    return (kI * psi_t + psi_xx) + (2.0 * coupling) * c.here;
}

double normalized_residual(const CVec& r, const CVec& psi)
{
    const double m = vnorm(psi);
    return vnorm(r) / (1.0 + m + m * m * m);
}

double ResidualReport::max_residual() const
{
    double m = 0.0;
    for (double r : residuals) {
        m = std::max(m, r);
    }
    return m;
}

NoiseEstimate sampled_noise(const PairedEval& f)
{
    return [f](double x, double t) {
        // Sixth difference coefficients; their squares sum to 924.
        static constexpr double kC[7] = {1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0};
        const CVec centre = f(x, t).here;
        const double m = vnorm(centre);
        double worst = 0.0;
        for (Axis axis : {Axis::X, Axis::T}) {
            const double u = axis == Axis::X ? x : t;
            const double hs = 1e-7 * (1.0 + std::abs(u));
            CVec acc(centre.size());
            for (int k = 0; k < 7; ++k) {
                const Point p = shifted({x, t}, axis, (k - 3) * hs);
                acc = acc + kC[k] * f(p.x, p.t).here;
            }
            worst = std::max(worst, vnorm(acc) / std::sqrt(924.0));
        }
        return std::max(m > 0.0 ? worst / m : 0.0, kNoiseUlps * kEps);
    };
}

ResidualReport residual_report(const PairedEval& f, const std::vector<Point>& points, Equation eq,
                               double tolerance, const std::vector<double>& steps, const NoiseEstimate& noise)
{
    ResidualReport rep;
    rep.h_sequence = steps;
    rep.tolerance = tolerance;
    std::vector<std::vector<double>> floors;
    for (const Point& p : points) {
        std::vector<double> row;
        std::vector<double> fl;
        try {
            const CVec psi = f(p.x, p.t).here;
            const double m = vnorm(psi);
            const double delta = noise ? noise(p.x, p.t) : sampled_noise(f)(p.x, p.t);
            for (double h : steps) {
                row.push_back(normalized_residual(pde_residual(f, p, h, eq), psi));
                fl.push_back(delta * (1.5 / h + 64.0 / 12.0 / (h * h)) * m / (1.0 + m + m * m * m));
            }
        } catch (const SingularPoint&) {
            ++rep.skipped;
            continue;
        } catch (const StencilHitPole&) {
            ++rep.skipped;
            continue;
        }
        rep.points.push_back(p);
        rep.sweep.push_back(row);
        floors.push_back(fl);
    }
    finish_report(rep, floors);
    return rep;
}

LaxCheckReport lax_check(const SpectralSetup& setup, cplx lambda, const CVec& z, const Window& window,
                         const LaxCheckOptions& options)
{
    const std::vector<Point> points = halton_points(options.samples, window);
    const CVec zero_q(setup.components());
    auto seed_lax = [&](cplx lam, double t) {
        return lax_matrices(setup, lam, seed_potential(setup, t), seed_potential(setup, -t), zero_q, zero_q);
    };

    LaxCheckReport out;
    for (ResidualReport* r : {&out.lax, &out.adjoint, &out.covariance}) {
        r->h_sequence = options.steps;
        r->tolerance = options.tolerance;
    }
    std::vector<std::vector<double>> floor_lax, floor_adj, floor_cov;

    // (a) Psi = Lambda R E Z.
    auto psi = [&](double x, double t) { return fundamental_solution(setup, lambda, x, t, z); };
    // (b) Phi(x, t) = Psi^T(x, -t) at -lambda, as a row.
    auto phi = [&](double x, double t) { return fundamental_solution(setup, -lambda, x, -t, z); };

    // (c) one dressing step at lambda1 = lambda, applied to Psi at mu.
    const cplx lam1 = lambda;
    const cplx mu = 0.7 * lambda + 0.15;
    const CMat eye = identity(setup.dim());
    const CMat s3 = sigma3(setup.dim());
    struct Dressed {
        CMat p;
        CMat px;
    };
    auto dressing = [&](double x, double t) {
        const CVec a = fundamental_solution(setup, lam1, x, t, z);
        const CVec b = fundamental_solution(setup, lam1, x, -t, z);
        const cplx den = dot(b, a);
        if (!(std::abs(den) >= 1e-8 * vnorm(a) * vnorm(b))) {
            throw SingularPoint(1);
        }
        const CVec ax = seed_lax(lam1, t).u * a;
        const CVec bx = seed_lax(lam1, -t).u * b;
        const CMat p = (1.0 / den) * outer(a, b);
        const cplx den_x = dot(bx, a) + dot(b, ax);
        const CMat px = (1.0 / den) * (outer(ax, b) + outer(a, bx)) - (den_x / den) * p;
        return Dressed{p, px};
    };
    auto dressed_psi = [&](double x, double t) {
        const Dressed d = dressing(x, t);
        const CMat tm = (mu + lam1) * eye - (2.0 * lam1) * d.p;
        return CVec(tm * fundamental_solution(setup, mu, x, t, z));
    };

    for (const Point& pt : points) {
        const LaxPair lp = seed_lax(lambda, pt.t);
        const CVec v = psi(pt.x, pt.t);
        const double nv = vnorm(v);
        std::vector<double> row, fl;
        for (double h : options.steps) {
            const double rx = vnorm(fd_diff(psi, pt, Axis::X, 1, h) - lp.u * v);
            const double rt = vnorm(fd_diff(psi, pt, Axis::T, 1, h) - lp.v * v);
            row.push_back(nv > 0.0 ? std::max(rx, rt) / nv : std::max(rx, rt));
            fl.push_back(kNoiseUlps * kEps * 1.5 / h);
        }
        out.lax.points.push_back(pt);
        out.lax.sweep.push_back(row);
        floor_lax.push_back(fl);

        const CVec w = phi(pt.x, pt.t);
        const double nw = vnorm(w);
        row.clear();
        fl.clear();
        for (double h : options.steps) {
            const double rx = vnorm(fd_diff(phi, pt, Axis::X, 1, h) + row_times(w, lp.u));
            const double rt = vnorm(fd_diff(phi, pt, Axis::T, 1, h) + row_times(w, lp.v));
            row.push_back(nw > 0.0 ? std::max(rx, rt) / nw : std::max(rx, rt));
            fl.push_back(kNoiseUlps * kEps * 1.5 / h);
        }
        out.adjoint.points.push_back(pt);
        out.adjoint.sweep.push_back(row);
        floor_adj.push_back(fl);

        try {
            const Dressed d = dressing(pt.x, pt.t);
            const CMat q0 = potential_matrix(seed_potential(setup, pt.t), seed_potential(setup, -pt.t));
            const CMat q1 = q0 + (2.0 * kI * lam1) * (s3 * d.p - d.p * s3);
            const CMat q1x = (2.0 * kI * lam1) * (s3 * d.px - d.px * s3);
            const LaxPair l1 = lax_matrices(setup, mu, q1, q1x);
            const CVec g = dressed_psi(pt.x, pt.t);
            const double ng = vnorm(g);
            const double amp = (std::abs(mu + lam1) + 2.0 * std::abs(lam1) * max_abs(d.p)) * nv /
                               std::max(ng, std::numeric_limits<double>::min());
            row.clear();
            fl.clear();
            for (double h : options.steps) {
                const double rx = vnorm(fd_diff(dressed_psi, pt, Axis::X, 1, h) - l1.u * g);
                const double rt = vnorm(fd_diff(dressed_psi, pt, Axis::T, 1, h) - l1.v * g);
                row.push_back(ng > 0.0 ? std::max(rx, rt) / ng : std::max(rx, rt));
                fl.push_back(kNoiseUlps * kEps * 1.5 / h * amp);
            }
            out.covariance.points.push_back(pt);
            out.covariance.sweep.push_back(row);
            floor_cov.push_back(fl);
        } catch (const SingularPoint&) {
            ++out.covariance.skipped;
        } catch (const StencilHitPole&) {
            ++out.covariance.skipped;
        }
    }
    finish_report(out.lax, floor_lax);
    finish_report(out.adjoint, floor_adj);
    finish_report(out.covariance, floor_cov);
    return out;
}

SignVerdict adjudicate_sign(const ResolvedWave& wave, const Window& window, std::size_t samples, double h)
{
    const Equation eq = wave.setup.dim() == 2 ? Equation::NonlocalScalar : Equation::NonlocalVector;
    DressOptions plus;
    plus.sign = 1;
    DressOptions minus;
    minus.sign = -1;
    const PairedEval fp = wave_evaluator(wave, wave.order, plus);
    const PairedEval fm = wave_evaluator(wave, wave.order, minus);

    std::vector<double> rp, rm;
    bool identical = true;
    for (std::size_t k = 1; rp.size() < samples && k <= 8 * samples; ++k) {
        const Point pt = halton_point(k, window);
        try {
            const CVec a = fp(pt.x, pt.t).here;
            const CVec b = fm(pt.x, pt.t).here;
            const double ra = normalized_residual(pde_residual(fp, pt, h, eq), a);
            const double rb = normalized_residual(pde_residual(fm, pt, h, eq), b);
            identical = identical && a == b;
            rp.push_back(ra);
            rm.push_back(rb);
        } catch (const SingularPoint&) {
        } catch (const StencilHitPole&) {
        }
    }
    SignVerdict v;
    v.samples = rp.size();
    if (v.samples < samples) {
        throw AmbiguousSign("only " + std::to_string(v.samples) + " non-pole sample points", 0.0);
    }
    if (identical) {
        throw AmbiguousSign("both signs give the same solution (vanishing update numerator)", 1.0);
    }
    v.median_plus = median(rp);
    v.median_minus = median(rm);
    const double lo = std::min(v.median_plus, v.median_minus);
    const double hi = std::max(v.median_plus, v.median_minus);
    v.ratio = lo > 0.0 ? hi / lo : (hi > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
    v.sign = v.median_minus <= v.median_plus ? -1 : 1;
    if (!(v.ratio >= kSignRatio)) {
        throw AmbiguousSign("median residual ratio " + std::to_string(v.ratio) + " below threshold", v.ratio);
    }
    return v;
}

PoleCensus pole_census(const Field& field, double rho, double threshold)
{
    const FieldGrid& g = field.grid;
    const int nx = g.nx;
    const int nt = g.nt;
    auto idx = [nx](int i, int j) { return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i); };

    std::vector<double> mag(g.size());
    std::vector<std::uint8_t> hot(g.size(), 0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        mag[k] = field.magnitude(k);
        hot[k] = (field.pole[k] != 0 || !(mag[k] < threshold)) ? 1 : 0;
    }

    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    auto wrap = [](double d) { return d - kTwoPi * std::nearbyint(d / kTwoPi); };
    for (int j = 0; j + 1 < nt; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const std::size_t c[4] = {idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1)};
            bool bad = false;
            double ph[4];
            for (int s = 0; s < 4; ++s) {
                const cplx d = field.den_product[c[s]];
                bad = bad || !std::isfinite(d.real()) || !std::isfinite(d.imag()) || d == cplx(0.0);
                ph[s] = std::arg(d);
            }
            double turn = 0.0;
            for (int s = 0; s < 4; ++s) {
                turn += wrap(ph[(s + 1) % 4] - ph[s]);
            }
            if (bad || std::lround(turn / kTwoPi) != 0) {
                for (std::size_t k : c) {
                    hot[k] = 1;
                }
            }
        }
    }

    PoleCensus out;
    out.window = {g.x0, g.x1, g.t0, g.t1};
    out.threshold = threshold;
    std::vector<int> label(g.size(), 0);
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < g.size(); ++start) {
        if (!hot[start] || label[start] != 0) {
            continue;
        }
        const int id = static_cast<int>(out.clusters.size()) + 1;
        Cluster cl;
        double sx = 0.0, st = 0.0;
        stack.push_back(start);
        label[start] = id;
        while (!stack.empty()) {
            const std::size_t k = stack.back();
            stack.pop_back();
            const int i = static_cast<int>(k % static_cast<std::size_t>(nx));
            const int j = static_cast<int>(k / static_cast<std::size_t>(nx));
            sx += g.x_at(i);
            st += g.t_at(j);
            ++cl.cell_count;
            cl.peak_magnitude = std::max(cl.peak_magnitude, mag[k]);
            const int ni[4] = {i - 1, i + 1, i, i};
            const int nj[4] = {j, j, j - 1, j + 1};
            for (int s = 0; s < 4; ++s) {
                if (ni[s] < 0 || ni[s] >= nx || nj[s] < 0 || nj[s] >= nt) {
                    continue;
                }
                const std::size_t n = idx(ni[s], nj[s]);
                if (hot[n] && label[n] == 0) {
                    label[n] = id;
                    stack.push_back(n);
                }
            }
        }
        const double count = static_cast<double>(cl.cell_count);
        cl.centroid = {sx / count, st / count};
        cl.radius = std::hypot(rho * cl.centroid.x, 2.0 * rho * rho * cl.centroid.t);
        out.clusters.push_back(cl);
    }
    out.bands = radial_bands(out.clusters);

    for (int j = 1; j + 1 < nt; ++j) {
        for (int i = 1; i + 1 < nx; ++i) {
            const std::size_t k = idx(i, j);
            const double v = mag[k];
            if (hot[k] || !(v > 1.5 * rho) || !(v < threshold)) {
                continue;
            }
            bool peak = true;
            for (int dj = -1; dj <= 1 && peak; ++dj) {
                for (int di = -1; di <= 1 && peak; ++di) {
                    const std::size_t n = idx(i + di, j + dj);
                    if (n != k && (hot[n] || mag[n] > v)) {
                        peak = false;
                    }
                }
            }
            if (peak) {
                out.bounded_peaks.push_back({{g.x_at(i), g.t_at(j)}, v});
            }
        }
    }
    return out;
}

int radial_bands(const std::vector<Cluster>& clusters)
{
    if (clusters.empty()) {
        return 0;
    }
    std::vector<double> r;
    for (const Cluster& c : clusters) {
        r.push_back(c.radius);
    }
    std::sort(r.begin(), r.end());
    int bands = 1;
    for (std::size_t k = 1; k < r.size(); ++k) {
        if (r[k] >= kBandRatio * r[k - 1]) {
            ++bands;
        }
    }
    return bands;
}

BackgroundReport background_check(const ResolvedWave& wave, double radius, const std::vector<double>& t_samples,
                                  double tolerance)
{
    BackgroundReport rep;
    rep.tolerance = tolerance;
    const double rho = wave.setup.rho();
    bool finite = true;
    for (double t : t_samples) {
        for (double x : {-radius, radius}) {
            const RoguePoint rp = rogue_point(wave, x, t);
            BackgroundSample s{{x, t}, rp.psi.back(), 0.0};
            s.deviation = std::abs(std::abs(s.psi[0]) - rho);
            finite = finite && !rp.pole && std::isfinite(s.deviation);
            rep.max_deviation = std::max(rep.max_deviation, s.deviation);
            rep.samples.push_back(s);
        }
    }
    rep.passed = finite && rep.max_deviation <= tolerance;
    return rep;
}

std::vector<double> Profile::magnitude(int component) const
{
    std::vector<double> out;
    out.reserve(psi.size());
    for (const CVec& v : psi) {
        out.push_back(std::abs(v[component]));
    }
    return out;
}

Profile slice_x(const ResolvedWave& wave, double t, double x0, double x1, int n)
{
    if (n < 2 || !(x1 > x0)) {
        throw UsageError("slice needs n >= 2 and x1 > x0");
    }
    Profile p;
    for (int i = 0; i < n; ++i) {
        const double x = x0 + (x1 - x0) * i / (n - 1);
        p.coord.push_back(x);
        p.psi.push_back(rogue_point(wave, x, t).psi.back());
    }
    return p;
}

std::vector<SlicePeak> find_extrema(const std::vector<double>& coord, const std::vector<double>& values,
                                    double height, bool find_minima)
{
    std::vector<SlicePeak> out;
    for (std::size_t k = 1; k + 1 < values.size(); ++k) {
        const double v = values[k];
        const bool ext = find_minima ? (v < values[k - 1] && v <= values[k + 1] && v < height)
                                     : (v > values[k - 1] && v >= values[k + 1] && v > height);
        if (ext) {
            out.push_back({k, coord[k], v});
        }
    }
    return out;
}

} // namespace rogue
