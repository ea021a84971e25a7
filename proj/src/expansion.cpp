#include "rogue/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rogue {
namespace {

constexpr cplx kI{0.0, 1.0};

// A_0..A_{count-1} (or B_...) by running multiplication.
std::vector<double> monomials(double base, double u, int count)
{
    std::vector<double> out(static_cast<std::size_t>(count));
    double v = 1.0;
    for (int m = 0; m < count; ++m) {
        if (m > 0) {
            v *= base * u / m;
        }
        out[static_cast<std::size_t>(m)] = v;
    }
    return out;
}

Jet constant_jet(int order, const std::vector<cplx>& coeffs)
{
    Jet j(order);
    for (int k = 0; k < static_cast<int>(coeffs.size()) && k <= order; ++k) {
        j[k] = coeffs[static_cast<std::size_t>(k)];
    }
    return j;
}

} // namespace

double ab_poly(Monomial kind, int m, double rho, double u)
{
    if (m < 0) {
        return 0.0;
    }
    const double base = (kind == Monomial::A || kind == Monomial::ATilde) ? rho : 2.0 * rho * rho;
    double v = 1.0;
    for (int j = 1; j <= m; ++j) {
        v *= base * u / j;
    }
    return v;
}

double binomial(int n, int k)
{
    if (n < 0 || k < 0 || k > n) {
        return 0.0;
    }
    if (k > n - k) {
        k = n - k;
    }
    double v = 1.0;
    for (int j = 1; j <= k; ++j) {
        v = v * (n - k + j) / j;
    }
    return v;
}

CoeffTables coefficient_tables(int n_max, double rho, double x, double t, int dim)
{
    if (n_max < 0 || n_max > kMaxJetOrder) {
        throw UsageError("table order " + std::to_string(n_max) + " outside [0, 24]");
    }
    CoeffTables tb;
    tb.n_max = n_max;
    tb.dim = dim;
    tb.rho = rho;
    tb.x = x;
    tb.t = t;

    const int count = 2 * n_max + 2;
    const std::vector<double> a = monomials(rho, x, count);
    const std::vector<double> b = monomials(2.0 * rho * rho, t, count);
    auto at = [](const std::vector<double>& v, int m) { return v[static_cast<std::size_t>(m)]; };

    for (int n = 0; n <= n_max; ++n) {
        double alpha = 0.0;
        double beta = 0.0;
        for (int l = 0; l <= n / 2; ++l) {
            const double c = binomial(n - l, l) * std::ldexp(1.0, n - 2 * l);
            alpha += c * at(a, 2 * (n - l));
            beta += c * at(a, 2 * (n - l) + 1);
        }
        tb.alpha.push_back(alpha);
        tb.beta.push_back(beta);

        double gamma = 0.0;
        for (int l = 0; l <= (3 * n) / 4; ++l) {
            const double sign = (n - l) % 2 == 0 ? 1.0 : -1.0;
            for (int m = 0; m <= l; ++m) {
                gamma += sign * binomial(n - l, m) * binomial(2 * (n - l), l - m) * std::ldexp(1.0, n - l - m) *
                         at(b, 2 * (n - l));
            }
        }
        double theta = 0.0;
        for (int l = 0; l <= (3 * n + 1) / 4; ++l) {
            const double sign = (n - l) % 2 == 0 ? 1.0 : -1.0;
            for (int m = 0; m <= l; ++m) {
                theta += sign * binomial(n - l, m) * binomial(2 * (n - l) + 1, l - m) *
                         std::ldexp(1.0, n - l - m) * at(b, 2 * (n - l) + 1);
            }
        }
        tb.gamma.push_back(gamma);
        tb.theta.push_back(theta);

        if (dim == 3) {
            tb.a_tilde.push_back(at(a, n));
            cplx r3 = 0.0;
            for (int l = 0; l <= n / 2; ++l) {
                // i^{n-l}
                static constexpr cplx kPowI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
                r3 += binomial(n - l, l) * kPowI[(n - l) % 4] * std::ldexp(1.0, n - 2 * l) * at(b, n - l);
            }
            tb.rho3.push_back(r3);
        }
    }
    return tb;
}

MatPair matrices_n(const SpectralSetup& setup, int n, const CoeffTables& tb)
{
    if (n < 0 || n > tb.n_max) {
        throw UsageError("matrix index outside the coefficient tables");
    }
    const std::size_t k = static_cast<std::size_t>(n);
    const double a = tb.alpha[k];
    const double b = tb.beta[k];
    const double bm = tb.beta_at(n - 1);
    const double g = tb.gamma[k];
    const double th = tb.theta[k];
    const double thm = tb.theta_at(n - 1);

    CMat r(setup.dim());
    CMat e(setup.dim());
    r(0, 0) = a - b - bm;
    r(0, 1) = -b;
    r(1, 0) = b;
    r(1, 1) = a + b + bm;
    e(0, 0) = cplx(g, -(th + thm));
    e(0, 1) = cplx(0.0, -th);
    e(1, 0) = cplx(0.0, th);
    e(1, 1) = cplx(g, th + thm);
    if (setup.dim() == 3) {
        r(2, 2) = std::exp(tb.rho * tb.x) * tb.a_tilde[k];
        e(2, 2) = std::exp(kI * (tb.rho * tb.rho * tb.t)) * tb.rho3[k];
    }
    return {r, e};
}

double CoeffRow::rel_error() const
{
    const double o = std::abs(oracle);
    return o > 0.0 ? abs_error() / o : abs_error();
}

bool CoeffRow::agrees(double rel_tol, double abs_floor) const
{
    return abs_error() <= std::max(rel_tol * std::abs(oracle), abs_floor);
}

std::vector<CoeffRow> compare_coefficients(int n_max, double rho, double x, double t, int dim)
{
    const SpectralSetup setup(rho, dim);
    const CoeffTables tb = coefficient_tables(n_max, rho, x, t, dim);
    const SeriesMatrices s = oracle_jets(setup, x, t, n_max);
    const cplx r3 = std::exp(-rho * x);
    const cplx e3 = std::exp(-kI * (rho * rho * t));
    std::vector<CoeffRow> rows;
    for (int n = 0; n <= n_max; ++n) {
        const std::size_t k = static_cast<std::size_t>(n);
        rows.push_back({"alpha", n, tb.alpha[k], 0.5 * (s.r(0, 0)[n] + s.r(1, 1)[n])});
        rows.push_back({"beta", n, tb.beta[k], s.r(1, 0)[n]});
        rows.push_back({"gamma", n, tb.gamma[k], 0.5 * (s.e(0, 0)[n] + s.e(1, 1)[n])});
        rows.push_back({"theta", n, tb.theta[k], -kI * s.e(1, 0)[n]});
        if (dim == 3) {
            rows.push_back({"a_tilde", n, tb.a_tilde[k], r3 * s.r(2, 2)[n]});
            rows.push_back({"rho", n, tb.rho3[k], e3 * s.e(2, 2)[n]});
        }
    }
    return rows;
}

SeriesMatrices series_exp(const SpectralSetup& setup, const Jet& x0, const Jet& t0)
{
    const int order = x0.order();
    const int dim = setup.dim();
    const double rho = setup.rho();
    const Jet zero(order);

    Jet lam = Jet::constant(order, kI * rho);
    if (order >= 1) {
        lam[1] = kI * rho;
    }
    Jet tau2 = lam * lam + cplx(rho * rho);
    tau2[0] = 0.0; // (i rho)^2 + rho^2 vanishes identically

    JetMat theta(2, zero);
    theta(0, 0) = lam;
    theta(0, 1) = Jet::constant(order, kI * rho);
    theta(1, 0) = Jet::constant(order, -kI * rho);
    theta(1, 1) = -lam;

    const Jet wx = tau2 * x0 * x0;
    const Jet cx = apply_entire(CosSqrtSeries{}, wx, order);
    const Jet sx = kI * (x0 * apply_entire(SincSqrtSeries{}, wx, order));

    const Jet wt = 4.0 * (lam * lam * tau2 * t0 * t0);
    const Jet ct = apply_entire(CosSqrtSeries{}, wt, order);
    const Jet st = (2.0 * kI) * (lam * t0 * apply_entire(SincSqrtSeries{}, wt, order));

    SeriesMatrices out{JetMat(dim, zero), JetMat(dim, zero)};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.r(i, j) = sx * theta(i, j);
            out.e(i, j) = st * theta(i, j);
        }
        out.r(i, i) += cx;
        out.e(i, i) += ct;
    }
    if (dim == 3) {
        out.r(2, 2) = exp(-kI * (lam * x0));
        out.e(2, 2) = exp(-kI * ((lam * lam * cplx(2.0) + cplx(rho * rho)) * t0));
    }
    return out;
}

SeriesMatrices oracle_jets(const SpectralSetup& setup, double x, double t, int n_max)
{
    return series_exp(setup, Jet::constant(n_max, x), Jet::constant(n_max, t));
}

void WaveSpec::validate() const
{
    if (order < 1 || order > kMaxWaveOrder) {
        throw UsageError("order must be in [1, " + std::to_string(kMaxWaveOrder) + "], got " + std::to_string(order));
    }
    const int dim = setup.dim();
    auto finite = [](const CVec& v) { return all_finite(v); };
    if (const auto* om = std::get_if<OmegaSeries>(&source)) {
        if (om->omega.empty()) {
            throw UsageError("omega series is empty");
        }
        for (const CVec& w : om->omega) {
            if (w.size() != dim) {
                throw UsageError("omega vectors must have " + std::to_string(dim) + " entries");
            }
            if (!finite(w)) {
                throw UsageError("omega entries must be finite");
            }
        }
        if (max_abs(om->omega.front()) == 0.0) {
            throw UsageError("omega_0 must be nonzero");
        }
    } else {
        const auto& gf = std::get<GeneratingForm>(source);
        if (gf.l.size() != dim) {
            throw UsageError("generating vector l must have " + std::to_string(dim) + " entries");
        }
        if (!finite(gf.l) || max_abs(gf.l) == 0.0) {
            throw UsageError("generating vector l must be finite and nonzero");
        }
        for (const auto* seq : {&gf.r, &gf.s}) {
            for (const cplx& c : *seq) {
                if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
                    throw UsageError("generating shifts must be finite");
                }
            }
        }
    }
}

std::vector<CVec> omega_coefficients(const WaveSpec& spec, int n_max)
{
    const int dim = spec.setup.dim();
    std::vector<CVec> out(static_cast<std::size_t>(n_max) + 1, CVec(dim));
    if (const auto* om = std::get_if<OmegaSeries>(&spec.source)) {
        for (int k = 0; k <= n_max && k < static_cast<int>(om->omega.size()); ++k) {
            out[static_cast<std::size_t>(k)] = om->omega[static_cast<std::size_t>(k)];
        }
        return out;
    }
    const auto& gf = std::get<GeneratingForm>(spec.source);
    const SeriesMatrices m = series_exp(spec.setup, constant_jet(n_max, gf.r), constant_jet(n_max, gf.s));
    JetVec l(dim, Jet(n_max));
    for (int i = 0; i < dim; ++i) {
        l[i] = Jet::constant(n_max, gf.l[i]);
    }
    const JetVec w = m.r * (m.e * l);
    for (int k = 0; k <= n_max; ++k) {
        for (int i = 0; i < dim; ++i) {
            out[static_cast<std::size_t>(k)][i] = w[i][k];
        }
    }
    return out;
}

ResolvedWave resolve(const WaveSpec& spec)
{
    spec.validate();
    std::vector<CVec> omega = omega_coefficients(spec, spec.order);
    for (std::size_t k = 0; k < omega.size(); ++k) {
        if (!all_finite(omega[k])) {
            throw NumericOverflow("omega coefficient " + std::to_string(k) + " overflows double range",
                                  std::numeric_limits<double>::infinity());
        }
    }
    return {spec.setup, spec.order, std::move(omega)};
}

std::vector<CVec> psi_expansion(const ResolvedWave& wave, double x, double t, ExpansionPath path)
{
    const SpectralSetup& setup = wave.setup;
    const int n = wave.order;
    const int dim = setup.dim();

    std::vector<CMat> rk;
    std::vector<CMat> ej;
    rk.reserve(static_cast<std::size_t>(n) + 1);
    ej.reserve(static_cast<std::size_t>(n) + 1);
    if (path == ExpansionPath::Tables) {
        const CoeffTables tb = coefficient_tables(n, setup.rho(), x, t, dim);
        for (int k = 0; k <= n; ++k) {
            MatPair m = matrices_n(setup, k, tb);
            rk.push_back(m.r);
            ej.push_back(m.e);
        }
    } else {
        const SeriesMatrices s = oracle_jets(setup, x, t, n);
        for (int k = 0; k <= n; ++k) {
            CMat r(dim);
            CMat e(dim);
            for (int i = 0; i < dim; ++i) {
                for (int j = 0; j < dim; ++j) {
                    r(i, j) = s.r(i, j)[k];
                    e(i, j) = s.e(i, j)[k];
                }
            }
            rk.push_back(r);
            ej.push_back(e);
        }
    }

    const cplx phase = std::exp(kI * (setup.rho() * setup.rho() * t));
    std::vector<CVec> psi;
    psi.reserve(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        CVec acc(dim);
        for (int k = 0; k <= m; ++k) {
            CVec g(dim);
            for (int j = 0; j <= m - k; ++j) {
                g = g + ej[static_cast<std::size_t>(j)] * wave.omega[static_cast<std::size_t>(m - k - j)];
            }
            acc = acc + rk[static_cast<std::size_t>(k)] * g;
        }
        acc[0] /= phase;
        for (int i = 1; i < dim; ++i) {
            acc[i] *= phase;
        }
        psi.push_back(acc);
    }
    return psi;
}

} // namespace rogue
