#include "rogue/ddtchain.hpp"

#include <cmath>
#include <limits>

namespace rogue {
namespace {

constexpr cplx kI{0.0, 1.0};

bool collapsed(cplx den, const CVec& here, const CVec& mirror, double tol)
{
    return !(std::abs(den) >= tol * norm2(here) * norm2(mirror));
}

CVec tail(const CVec& v)
{
    CVec out(v.size() - 1);
    for (int i = 1; i < v.size(); ++i) {
        out[i - 1] = v[i];
    }
    return out;
}

CVec infinite(int n)
{
    return CVec(n, cplx(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()));
}

} // namespace

Projector projector(const Paired<CVec>& delta, int level, double pole_tolerance)
{
    const cplx den = dot(delta.mirror, delta.here);
    if (collapsed(den, delta.here, delta.mirror, pole_tolerance)) {
        throw SingularPoint(level);
    }
    const cplx den_m = dot(delta.here, delta.mirror);
    return {{(1.0 / den) * outer(delta.here, delta.mirror), (1.0 / den_m) * outer(delta.mirror, delta.here)},
            {den, den_m}};
}

ChainResult chain(const Paired<std::vector<CVec>>& psi, const SpectralSetup& setup, const ChainOptions& options)
{
    const int n_terms = static_cast<int>(psi.here.size());
    if (n_terms < 2 || psi.mirror.size() != psi.here.size()) {
        throw UsageError("chain needs matching expansions with at least two terms");
    }
    const int levels = n_terms - 1;
    const int dim = setup.dim();
    const cplx lam1 = setup.lambda1();
    const CMat eye = identity(dim);

    ChainResult res;
    std::vector<CVec> yh = psi.here;
    std::vector<CVec> ym = psi.mirror;

    for (int m = 1; m <= levels; ++m) {
        const CVec& dh = yh[static_cast<std::size_t>(m - 1)];
        const CVec& dm = ym[static_cast<std::size_t>(m - 1)];
        res.deltas.push_back({dh, dm});

        const cplx den = dot(dm, dh);
        const double scale = norm2(dh) * norm2(dm);
        res.denominators.push_back({den, dot(dh, dm)});
        res.relative_denominators.push_back(std::abs(den) / scale);
        if (collapsed(den, dh, dm, options.pole_tolerance)) {
            res.pole = m;
            return res;
        }
        const Projector pr = projector({dh, dm}, m, 0.0);
        res.projectors.push_back(pr.p);

        const CMat th = (2.0 * lam1) * (eye - pr.p.here);
        const CMat tm = (2.0 * lam1) * (eye - pr.p.mirror);
        res.kernel_residuals.push_back(norm2(th * dh) / (2.0 * std::abs(lam1) * norm2(dh)));

        const int first = options.track_lower_orders ? 0 : m;
        std::vector<CVec> nh = yh;
        std::vector<CVec> nm = ym;
        for (int n = first; n <= levels; ++n) {
            const std::size_t k = static_cast<std::size_t>(n);
            nh[k] = th * yh[k];
            nm[k] = tm * ym[k];
            if (n > 0) {
                nh[k] = nh[k] + lam1 * yh[k - 1];
                nm[k] = nm[k] + lam1 * ym[k - 1];
            }
        }
        if (options.track_lower_orders && m < levels) {
            double worst = 0.0;
            const double ref = norm2(nh[static_cast<std::size_t>(m)]);
            for (int n = 0; n < m; ++n) {
                worst = std::max(worst, norm2(nh[static_cast<std::size_t>(n)]) / ref);
            }
            res.lower_order_residuals.push_back(worst);
        }
        yh = std::move(nh);
        ym = std::move(nm);
    }
    return res;
}

Paired<CVec> update_potential(const Paired<CVec>& prev, const Paired<CVec>& delta, const SpectralSetup& setup,
                              int sign, double pole_tolerance)
{
    const cplx den_h = dot(delta.mirror, delta.here);
    const cplx den_m = dot(delta.here, delta.mirror);
    if (collapsed(den_h, delta.here, delta.mirror, pole_tolerance)) {
        throw SingularPoint(0);
    }
    const cplx coef = static_cast<double>(sign) * 4.0 * kI * setup.lambda1();
    const CVec num_h = tail(delta.here);
    const CVec num_m = tail(delta.mirror);
    return {prev.here + (coef * delta.mirror[0] / den_h) * num_h,
            prev.mirror + (coef * delta.here[0] / den_m) * num_m};
}

CMat dressed_potential_matrix(const CVec& q_here, const CVec& q_mirror, const CMat& p, const SpectralSetup& setup)
{
    const CMat s3 = sigma3(setup.dim());
    return potential_matrix(q_here, q_mirror) + (2.0 * kI * setup.lambda1()) * (s3 * p - p * s3);
}

Paired<CVec> q_commutator_update(const Paired<CVec>& prev, const Paired<CMat>& p, const SpectralSetup& setup)
{
    const CMat qh = dressed_potential_matrix(prev.here, prev.mirror, p.here, setup);
    const CMat qm = dressed_potential_matrix(prev.mirror, prev.here, p.mirror, setup);
    Paired<CVec> out{CVec(setup.components()), CVec(setup.components())};
    for (int j = 0; j < setup.components(); ++j) {
        out.here[j] = qh(j + 1, 0);
        out.mirror[j] = qm(j + 1, 0);
    }
    return out;
}

void normalize_expansion(std::vector<CVec>& psi)
{
    double peak = 0.0;
    for (const CVec& v : psi) {
        for (const cplx& c : v) {
            peak = std::max({peak, std::abs(c.real()), std::abs(c.imag())});
        }
    }
    if (!(peak > 0.0) || !std::isfinite(peak)) {
        return;
    }
    int e = 0;
    std::frexp(peak, &e);
    for (CVec& v : psi) {
        for (int i = 0; i < v.size(); ++i) {
            v[i] = cplx(std::ldexp(v[i].real(), -e), std::ldexp(v[i].imag(), -e));
        }
    }
}

ChainResult dress(const ResolvedWave& wave, double x, double t, const DressOptions& options)
{
    const SpectralSetup& setup = wave.setup;
    Paired<std::vector<CVec>> psi{psi_expansion(wave, x, t, options.path), psi_expansion(wave, x, -t, options.path)};
    normalize_expansion(psi.here);
    normalize_expansion(psi.mirror);

    ChainResult res = chain(psi, setup, {options.pole_tolerance, options.track_lower_orders});
    res.solutions.push_back({seed_potential(setup, t), seed_potential(setup, -t)});
    const int ready = static_cast<int>(res.projectors.size());
    for (int n = 1; n <= wave.order; ++n) {
        if (n > ready) {
            const CVec inf = infinite(setup.components());
            res.solutions.push_back({inf, inf});
            continue;
        }
        res.solutions.push_back(update_potential(res.solutions.back(), res.deltas[static_cast<std::size_t>(n - 1)],
                                                 setup, options.sign, 0.0));
    }
    return res;
}

RoguePoint rogue_point(const ResolvedWave& wave, double x, double t, const DressOptions& options)
{
    ChainResult res = dress(wave, x, t, options);
    RoguePoint out;
    out.pole = res.pole;
    out.relative_denominators = res.relative_denominators;
    for (const auto& d : res.denominators) {
        out.denominators.push_back(d.here);
    }
    for (const auto& s : res.solutions) {
        out.psi.push_back(s.here);
    }
    return out;
}

} // namespace rogue
