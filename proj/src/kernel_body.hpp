// Lane-generic dressing body. Included inside an anonymous namespace by each
// kernel translation unit so the instantiations never merge across ISAs.
//
// V must provide +, -, *, /, sqrt(V), load(const double*), store(double*, V)
// and broadcast(double). Every operation is a single IEEE op per lane, so a
// vector lane reproduces the scalar lane bit for bit (with contraction off).

inline double lane_sqrt(double v)
{
    return std::sqrt(v);
}

template <class V>
inline V broadcast(double v);

template <>
inline double broadcast<double>(double v)
{
    return v;
}

template <class V>
inline V load(const double* p);

template <>
inline double load<double>(const double* p)
{
    return *p;
}

inline void store(double* p, double v)
{
    *p = v;
}

template <class V>
struct Cx {
    V re;
    V im;
};

template <class V>
inline Cx<V> operator+(Cx<V> a, Cx<V> b)
{
    return {a.re + b.re, a.im + b.im};
}

template <class V>
inline Cx<V> operator-(Cx<V> a, Cx<V> b)
{
    return {a.re - b.re, a.im - b.im};
}

template <class V>
inline Cx<V> operator*(Cx<V> a, Cx<V> b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class V>
inline Cx<V> cx_scale(Cx<V> a, V s)
{
    return {a.re * s, a.im * s};
}

// lambda1 * a with lambda1 = i rho.
template <class V>
inline Cx<V> cx_lambda(Cx<V> a, V rho)
{
    return {V{} - rho * a.im, rho * a.re};
}

template <class V>
inline Cx<V> cx_inverse(Cx<V> a)
{
    const V m = a.re * a.re + a.im * a.im;
    return {a.re / m, (V{} - a.im) / m};
}

template <class V>
inline V cx_norm(const Cx<V>* v, int dim)
{
    V acc = v[0].re * v[0].re + v[0].im * v[0].im;
    for (int i = 1; i < dim; ++i) {
        acc = acc + (v[i].re * v[i].re + v[i].im * v[i].im);
    }
    return lane_sqrt(acc);
}

template <class V>
inline Cx<V> cx_dot(const Cx<V>* a, const Cx<V>* b, int dim)
{
    Cx<V> acc = a[0] * b[0];
    for (int i = 1; i < dim; ++i) {
        acc = acc + a[i] * b[i];
    }
    return acc;
}

constexpr int kMaxTerms = 11;
constexpr int kMaxDim = 3;

// Processes the lanes starting at point p.
template <class V>
inline void dress_lanes(rogue::KernelBatch& b, std::size_t p)
{
    const int dim = b.dim;
    const int order = b.order;
    const V rho = broadcast<V>(b.rho);
    const V two = broadcast<V>(2.0);
    const V coef = broadcast<V>(4.0 * b.rho * static_cast<double>(-b.sign));

    Cx<V> yh[kMaxTerms][kMaxDim];
    Cx<V> ym[kMaxTerms][kMaxDim];
    for (int n = 0; n <= order; ++n) {
        for (int i = 0; i < dim; ++i) {
            yh[n][i] = {load<V>(&b.psi_re[b.index(0, n, i, p)]), load<V>(&b.psi_im[b.index(0, n, i, p)])};
            ym[n][i] = {load<V>(&b.psi_re[b.index(1, n, i, p)]), load<V>(&b.psi_im[b.index(1, n, i, p)])};
        }
    }

    Cx<V> q[kMaxDim - 1];
    q[0] = {load<V>(&b.seed_re[p]), load<V>(&b.seed_im[p])};
    for (int j = 1; j < dim - 1; ++j) {
        q[j] = {V{}, V{}};
    }
    Cx<V> den_prod = {broadcast<V>(1.0), V{}};

    for (int m = 1; m <= order; ++m) {
        const Cx<V>* dh = yh[m - 1];
        const Cx<V>* dm = ym[m - 1];
        const Cx<V> den = cx_dot(dm, dh, dim);
        const V scale = cx_norm(dh, dim) * cx_norm(dm, dim);
        const Cx<V> inv = cx_inverse(den);
        const Cx<V> rel = {den.re / scale, den.im / scale};
        store(&b.rel_den[static_cast<std::size_t>(m - 1) * b.count + p],
              lane_sqrt(rel.re * rel.re + rel.im * rel.im));
        den_prod = den_prod * rel;

        // q += sign * 4 i lambda1 dm0 dh[1..] / den; 4 i lambda1 = -4 rho.
        const Cx<V> c = cx_scale(dm[0] * inv, coef);
        for (int j = 0; j < dim - 1; ++j) {
            q[j] = q[j] + c * dh[j + 1];
        }

        // Y_n <- 2 lambda1 (Y_n - D (D'^T Y_n) / den) + lambda1 Y_{n-1}, n = N..m.
        for (int n = order; n >= m; --n) {
            const Cx<V> sh = cx_dot(dm, yh[n], dim) * inv;
            const Cx<V> sm = cx_dot(dh, ym[n], dim) * inv;
            for (int i = 0; i < dim; ++i) {
                const Cx<V> th = cx_lambda(cx_scale(yh[n][i] - dh[i] * sh, two), rho);
                const Cx<V> tm = cx_lambda(cx_scale(ym[n][i] - dm[i] * sm, two), rho);
                yh[n][i] = th + cx_lambda(yh[n - 1][i], rho);
                ym[n][i] = tm + cx_lambda(ym[n - 1][i], rho);
            }
        }
    }

    for (int j = 0; j < dim - 1; ++j) {
        store(&b.out_re[static_cast<std::size_t>(j) * b.count + p], q[j].re);
        store(&b.out_im[static_cast<std::size_t>(j) * b.count + p], q[j].im);
    }
    store(&b.den_re[p], den_prod.re);
    store(&b.den_im[p], den_prod.im);
}
