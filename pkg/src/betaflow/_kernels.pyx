# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops.

Every function here has a line-for-line twin in ``_fallback.py``; the two
must consume uniforms in the same order and perform the same floating point
operations so that results are bit-identical.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint32_t, uint64_t
from libc.math cimport log, log1p, exp, sqrt, cos, sin, pow, fabs

cnp.import_array()

cdef uint64_t PHILOX_M0 = 0xD2511F53
cdef uint64_t PHILOX_M1 = 0xCD9E8D57
cdef uint32_t PHILOX_W0 = 0x9E3779B9
cdef uint32_t PHILOX_W1 = 0xBB67AE85
cdef uint64_t MASK32 = 0xFFFFFFFF

cdef double PI = 3.141592653589793
cdef double TWO_PI = 6.283185307179586
cdef double HALF_LOG_2PI = 0.9189385332046728
cdef double TWO_M52 = 2.220446049250313e-16
cdef double FPMIN = 1e-300
cdef double CF_EPS = 1e-15
cdef double DRIFT_GUARD = 1e-14
cdef double REL_WIDTH = 1e-6

# Lanczos g=7, n=9
cdef double[9] LANCZOS = [
    0.99999999999980993, 676.5203681218851, -1259.1392167224028,
    771.32342877765313, -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
]

cdef enum:
    D_UNIFORM = 0
    D_BERNOULLI = 1
    D_BETA = 2
    D_GAMMA = 3
    D_POINT = 4
    D_TENT = 5

cdef enum:
    M_PRODUCT = 0
    M_MODEL1 = 1
    M_TENT = 2
    M_CGZ = 3
    M_CGZ_DUAL = 4
    M_KENNEDY = 5
    M_S24 = 6

cdef enum:
    ST_OK = 0
    ST_NOCONV = 1
    ST_DRIFT = 2


ctypedef struct Rng:
    uint32_t k0
    uint32_t k1
    uint64_t stream
    uint64_t counter
    uint64_t cached
    uint32_t w[4]

ctypedef struct Dist:
    int kind
    double p1
    double p2

ctypedef struct Mu:
    int kind
    double p
    double q
    double r
    int k
    double s1
    double s2
    Dist d1
    Dist d2


# ---------------------------------------------------------------- philox

cdef inline void philox(uint32_t c0, uint32_t c1, uint32_t c2, uint32_t c3,
                        uint32_t k0, uint32_t k1, uint32_t* out) noexcept nogil:
    cdef uint64_t p0, p1
    cdef uint32_t n0, n2
    cdef int i
    for i in range(10):
        if i > 0:
            k0 = <uint32_t>(k0 + PHILOX_W0)
            k1 = <uint32_t>(k1 + PHILOX_W1)
        p0 = PHILOX_M0 * <uint64_t>c0
        p1 = PHILOX_M1 * <uint64_t>c2
        n0 = <uint32_t>(p1 >> 32) ^ c1 ^ k0
        n2 = <uint32_t>(p0 >> 32) ^ c3 ^ k1
        c1 = <uint32_t>(p1 & MASK32)
        c3 = <uint32_t>(p0 & MASK32)
        c0 = n0
        c2 = n2
    out[0] = c0
    out[1] = c1
    out[2] = c2
    out[3] = c3


cdef inline void rng_init(Rng* g, uint64_t seed, uint64_t stream, uint64_t counter) noexcept nogil:
    g.k0 = <uint32_t>(seed & MASK32)
    g.k1 = <uint32_t>(seed >> 32)
    g.stream = stream
    g.counter = counter
    g.cached = 0


cdef inline double uniform(Rng* g) noexcept nogil:
    cdef uint64_t blk = g.counter >> 1
    cdef int half = <int>(g.counter & 1)
    cdef uint64_t bits
    if g.cached != blk + 1:
        philox(<uint32_t>(blk & MASK32), <uint32_t>(blk >> 32),
               <uint32_t>(g.stream & MASK32), <uint32_t>(g.stream >> 32),
               g.k0, g.k1, g.w)
        g.cached = blk + 1
    bits = (<uint64_t>g.w[2 * half + 1] << 32) | <uint64_t>g.w[2 * half]
    g.counter += 1
    return (<double>(bits >> 12) + 0.5) * TWO_M52


def philox_block(uint64_t seed, uint64_t stream, uint64_t block):
    cdef uint32_t out[4]
    philox(<uint32_t>(block & MASK32), <uint32_t>(block >> 32),
           <uint32_t>(stream & MASK32), <uint32_t>(stream >> 32),
           <uint32_t>(seed & MASK32), <uint32_t>(seed >> 32), out)
    return (out[0], out[1], out[2], out[3])


def philox_raw(uint32_t c0, uint32_t c1, uint32_t c2, uint32_t c3, uint32_t k0, uint32_t k1):
    cdef uint32_t out[4]
    philox(c0, c1, c2, c3, k0, k1, out)
    return (out[0], out[1], out[2], out[3])


def uniform_at(uint64_t seed, uint64_t stream, uint64_t counter):
    cdef Rng g
    rng_init(&g, seed, stream, counter)
    return uniform(&g)


# ---------------------------------------------------------------- special functions

cdef double c_log_gamma(double x) noexcept nogil:
    cdef double a, t, y, y2, s
    cdef int i
    if x < 0.5:
        return log(PI / sin(PI * x)) - c_log_gamma(1.0 - x)
    if x >= 10.0:
        y = 1.0 / x
        y2 = y * y
        s = y * (1.0 / 12.0 - y2 * (1.0 / 360.0 - y2 * (1.0 / 1260.0 - y2 * (
            1.0 / 1680.0 - y2 * (1.0 / 1188.0 - y2 * (691.0 / 360360.0 - y2 * (1.0 / 156.0)))))))
        return (x - 0.5) * (log(x) - 1.0) - 0.5 + HALF_LOG_2PI + s
    x = x - 1.0
    a = LANCZOS[0]
    t = x + 7.5
    for i in range(1, 9):
        a = a + LANCZOS[i] / (x + i)
    return HALF_LOG_2PI + (x + 0.5) * log(t) - t + log(a)


cdef double betacf(double a, double b, double x) noexcept nogil:
    cdef double qab = a + b, qap = a + 1.0, qam = a - 1.0
    cdef double c = 1.0, d, h, aa, de
    cdef int m, m2
    d = 1.0 - qab * x / qap
    if fabs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, 100000):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if fabs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if fabs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h = h * d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if fabs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if fabs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        de = d * c
        h = h * de
        if fabs(de - 1.0) < CF_EPS:
            break
    return h


cdef double c_reg_inc_beta(double x, double a, double b) noexcept nogil:
    cdef double lbt
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    lbt = (c_log_gamma(a + b) - c_log_gamma(a) - c_log_gamma(b)
           + a * log(x) + b * log1p(-x))
    if x < (a + 1.0) / (a + b + 2.0):
        return exp(lbt) * betacf(a, b, x) / a
    return 1.0 - exp(lbt) * betacf(b, a, 1.0 - x) / b


cdef double c_reg_inc_gamma(double a, double x) noexcept nogil:
    cdef double ap, s, de, pre, bb, c, d, h, an
    cdef int i
    if x <= 0.0:
        return 0.0
    pre = -x + a * log(x) - c_log_gamma(a)
    if x < a + 1.0:
        ap = a
        de = 1.0 / a
        s = de
        for i in range(100000):
            ap = ap + 1.0
            de = de * x / ap
            s = s + de
            if fabs(de) < fabs(s) * 1e-16:
                break
        return s * exp(pre)
    bb = x + 1.0 - a
    c = 1.0 / FPMIN
    d = 1.0 / bb
    h = d
    for i in range(1, 100000):
        an = -i * (i - a)
        bb = bb + 2.0
        d = an * d + bb
        if fabs(d) < FPMIN:
            d = FPMIN
        c = bb + an / c
        if fabs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        de = d * c
        h = h * de
        if fabs(de - 1.0) < CF_EPS:
            break
    return 1.0 - exp(pre) * h


def log_gamma(double x):
    return c_log_gamma(x)


def reg_inc_beta(double x, double a, double b):
    return c_reg_inc_beta(x, a, b)


def reg_inc_gamma(double a, double x):
    return c_reg_inc_gamma(a, x)


def beta_cdf(x, double a, double b):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t i, n = xv.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for i in range(n):
            ov[i] = c_reg_inc_beta(xv[i], a, b)
    return out


def gamma_cdf(x, double a):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef Py_ssize_t i, n = xv.shape[0]
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for i in range(n):
            ov[i] = c_reg_inc_gamma(a, xv[i])
    return out


# ---------------------------------------------------------------- variates

cdef inline double c_tent_quantile(double u, double z) noexcept nogil:
    if u < 0.5:
        return (1.0 - pow(1.0 - 2.0 * u, 1.0 / z)) / 2.0
    return (1.0 + pow(2.0 * u - 1.0, 1.0 / z)) / 2.0


def tent_quantile(double u, double z):
    return c_tent_quantile(u, z)


cdef inline double normal(Rng* g) noexcept nogil:
    cdef double u1 = uniform(g)
    cdef double u2 = uniform(g)
    return sqrt(-2.0 * log(u1)) * cos(TWO_PI * u2)


cdef double marsaglia_tsang(Rng* g, double a) noexcept nogil:
    # requires a >= 1
    cdef double d = a - 1.0 / 3.0
    cdef double c = 1.0 / sqrt(9.0 * d)
    cdef double x, v, u
    while True:
        x = normal(g)
        v = 1.0 + c * x
        if v <= 0.0:
            continue
        v = v * v * v
        u = uniform(g)
        if u < 1.0 - 0.0331 * (x * x) * (x * x):
            return d * v
        if log(u) < 0.5 * x * x + d * (1.0 - v + log(v)):
            return d * v


cdef double gamma_variate(Rng* g, double a) noexcept nogil:
    cdef double y
    if a < 1.0:
        y = marsaglia_tsang(g, a + 1.0)
        return y * pow(uniform(g), 1.0 / a)
    return marsaglia_tsang(g, a)


cdef double log_gamma_variate(Rng* g, double a) noexcept nogil:
    cdef double y
    if a < 1.0:
        y = marsaglia_tsang(g, a + 1.0)
        return log(y) + log(uniform(g)) / a
    return log(marsaglia_tsang(g, a))


cdef double beta_variate(Rng* g, double a, double b) noexcept nogil:
    cdef double x, y
    if a >= 1.0 and b >= 1.0:
        x = marsaglia_tsang(g, a)
        y = marsaglia_tsang(g, b)
        return x / (x + y)
    x = log_gamma_variate(g, a)
    y = log_gamma_variate(g, b)
    return 1.0 / (1.0 + exp(y - x))


cdef double draw(Rng* g, Dist* d) noexcept nogil:
    cdef int kind = d.kind
    if kind == D_UNIFORM:
        return d.p1 + (d.p2 - d.p1) * uniform(g)
    if kind == D_BERNOULLI:
        return 1.0 if uniform(g) < d.p1 else 0.0
    if kind == D_BETA:
        return beta_variate(g, d.p1, d.p2)
    if kind == D_GAMMA:
        return gamma_variate(g, d.p1)
    if kind == D_POINT:
        return d.p1
    return c_tent_quantile(uniform(g), d.p1)


cdef Dist parse_dist(spec, Py_ssize_t off=0):
    cdef Dist d
    d.kind = <int>spec[off]
    d.p1 = spec[off + 1]
    d.p2 = spec[off + 2]
    return d


cdef Mu parse_mu(mu):
    cdef Mu m
    m.kind = <int>mu[0]
    m.p = m.q = m.r = m.s1 = m.s2 = 0.0
    m.k = 0
    m.d1.kind = D_POINT
    m.d2.kind = D_POINT
    if m.kind == M_PRODUCT or m.kind == M_S24:
        m.d1 = parse_dist(mu, 1)
        m.d2 = parse_dist(mu, 4)
    elif m.kind == M_MODEL1:
        m.p = mu[1]
        m.d1 = parse_dist(mu, 2)
        m.d2 = parse_dist(mu, 5)
        m.s1 = mu[8]
        m.s2 = mu[9]
    elif m.kind == M_TENT or m.kind == M_CGZ or m.kind == M_CGZ_DUAL:
        m.p = mu[1]
    elif m.kind == M_KENNEDY:
        m.k = <int>mu[1]
        m.p = mu[2]
        m.q = mu[3]
        m.r = mu[4]
    else:
        raise ValueError("unknown mu kind %r" % (mu[0],))
    return m


cdef void draw_ab(Rng* g, Mu* m, double* a, double* b) noexcept nogil:
    cdef double u, v, s, lo, hi
    cdef int kind = m.kind, i, left, near
    if kind == M_PRODUCT:
        a[0] = draw(g, &m.d1)
        b[0] = draw(g, &m.d2)
    elif kind == M_MODEL1:
        if uniform(g) < m.p:
            a[0] = 1.0 - m.s1 * draw(g, &m.d1)
            b[0] = 0.0
        else:
            a[0] = 1.0
            b[0] = m.s2 * draw(g, &m.d2)
    elif kind == M_TENT:
        s = c_tent_quantile(uniform(g), m.p)
        if s >= 0.5:
            a[0] = s
            b[0] = 0.0
        else:
            a[0] = 1.0
            b[0] = s
    elif kind == M_CGZ:
        u = uniform(g)
        left = uniform(g) < m.p
        if u > 0.5:
            if left:
                a[0] = u
                b[0] = 0.0
            else:
                a[0] = 1.0
                b[0] = u
        else:
            if left:
                a[0] = 1.0
                b[0] = u
            else:
                a[0] = u
                b[0] = 0.0
    elif kind == M_CGZ_DUAL:
        left = uniform(g) < 0.5
        near = uniform(g) < m.p
        v = uniform(g)
        if left:
            a[0] = (1.0 + v) / 2.0 if near else v / 2.0
            b[0] = 0.0
        else:
            a[0] = 1.0
            b[0] = v / 2.0 if near else (1.0 + v) / 2.0
    elif kind == M_KENNEDY:
        lo = 1.0
        hi = 0.0
        for i in range(m.k):
            u = uniform(g)
            if u < lo:
                lo = u
            if u > hi:
                hi = u
        u = uniform(g)
        if u < m.p:
            a[0] = 1.0
            b[0] = lo
        elif u < m.p + m.q:
            a[0] = hi
            b[0] = 0.0
        else:
            a[0] = hi
            b[0] = lo
    else:
        u = draw(g, &m.d1)
        v = draw(g, &m.d2)
        a[0] = u
        b[0] = u * v


def draw_dist(spec, uint64_t seed, uint64_t stream, uint64_t counter):
    cdef Dist d = parse_dist(spec)
    cdef Rng g
    rng_init(&g, seed, stream, counter)
    x = draw(&g, &d)
    return x, g.counter


def dist_batch(spec, uint64_t seed, uint64_t stream0, Py_ssize_t n):
    cdef Dist d = parse_dist(spec)
    cdef Rng g
    cdef Py_ssize_t i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for i in range(n):
            rng_init(&g, seed, stream0 + i, 0)
            ov[i] = draw(&g, &d)
    return out


def gamma_shapes_batch(shapes, uint64_t seed, uint64_t stream0):
    cdef double[::1] sv = np.ascontiguousarray(shapes, dtype=np.float64)
    cdef Py_ssize_t i, n = sv.shape[0]
    cdef Rng g
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for i in range(n):
            rng_init(&g, seed, stream0 + i, 0)
            ov[i] = gamma_variate(&g, sv[i])
    return out


def draw_mu(mu, uint64_t seed, uint64_t stream, uint64_t counter):
    cdef Mu m = parse_mu(mu)
    cdef Rng g
    cdef double a, b
    rng_init(&g, seed, stream, counter)
    draw_ab(&g, &m, &a, &b)
    return a, b, g.counter


def mu_batch(mu, uint64_t seed, uint64_t stream0, Py_ssize_t n):
    cdef Mu m = parse_mu(mu)
    cdef Rng g
    cdef Py_ssize_t i
    A = np.empty(n, dtype=np.float64)
    B = np.empty(n, dtype=np.float64)
    cdef double[::1] av = A
    cdef double[::1] bv = B
    with nogil:
        for i in range(n):
            rng_init(&g, seed, stream0 + i, 0)
            draw_ab(&g, &m, &av[i], &bv[i])
    return A, B


# ---------------------------------------------------------------- processes

def forward_batch(mu, double x0, Py_ssize_t n_steps, uint64_t seed,
                  uint64_t stream0, uint64_t counter0, Py_ssize_t n_reps):
    cdef Mu m = parse_mu(mu)
    cdef Rng g
    cdef Py_ssize_t i, j, clamps = 0, bad = -1
    cdef double a, b, x
    out = np.empty(n_reps, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for i in range(n_reps):
            rng_init(&g, seed, stream0 + i, counter0)
            x = x0
            for j in range(n_steps):
                draw_ab(&g, &m, &a, &b)
                x = a * x + b * (1.0 - x)
                if x < 0.0:
                    if x < -DRIFT_GUARD:
                        bad = i
                    x = 0.0
                    clamps += 1
                elif x > 1.0:
                    if x > 1.0 + DRIFT_GUARD:
                        bad = i
                    x = 1.0
                    clamps += 1
            ov[i] = x
    status = ST_DRIFT if bad >= 0 else ST_OK
    return out, clamps, g.counter, status


def gamma_forward_batch(mu, double shape, double x0, Py_ssize_t n_steps, uint64_t seed,
                        uint64_t stream0, uint64_t counter0, Py_ssize_t n_reps):
    cdef Mu m = parse_mu(mu)
    cdef Rng g
    cdef Py_ssize_t i, j
    cdef double a, b, x, v
    out = np.empty(n_reps, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for i in range(n_reps):
            rng_init(&g, seed, stream0 + i, counter0)
            x = x0
            for j in range(n_steps):
                draw_ab(&g, &m, &a, &b)
                v = gamma_variate(&g, shape)
                x = a * x + b * v
            ov[i] = x
    return out, g.counter


cdef inline double clamp_into(double v, double lo, double hi, Py_ssize_t* clamps, int* drift) noexcept nogil:
    if v < lo:
        if lo - v > DRIFT_GUARD:
            drift[0] = 1
        clamps[0] += 1
        return lo
    if v > hi:
        if v - hi > DRIFT_GUARD:
            drift[0] = 1
        clamps[0] += 1
        return hi
    return v


cdef inline bint still_open(double x0, double x1, double tol) nogil:
    # converged once the width is below tol and, close to 0 where doubles keep
    # relative precision, also below REL_WIDTH times the lower endpoint
    cdef double w = fabs(x1 - x0)
    cdef double lo = x0 if x0 <= x1 else x1
    return w > FPMIN and (w > tol or w > REL_WIDTH * lo)


def backward_batch(mu, double tol, Py_ssize_t max_steps, uint64_t seed,
                   uint64_t stream0, uint64_t counter0, Py_ssize_t n_reps):
    """Backward composition tracked as the images e0 = Y_n(0), e1 = Y_n(1)."""
    cdef Mu m = parse_mu(mu)
    cdef Rng g
    cdef Py_ssize_t i, j, clamps = 0
    cdef int drift = 0, status = ST_OK
    cdef double a, b, e0, e1, n0, n1, w, lo, hi, mid
    limit = np.empty(n_reps, dtype=np.float64)
    left = np.empty(n_reps, dtype=np.float64)
    right = np.empty(n_reps, dtype=np.float64)
    steps = np.empty(n_reps, dtype=np.int64)
    cdef double[::1] lv = limit
    cdef double[::1] e0v = left
    cdef double[::1] e1v = right
    cdef long long[::1] sv = steps
    with nogil:
        for i in range(n_reps):
            rng_init(&g, seed, stream0 + i, counter0)
            e0 = 0.0
            e1 = 1.0
            j = 0
            while still_open(e0, e1, tol) and j < max_steps:
                draw_ab(&g, &m, &a, &b)
                w = e1 - e0
                n0 = e0 + w * b
                n1 = e0 + w * a
                if e0 <= e1:
                    lo = e0
                    hi = e1
                else:
                    lo = e1
                    hi = e0
                e0 = clamp_into(n0, lo, hi, &clamps, &drift)
                e1 = clamp_into(n1, lo, hi, &clamps, &drift)
                j += 1
            if still_open(e0, e1, tol) and status == ST_OK:
                status = ST_NOCONV
            mid = e0 + (e1 - e0) / 2.0
            if e0 <= e1:
                lo = e0
                hi = e1
            else:
                lo = e1
                hi = e0
            if mid < lo:
                mid = lo
            elif mid > hi:
                mid = hi
            lv[i] = mid
            e0v[i] = e0
            e1v[i] = e1
            sv[i] = j
    if drift:
        status = ST_DRIFT
    return limit, left, right, steps, clamps, g.counter, status


def left_product_batch(mu, double tol, Py_ssize_t max_steps, Py_ssize_t fixed, uint64_t seed,
                       uint64_t stream0, uint64_t counter0, Py_ssize_t n_reps):
    """Left products M_n ... M_1; ``fixed > 0`` multiplies exactly that many factors."""
    cdef Mu m = parse_mu(mu)
    cdef Rng g
    cdef Py_ssize_t i, j, limit_steps
    cdef int status = ST_OK
    cdef double a, b, p11, p12, p21, p22, q11, q12
    mats = np.empty((n_reps, 4), dtype=np.float64)
    steps = np.empty(n_reps, dtype=np.int64)
    cdef double[:, ::1] mv = mats
    cdef long long[::1] sv = steps
    limit_steps = fixed if fixed > 0 else max_steps
    with nogil:
        for i in range(n_reps):
            rng_init(&g, seed, stream0 + i, counter0)
            p11 = 1.0
            p12 = 0.0
            p21 = 0.0
            p22 = 1.0
            j = 0
            while j < limit_steps:
                draw_ab(&g, &m, &a, &b)
                q11 = a * p11 + (1.0 - a) * p21
                q12 = a * p12 + (1.0 - a) * p22
                p21 = b * p11 + (1.0 - b) * p21
                p22 = b * p12 + (1.0 - b) * p22
                p11 = q11
                p12 = q12
                j += 1
                if fixed <= 0 and not still_open(p21, p11, tol) and fabs(p12 - p22) <= tol:
                    break
            if fixed <= 0 and (still_open(p21, p11, tol) or fabs(p12 - p22) > tol) and status == ST_OK:
                status = ST_NOCONV
            mv[i, 0] = p11
            mv[i, 1] = p12
            mv[i, 2] = p21
            mv[i, 3] = p22
            sv[i] = j
    return mats, steps, g.counter, status


def polya_batch(double black, double white, Py_ssize_t n_draws, uint64_t seed,
                uint64_t stream0, Py_ssize_t n_reps):
    cdef Rng g
    cdef Py_ssize_t i, j
    cdef double bk, wt
    out = np.empty(n_reps, dtype=np.float64)
    cdef double[::1] ov = out
    with nogil:
        for i in range(n_reps):
            rng_init(&g, seed, stream0 + i, 0)
            bk = black
            wt = white
            for j in range(n_draws):
                if uniform(&g) < bk / (bk + wt):
                    bk = bk + 1.0
                else:
                    wt = wt + 1.0
            ov[i] = bk / (bk + wt)
    return out
