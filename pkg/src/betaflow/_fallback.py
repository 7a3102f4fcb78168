"""Pure-Python twin of ``_kernels.pyx``.

Used when the compiled extension is unavailable (or when
``BETAFLOW_PURE=1``).  Arithmetic mirrors the compiled code operation for
operation; results are bit-identical, only slower.
"""

import math

import numpy as np

_M32 = 0xFFFFFFFF
PHILOX_M0 = 0xD2511F53
PHILOX_M1 = 0xCD9E8D57
PHILOX_W0 = 0x9E3779B9
PHILOX_W1 = 0xBB67AE85

PI = 3.141592653589793
TWO_PI = 6.283185307179586
HALF_LOG_2PI = 0.9189385332046728
TWO_M52 = 2.220446049250313e-16
FPMIN = 1e-300
CF_EPS = 1e-15
DRIFT_GUARD = 1e-14
REL_WIDTH = 1e-6

LANCZOS = (
    0.99999999999980993, 676.5203681218851, -1259.1392167224028,
    771.32342877765313, -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
)

D_UNIFORM, D_BERNOULLI, D_BETA, D_GAMMA, D_POINT, D_TENT = range(6)
M_PRODUCT, M_MODEL1, M_TENT, M_CGZ, M_CGZ_DUAL, M_KENNEDY, M_S24 = range(7)
ST_OK, ST_NOCONV, ST_DRIFT = range(3)


# ---------------------------------------------------------------- philox

def philox_raw(c0, c1, c2, c3, k0, k1):
    for i in range(10):
        if i > 0:
            k0 = (k0 + PHILOX_W0) & _M32
            k1 = (k1 + PHILOX_W1) & _M32
        p0 = PHILOX_M0 * c0
        p1 = PHILOX_M1 * c2
        n0 = (p1 >> 32) ^ c1 ^ k0
        n2 = (p0 >> 32) ^ c3 ^ k1
        c1 = p1 & _M32
        c3 = p0 & _M32
        c0 = n0
        c2 = n2
    return (c0, c1, c2, c3)


def philox_block(seed, stream, block):
    return philox_raw(block & _M32, block >> 32, stream & _M32, stream >> 32,
                      seed & _M32, seed >> 32)


class _Rng:
    __slots__ = ("k0", "k1", "stream", "counter", "cached", "w")

    def __init__(self, seed, stream, counter):
        self.k0 = seed & _M32
        self.k1 = seed >> 32
        self.stream = stream
        self.counter = counter
        self.cached = 0
        self.w = (0, 0, 0, 0)

    def uniform(self):
        blk = self.counter >> 1
        half = self.counter & 1
        if self.cached != blk + 1:
            self.w = philox_raw(blk & _M32, blk >> 32, self.stream & _M32,
                                self.stream >> 32, self.k0, self.k1)
            self.cached = blk + 1
        bits = (self.w[2 * half + 1] << 32) | self.w[2 * half]
        self.counter += 1
        return (float(bits >> 12) + 0.5) * TWO_M52


def uniform_at(seed, stream, counter):
    return _Rng(seed, stream, counter).uniform()


# ---------------------------------------------------------------- special functions

def log_gamma(x):
    if x < 0.5:
        return math.log(PI / math.sin(PI * x)) - log_gamma(1.0 - x)
    if x >= 10.0:
        y = 1.0 / x
        y2 = y * y
        s = y * (1.0 / 12.0 - y2 * (1.0 / 360.0 - y2 * (1.0 / 1260.0 - y2 * (
            1.0 / 1680.0 - y2 * (1.0 / 1188.0 - y2 * (691.0 / 360360.0 - y2 * (1.0 / 156.0)))))))
        return (x - 0.5) * (math.log(x) - 1.0) - 0.5 + HALF_LOG_2PI + s
    x = x - 1.0
    a = LANCZOS[0]
    t = x + 7.5
    for i in range(1, 9):
        a = a + LANCZOS[i] / (x + i)
    return HALF_LOG_2PI + (x + 0.5) * math.log(t) - t + math.log(a)


def _betacf(a, b, x):
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < FPMIN:
        d = FPMIN
    d = 1.0 / d
    h = d
    for m in range(1, 100000):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        h = h * d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < FPMIN:
            d = FPMIN
        c = 1.0 + aa / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        de = d * c
        h = h * de
        if abs(de - 1.0) < CF_EPS:
            break
    return h


def reg_inc_beta(x, a, b):
    if x <= 0.0:
        return 0.0
    if x >= 1.0:
        return 1.0
    lbt = (log_gamma(a + b) - log_gamma(a) - log_gamma(b)
           + a * math.log(x) + b * math.log1p(-x))
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(lbt) * _betacf(a, b, x) / a
    return 1.0 - math.exp(lbt) * _betacf(b, a, 1.0 - x) / b


def reg_inc_gamma(a, x):
    if x <= 0.0:
        return 0.0
    pre = -x + a * math.log(x) - log_gamma(a)
    if x < a + 1.0:
        ap = a
        de = 1.0 / a
        s = de
        for _ in range(100000):
            ap = ap + 1.0
            de = de * x / ap
            s = s + de
            if abs(de) < abs(s) * 1e-16:
                break
        return s * math.exp(pre)
    bb = x + 1.0 - a
    c = 1.0 / FPMIN
    d = 1.0 / bb
    h = d
    for i in range(1, 100000):
        an = -i * (i - a)
        bb = bb + 2.0
        d = an * d + bb
        if abs(d) < FPMIN:
            d = FPMIN
        c = bb + an / c
        if abs(c) < FPMIN:
            c = FPMIN
        d = 1.0 / d
        de = d * c
        h = h * de
        if abs(de - 1.0) < CF_EPS:
            break
    return 1.0 - math.exp(pre) * h


def beta_cdf(x, a, b):
    xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    return np.array([reg_inc_beta(float(v), a, b) for v in xv], dtype=np.float64)


def gamma_cdf(x, a):
    xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    return np.array([reg_inc_gamma(a, float(v)) for v in xv], dtype=np.float64)


# ---------------------------------------------------------------- variates

def tent_quantile(u, z):
    if u < 0.5:
        return (1.0 - (1.0 - 2.0 * u) ** (1.0 / z)) / 2.0
    return (1.0 + (2.0 * u - 1.0) ** (1.0 / z)) / 2.0


def _normal(g):
    u1 = g.uniform()
    u2 = g.uniform()
    return math.sqrt(-2.0 * math.log(u1)) * math.cos(TWO_PI * u2)


def _marsaglia_tsang(g, a):
    d = a - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    while True:
        x = _normal(g)
        v = 1.0 + c * x
        if v <= 0.0:
            continue
        v = v * v * v
        u = g.uniform()
        if u < 1.0 - 0.0331 * (x * x) * (x * x):
            return d * v
        if math.log(u) < 0.5 * x * x + d * (1.0 - v + math.log(v)):
            return d * v


def _gamma_variate(g, a):
    if a < 1.0:
        y = _marsaglia_tsang(g, a + 1.0)
        return y * g.uniform() ** (1.0 / a)
    return _marsaglia_tsang(g, a)


def _log_gamma_variate(g, a):
    if a < 1.0:
        y = _marsaglia_tsang(g, a + 1.0)
        return math.log(y) + math.log(g.uniform()) / a
    return math.log(_marsaglia_tsang(g, a))


def _beta_variate(g, a, b):
    if a >= 1.0 and b >= 1.0:
        x = _marsaglia_tsang(g, a)
        y = _marsaglia_tsang(g, b)
        return x / (x + y)
    x = _log_gamma_variate(g, a)
    y = _log_gamma_variate(g, b)
    return 1.0 / (1.0 + math.exp(y - x))


def _draw(g, d):
    kind, p1, p2 = d
    if kind == D_UNIFORM:
        return p1 + (p2 - p1) * g.uniform()
    if kind == D_BERNOULLI:
        return 1.0 if g.uniform() < p1 else 0.0
    if kind == D_BETA:
        return _beta_variate(g, p1, p2)
    if kind == D_GAMMA:
        return _gamma_variate(g, p1)
    if kind == D_POINT:
        return p1
    return tent_quantile(g.uniform(), p1)


def _parse_dist(spec, off=0):
    return (int(spec[off]), float(spec[off + 1]), float(spec[off + 2]))


def _parse_mu(mu):
    kind = int(mu[0])
    if kind in (M_PRODUCT, M_S24):
        return (kind, _parse_dist(mu, 1), _parse_dist(mu, 4))
    if kind == M_MODEL1:
        return (kind, float(mu[1]), _parse_dist(mu, 2), _parse_dist(mu, 5),
                float(mu[8]), float(mu[9]))
    if kind in (M_TENT, M_CGZ, M_CGZ_DUAL):
        return (kind, float(mu[1]))
    if kind == M_KENNEDY:
        return (kind, int(mu[1]), float(mu[2]), float(mu[3]), float(mu[4]))
    raise ValueError("unknown mu kind %r" % (mu[0],))


def _draw_ab(g, m):
    kind = m[0]
    if kind == M_PRODUCT:
        a = _draw(g, m[1])
        b = _draw(g, m[2])
        return a, b
    if kind == M_MODEL1:
        _, p, dl, dr, s1, s2 = m
        if g.uniform() < p:
            return 1.0 - s1 * _draw(g, dl), 0.0
        return 1.0, s2 * _draw(g, dr)
    if kind == M_TENT:
        s = tent_quantile(g.uniform(), m[1])
        if s >= 0.5:
            return s, 0.0
        return 1.0, s
    if kind == M_CGZ:
        u = g.uniform()
        left = g.uniform() < m[1]
        if u > 0.5:
            return (u, 0.0) if left else (1.0, u)
        return (1.0, u) if left else (u, 0.0)
    if kind == M_CGZ_DUAL:
        left = g.uniform() < 0.5
        near = g.uniform() < m[1]
        v = g.uniform()
        if left:
            return ((1.0 + v) / 2.0 if near else v / 2.0), 0.0
        return 1.0, (v / 2.0 if near else (1.0 + v) / 2.0)
    if kind == M_KENNEDY:
        _, k, p, q, _r = m
        lo = 1.0
        hi = 0.0
        for _ in range(k):
            u = g.uniform()
            if u < lo:
                lo = u
            if u > hi:
                hi = u
        u = g.uniform()
        if u < p:
            return 1.0, lo
        if u < p + q:
            return hi, 0.0
        return hi, lo
    u = _draw(g, m[1])
    v = _draw(g, m[2])
    return u, u * v


def draw_dist(spec, seed, stream, counter):
    g = _Rng(seed, stream, counter)
    x = _draw(g, _parse_dist(spec))
    return x, g.counter


def dist_batch(spec, seed, stream0, n):
    d = _parse_dist(spec)
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = _draw(_Rng(seed, stream0 + i, 0), d)
    return out


def gamma_shapes_batch(shapes, seed, stream0):
    sv = np.ascontiguousarray(shapes, dtype=np.float64)
    out = np.empty(sv.shape[0], dtype=np.float64)
    for i in range(sv.shape[0]):
        out[i] = _gamma_variate(_Rng(seed, stream0 + i, 0), float(sv[i]))
    return out


def draw_mu(mu, seed, stream, counter):
    g = _Rng(seed, stream, counter)
    a, b = _draw_ab(g, _parse_mu(mu))
    return a, b, g.counter


def mu_batch(mu, seed, stream0, n):
    m = _parse_mu(mu)
    A = np.empty(n, dtype=np.float64)
    B = np.empty(n, dtype=np.float64)
    for i in range(n):
        A[i], B[i] = _draw_ab(_Rng(seed, stream0 + i, 0), m)
    return A, B


# ---------------------------------------------------------------- processes

def forward_batch(mu, x0, n_steps, seed, stream0, counter0, n_reps):
    m = _parse_mu(mu)
    out = np.empty(n_reps, dtype=np.float64)
    clamps = 0
    bad = -1
    g = None
    for i in range(n_reps):
        g = _Rng(seed, stream0 + i, counter0)
        x = float(x0)
        for _ in range(n_steps):
            a, b = _draw_ab(g, m)
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
        out[i] = x
    status = ST_DRIFT if bad >= 0 else ST_OK
    return out, clamps, (g.counter if g is not None else counter0), status


def gamma_forward_batch(mu, shape, x0, n_steps, seed, stream0, counter0, n_reps):
    m = _parse_mu(mu)
    out = np.empty(n_reps, dtype=np.float64)
    g = None
    for i in range(n_reps):
        g = _Rng(seed, stream0 + i, counter0)
        x = float(x0)
        for _ in range(n_steps):
            a, b = _draw_ab(g, m)
            v = _gamma_variate(g, shape)
            x = a * x + b * v
        out[i] = x
    return out, (g.counter if g is not None else counter0)


def _clamp_into(v, lo, hi, state):
    if v < lo:
        if lo - v > DRIFT_GUARD:
            state[1] = 1
        state[0] += 1
        return lo
    if v > hi:
        if v - hi > DRIFT_GUARD:
            state[1] = 1
        state[0] += 1
        return hi
    return v


def _backward_step(e0, e1, a, b, state):
    """One composition step on the interval images ``(Y(0), Y(1))``."""
    w = e1 - e0
    n0 = e0 + w * b
    n1 = e0 + w * a
    if e0 <= e1:
        lo, hi = e0, e1
    else:
        lo, hi = e1, e0
    return _clamp_into(n0, lo, hi, state), _clamp_into(n1, lo, hi, state)


def _still_open(x0, x1, tol):
    # converged once the width is below tol and, close to 0 where doubles keep
    # relative precision, also below REL_WIDTH times the lower endpoint
    w = abs(x1 - x0)
    lo = x0 if x0 <= x1 else x1
    return w > FPMIN and (w > tol or w > REL_WIDTH * lo)


def backward_batch(mu, tol, max_steps, seed, stream0, counter0, n_reps):
    m = _parse_mu(mu)
    limit = np.empty(n_reps, dtype=np.float64)
    left = np.empty(n_reps, dtype=np.float64)
    right = np.empty(n_reps, dtype=np.float64)
    steps = np.empty(n_reps, dtype=np.int64)
    state = [0, 0]
    status = ST_OK
    g = None
    for i in range(n_reps):
        g = _Rng(seed, stream0 + i, counter0)
        e0 = 0.0
        e1 = 1.0
        j = 0
        while _still_open(e0, e1, tol) and j < max_steps:
            a, b = _draw_ab(g, m)
            e0, e1 = _backward_step(e0, e1, a, b, state)
            j += 1
        if _still_open(e0, e1, tol) and status == ST_OK:
            status = ST_NOCONV
        mid = e0 + (e1 - e0) / 2.0
        lo, hi = (e0, e1) if e0 <= e1 else (e1, e0)
        if mid < lo:
            mid = lo
        elif mid > hi:
            mid = hi
        limit[i] = mid
        left[i] = e0
        right[i] = e1
        steps[i] = j
    if state[1]:
        status = ST_DRIFT
    return limit, left, right, steps, state[0], (g.counter if g is not None else counter0), status


def left_product_batch(mu, tol, max_steps, fixed, seed, stream0, counter0, n_reps):
    m = _parse_mu(mu)
    mats = np.empty((n_reps, 4), dtype=np.float64)
    steps = np.empty(n_reps, dtype=np.int64)
    limit_steps = fixed if fixed > 0 else max_steps
    status = ST_OK
    g = None
    for i in range(n_reps):
        g = _Rng(seed, stream0 + i, counter0)
        p11, p12, p21, p22 = 1.0, 0.0, 0.0, 1.0
        j = 0
        while j < limit_steps:
            a, b = _draw_ab(g, m)
            q11 = a * p11 + (1.0 - a) * p21
            q12 = a * p12 + (1.0 - a) * p22
            p21 = b * p11 + (1.0 - b) * p21
            p22 = b * p12 + (1.0 - b) * p22
            p11 = q11
            p12 = q12
            j += 1
            if fixed <= 0 and not _still_open(p21, p11, tol) and abs(p12 - p22) <= tol:
                break
        if fixed <= 0 and (_still_open(p21, p11, tol) or abs(p12 - p22) > tol) and status == ST_OK:
            status = ST_NOCONV
        mats[i] = (p11, p12, p21, p22)
        steps[i] = j
    return mats, steps, (g.counter if g is not None else counter0), status


def polya_batch(black, white, n_draws, seed, stream0, n_reps):
    out = np.empty(n_reps, dtype=np.float64)
    for i in range(n_reps):
        g = _Rng(seed, stream0 + i, 0)
        bk = float(black)
        wt = float(white)
        for _ in range(n_draws):
            if g.uniform() < bk / (bk + wt):
                bk = bk + 1.0
            else:
                wt = wt + 1.0
        out[i] = bk / (bk + wt)
    return out
