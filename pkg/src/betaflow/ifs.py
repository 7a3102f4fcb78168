"""Forward chains, backward nested intervals, gamma-side chains and 2x2 matrix products.

All four processes are driven by i.i.d. pairs (A, B) ~ mu acting through
f_{A,B}(x) = A x + B (1 - x).  Replicate i of any batch uses stream i of the
given seed, so batches are reproducible and independent of ``workers``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _fallback
from ._core import core
from .rngdist import DistSpec, PointMass, StreamKey, derive_seed

DEFAULT_TOL = 1e-12
DEFAULT_MAX_STEPS = 100_000
DRIFT_GUARD = 1e-14

MU_PRODUCT, MU_MODEL1, MU_TENT, MU_CGZ, MU_CGZ_DUAL, MU_KENNEDY, MU_SCALED = range(7)


class PreconditionError(ValueError):
    """A process was asked to run on a mu that violates its convergence condition."""


class ConvergenceError(ArithmeticError):
    """Iteration cap reached before the contraction tolerance."""


class DriftError(ArithmeticError):
    """Floating point excursion larger than the rounding guard."""


# ---------------------------------------------------------------- mu samplers

@dataclass(frozen=True)
class MuSampler:
    """A law of (A, B) on [0, 1]^2, encoded for the numeric core."""

    encoding: tuple
    description: str
    m1: bool = False
    m2: bool = False
    m3: bool = False
    satisfies_c1: bool = True
    satisfies_c2: bool = True

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.encoding, dtype=np.float64)

    def sample(self, key: StreamKey) -> tuple[float, float]:
        a, b, key.counter = core.draw_mu(self.array, key.master_seed,
                                         key.stream_index, key.counter)
        return a, b

    def sample_many(self, n: int, seed: int, stream0: int = 0):
        """Arrays (A, B); pair i from stream ``stream0 + i``."""
        return core.mu_batch(self.array, seed, stream0, int(n))

    def flags(self) -> dict:
        return {"m1": self.m1, "m2": self.m2, "m3": self.m3,
                "c1": self.satisfies_c1, "c2": self.satisfies_c2}

    def __str__(self):
        return self.description


def mu_product(a_law: DistSpec, b_law: DistSpec, **flags) -> MuSampler:
    """(A, B) ~ a_law (x) b_law, independent."""
    enc = (MU_PRODUCT,) + a_law.as_array() + b_law.as_array()
    return MuSampler(enc, f"{a_law} x {b_law}", **flags)


def mu_point(a: float, b: float) -> MuSampler:
    """Degenerate mu at the pair (a, b)."""
    return mu_product(PointMass(a), PointMass(b), m1=a > b,
                      m2=(a == 1 - a and b == 1 - b), m3=(1 - a == b and 1 - b == a),
                      satisfies_c1=abs(a - b) != 1.0, satisfies_c2=a != 1.0)


def mu_model1(p: float, left: DistSpec, right: DistSpec,
              left_scale: float = 1.0, right_scale: float = 1.0) -> MuSampler:
    """(A, B) = I_p (1 - L, 0) + (1 - I_p) (1, R) with L = left_scale * left, R = right_scale * right."""
    enc = (MU_MODEL1, p) + left.as_array() + right.as_array() + (left_scale, right_scale)
    ls = "" if left_scale == 1 else f"{left_scale:g}*"
    rs = "" if right_scale == 1 else f"{right_scale:g}*"
    return MuSampler(enc, f"Split(p={p:g}, L={ls}{left}, R={rs}{right})", m1=True)


def mu_tent(z: float) -> MuSampler:
    """Split at S ~ TentPower(z) and keep the larger side."""
    return MuSampler((MU_TENT, z), f"split S~TentPower({z:g}), keep larger", m1=True)


def mu_cgz(p: float) -> MuSampler:
    """Split at U ~ U[0,1]; keep the larger side w.p. p, the smaller otherwise."""
    return MuSampler((MU_CGZ, p), f"split U~U[0,1], keep larger w.p. {p:g}", m1=True)


def mu_cgz_dual(p: float) -> MuSampler:
    """Fair direction; uniform on the near half of the gap w.p. p, on the far half otherwise."""
    return MuSampler((MU_CGZ_DUAL, p), f"fair direction, near half w.p. {p:g}", m1=True)


def mu_kennedy(k: int, p: float, q: float, r: float) -> MuSampler:
    """Extremes of k uniforms; keep [min, 1], [0, max] or [min, max] w.p. p, q, r."""
    return MuSampler((MU_KENNEDY, k, p, q, r), f"Kennedy(k={k}, p={p:g}, q={q:g}, r={r:g})",
                     m1=(k >= 2 or r == 0), satisfies_c2=p < 1)


def mu_scaled(a_law: DistSpec, b_law: DistSpec, **flags) -> MuSampler:
    """(A, B) = (A', A' B') with (A', B') ~ a_law (x) b_law."""
    enc = (MU_SCALED,) + a_law.as_array() + b_law.as_array()
    return MuSampler(enc, f"(A', A'B'), A'~{a_law}, B'~{b_law}", **flags)


# ---------------------------------------------------------------- value types

@dataclass(frozen=True)
class AffineState:
    """Composed backward map Y_n(x) = alpha x + beta."""

    alpha: float
    beta: float
    steps: int

    @property
    def interval(self) -> tuple[float, float]:
        e0, e1 = self.beta, self.beta + self.alpha
        return (min(e0, e1), max(e0, e1))


@dataclass(frozen=True)
class StochMat2:
    """Row-major 2x2 row-stochastic matrix."""

    m11: float
    m12: float
    m21: float
    m22: float

    def __post_init__(self):
        vals = (self.m11, self.m12, self.m21, self.m22)
        if any(not (-1e-12 <= v <= 1 + 1e-12) for v in vals):
            raise ValueError(f"entries must lie in [0, 1]: {vals}")
        if abs(self.m11 + self.m12 - 1) > 1e-12 or abs(self.m21 + self.m22 - 1) > 1e-12:
            raise ValueError(f"rows must sum to 1: {vals}")

    @classmethod
    def factor(cls, a: float, b: float) -> "StochMat2":
        return cls(a, 1.0 - a, b, 1.0 - b)

    def as_array(self) -> np.ndarray:
        return np.array([[self.m11, self.m12], [self.m21, self.m22]])

    def row_gap(self) -> float:
        return max(abs(self.m11 - self.m21), abs(self.m12 - self.m22))


@dataclass(frozen=True)
class SchemeClass:
    """Nested-interval taxonomy <L_N, L'_{M'} | L''_{M''}>."""

    first_stage: str
    n_intervals: int
    stage1_rule: str
    stage1_mode: str
    stage2_rule: str
    stage2_mode: str

    def __post_init__(self):
        if self.n_intervals < 1:
            raise ValueError("n_intervals must be >= 1")
        checks = [(self.first_stage, "SG"), (self.stage1_rule, "DR"), (self.stage1_mode, "IG"),
                  (self.stage2_rule, "DR"), (self.stage2_mode, "IG")]
        for v, allowed in checks:
            if v not in allowed:
                raise ValueError(f"invalid classification letter {v!r}")

    @classmethod
    def parse(cls, text: str) -> "SchemeClass":
        body = text.strip().strip("<>").replace(" ", "")
        head, tail = body.split("|")
        first, s1 = head.split(",")
        letter, n = first.split("_")
        r1, m1 = s1.split("_")
        r2, m2 = tail.split("_")
        return cls(letter, int(n), r1, m1, r2, m2)

    def __str__(self):
        return (f"<{self.first_stage}_{self.n_intervals}, {self.stage1_rule}_{self.stage1_mode}"
                f" | {self.stage2_rule}_{self.stage2_mode}>")


@dataclass
class ConditionReport:
    declared: dict
    n_probe: int
    violations: list = field(default_factory=list)
    observed: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------- helpers

def _status(status, what):
    if status == 1:
        raise ConvergenceError(f"{what}: contraction tolerance not reached within the step cap")
    if status == 2:
        raise DriftError(f"{what}: floating excursion beyond {DRIFT_GUARD:g}")


def _chunks(n, workers):
    workers = max(1, min(int(workers), n)) if n > 0 else 1
    step = -(-n // workers) if n else 0
    return [(s, min(n, s + step)) for s in range(0, n, step)] if n else []


def _parallel(fn, n, workers):
    """Run ``fn(start, count)`` over replicate chunks; results in replicate order."""
    parts = _chunks(n, workers)
    if len(parts) <= 1:
        return [fn(0, n)]
    with ThreadPoolExecutor(max_workers=len(parts)) as ex:
        return list(ex.map(lambda se: fn(se[0], se[1] - se[0]), parts))


def apply_f(a: float, b: float, x: float) -> float:
    """f_{a,b}(x) = a x + b (1 - x), clamped against rounding."""
    y = a * x + b * (1.0 - x)
    if y < 0.0:
        if y < -DRIFT_GUARD:
            raise DriftError(f"apply_f({a}, {b}, {x}) = {y}")
        return 0.0
    if y > 1.0:
        if y > 1.0 + DRIFT_GUARD:
            raise DriftError(f"apply_f({a}, {b}, {x}) = {y}")
        return 1.0
    return y


# ---------------------------------------------------------------- forward chain

def forward_run(mu: MuSampler, x0: float, n: int, key: StreamKey) -> float:
    """X_n(x0) after n i.i.d. steps X_k = (A_k - B_k) X_{k-1} + B_k."""
    if n < 0:
        raise ValueError("n must be >= 0")
    out, _, key.counter, status = core.forward_batch(
        mu.array, float(x0), int(n), key.master_seed, key.stream_index, key.counter, 1)
    _status(status, "forward_run")
    return float(out[0])


def forward_samples(mu: MuSampler, x0: float, n: int, n_samples: int, seed: int,
                    stream0: int = 0, workers: int = 1) -> np.ndarray:
    def job(start, count):
        out, _, _, status = core.forward_batch(mu.array, float(x0), int(n), seed,
                                               stream0 + start, 0, count)
        _status(status, "forward_samples")
        return out
    return np.concatenate(_parallel(job, int(n_samples), workers))


# ---------------------------------------------------------------- backward scheme

def backward_nest(mu: MuSampler, key: StreamKey, tol: float = DEFAULT_TOL,
                  max_steps: int = DEFAULT_MAX_STEPS) -> tuple[float, AffineState]:
    """Compose Y_n = F_1 o ... o F_n until |alpha_n| <= tol; return the interval midpoint."""
    if not mu.satisfies_c1:
        raise PreconditionError(f"{mu} does not contract: P(|A - B| = 1) < 1 fails")
    if not tol > 0:
        raise ValueError("tol must be > 0")
    lim, e0, e1, steps, _, key.counter, status = core.backward_batch(
        mu.array, float(tol), int(max_steps), key.master_seed, key.stream_index, key.counter, 1)
    _status(status, "backward_nest")
    return float(lim[0]), AffineState(float(e1[0] - e0[0]), float(e0[0]), int(steps[0]))


def backward_samples(mu: MuSampler, n_samples: int, seed: int, tol: float = DEFAULT_TOL,
                     max_steps: int = DEFAULT_MAX_STEPS, stream0: int = 0,
                     workers: int = 1) -> np.ndarray:
    if not mu.satisfies_c1:
        raise PreconditionError(f"{mu} does not contract: P(|A - B| = 1) < 1 fails")

    def job(start, count):
        lim, _, _, _, _, _, status = core.backward_batch(
            mu.array, float(tol), int(max_steps), seed, stream0 + start, 0, count)
        _status(status, "backward_samples")
        return lim
    return np.concatenate(_parallel(job, int(n_samples), workers))


def backward_trace(mu: MuSampler, key: StreamKey, n_steps: int):
    """Endpoints (Y_k(0), Y_k(1)) for k = 0..n_steps, plus the pairs used.

    Uses the same step arithmetic as the numeric core, so the last entry
    matches ``backward_nest`` run for the same number of steps.
    """
    e0, e1 = 0.0, 1.0
    state = [0, 0]
    ends = [(e0, e1)]
    pairs = []
    for _ in range(n_steps):
        a, b = mu.sample(key)
        e0, e1 = _fallback._backward_step(e0, e1, a, b, state)
        ends.append((e0, e1))
        pairs.append((a, b))
    if state[1]:
        raise DriftError("backward_trace: excursion beyond guard")
    return ends, pairs, state[0]


def backward_at(mu: MuSampler, x: float, n: int, n_samples: int, seed: int,
                stream0: int = 0) -> np.ndarray:
    """Samples of Y_n(x) for fixed n via the left matrix product."""
    mats, _, _, _ = core.left_product_batch(mu.array, 0.0, 0, int(n), seed, stream0, 0,
                                            int(n_samples))
    return x * mats[:, 0] + (1.0 - x) * mats[:, 2]


# ---------------------------------------------------------------- gamma-side chain

def gamma_forward_run(mu: MuSampler, innovation_shape: float, x0: float, n: int,
                      key: StreamKey) -> float:
    """X'_n for X'_k = A_k X'_{k-1} + B_k V_k with V_k ~ Gamma(innovation_shape)."""
    if not mu.satisfies_c2:
        raise PreconditionError(f"{mu}: P(A = 1) < 1 fails")
    if not innovation_shape > 0 or not x0 > 0:
        raise ValueError("innovation_shape and x0 must be > 0")
    out, key.counter = core.gamma_forward_batch(
        mu.array, float(innovation_shape), float(x0), int(n),
        key.master_seed, key.stream_index, key.counter, 1)
    return float(out[0])


def gamma_forward_samples(mu: MuSampler, innovation_shape: float, x0: float, n: int,
                          n_samples: int, seed: int, stream0: int = 0,
                          workers: int = 1) -> np.ndarray:
    if not mu.satisfies_c2:
        raise PreconditionError(f"{mu}: P(A = 1) < 1 fails")

    def job(start, count):
        out, _ = core.gamma_forward_batch(mu.array, float(innovation_shape), float(x0),
                                          int(n), seed, stream0 + start, 0, count)
        return out
    return np.concatenate(_parallel(job, int(n_samples), workers))


# ---------------------------------------------------------------- matrix products

def left_product_run(mu: MuSampler, key: StreamKey, tol: float = DEFAULT_TOL,
                     max_steps: int = DEFAULT_MAX_STEPS) -> StochMat2:
    """M_n ... M_1 with new factors on the left, until the rows agree within tol."""
    if not mu.satisfies_c1:
        raise PreconditionError(f"{mu} does not contract: P(|A - B| = 1) < 1 fails")
    mats, _, key.counter, status = core.left_product_batch(
        mu.array, float(tol), int(max_steps), 0, key.master_seed, key.stream_index,
        key.counter, 1)
    _status(status, "left_product_run")
    return StochMat2(*map(float, mats[0]))


def left_product_n(mu: MuSampler, n: int, key: StreamKey) -> StochMat2:
    """Exactly n factors M_n ... M_1, no convergence check."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mats, _, key.counter, _ = core.left_product_batch(
        mu.array, 0.0, 0, int(n), key.master_seed, key.stream_index, key.counter, 1)
    return StochMat2(*map(float, mats[0]))


def left_product_samples(mu: MuSampler, n_samples: int, seed: int, tol: float = DEFAULT_TOL,
                         max_steps: int = DEFAULT_MAX_STEPS, stream0: int = 0,
                         workers: int = 1) -> np.ndarray:
    """First-column entry of the converged top row, one per replicate."""
    if not mu.satisfies_c1:
        raise PreconditionError(f"{mu} does not contract")

    def job(start, count):
        mats, _, _, status = core.left_product_batch(mu.array, float(tol), int(max_steps), 0,
                                                     seed, stream0 + start, 0, count)
        _status(status, "left_product_samples")
        return mats[:, 0]
    return np.concatenate(_parallel(job, int(n_samples), workers))


# ---------------------------------------------------------------- condition probe

def _split_ks(x, y, alpha):
    from .stats import ks_two_sample
    return ks_two_sample(np.sort(x), np.sort(y), alpha)


def check_conditions(mu: MuSampler, n_probe: int, key: StreamKey,
                     alpha: float = 1e-3) -> ConditionReport:
    """Try to falsify the declared flags of ``mu`` from ``n_probe`` sampled pairs.

    m1 and the convergence conditions are checked pairwise; the symmetry
    conditions m2/m3 by two-sample KS on the relevant marginals.
    """
    if n_probe < 1:
        raise ValueError("n_probe must be >= 1")
    seed = derive_seed(key.master_seed, "probe", key.stream_index, key.counter)
    A, B = mu.sample_many(n_probe, seed)
    rep = ConditionReport(declared=mu.flags(), n_probe=n_probe)
    n_le = int(np.count_nonzero(A <= B))
    n_unit = int(np.count_nonzero(np.abs(A - B) == 1.0))
    n_a1 = int(np.count_nonzero(A == 1.0))
    rep.observed = {"A<=B": n_le, "|A-B|=1": n_unit, "A=1": n_a1}
    if mu.m1 and n_le:
        rep.violations.append(f"m1: {n_le} of {n_probe} pairs have A <= B")
    if mu.satisfies_c1 and n_unit == n_probe:
        rep.violations.append("c1: every probed pair has |A - B| = 1")
    if mu.satisfies_c2 and n_a1 == n_probe:
        rep.violations.append("c2: every probed pair has A = 1")
    if n_probe >= 40:
        h = n_probe // 2
        if mu.m2:
            for name, u, v in (("A", A[:h], 1 - A[h:]), ("B", B[:h], 1 - B[h:])):
                if not _split_ks(u, v, alpha).passed:
                    rep.violations.append(f"m2: law of {name} differs from law of 1 - {name}")
        if mu.m3:
            for name, u, v in (("1-A vs B", 1 - A[:h], B[h:]), ("1-B vs A", 1 - B[:h], A[h:])):
                if not _split_ks(u, v, alpha).passed:
                    rep.violations.append(f"m3: marginal mismatch {name}")
    return rep
