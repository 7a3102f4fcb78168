"""Counter-based random streams and exact samplers for the scalar laws.

The generator is Philox4x32-10.  The 64-bit master seed is the Philox key;
the 128-bit Philox counter holds (block index, stream index).  Every block
yields two uniforms of 52 random bits each, ``(k + 0.5) * 2**-52``, so
uniform number ``c`` of stream ``j`` is a pure function of
``(seed, j, c)`` and never equals 0 or 1.

Samplers:

* Gamma(a): Marsaglia-Tsang squeeze/rejection for a >= 1 with Box-Muller
  normals; a < 1 by the boost Gamma(a+1) * U**(1/a).
* Beta(a, b): X / (X + Y) for independent gammas, computed in log space
  when either shape is below 1.
* TentPower(z): closed-form inverse CDF.
"""

from __future__ import annotations

import hashlib
import math
import struct
from dataclasses import dataclass

import numpy as np

from ._core import core

_U64 = (1 << 64) - 1

UNIFORM, BERNOULLI, BETA, GAMMA, POINT, TENT = range(6)
_KIND_NAMES = {UNIFORM: "Uniform", BERNOULLI: "Bernoulli", BETA: "Beta",
               GAMMA: "Gamma", POINT: "PointMass", TENT: "TentPower"}


class InvalidSpecError(ValueError):
    pass


@dataclass
class StreamKey:
    """Position in a counter-based stream.  ``draw`` advances ``counter``."""

    master_seed: int
    stream_index: int = 0
    counter: int = 0

    def __post_init__(self):
        for name in ("master_seed", "stream_index", "counter"):
            v = getattr(self, name)
            if not 0 <= v <= _U64:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {v!r}")

    def copy(self) -> "StreamKey":
        return StreamKey(self.master_seed, self.stream_index, self.counter)


def substream(key: StreamKey, index: int) -> StreamKey:
    """Stream ``index`` under the same master seed, counter reset to 0."""
    return StreamKey(key.master_seed, index, 0)


def derive_seed(seed: int, *labels) -> int:
    """Stable 64-bit seed for a named sub-experiment (BLAKE2b of seed and labels)."""
    h = hashlib.blake2b(digest_size=8)
    h.update(struct.pack("<Q", seed & _U64))
    for lab in labels:
        h.update(b"\x1f")
        h.update(repr(lab).encode())
    return int.from_bytes(h.digest(), "little")


@dataclass(frozen=True)
class DistSpec:
    kind: int
    p1: float = 0.0
    p2: float = 0.0

    def __post_init__(self):
        k, a, b = self.kind, self.p1, self.p2
        if not all(map(math.isfinite, (a, b))):
            raise InvalidSpecError(f"non-finite parameter in {self}")
        if k == UNIFORM and not a < b:
            raise InvalidSpecError(f"Uniform requires lo < hi, got ({a}, {b})")
        if k == BERNOULLI and not 0.0 <= a <= 1.0:
            raise InvalidSpecError(f"Bernoulli requires p in [0, 1], got {a}")
        if k == BETA and not (a > 0 and b > 0):
            raise InvalidSpecError(f"Beta requires a, b > 0, got ({a}, {b})")
        if k == GAMMA and not a > 0:
            raise InvalidSpecError(f"Gamma requires shape > 0, got {a}")
        if k == POINT and not 0.0 <= a <= 1.0:
            raise InvalidSpecError(f"PointMass requires c in [0, 1], got {a}")
        if k == TENT and not a > 0:
            raise InvalidSpecError(f"TentPower requires z > 0, got {a}")
        if k not in _KIND_NAMES:
            raise InvalidSpecError(f"unknown distribution kind {k!r}")

    @property
    def name(self) -> str:
        return _KIND_NAMES[self.kind]

    @property
    def params(self) -> tuple:
        if self.kind in (UNIFORM, BETA):
            return (self.p1, self.p2)
        return (self.p1,)

    def as_array(self) -> tuple:
        return (float(self.kind), float(self.p1), float(self.p2))

    def cdf(self, x):
        """Vectorized CDF where a closed form or special function exists."""
        from . import specfun

        x = np.asarray(x, dtype=np.float64)
        k = self.kind
        if k == UNIFORM:
            return np.clip((x - self.p1) / (self.p2 - self.p1), 0.0, 1.0)
        if k == BETA:
            return specfun.beta_cdf(x, self.p1, self.p2)
        if k == GAMMA:
            return specfun.gamma_cdf(x, self.p1)
        if k == TENT:
            return tent_power_cdf(x, self.p1)
        if k == POINT:
            return (x >= self.p1).astype(np.float64)
        return np.where(x < 0, 0.0, np.where(x < 1, 1.0 - self.p1, 1.0))

    def mean(self) -> float:
        k = self.kind
        if k == UNIFORM:
            return (self.p1 + self.p2) / 2
        if k == BETA:
            return self.p1 / (self.p1 + self.p2)
        if k in (GAMMA, BERNOULLI, POINT):
            return self.p1
        return 0.5

    def __str__(self):
        return f"{self.name}({', '.join(f'{p:g}' for p in self.params)})"

    def to_json(self) -> dict:
        return {"law": self.name, "params": list(self.params)}


def Uniform(lo: float = 0.0, hi: float = 1.0) -> DistSpec:
    return DistSpec(UNIFORM, float(lo), float(hi))


def Bernoulli(p: float) -> DistSpec:
    return DistSpec(BERNOULLI, float(p))


def Beta(a: float, b: float) -> DistSpec:
    return DistSpec(BETA, float(a), float(b))


def Gamma(shape: float) -> DistSpec:
    return DistSpec(GAMMA, float(shape))


def PointMass(c: float) -> DistSpec:
    return DistSpec(POINT, float(c))


def TentPower(z: float) -> DistSpec:
    return DistSpec(TENT, float(z))


def draw(spec: DistSpec, key: StreamKey) -> float:
    """One variate of ``spec``; advances ``key.counter`` past the uniforms used."""
    x, key.counter = core.draw_dist(spec.as_array(), key.master_seed,
                                    key.stream_index, key.counter)
    return x


def sample(spec: DistSpec, n: int, seed: int, stream0: int = 0) -> np.ndarray:
    """``n`` variates; element i comes from stream ``stream0 + i`` at counter 0."""
    return core.dist_batch(spec.as_array(), seed, stream0, int(n))


def sample_gamma_shapes(shapes, seed: int, stream0: int = 0) -> np.ndarray:
    """Gamma variates with per-element (possibly random) shapes."""
    shapes = np.asarray(shapes, dtype=np.float64)
    if np.any(~(shapes > 0)):
        raise InvalidSpecError("all gamma shapes must be > 0")
    return core.gamma_shapes_batch(shapes, seed, stream0)


def tent_power_quantile(u: float, z: float) -> float:
    """Inverse of F(s) = (1 - (1-2s)^z)/2 on [0, 1/2), (1 + (2s-1)^z)/2 on [1/2, 1]."""
    if not 0.0 <= u <= 1.0:
        raise ValueError(f"u must lie in [0, 1], got {u!r}")
    if not z > 0:
        raise ValueError(f"z must be > 0, got {z!r}")
    return core.tent_quantile(float(u), float(z))


def tent_power_cdf(s, z: float):
    s = np.clip(np.asarray(s, dtype=np.float64), 0.0, 1.0)
    lower = (1.0 - np.abs(1.0 - 2.0 * s) ** z) / 2.0
    upper = (1.0 + np.abs(2.0 * s - 1.0) ** z) / 2.0
    return np.where(s < 0.5, lower, upper)


def tent_power_density(s, z: float):
    s = np.asarray(s, dtype=np.float64)
    inside = (s > 0) & (s < 1)
    return np.where(inside, z * np.abs(1.0 - 2.0 * s) ** (z - 1.0), 0.0)
