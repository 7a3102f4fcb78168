"""Distributional identities checked by simulating both sides.

Every side is a list of named random components plus a vectorized
combination.  When one side is a named law the check is a one-sample KS
test of the simulated side against that CDF; otherwise both sides are
simulated and compared by two-sample KS.  Components draw from their own
derived seeds, so a case's verdict depends only on (seed, case label).
"""

from __future__ import annotations

import fnmatch
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from types import MappingProxyType
from typing import Callable

import numpy as np

from . import models
from ._core import core
from .models import ParameterError, _positive
from .rngdist import (Bernoulli, Beta, DistSpec, Gamma, StreamKey, Uniform, derive_seed,
                      sample, sample_gamma_shapes)
from .stats import KsReport, ingest, ks_one_sample, ks_two_sample

MANIFEST_VERSION = 1
MIN_N = 10_000

Component = Callable[[int, int, dict], np.ndarray]


def law(spec: DistSpec) -> Component:
    return lambda n, seed, drawn: sample(spec, n, seed)


def gamma_with_shape(scale: float, shape_from: str) -> Component:
    """Gamma(scale * U) where U is an earlier component of the same side."""
    return lambda n, seed, drawn: sample_gamma_shapes(scale * drawn[shape_from], seed)


def urn(black: float, white: float, n_draws: int) -> Component:
    return lambda n, seed, drawn: core.polya_batch(black, white, n_draws, seed, 0, n)


def mu_pairs(mu) -> Component:
    """Two consecutive components A, B share one draw of (A, B) ~ mu."""
    def draw(n, seed, drawn):
        a, b = mu.sample_many(n, seed)
        drawn["B"] = b
        return a
    return draw


@dataclass(frozen=True)
class Side:
    components: tuple  # of (label, Component)
    combine: Callable[[dict], np.ndarray]
    text: str

    def simulate(self, n: int, seed: int, tag: str) -> np.ndarray:
        drawn: dict = {}
        for label, comp in self.components:
            drawn[label] = comp(n, derive_seed(seed, tag, label), drawn)
        return np.asarray(self.combine(drawn), dtype=np.float64)


@dataclass(frozen=True)
class IdentityCase:
    name: str
    params: MappingProxyType
    lhs: Side
    rhs: Side | None
    rhs_law: DistSpec | None
    anchor: str

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}"
                         for k, v in self.params.items())
        return f"{self.name}({inner})"

    def _scalar(self, side: Side, key: StreamKey, tag: str) -> float:
        seed = derive_seed(key.master_seed, key.stream_index, key.counter)
        key.counter += 1
        return float(side.simulate(1, seed, tag)[0])

    def lhs_gen(self, key: StreamKey) -> float:
        return self._scalar(self.lhs, key, "lhs")

    def rhs_gen(self, key: StreamKey) -> float:
        if self.rhs is None:
            seed = derive_seed(key.master_seed, key.stream_index, key.counter)
            key.counter += 1
            return float(sample(self.rhs_law, 1, seed)[0])
        return self._scalar(self.rhs, key, "rhs")


def _case(name, params, lhs, rhs, anchor):
    if isinstance(rhs, DistSpec):
        return IdentityCase(name, MappingProxyType(params), lhs, None, rhs, anchor)
    return IdentityCase(name, MappingProxyType(params), lhs, rhs, None, anchor)


# ---------------------------------------------------------------- builders

def _model_case(model, params):
    case = models.build_case(model, params)
    if case.predicted_limit is None:
        raise ParameterError(f"{case.label} has no beta fixed point to test")
    return case


def id_a1prime(model: str, **params) -> IdentityCase:
    case = _model_case(model, params)
    a, b = case.predicted_limit.p1, case.predicted_limit.p2
    lhs = Side((("A", mu_pairs(case.mu)), ("V1", law(Gamma(a))), ("V2", law(Gamma(b)))),
               lambda d: d["A"] * d["V1"] + d["B"] * d["V2"], "A V1 + B V2")
    return _case("id_a1prime", {"model": model, **case.params}, lhs, Gamma(a),
                 f"gamma solution of V1 = A V1 + B V2 for {case.label}")


def id_a1doubleprime(model: str, **params) -> IdentityCase:
    case = _model_case(model, params)
    lhs = Side((("A", mu_pairs(case.mu)), ("X", law(case.predicted_limit))),
               lambda d: d["A"] * d["X"] + d["B"] * (1.0 - d["X"]), "A X + B (1 - X)")
    return _case("id_a1doubleprime", {"model": model, **case.params}, lhs, case.predicted_limit,
                 f"beta solution of X = A X + B (1 - X) for {case.label}")


def id_perp(z: float, p: float) -> IdentityCase:
    case = models.build_case("m1_t2", {"z": z, "p": p})
    c_law, d_law = models.perpetuity_form(case)
    lhs = Side((("C", law(c_law)), ("D", law(d_law)), ("X", law(case.predicted_limit))),
               lambda d: (1.0 - d["C"]) * d["X"] + d["C"] * d["D"], "(1 - C) X + C D")
    return _case("id_perp", {"z": z, "p": p}, lhs, case.predicted_limit,
                 "perpetuity X = (1 - C) X + C D, (C, D) ~ Beta(1,z) x Bernoulli(1-p)")


def id_polya(b: float, w: float) -> IdentityCase:
    _positive("b", b)
    _positive("w", w)
    lhs = Side((("I", law(Bernoulli(b / (b + w)))), ("Xb", law(Beta(b + 1, w))),
                ("Xw", law(Beta(b, w + 1)))),
               lambda d: d["I"] * d["Xb"] + (1.0 - d["I"]) * d["Xw"], "I Xb + (1 - I) Xw")
    return _case("id_polya", {"b": b, "w": w}, lhs, Beta(b, w),
                 "first-draw decomposition of the urn limit")


def id_randgam(y: float) -> IdentityCase:
    _positive("y", y)
    lhs = Side((("U", law(Uniform())), ("G", law(Gamma(y + 1)))),
               lambda d: d["U"] * d["G"], "U Gamma(y+1)")
    rhs = Side((("U", law(Uniform())), ("G1", law(Gamma(1.0))), ("U1", law(Uniform())),
                ("GU", gamma_with_shape(y, "U1"))),
               lambda d: d["U"] * d["G1"] + d["GU"], "U Gamma(1) + Gamma(y U1)")
    return _case("id_randgam", {"y": y}, lhs, rhs, "random-shape gamma relation")


def id_randgam_exp() -> IdentityCase:
    lhs = Side((("U", law(Uniform())), ("G1", law(Gamma(1.0))), ("U1", law(Uniform())),
                ("GU", gamma_with_shape(1.0, "U1"))),
               lambda d: d["U"] * d["G1"] + d["GU"], "U Gamma(1) + Gamma(U1)")
    return _case("id_randgam_exp", {}, lhs, Gamma(1.0), "exponential case y = 1")


def id_asl_full() -> IdentityCase:
    lhs = Side((("U", law(Uniform())), ("I", law(Bernoulli(0.5))), ("T", law(Beta(0.5, 0.5)))),
               lambda d: d["U"] * d["T"] + d["I"] * (1.0 - d["T"]), "U T + I (1 - T)")
    return _case("id_asl_full", {}, lhs, Beta(0.5, 0.5), "arcsine law from uniform split")


def id_asl_neg() -> IdentityCase:
    lhs = Side((("U", law(Uniform())), ("T", law(Beta(0.5, 0.5)))),
               lambda d: d["U"] * d["T"], "U T")
    return _case("id_asl_neg", {}, lhs, Beta(0.5, 1.5), "uniform times arcsine")


def id_bga_prod(a: float, b: float, c: float) -> IdentityCase:
    for k, v in (("a", a), ("b", b), ("c", c)):
        _positive(k, v)
    lhs = Side((("A", law(Beta(a + b, c))), ("B", law(Beta(a, b)))),
               lambda d: d["A"] * d["B"], "A B")
    return _case("id_bga_prod", {"a": a, "b": b, "c": c}, lhs, Beta(a, b + c),
                 "product of independent betas")


def id_bga_gamma(a: float, b: float) -> IdentityCase:
    _positive("a", a)
    _positive("b", b)
    lhs = Side((("X", law(Beta(a, b))), ("Y", law(Gamma(a + b)))),
               lambda d: d["X"] * d["Y"], "X Y")
    return _case("id_bga_gamma", {"a": a, "b": b}, lhs, Gamma(a), "beta times gamma")


def id_gb4(w: float, y: float) -> IdentityCase:
    _positive("w", w)
    _positive("y", y)
    lhs = Side((("A", law(Uniform(0.0, y / (w + y)))), ("B", law(Beta(w, y))),
                ("V1", law(Gamma(2.0))), ("V2", law(Gamma(w + y + 1)))),
               lambda d: d["A"] * d["V1"] + d["B"] * d["V2"], "A V1 + B V2")
    return _case("id_gb4", {"w": w, "y": y}, lhs, Gamma(w + 1),
                 "uniform-beta gamma-side relation")


POLYA_DRAWS = 2000


def id_polya_limit(b: float, w: float, n_draws: int = POLYA_DRAWS) -> IdentityCase:
    _positive("b", b)
    _positive("w", w)
    lhs = Side((("P", urn(b, w, n_draws)),), lambda d: d["P"], f"urn proportion after {n_draws}")
    return _case("id_polya_limit", {"b": b, "w": w}, lhs, Beta(b, w),
                 "urn proportion converges to Beta(b, w)")


def id_dufresne(w: float, y: float) -> IdentityCase:
    _positive("w", w)
    _positive("y", y)
    x_law = Beta(w + y, w + y)
    lhs = Side((("X", law(x_law)), ("V1", law(Gamma(y))), ("V2", law(Gamma(w))),
                ("V3", law(Gamma(y)))),
               lambda d: d["X"] * (d["V1"] + d["V2"] + d["V3"]), "X (V1 + V2 + V3)")
    rhs = Side((("X", law(x_law)), ("V1", law(Gamma(y))), ("V2", law(Gamma(w)))),
               lambda d: d["X"] * d["V2"] + d["V1"], "X V2 + V1")
    return _case("id_dufresne", {"w": w, "y": y}, lhs, rhs, "symmetric beta-gamma relation")


BUILDERS = {
    "id_a1prime": id_a1prime, "id_a1doubleprime": id_a1doubleprime, "id_perp": id_perp,
    "id_polya": id_polya, "id_randgam": id_randgam, "id_randgam_exp": id_randgam_exp,
    "id_asl_full": id_asl_full, "id_asl_neg": id_asl_neg, "id_bga_prod": id_bga_prod,
    "id_bga_gamma": id_bga_gamma, "id_gb4": id_gb4, "id_polya_limit": id_polya_limit,
    "id_dufresne": id_dufresne,
}

_MODEL_GRID = (
    {"model": "m1_t1", "p": 0.5},
    {"model": "m1_t3", "y": 2.0, "z": 0.7},
    {"model": "m2_dg", "w": 2.0, "y": 1.0, "z": 3.0},
)

# default parameter grid; bump MANIFEST_VERSION whenever this changes
MANIFEST = (
    [("id_a1prime", g) for g in _MODEL_GRID]
    + [("id_a1doubleprime", g) for g in _MODEL_GRID]
    + [("id_perp", {"z": z, "p": p}) for z, p in ((1.0, 0.5), (2.0, 0.3), (0.5, 0.8))]
    + [("id_polya", {"b": b, "w": w}) for b, w in ((1.0, 1.0), (2.0, 3.0), (0.5, 1.5))]
    + [("id_randgam", {"y": y}) for y in (0.5, 1.0, 2.0)]
    + [("id_randgam_exp", {}), ("id_asl_full", {}), ("id_asl_neg", {})]
    + [("id_bga_prod", {"a": a, "b": b, "c": c})
       for a, b, c in ((1.0, 1.0, 1.0), (2.0, 0.5, 1.5), (0.7, 2.0, 3.0))]
    + [("id_bga_gamma", {"a": a, "b": b}) for a, b in ((1.0, 1.0), (2.0, 0.5), (0.7, 3.0))]
    + [("id_gb4", {"w": w, "y": y}) for w, y in ((1.0, 1.0), (2.0, 0.5), (0.5, 3.0))]
    # shapes >= 1: the N-draw proportion misses O(N**-min(b, w)) of limit mass near 0 and 1
    + [("id_polya_limit", {"b": b, "w": w}) for b, w in ((1.0, 1.0), (2.0, 3.0), (3.0, 1.5))]
    + [("id_dufresne", {"w": w, "y": y}) for w, y in ((1.0, 1.0), (2.0, 1.0), (0.5, 1.5))]
)


def build_identity(name: str, params: dict | None = None) -> IdentityCase:
    if name not in BUILDERS:
        raise ParameterError(f"unknown identity {name!r}; choose from {', '.join(BUILDERS)}")
    try:
        return BUILDERS[name](**(params or {}))
    except TypeError as exc:
        raise ParameterError(f"{name}: {exc}") from None


def simulate_sides(case: IdentityCase, n: int, seed: int):
    """(lhs samples, rhs samples or None) for ``n`` replicates."""
    left = case.lhs.simulate(n, seed, "lhs")
    right = case.rhs.simulate(n, seed, "rhs") if case.rhs is not None else None
    return left, right


def check_identity(case: IdentityCase, n: int, alpha: float, key: StreamKey) -> KsReport:
    if n < MIN_N:
        raise ValueError(f"n must be at least {MIN_N}, got {n}")
    seed = derive_seed(key.master_seed, key.stream_index, key.counter, case.label)
    left, right = simulate_sides(case, n, seed)
    if right is None:
        return ks_one_sample(ingest(left), case.rhs_law.cdf, alpha, test=case.label)
    return ks_two_sample(ingest(left), ingest(right), alpha, test=case.label)


def run_suite(pattern: str = "*", n: int = 100_000, alpha: float = 0.001, seed: int = 42,
              workers: int = 1) -> list[KsReport]:
    """Check every manifest entry whose identity name (or label) matches ``pattern``."""
    cases = [build_identity(name, params) for name, params in MANIFEST]
    cases = [c for c in cases
             if fnmatch.fnmatchcase(c.name, pattern) or fnmatch.fnmatchcase(c.label, pattern)]

    def one(c):
        return check_identity(c, n, alpha, StreamKey(seed))
    if workers > 1 and len(cases) > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(one, cases))
    return [one(c) for c in cases]
