"""Catalog of (A, B) laws whose fixed point X = AX + B(1 - X) is a known beta law.

Each entry wires a mu sampler to the beta law it produces, the matching
gamma law on the gamma side, a nested-interval classification, and the set
of equivalent claims that apply:

* A1'  V1 = A V1 + B V2 in law, (V1, V2) ~ Gamma(a) x Gamma(b)
* A1'' X = A X + B (1 - X) in law, X ~ Beta(a, b)
* A2   backward compositions converge a.s. to a Beta(a, b) point
* A3   the forward chain has stationary law Beta(a, b)
* A4   the gamma-side chain has stationary law Gamma(a)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType

from .ifs import (MuSampler, SchemeClass, mu_cgz, mu_cgz_dual, mu_kennedy, mu_model1,
                  mu_product, mu_scaled, mu_tent)
from .rngdist import Bernoulli, Beta, DistSpec, Gamma, PointMass, Uniform

ALL_CLAIMS = frozenset({"A1'", "A1''", "A2", "A3", "A4"})


class ParameterError(ValueError):
    """Parameters outside the range where a catalog result holds."""


@dataclass(frozen=True)
class ModelCase:
    name: str
    params: MappingProxyType
    mu: MuSampler
    predicted_limit: DistSpec | None
    gamma_limit: DistSpec | None
    classification: SchemeClass | None
    claims: frozenset
    anchor: str
    innovation_shape: float | None = None
    degenerate_limit: DistSpec | None = None

    def __post_init__(self):
        lim = self.predicted_limit
        if lim is not None:
            if lim.name != "Beta" or not (lim.p1 > 0 and lim.p2 > 0):
                raise ValueError(f"predicted limit must be a proper beta law, got {lim}")
            if self.gamma_limit is None or self.gamma_limit.p1 != lim.p1:
                raise ValueError("gamma limit shape must equal the first beta parameter")

    @property
    def label(self) -> str:
        inner = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.name}({inner})"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "params": dict(self.params),
            "mu": str(self.mu),
            "predicted_limit": self.predicted_limit.to_json() if self.predicted_limit else None,
            "gamma_limit": self.gamma_limit.to_json() if self.gamma_limit else None,
            "classification": str(self.classification) if self.classification else None,
            "claims": sorted(self.claims),
            "anchor": self.anchor,
        }


# ---------------------------------------------------------------- validation

def _open01(name, v):
    if not 0.0 < v < 1.0:
        raise ParameterError(f"{name} must lie in (0, 1), got {v!r}")


def _positive(name, v):
    if not (v > 0 and math.isfinite(v)):
        raise ParameterError(f"{name} must be finite and > 0, got {v!r}")


def _closed01(name, v, lo_open=False):
    if not (0.0 < v <= 1.0 if lo_open else 0.0 <= v <= 1.0):
        rng = "(0, 1]" if lo_open else "[0, 1]"
        raise ParameterError(f"{name} must lie in {rng}, got {v!r}")


# ---------------------------------------------------------------- builders
# each returns (mu, predicted Beta pair or None, classification, anchor)

def _m1_t1(p):
    _open01("p", p)
    mu = mu_model1(p, PointMass(1 - p), PointMass(p))
    return mu, (1.0, 1.0), "<S_2, D_I | R_I>", \
        "Bernoulli choice of fixed split at 1-p/p of the current interval gives Beta(1,1)"


def _m1_t2(z, p):
    _positive("z", z)
    _open01("p", p)
    mu = mu_model1(p, Beta(1, z), Beta(1, z))
    cls = "<S_2, R_I | R_I>" if z == 1 else "<G_2, R_I | R_I>"
    return mu, ((1 - p) * z, p * z), cls, \
        "L and R both Beta(1,z), left w.p. p gives Beta((1-p)z, pz)"


def _m1_t3(y, z):
    _positive("y", y)
    _positive("z", z)
    mu = mu_model1(y / (y + z), Beta(1, y + z), Beta(y, z + 1))
    return mu, (z, 1.0), "<G_2, R_I | R_I>", \
        "L ~ Beta(1,y+z), R ~ Beta(y,z+1), p = y/(y+z) gives Beta(z,1)"


def _m1_t4(y, z):
    _positive("y", y)
    _positive("z", z)
    mu = mu_model1(y / (y + z), Beta(z, y + 1), Beta(y, z + 1))
    return mu, (1.0, 1.0), "<G_2, R_I | R_I>", \
        "L ~ Beta(z,y+1), R ~ Beta(y,z+1), p = y/(y+z) gives Beta(1,1)"


def _m1_t5(z):
    _positive("z", z)
    mu = mu_model1(0.5, Beta(1, z), Beta(1, z), 0.5, 0.5)
    return mu, (z + 1, z + 1), "<S_2, R_I | R_I>", \
        "2L and 2R both Beta(1,z), fair choice gives Beta(z+1,z+1)"


def _cgz_tent(z):
    _positive("z", z)
    return mu_tent(z), (z + 1, z + 1), "<S_2, R_I | R_I>", \
        "tent-power split point, larger side kept, gives Beta(z+1,z+1)"


def _cgz_pred(p):
    if p == 1.0:
        return (2.0, 2.0)
    if p == 0.5:
        return (0.5, 0.5)
    return None


def _cgz_classic(p):
    _closed01("p", p, lo_open=True)
    return mu_cgz(p), _cgz_pred(p), "<S_2, R_I | R_I>", \
        "uniform split, larger side kept w.p. p; beta limit only for p in {1/2, 1}"


def _cgz_dual(p):
    _closed01("p", p, lo_open=True)
    return mu_cgz_dual(p), _cgz_pred(p), "<S_2, R_I | R_I>", \
        "fair direction, uniform on near/far half w.p. p/1-p; same limits as the uniform split"


def _kennedy(k, p, q, r):
    if not (k >= 1 and float(k).is_integer()):
        raise ParameterError(f"k must be a positive integer, got {k!r}")
    for name, v in (("p", p), ("q", q), ("r", r)):
        _closed01(name, v)
    if abs(p + q + r - 1.0) > 1e-12:
        raise ParameterError(f"p + q + r must equal 1, got {p + q + r!r}")
    k = int(k)
    a, b = k * (p + r), k * (q + r)
    pred = (a, b) if a > 0 and b > 0 else None
    first = "S" if k == 3 else "G"
    second = "D_I" if 1.0 in (p, q, r) else "R_I"
    return mu_kennedy(k, p, q, r), pred, f"<{first}_3, R_I | {second}>", \
        "extremes of k uniforms, keep [min,1], [0,max], [min,max] w.p. p, q, r; Beta(k(p+r), k(q+r))"


def _m2_dg(w, y, z):
    for name, v in (("w", w), ("y", y), ("z", z)):
        _positive(name, v)
    mu = mu_product(Beta(w, y), Beta(y, z), m2=(w == y == z), m3=(w == z))
    cls = "<G_1, R_I | D_I>" if w == z else None
    return mu, (w + y, y + z), cls, \
        "(A,B) ~ Beta(w,y) x Beta(y,z) independent gives Beta(w+y, y+z)"


def _m2_b1(w, y):
    _positive("w", w)
    _positive("y", y)
    mu = mu_product(Beta(w, y), PointMass(1.0))
    return mu, (w + y, y), "<S_2, R_G | D_G>", \
        "A ~ Beta(w,y), B = 1 gives Beta(w+y, y)"


def _m2_ub(p):
    _open01("p", p)
    mu = mu_product(Uniform(p, 1.0), Bernoulli(1 - p))
    return mu, (2.0, 1.0), None, \
        "A ~ U[p,1], B ~ Bernoulli(1-p) independent gives Beta(2,1)"


def _m2_gb4(y):
    _positive("y", y)
    mu = mu_product(Uniform(0.0, y / (y + 1)), Beta(1, y))
    return mu, (2.0, y + 2), None, \
        "A ~ U[0, y/(y+1)], B ~ Beta(1,y) independent gives Beta(2, y+2)"


def _m2_s24(w, y):
    _positive("w", w)
    _positive("y", y)
    mu = mu_scaled(Beta(w + y, y), Beta(y, w), m1=True)
    return mu, (w + y, w + y), "<G_1, R_I | D_I>", \
        "(A,B) = (A', A'B'), A' ~ Beta(w+y,y), B' ~ Beta(y,w) gives Beta(w+y, w+y)"


CATALOG = {
    "m1_t1": (("p",), _m1_t1),
    "m1_t2": (("z", "p"), _m1_t2),
    "m1_t3": (("y", "z"), _m1_t3),
    "m1_t4": (("y", "z"), _m1_t4),
    "m1_t5": (("z",), _m1_t5),
    "cgz_tent": (("z",), _cgz_tent),
    "cgz_classic": (("p",), _cgz_classic),
    "cgz_dual": (("p",), _cgz_dual),
    "kennedy": (("k", "p", "q", "r"), _kennedy),
    "m2_dg": (("w", "y", "z"), _m2_dg),
    "m2_b1": (("w", "y"), _m2_b1),
    "m2_ub": (("p",), _m2_ub),
    "m2_gb4": (("y",), _m2_gb4),
    "m2_s24": (("w", "y"), _m2_s24),
}

# parameters used by ``list-models`` when none are given
DEFAULT_PARAMS = {
    "m1_t1": {"p": 0.5}, "m1_t2": {"z": 1.0, "p": 0.5}, "m1_t3": {"y": 1.0, "z": 1.0},
    "m1_t4": {"y": 1.0, "z": 1.0}, "m1_t5": {"z": 1.0}, "cgz_tent": {"z": 1.0},
    "cgz_classic": {"p": 1.0}, "cgz_dual": {"p": 1.0},
    "kennedy": {"k": 3, "p": 0.0, "q": 0.0, "r": 1.0},
    "m2_dg": {"w": 1.0, "y": 1.0, "z": 1.0}, "m2_b1": {"w": 1.0, "y": 1.0},
    "m2_ub": {"p": 0.5}, "m2_gb4": {"y": 1.0}, "m2_s24": {"w": 1.0, "y": 1.0},
}


def build_case(name: str, params: dict | None = None, **kw) -> ModelCase:
    """Wire catalog entry ``name`` at ``params``; raises ParameterError on bad ranges."""
    if name not in CATALOG:
        raise ParameterError(f"unknown model {name!r}; choose from {', '.join(CATALOG)}")
    keys, builder = CATALOG[name]
    given = dict(params or {}, **kw)
    extra = set(given) - set(keys)
    if extra:
        raise ParameterError(f"{name} takes parameters {keys}, got unexpected {sorted(extra)}")
    missing = [k for k in keys if k not in given]
    if missing:
        raise ParameterError(f"{name} is missing parameter(s) {missing}")
    vals = {k: float(given[k]) for k in keys}
    mu, pred, cls, anchor = builder(*vals.values())
    if pred is not None:
        limit, glimit, shape = Beta(*pred), Gamma(pred[0]), float(pred[1])
    else:
        limit = glimit = shape = None
    claims = ALL_CLAIMS if (limit is not None and mu.satisfies_c1 and mu.satisfies_c2) \
        else frozenset()
    degenerate = None
    if name == "kennedy" and pred is None:
        # k(q+r) = 0 pins the limit at 1, k(p+r) = 0 pins it at 0
        degenerate = PointMass(1.0 if vals["q"] + vals["r"] == 0 else 0.0)
    return ModelCase(name=name, params=MappingProxyType(vals), mu=mu, predicted_limit=limit,
                     gamma_limit=glimit, classification=SchemeClass.parse(cls) if cls else None,
                     claims=claims, anchor=anchor, innovation_shape=shape,
                     degenerate_limit=degenerate)


def predicted_limit(case: ModelCase) -> DistSpec | None:
    return case.predicted_limit


def perpetuity_form(case: ModelCase):
    """(C, D) laws with X = (1 - C) X + C D in law, where the catalog provides one."""
    if case.name == "m1_t2":
        z, p = case.params["z"], case.params["p"]
        return Beta(1, z), Bernoulli(1 - p)
    if case.name == "m2_s24":
        w, y = case.params["w"], case.params["y"]
        return Beta(2 * y, w), Beta(y, y)
    return None


def list_models() -> list[dict]:
    """One row per catalog entry at its default parameters."""
    rows = []
    for name, (keys, _) in CATALOG.items():
        case = build_case(name, DEFAULT_PARAMS[name])
        rows.append({
            "name": name,
            "params": ",".join(keys),
            "example": case.label,
            "predicted_limit": str(case.predicted_limit) if case.predicted_limit else "none",
            "classification": str(case.classification) if case.classification else "none",
            "anchor": case.anchor,
        })
    return rows
