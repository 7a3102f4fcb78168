"""Command-line experiment runner.

Exit status: 0 when every report passes, 1 when a statistical check fails,
2 for configuration errors, 3 when an iteration fails to converge.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field

from . import identities, ifs, models, verify
from .specfun import NoConvergenceError
from .stats import ingest, ks_one_sample

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3
COMMANDS = ("list-models", "run-forward", "run-backward", "run-gamma-chain", "run-matrix",
            "check-identity", "verify")
DEFAULT_SEED = 42


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    model: str | None = None
    params: dict = field(default_factory=dict)
    n_steps: int = 200
    n_samples: int = 10_000
    seed: int = DEFAULT_SEED
    alpha: float = 0.001
    tol: float = ifs.DEFAULT_TOL
    max_steps: int = ifs.DEFAULT_MAX_STEPS
    out_path: str | None = None
    format: str = "csv"
    workers: int = 1
    x0: float | None = None

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"command: unknown {self.command!r}")
        if self.n_samples < 1:
            raise ConfigError(f"n_samples: must be >= 1, got {self.n_samples}")
        if self.n_steps < 0:
            raise ConfigError(f"n_steps: must be >= 0, got {self.n_steps}")
        if not 0.0 < self.alpha < 1.0:
            raise ConfigError(f"alpha: must lie in (0, 1), got {self.alpha}")
        if not self.tol > 0:
            raise ConfigError(f"tol: must be > 0, got {self.tol}")
        if self.max_steps < 1:
            raise ConfigError(f"max_steps: must be >= 1, got {self.max_steps}")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"seed: must be a 64-bit unsigned integer, got {self.seed}")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format: must be csv or json, got {self.format!r}")
        if self.workers < 1:
            raise ConfigError(f"workers: must be >= 1, got {self.workers}")
        if self.command.startswith("run-") and not self.model:
            raise ConfigError("model: required for " + self.command)


def parse_params(text: str | None) -> dict:
    """``k=v,k=v`` into a dict; values are floats except for a ``model`` key."""
    out: dict = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise ConfigError(f"params: expected key=value, got {item!r}")
        k, v = (s.strip() for s in item.split("=", 1))
        if k == "model":
            out[k] = v
            continue
        try:
            out[k] = float(v)
        except ValueError:
            raise ConfigError(f"params: {k} must be a number, got {v!r}") from None
    return out


def _seed_default():
    env = os.environ.get("BETAFLOW_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env, 0)
    except ValueError:
        raise ConfigError(f"seed: BETAFLOW_SEED must be an integer, got {env!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="betaflow", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, samples=True):
        sp.add_argument("--seed", type=int, default=None,
                        help="64-bit master seed (default: $BETAFLOW_SEED or 42)")
        sp.add_argument("--alpha", type=float, default=0.001)
        sp.add_argument("--workers", type=int, default=1)
        if samples:
            sp.add_argument("--model", required=True)
            sp.add_argument("--params", default="")
            sp.add_argument("--n-samples", type=int, default=10_000)
            sp.add_argument("--out", default=None, help="sample file; '-' for stdout")
            sp.add_argument("--format", choices=("csv", "json"), default="csv")

    lm = sub.add_parser("list-models", help="print the model catalog")
    lm.add_argument("--format", choices=("table", "json"), default="table")

    fw = sub.add_parser("run-forward", help="forward chain samples X_n")
    common(fw)
    fw.add_argument("--n-steps", type=int, default=200)
    fw.add_argument("--x0", type=float, default=0.5)

    bw = sub.add_parser("run-backward", help="backward nested-interval limits")
    common(bw)
    bw.add_argument("--tol", type=float, default=ifs.DEFAULT_TOL)
    bw.add_argument("--max-steps", type=int, default=ifs.DEFAULT_MAX_STEPS,
                    help="per-replicate step cap; exceeding it exits with status 3")

    gc = sub.add_parser("run-gamma-chain", help="gamma-side chain samples")
    common(gc)
    gc.add_argument("--n-steps", type=int, default=200)
    gc.add_argument("--x0", type=float, default=None, help="start point (default: mean of Gamma(a))")

    mx = sub.add_parser("run-matrix", help="converged left products of stochastic matrices")
    common(mx)
    mx.add_argument("--tol", type=float, default=ifs.DEFAULT_TOL)
    mx.add_argument("--max-steps", type=int, default=ifs.DEFAULT_MAX_STEPS,
                    help="per-replicate step cap; exceeding it exits with status 3")

    ci = sub.add_parser("check-identity", help="KS check of distributional identities")
    common(ci, samples=False)
    ci.add_argument("--model", default="*",
                    help="identity name, or a pattern to run the default grid")
    ci.add_argument("--params", default="")
    ci.add_argument("--n-samples", type=int, default=100_000)
    ci.add_argument("--out", default=None, help="JSON report file")

    vf = sub.add_parser("verify", help="run the fixed-seed acceptance suite")
    common(vf, samples=False)
    vf.add_argument("--out", default="verify.json")
    return p


def config_from_args(ns) -> RunConfig:
    seed = ns.seed if getattr(ns, "seed", None) is not None else _seed_default()
    cfg = RunConfig(command=ns.command, seed=seed)
    for attr, name in (("model", "model"), ("n_steps", "n_steps"), ("n_samples", "n_samples"),
                       ("alpha", "alpha"), ("tol", "tol"), ("max_steps", "max_steps"),
                       ("out", "out_path"),
                       ("workers", "workers"), ("x0", "x0")):
        if hasattr(ns, attr):
            setattr(cfg, name, getattr(ns, attr))
    if getattr(ns, "format", None) in ("csv", "json"):
        cfg.format = ns.format
    cfg.params = parse_params(getattr(ns, "params", ""))
    cfg.validate()
    return cfg


# ---------------------------------------------------------------- output

def format_samples(values, cfg: RunConfig, label: str) -> str:
    if cfg.format == "csv":
        rows = ["index,value"] + [f"{i},{float(v)!r}" for i, v in enumerate(values)]
        return "\n".join(rows) + "\n"
    doc = {"metadata": {"model": cfg.model, "label": label, "params": cfg.params,
                        "seed": cfg.seed, "n": len(values), "command": cfg.command},
           "values": [float(v) for v in values]}
    return json.dumps(doc, sort_keys=True) + "\n"


def _emit(text: str, path: str | None):
    if path is None:
        return
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# ---------------------------------------------------------------- commands

def _list_models(fmt) -> int:
    rows = models.list_models()
    if fmt == "json":
        print(json.dumps(rows, indent=1))
        return EXIT_OK
    cols = ("name", "params", "predicted_limit", "classification", "anchor")
    widths = {c: max(len(c), *(len(r[c]) for r in rows)) for c in cols[:-1]}
    print("  ".join(c.ljust(widths.get(c, 0)) for c in cols))
    for r in rows:
        print("  ".join(r[c].ljust(widths.get(c, 0)) for c in cols))
    return EXIT_OK


def _run_process(cfg: RunConfig) -> int:
    try:
        case = models.build_case(cfg.model, cfg.params)
    except models.ParameterError as exc:
        raise ConfigError(f"params: {exc}") from None
    cmd = cfg.command
    target = case.predicted_limit
    if cmd == "run-forward":
        x = ifs.forward_samples(case.mu, cfg.x0, cfg.n_steps, cfg.n_samples, cfg.seed,
                                workers=cfg.workers)
    elif cmd == "run-backward":
        x = ifs.backward_samples(case.mu, cfg.n_samples, cfg.seed, tol=cfg.tol,
                                 max_steps=cfg.max_steps, workers=cfg.workers)
    elif cmd == "run-matrix":
        x = ifs.left_product_samples(case.mu, cfg.n_samples, cfg.seed, tol=cfg.tol,
                                     max_steps=cfg.max_steps, workers=cfg.workers)
    else:
        if case.gamma_limit is None:
            raise ConfigError(f"model: {case.label} has no gamma-side law to simulate")
        x0 = cfg.x0 if cfg.x0 is not None else case.gamma_limit.p1
        x = ifs.gamma_forward_samples(case.mu, case.innovation_shape, x0, cfg.n_steps,
                                      cfg.n_samples, cfg.seed, workers=cfg.workers)
        target = case.gamma_limit
    _emit(format_samples(x, cfg, case.label), cfg.out_path)
    head = f"{cmd} {case.label} n={cfg.n_samples} seed={cfg.seed}"
    if target is None or cfg.n_samples < 10:
        print(f"{head}: no predicted law to test against", file=sys.stderr)
        return EXIT_OK
    rep = ks_one_sample(ingest(x), target.cdf, cfg.alpha, test=f"{case.label} vs {target}")
    print(f"{head}: KS vs {target} D={rep.statistic:.5f} crit={rep.critical:.5f} "
          f"{'pass' if rep.passed else 'FAIL'}", file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _check_identity(cfg: RunConfig) -> int:
    if cfg.n_samples < identities.MIN_N:
        raise ConfigError(f"n_samples: identity checks need at least {identities.MIN_N}")
    name = cfg.model or "*"
    try:
        if name in identities.BUILDERS:
            params = cfg.params or None
            if params is None:
                grid = [p for n, p in identities.MANIFEST if n == name]
                cases = [identities.build_identity(name, p) for p in grid]
            else:
                cases = [identities.build_identity(name, params)]
            from .rngdist import StreamKey
            reports = [identities.check_identity(c, cfg.n_samples, cfg.alpha,
                                                 StreamKey(cfg.seed)) for c in cases]
        else:
            reports = identities.run_suite(name, cfg.n_samples, cfg.alpha, cfg.seed,
                                           cfg.workers)
    except models.ParameterError as exc:
        raise ConfigError(f"params: {exc}") from None
    text = json.dumps([r.to_json() for r in reports], sort_keys=True, indent=1) + "\n"
    _emit(text, cfg.out_path)
    for r in reports:
        print(r.summary(), file=sys.stderr)
    fails = sum(not r.passed for r in reports)
    print(f"check-identity {name}: {len(reports) - fails}/{len(reports)} pass", file=sys.stderr)
    return EXIT_OK if fails == 0 else EXIT_FAIL


def _verify(cfg: RunConfig) -> int:
    def progress(c):
        print(f"  criterion {c['id']}: {'ok' if c['pass'] else 'FAIL'} "
              f"({c['n_tests'] - c['n_fail']}/{c['n_tests']}) {c['title']}", file=sys.stderr)
    verdict = verify.run_acceptance(cfg.seed, cfg.alpha, cfg.workers, progress=progress)
    verify.write_verdict(verdict, cfg.out_path or "verify.json")
    print(verify.summary_line(verdict))
    return EXIT_OK if verdict["pass"] else EXIT_FAIL


def execute(cfg: RunConfig) -> int:
    if cfg.command == "list-models":
        return _list_models("table")
    if cfg.command == "check-identity":
        return _check_identity(cfg)
    if cfg.command == "verify":
        return _verify(cfg)
    return _run_process(cfg)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if ns.command == "list-models":
            return _list_models(ns.format)
        return execute(config_from_args(ns))
    except ConfigError as exc:
        print(f"betaflow: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ifs.ConvergenceError, ifs.DriftError, NoConvergenceError) as exc:
        print(f"betaflow: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ifs.PreconditionError as exc:
        print(f"betaflow: config error: model: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
