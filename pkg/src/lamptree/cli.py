"""``lamptree`` command line: config-driven experiments with reproducible output.

Exit status: 0 success, 2 configuration error, 3 invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .boundary import (
    STABLE_FRACTION,
    CylinderEvent,
    StripQuery,
    cylinder_events,
    escape_rates,
    simulate_records,
    strip_points_in_ball,
    tally_events,
    verify_strip_equivariance,
)
from .engine import LampWalker
from .potential import (
    BoundaryFunction,
    approach_sequence,
    dirichlet_estimate,
    estimate_green_many,
    mean_value_residual,
)
from .rng import make_rng, pmap, trajectory_seed
from .tree import ROOT, EndPrefix, FreeProductSignature, TreeVertex, format_vertex, parse_vertex
from .walk import MeasureSpec, lazy_tree_walk, measure_from_dict, measure_to_dict, project_measure, sample_increments
from .wreath import (
    BoundaryPoint,
    Configuration,
    GroupElement,
    LamplighterGroup,
    format_element,
    parse_boundary,
    parse_element,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INVARIANT = 3

COMMANDS = ("simulate", "escape", "measure", "green", "dirichlet", "strip", "metric-check")

SCHEMA = {
    "simulate": [
        ("index", "trajectory number i; its seed is derived from (master_seed, i)"),
        ("seed", "64-bit per-trajectory seed"),
        ("horizon", "number of steps n"),
        ("tree_distance", "d(X_n, X_0)"),
        ("distance", "d(Z_n, Z_0) in the lamplighter metric (walk started at the identity)"),
        ("lit_lamps", "|supp(Y_n)|"),
        ("max_increment_lamp_radius", "max_k M_k, farthest lamp switched by a single increment"),
        ("end_depth", "deepest requested depth whose end prefix was stable over the final window"),
        ("lamp_depth", "deepest requested radius whose lamp ball was stable over the final window (-1: none)"),
        ("end_prefix", "stable end prefix, or empty"),
        ("stabilized", "1 if the depth-1 prefix was stable"),
        ("stab_<k>", "last change time of the depth-k prefix or of a lamp in B(o,k); empty if undefined"),
    ],
    "escape": [
        ("n", "steps per trajectory"), ("N", "trajectories"),
        ("ell_hat", "mean d(Z_n,Z_0)/n"), ("ell_se", "standard error of ell_hat"),
        ("m_hat", "mean d(X_n,X_0)/n"), ("m_se", "standard error of m_hat"),
        ("seed", "master seed"),
    ],
    "measure": [
        ("event", "end prefix (with '...') and optional lamp window"),
        ("p_hat", "fraction of trajectories whose limit lies in the event"),
        ("std_err", "binomial standard error"), ("count", "trajectories in the event"),
        ("indeterminate", "trajectories on which the event was not decidable"),
        ("N", "trajectories"), ("seed", "master seed"), ("horizon", "steps per trajectory"),
    ],
    "green": [
        ("x", "start vertex"), ("y", "target vertex"), ("distance", "d(x,y)"),
        ("G_hat", "mean visits to y within the horizon"), ("G_se", "standard error"),
        ("G_half", "same, counting only the first half of the horizon"),
        ("F_hat", "fraction of walks visiting y"), ("F_se", "standard error"),
        ("truncation_suspect", "1 if |G_hat - G_half| > 2 G_se"),
        ("N", "trajectories"), ("seed", "master seed"), ("horizon", "steps per trajectory"),
    ],
    "dirichlet": [
        ("k", "sequence index (depth), or point index"), ("g", "start element config@word"),
        ("h_hat", "mean of f over converged limits"), ("std_err", "standard error"),
        ("indeterminate", "trajectories on which f was not decidable"),
        ("lower", "bound giving indeterminate trajectories min f"),
        ("upper", "bound giving indeterminate trajectories max f"),
        ("target", "f(beta) for sequences, empty for points"),
        ("residual", "mean-value residual |h(g) - sum mu(s) h(gs)|, if requested"),
        ("residual_se", "combined standard error of the residual"),
        ("N", "trajectories"), ("seed", "master seed"), ("horizon", "steps per trajectory"),
    ],
    "strip": [
        ("n", "ball radius"), ("instances", "random (beta, beta_check) pairs"),
        ("max_count", "largest number of strip points over B(o,n)"), ("bound", "2n+1"),
        ("equivariant", "instances where g S(b,b') = S(gb,gb') held"),
    ],
    "metric-check": [
        ("radius", "ball radius around id"), ("elements", "ball size"),
        ("pairs", "ordered pairs compared"), ("mismatches", "pairs where formula != BFS distance"),
    ],
}


class ConfigError(Exception):
    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class InvariantViolation(Exception):
    pass


@dataclass
class ExperimentConfig:
    command: str
    sig: FreeProductSignature
    r: int
    master_seed: int
    format: str
    raw: dict
    measure: dict | None = None
    out: str | None = None
    params: dict = field(default_factory=dict)

    @property
    def group(self) -> LamplighterGroup:
        return LamplighterGroup(self.sig, self.r)

    def mu(self) -> MeasureSpec:
        if self.measure is None:
            raise ConfigError("measure", "required for this command")
        spec = self.measure
        if "file" in spec:
            try:
                spec = json.loads(Path(spec["file"]).read_text())
            except (OSError, json.JSONDecodeError) as e:
                raise ConfigError("measure.file", str(e)) from None
        try:
            mu = measure_from_dict(spec, self.sig, self.r)
        except (KeyError, ValueError, TypeError) as e:
            raise ConfigError("measure", str(e)) from None
        if mu.group != self.group:
            raise ConfigError("measure", "signature/r differ from the top-level ones")
        return mu

    def get(self, name, kind=None, default=..., check=None):
        if name not in self.params:
            if default is ...:
                raise ConfigError(name, "missing required field")
            return default
        val = self.params[name]
        if kind is not None:
            try:
                val = kind(val)
            except (TypeError, ValueError):
                raise ConfigError(name, f"expected {kind.__name__}, got {val!r}") from None
        if check is not None and not check(val):
            raise ConfigError(name, f"invalid value {val!r}")
        return val


_COMMON = {"signature", "r", "measure", "master_seed", "format", "out"}


def parse_config(text: str, command: str) -> ExperimentConfig:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"line {e.lineno} column {e.colno}", e.msg) from None
    if not isinstance(raw, dict):
        raise ConfigError("config", "top level must be a JSON object")
    for key in ("signature", "r", "master_seed"):
        if key not in raw:
            raise ConfigError(key, "missing required field")
    try:
        sig = FreeProductSignature(int(raw["signature"]["a"]), int(raw["signature"]["b"]))
    except (KeyError, TypeError) as e:
        raise ConfigError("signature", f"need {{a, b}}: {e}") from None
    except ValueError as e:
        raise ConfigError("signature", str(e)) from None
    try:
        r = int(raw["r"])
        seed = int(raw["master_seed"])
    except (TypeError, ValueError) as e:
        raise ConfigError("r/master_seed", str(e)) from None
    if r < 2:
        raise ConfigError("r", "must be >= 2")
    if seed < 0:
        raise ConfigError("master_seed", "must be non-negative")
    fmt = raw.get("format", "csv")
    if fmt not in ("csv", "jsonl"):
        raise ConfigError("format", f"expected csv or jsonl, got {fmt!r}")
    params = {k: v for k, v in raw.items() if k not in _COMMON}
    return ExperimentConfig(command, sig, r, seed, fmt, raw, raw.get("measure"), raw.get("out"), params)


# --- output -------------------------------------------------------------------

def render(cfg: ExperimentConfig, rows: list[dict], echo: dict) -> str:
    cols = [c for c, _ in SCHEMA[cfg.command] if not c.startswith("stab_<")]
    extra = [k for k in (rows[0] if rows else {}) if k not in cols]
    cols = [c for c in cols if not rows or c in rows[0]] + extra
    header = json.dumps(echo, sort_keys=True)
    buf = io.StringIO()
    if cfg.format == "jsonl":
        buf.write(header + "\n")
        for row in rows:
            buf.write(json.dumps({c: row.get(c) for c in cols}) + "\n")
    else:
        buf.write("# " + header + "\n")
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for row in rows:
            w.writerow({c: _cell(row.get(c)) for c in cols})
    return buf.getvalue()


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return int(v)
    if isinstance(v, float):
        return repr(v)
    return v


def read_output(path) -> tuple[dict, list[dict]]:
    """Parse a file written by the CLI into (config echo, rows)."""
    lines = Path(path).read_text().splitlines()
    if lines and lines[0].startswith("# "):
        echo = json.loads(lines[0][2:])
        rows = list(csv.DictReader(lines[1:]))
    else:
        echo = json.loads(lines[0])
        rows = [json.loads(l) for l in lines[1:]]
    return echo, rows


# --- commands -----------------------------------------------------------------

def _positive(x):
    return x > 0


def _simulate_row(index, mu, horizon, master_seed, depths, fraction):
    seed = trajectory_seed(master_seed, index)
    inc = sample_increments(mu, horizon, seed)
    walker = LampWalker(mu.compiled, track_depth=max(depths))
    walker.advance(inc.tolist())
    prefix_times, lamp_times, end_depth, lamp_depth = walker.stability(fraction)
    end_depth = max((k for k in depths if k <= end_depth), default=0)
    lamp_depth = max((k for k in depths if k <= lamp_depth), default=-1) if lamp_depth >= 0 else -1
    radius = mu.compiled.lamp_radius
    row = {
        "index": index,
        "seed": seed,
        "horizon": horizon,
        "tree_distance": walker.tree_displacement(),
        "distance": walker.norm(),
        "lit_lamps": len(walker.lamps),
        "max_increment_lamp_radius": max((radius[j] for j in inc.tolist()), default=0),
        "end_depth": end_depth,
        "lamp_depth": lamp_depth,
        "end_prefix": format_vertex(walker.vertex(walker.ancestor(walker.x, end_depth))) + "..." if end_depth else "",
        "stabilized": int(end_depth >= 1),
    }
    for k in depths:
        t = prefix_times.get(k)
        row[f"stab_{k}"] = None if t is None else max(t, lamp_times[k])
    return row


def cmd_simulate(cfg: ExperimentConfig, workers: int):
    mu = cfg.mu()
    N = cfg.get("N", int, check=_positive)
    horizon = cfg.get("horizon", int, check=_positive)
    depths = cfg.get("depths", list, default=[1, 2, 3, 4, 5])
    if not depths or not all(isinstance(k, int) and k >= 1 for k in depths):
        raise ConfigError("depths", "need a non-empty list of positive integers")
    fraction = cfg.get("stable_fraction", float, default=STABLE_FRACTION, check=lambda f: 0 < f < 1)
    fn = _partial(_simulate_row, mu=mu, horizon=horizon, master_seed=cfg.master_seed,
                  depths=sorted(depths), fraction=fraction)
    rows = pmap(fn, range(N), workers)
    bad = [r["index"] for r in rows if r["distance"] < r["tree_distance"]]
    problems = [f"lamplighter distance below tree distance for trajectories {bad}"] if bad else []
    return rows, problems, {"measure_resolved": measure_to_dict(mu)}


def _partial(fn, **kw):
    from functools import partial
    return partial(fn, **kw)


def _check_expect(cfg, values: dict, ses: dict) -> list[str]:
    expect = cfg.get("expect", dict, default={})
    tol = float(expect.get("tol_se", 3.0))
    problems = []
    for name, target in expect.items():
        if name == "tol_se":
            continue
        if name not in values:
            raise ConfigError(f"expect.{name}", f"unknown quantity; choose from {sorted(values)}")
        if abs(values[name] - float(target)) > tol * ses.get(name, 0.0) + 1e-12:
            problems.append(f"{name}={values[name]!r} differs from expected {target} by more than {tol} SE")
    return problems


def cmd_escape(cfg: ExperimentConfig, workers: int):
    mu = cfg.mu()
    n = cfg.get("n", int, check=_positive)
    N = cfg.get("N", int, check=_positive)
    est = escape_rates(mu, n, N, cfg.master_seed, workers)
    row = {"n": n, "N": N, "ell_hat": est.ell_hat, "ell_se": est.ell_se, "m_hat": est.m_hat,
           "m_se": est.m_se, "seed": cfg.master_seed}
    problems = []
    if est.ell_hat < est.m_hat - 3 * est.m_se - 3 * est.ell_se:
        problems.append("ell_hat < m_hat - 3 SE")
    problems += _check_expect(cfg, {"ell": est.ell_hat, "m": est.m_hat}, {"ell": est.ell_se, "m": est.m_se})
    return [row], problems, {"measure_resolved": measure_to_dict(mu)}


def _events(cfg, group) -> tuple[list[CylinderEvent], bool]:
    if "events" in cfg.params:
        evs = []
        for i, e in enumerate(cfg.get("events", list)):
            try:
                prefix = parse_vertex(e.get("prefix", "o"), group.sig)
                lamps = {parse_vertex(w, group.sig): int(st) % group.r for w, st in e.get("lamps", [])}
            except (ValueError, TypeError, AttributeError, IndexError) as err:
                raise ConfigError(f"events[{i}]", str(err)) from None
            evs.append(CylinderEvent.make(prefix, lamps))
        return evs, False
    depth = cfg.get("cylinder_depth", int, default=1, check=_positive)
    return cylinder_events(group, depth), True


def cmd_measure(cfg: ExperimentConfig, workers: int):
    mu = cfg.mu()
    N = cfg.get("N", int, check=_positive)
    horizon = cfg.get("horizon", int, check=_positive)
    fraction = cfg.get("stable_fraction", float, default=STABLE_FRACTION, check=lambda f: 0 < f < 1)
    events, partition = _events(cfg, mu.group)
    depth = max([1] + [0 if e.end_prefix is None else e.end_prefix.depth for e in events]
                + [e.window_radius for e in events])
    recs = simulate_records(mu, horizon, N, cfg.master_seed, depth, None, fraction, workers)
    est = tally_events(recs, events)
    rows = []
    for ev, c, ind, p, se in zip(est.events, est.counts, est.indeterminate, est.p_hat, est.std_err):
        rows.append({"event": str(ev), "p_hat": float(p), "std_err": float(se), "count": c,
                     "indeterminate": ind, "N": N, "seed": cfg.master_seed, "horizon": horizon})
    problems = []
    if partition and sum(est.counts) + est.indeterminate[0] != N:
        problems.append("cylinder partition does not sum to 1 - indeterminate")
    vals = {str(ev): float(p) for ev, p in zip(est.events, est.p_hat)}
    ses = {str(ev): float(s) for ev, s in zip(est.events, est.std_err)}
    problems += _check_expect(cfg, vals, ses)
    return rows, problems, {"measure_resolved": measure_to_dict(mu)}


def cmd_green(cfg: ExperimentConfig, workers: int):
    sig = cfg.sig
    if "tree_walk" in cfg.params:
        theta = cfg.get("tree_walk", dict).get("theta", 1)
        try:
            mt = lazy_tree_walk(sig, theta)
        except ValueError as e:
            raise ConfigError("tree_walk.theta", str(e)) from None
    else:
        mt = project_measure(cfg.mu())
    N = cfg.get("N", int, check=_positive)
    horizon = cfg.get("horizon", int, check=_positive)
    x = parse_vertex(cfg.get("x", str, default="o"), sig)
    if "targets" in cfg.params:
        ys = [parse_vertex(w, sig) for w in cfg.get("targets", list)]
    else:
        ds = cfg.get("distances", list, default=[0, 1, 2, 3, 4])
        ys = [sig.mul(x, sig.ray_vertex(int(d))) for d in ds]
    ests = estimate_green_many(mt, x, ys, N, horizon, cfg.master_seed, workers)
    rows, problems = [], []
    for e in ests:
        rows.append({"x": format_vertex(e.x), "y": format_vertex(e.y), "distance": sig.distance(e.x, e.y),
                     "G_hat": e.G_hat, "G_se": e.G_se, "G_half": e.G_half, "F_hat": e.F_hat, "F_se": e.F_se,
                     "truncation_suspect": int(e.truncation_suspect), "N": N, "seed": cfg.master_seed,
                     "horizon": horizon})
        if not 0 <= e.F_hat <= 1 or e.G_hat < e.F_hat or (e.x == e.y and e.F_hat != 1):
            problems.append(f"kernel invariants fail at y={format_vertex(e.y)}")
    return rows, problems, {"tree_measure": [[format_vertex(v), float(p)] for v, p in mt.atoms]}


def _function(cfg) -> BoundaryFunction:
    try:
        if "function_file" in cfg.params:
            return BoundaryFunction.load(cfg.params["function_file"], cfg.sig)
        return BoundaryFunction.from_dict(cfg.get("function", dict), cfg.sig)
    except ConfigError:
        raise
    except (OSError, KeyError, ValueError, TypeError) as e:
        raise ConfigError("function", str(e)) from None


def cmd_dirichlet(cfg: ExperimentConfig, workers: int):
    mu = cfg.mu()
    G = mu.group
    f = _function(cfg)
    N = cfg.get("N", int, check=_positive)
    horizon = cfg.get("horizon", int, check=_positive)
    residual = bool(cfg.get("residual", default=False))
    targets = []
    try:
        if "sequence" in cfg.params:
            spec = cfg.get("sequence", dict)
            beta = parse_boundary(spec["beta"], G.r, G.sig)
            for k, g in approach_sequence(beta, [int(k) for k in spec["ks"]]):
                targets.append((k, g, f.at(beta)))
        else:
            for i, text in enumerate(cfg.get("points", list, default=["0@o"])):
                targets.append((i, parse_element(text, G.r, G.sig), None))
    except (KeyError, ValueError, TypeError) as e:
        raise ConfigError("sequence/points", str(e)) from None
    lo, hi = min(f.values()), max(f.values())
    rows, problems = [], []
    for k, g, target in targets:
        seed = trajectory_seed(cfg.master_seed, k)
        if residual:
            res = mean_value_residual(mu, f, g, N, horizon, seed, workers)
            est = res.h_g
        else:
            est = dirichlet_estimate(mu, f, g, N, horizon, seed, workers=workers)
        rows.append({"k": k, "g": format_element(g), "h_hat": est.h_hat, "std_err": est.std_err,
                     "indeterminate": est.indeterminate, "lower": est.lower, "upper": est.upper,
                     "target": target, "residual": res.residual if residual else None,
                     "residual_se": res.combined_std_err if residual else None,
                     "N": N, "seed": cfg.master_seed, "horizon": horizon})
        if not math.isnan(est.h_hat) and not lo - 1e-12 <= est.h_hat <= hi + 1e-12:
            problems.append(f"h_hat outside the range of f at k={k}")
        if residual and cfg.get("check_residual", default=False) and res.residual > 3 * res.combined_std_err:
            problems.append(f"mean-value residual exceeds 3 SE at k={k}")
    return rows, problems, {"measure_resolved": measure_to_dict(mu), "function_resolved": f.to_dict()}


def random_word(rng, sig: FreeProductSignature, length: int) -> TreeVertex:
    from .tree import from_letters
    gens = sig.generators
    letters = []
    while len(letters) < length:
        g = gens[int(rng.integers(len(gens)))]
        if letters and sig.letter_inverse(g) == letters[-1]:
            continue
        letters.append(g)
    return from_letters(letters)


def random_config(rng, sig, r, radius, count) -> Configuration:
    lamps = {}
    for _ in range(count):
        v = random_word(rng, sig, int(rng.integers(radius + 1)))
        lamps[v] = int(rng.integers(1, r))
    return Configuration(r, lamps)


def random_strip_instance(rng, group: LamplighterGroup, depth: int, g_radius: int = 3):
    """Random ``(g, beta, beta_check)`` with distinct ends resolved to ``depth``."""
    sig, r = group.sig, group.r
    while True:
        u = random_word(rng, sig, depth)
        v = random_word(rng, sig, depth)
        if u.letters[0] != v.letters[0] or rng.random() < 0.5:
            c = 0
            while c < depth and u.letters[c] == v.letters[c]:
                c += 1
            if c < depth:
                break
    beta = BoundaryPoint(random_config(rng, sig, r, 4, int(rng.integers(0, 5))), EndPrefix(u))
    beta_check = BoundaryPoint(random_config(rng, sig, r, 4, int(rng.integers(0, 5))), EndPrefix(v))
    g = GroupElement(random_config(rng, sig, r, g_radius, int(rng.integers(0, 4))),
                     random_word(rng, sig, int(rng.integers(g_radius + 1))))
    return g, beta, beta_check


def cmd_strip(cfg: ExperimentConfig, workers: int):
    G = cfg.group
    n_max = cfg.get("n_max", int, default=20, check=lambda v: v >= 0)
    instances = cfg.get("instances", int, default=100, check=_positive)
    g_radius = cfg.get("g_radius", int, default=3, check=lambda v: v >= 0)
    rng = make_rng(cfg.master_seed)
    cases = [random_strip_instance(rng, G, n_max + 2 * g_radius + 2, g_radius) for _ in range(instances)]
    rows, problems = [], []
    for n in range(n_max + 1):
        counts, ok = [], 0
        for g, b, bc in cases:
            counts.append(len(strip_points_in_ball(StripQuery(b, bc, n))))
            ok += verify_strip_equivariance(G, g, b, bc, n)
        rows.append({"n": n, "instances": instances, "max_count": max(counts), "bound": 2 * n + 1,
                     "equivariant": ok})
        if max(counts) > 2 * n + 1:
            problems.append(f"strip count {max(counts)} exceeds 2n+1 at n={n}")
        if ok != instances:
            problems.append(f"equivariance failed for {instances - ok} instances at n={n}")
    return rows, problems, {}


def metric_mismatches(group: LamplighterGroup, radius: int) -> tuple[int, int, int]:
    """Compare the tour formula with BFS distances over all pairs in ``B(id, radius)``."""
    ball = group.cayley_ball(radius)
    big = group.cayley_ball(2 * radius)
    elems = list(ball)
    bad = 0
    for g in elems:
        gi = group.inv(g)
        for h in elems:
            if group.distance(g, h) != big[group.mul(gi, h)]:
                bad += 1
    return len(elems), len(elems) ** 2, bad


def cmd_metric_check(cfg: ExperimentConfig, workers: int):
    radius = cfg.get("radius", int, default=4, check=lambda v: 0 <= v <= 6)
    size, pairs, bad = metric_mismatches(cfg.group, radius)
    problems = [f"{bad} pairs disagree with BFS"] if bad else []
    if not bad:
        print("all pairs match")
    return [{"radius": radius, "elements": size, "pairs": pairs, "mismatches": bad}], problems, {}


HANDLERS = {
    "simulate": cmd_simulate,
    "escape": cmd_escape,
    "measure": cmd_measure,
    "green": cmd_green,
    "dirichlet": cmd_dirichlet,
    "strip": cmd_strip,
    "metric-check": cmd_metric_check,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lamptree", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--workers", type=int, default=1, help="worker processes (never changes results)")
    p.add_argument("--out", help="output path (overrides config 'out'; default stdout)")
    p.add_argument("--schema", action="store_true", help="print the output columns and exit")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.schema:
        for col, desc in SCHEMA[args.command]:
            print(f"{col}\t{desc}")
        return EXIT_OK
    if not args.config:
        print("error: --config is required", file=sys.stderr)
        return EXIT_CONFIG
    try:
        text = Path(args.config).read_text()
    except OSError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        cfg = parse_config(text, args.command)
        rows, problems, extra = HANDLERS[args.command](cfg, max(1, args.workers))
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    echo = {"command": args.command, "config": cfg.raw, **extra}
    out = render(cfg, rows, echo)
    path = args.out or cfg.out
    if path:
        Path(path).write_text(out)
    else:
        sys.stdout.write(out)
    if problems:
        for msg in problems:
            print(f"invariant violation: {msg}", file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
