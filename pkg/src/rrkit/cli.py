"""Command-line front end: scenario files, campaigns, reports and plots.

Verbs:
  eval     evaluate one family's bound constants on a scenario
  project  rate-pair projection of the chosen region, pre- and post-reduction
  compare  mutual containment of two projected regions, with witnesses
  verify   run one machine check (see rrkit.verify) and write its report
  union    sampled union approximation of a region family over distributions
  plot     render region JSON files as an SVG

Exit codes: 0 ok, 1 verification failure, 2 usage/parse error, 3 invalid
model, 4 incompatible comparison.  All outputs are deterministic for fixed
inputs, flags and seeds; RRK_THREADS caps worker processes for campaigns.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import regions
from .polytope import (InequalitySystem, Polytope2D, UnboundedRegionError,
                       VariableMismatchError, contains, convex_hull,
                       remove_redundant, vertices2d)
from .prob import FORMS, JointDistribution, ModelError, compose, sample_factors
from .verify import CHECKS, TOL_IDENTITY, TOL_POLYTOPE, run_check

FAMILIES = ("hod", "dmt", "rtd", "hod1")
_FAMILY_SYSTEM = {"hod": "thm3-quadruple", "dmt": "dmt-quadruple",
                  "rtd": "rtd-quintuple", "hod1": "thm5-quadruple"}
_FAMILY_EQ = {"hod": regions.HOD_EQ, "dmt": regions.DMT_EQ,
              "rtd": {k: k for k in regions.RTD_TERMS}, "hod1": regions.HOD1_EQ}

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_MODEL, EXIT_COMPARE = 0, 1, 2, 3, 4


class ScenarioError(ValueError):
    """Scenario file is malformed (missing/unknown keys, bad shapes)."""


@dataclass
class UnionApproximation:
    """Sampled approximation of a region family's union over distributions."""

    family: str
    seed: int
    sample_polytopes: list[Polytope2D]
    hull: list[tuple[float, float]]

    def to_json_dict(self, name: str) -> dict:
        return {
            "name": name, "family": self.family,
            "samples": len(self.sample_polytopes), "seed": self.seed,
            "per_sample": [{"index": i, "kind": p.kind,
                            "vertices": [[x, y] for x, y in p.vertices]}
                           for i, p in enumerate(self.sample_polytopes)],
            "vertices": [[x, y] for x, y in self.hull],
        }


@dataclass
class Scenario:
    form: str
    sizes: dict[str, int]
    overrides: dict[str, np.ndarray] = field(default_factory=dict)
    count: int = 50
    seed: int = 0
    tol_polytope: float = TOL_POLYTOPE
    tol_identity: float = TOL_IDENTITY

    def draw(self, index: int) -> JointDistribution:
        spec = FORMS[self.form]
        factors = sample_factors(spec, self.sizes, self.seed, index, self.overrides)
        return compose(factors, spec, self.sizes)


_SCENARIO_KEYS = {"form", "alphabets", "channel", "factors", "sampling", "tol"}


def load_scenario(path: str) -> Scenario:
    with open(path) as fh:
        raw = json.load(fh)  # json.JSONDecodeError carries line/column
    if not isinstance(raw, dict):
        raise ScenarioError(f"{path}: top level must be a JSON object")
    unknown = set(raw) - _SCENARIO_KEYS
    if unknown:
        raise ScenarioError(f"{path}: unknown keys {sorted(unknown)}")
    for key in ("alphabets", "channel", "factors", "sampling", "tol"):
        if key in raw and not isinstance(raw[key], dict):
            raise ScenarioError(f"{path}: {key!r} must be a JSON object")
    form = raw.get("form")
    if form not in FORMS:
        raise ScenarioError(f"{path}: form must be one of {sorted(FORMS)}, got {form!r}")
    spec = FORMS[form]
    sizes = {n: 2 for n in spec.variables}
    if "Q" in sizes:
        sizes["Q"] = 1
    for name, size in raw.get("alphabets", {}).items():
        if name not in sizes:
            raise ScenarioError(f"{path}: alphabet for unknown variable {name!r}")
        sizes[name] = int(size)
    overrides: dict[str, np.ndarray] = {}
    channel = raw.get("channel")
    if channel is not None:
        if "kernel" not in channel:
            raise ScenarioError(f"{path}: channel block needs a 'kernel' array")
        for key, var in (("x1", "X1"), ("x2", "X2"), ("y1", "Y1"), ("y2", "Y2")):
            if key in channel:
                sizes[var] = int(channel[key])
        shape = tuple(sizes[v] for v in ("X1", "X2", "Y1", "Y2"))
        kernel = np.asarray(channel["kernel"], dtype=float)
        if kernel.size != int(np.prod(shape)):
            raise ScenarioError(
                f"{path}: kernel has {kernel.size} entries, expected {np.prod(shape)}")
        overrides["p(Y1,Y2|X1,X2)"] = kernel.reshape(shape)
    labels = {f.label(): f for f in spec.factors}
    for key, flat in raw.get("factors", {}).items():
        label = key if key.startswith("p(") else f"p({key})"
        if label not in labels:
            raise ScenarioError(f"{path}: factor {key!r} not in form {form}; "
                                f"expected one of {sorted(labels)}")
        f = labels[label]
        shape = tuple(sizes[n] for n in f.given) + tuple(sizes[n] for n in f.targets)
        table = np.asarray(flat, dtype=float)
        if table.size != int(np.prod(shape)):
            raise ScenarioError(
                f"{path}: factor {key!r} has {table.size} entries, expected {np.prod(shape)}")
        overrides[label] = table.reshape(shape)
    sampling = raw.get("sampling", {})
    tol = raw.get("tol", {})
    return Scenario(form, sizes, overrides,
                    count=int(sampling.get("count", 50)),
                    seed=int(sampling.get("seed", 0)),
                    tol_polytope=float(tol.get("polytope", TOL_POLYTOPE)),
                    tol_identity=float(tol.get("identity", TOL_IDENTITY)))


def constants_for(d: JointDistribution, family: str) -> regions.BoundConstants:
    fn = {"hod": regions.hod_constants, "dmt": regions.dmt_constants,
          "rtd": regions.rtd_constants, "hod1": regions.hod1_constants}[family]
    return fn(d)


def reduced_ratepair(consts: regions.BoundConstants, family: str,
                     tol: float) -> tuple[InequalitySystem, InequalitySystem]:
    """(pre-reduction projection, reduced system) over (R1, R2)."""
    quad = regions.build_system(consts, _FAMILY_SYSTEM[family])
    raw = regions.project_to_ratepair(quad)
    return raw, remove_redundant(raw, tol)


def _rows_json(sys: InequalitySystem) -> list[dict]:
    return [{"label": r.label,
             "coeffs": [str(c) for c in r.coeffs],
             "bound": float(r.bound)} for r in sys.rows]


def _dump_json(obj, path: str | None):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def _vertices_csv(vertices) -> str:
    lines = ["R1,R2"]
    lines += [f"{x:.12g},{y:.12g}" for x, y in vertices]
    return "\n".join(lines) + "\n"


# --- SVG rendering ------------------------------------------------------------

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_VIEW_W, _VIEW_H = 800, 600
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 80, 24, 24, 56


def render_svg(named_regions: list[tuple[str, list[tuple[float, float]]]]) -> str:
    """Deterministic SVG: one polygon per region, axes in bits, legend."""
    all_pts = [p for _, verts in named_regions for p in verts]
    max_x = max([x for x, _ in all_pts] + [1e-9]) * 1.05
    max_y = max([y for _, y in all_pts] + [1e-9]) * 1.05
    plot_w = _VIEW_W - _MARGIN_L - _MARGIN_R
    plot_h = _VIEW_H - _MARGIN_T - _MARGIN_B
    to_px = lambda x, y: (_MARGIN_L + x / max_x * plot_w,
                          _VIEW_H - _MARGIN_B - y / max_y * plot_h)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{_VIEW_W}" '
           f'height="{_VIEW_H}" viewBox="0 0 {_VIEW_W} {_VIEW_H}">',
           f'<rect width="{_VIEW_W}" height="{_VIEW_H}" fill="white"/>']
    ox, oy = to_px(0, 0)
    out.append(f'<line x1="{ox:.2f}" y1="{oy:.2f}" x2="{_VIEW_W - _MARGIN_R}" '
               f'y2="{oy:.2f}" stroke="black"/>')
    out.append(f'<line x1="{ox:.2f}" y1="{oy:.2f}" x2="{ox:.2f}" '
               f'y2="{_MARGIN_T}" stroke="black"/>')
    for i in range(6):
        fx = max_x * i / 5
        fy = max_y * i / 5
        px, _ = to_px(fx, 0)
        _, py = to_px(0, fy)
        out.append(f'<line x1="{px:.2f}" y1="{oy:.2f}" x2="{px:.2f}" '
                   f'y2="{oy + 5:.2f}" stroke="black"/>')
        out.append(f'<text x="{px:.2f}" y="{oy + 20:.2f}" font-size="12" '
                   f'text-anchor="middle">{fx:.3f}</text>')
        out.append(f'<line x1="{ox - 5:.2f}" y1="{py:.2f}" x2="{ox:.2f}" '
                   f'y2="{py:.2f}" stroke="black"/>')
        out.append(f'<text x="{ox - 8:.2f}" y="{py + 4:.2f}" font-size="12" '
                   f'text-anchor="end">{fy:.3f}</text>')
    out.append(f'<text x="{_MARGIN_L + plot_w / 2:.2f}" y="{_VIEW_H - 12}" '
               f'font-size="14" text-anchor="middle">R1 (bits)</text>')
    out.append(f'<text x="18" y="{_MARGIN_T + plot_h / 2:.2f}" font-size="14" '
               f'text-anchor="middle" transform="rotate(-90 18 '
               f'{_MARGIN_T + plot_h / 2:.2f})">R2 (bits)</text>')
    for i, (name, verts) in enumerate(named_regions):
        color = _PALETTE[i % len(_PALETTE)]
        if verts:
            pts = " ".join(f"{px:.3f},{py:.3f}" for px, py in (to_px(x, y) for x, y in verts))
            out.append(f'<polygon points="{pts}" fill="{color}" fill-opacity="0.25" '
                       f'stroke="{color}" stroke-width="2"/>')
        ly = _MARGIN_T + 18 + 18 * i
        out.append(f'<rect x="{_VIEW_W - _MARGIN_R - 150}" y="{ly - 10}" width="12" '
                   f'height="12" fill="{color}" fill-opacity="0.5"/>')
        out.append(f'<text x="{_VIEW_W - _MARGIN_R - 132}" y="{ly}" '
                   f'font-size="12">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# --- verbs --------------------------------------------------------------------

def _load(args) -> Scenario:
    scenario = load_scenario(args.scenario)
    if getattr(args, "seed", None) is not None:
        scenario.seed = args.seed
    return scenario


def cmd_eval(args) -> int:
    scenario = _load(args)
    d = scenario.draw(args.index)
    consts = constants_for(d, args.family)
    eq = _FAMILY_EQ[args.family]
    print(f"family={args.family} form={scenario.form} (bits)")
    for label, value in consts.values.items():
        print(f"  {label:<4} {eq[label]:<6} {value: .12f}")
    _dump_json({"family": args.family, "form": scenario.form,
                "constants": consts.values, "equations": eq}, args.out)
    return EXIT_OK


def cmd_project(args) -> int:
    scenario = _load(args)
    d = scenario.draw(args.index)
    consts = constants_for(d, args.family)
    tol = args.tol_polytope if args.tol_polytope is not None else scenario.tol_polytope
    raw, reduced = reduced_ratepair(consts, args.family, tol)
    poly = vertices2d(reduced, tol)
    name = os.path.splitext(os.path.basename(args.scenario))[0]
    out = {"name": f"{name}:{args.family}",
           "family": args.family,
           "pre_reduction": _rows_json(raw),
           "reduced": _rows_json(reduced),
           "kind": poly.kind,
           "vertices": [[x, y] for x, y in poly.vertices]}
    print(f"projection: {len(raw.rows)} rows pre-reduction, "
          f"{len(reduced.rows)} after; region kind: {poly.kind}")
    _dump_json(out, args.out)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(_vertices_csv(poly.vertices))
    return EXIT_OK


def cmd_compare(args) -> int:
    scenario_a = _load(args)
    scenario_b = load_scenario(args.scenario_b) if args.scenario_b else scenario_a
    if args.scenario_b and args.seed is not None:
        scenario_b.seed = args.seed
    family_b = args.family_b or args.family
    if scenario_b is scenario_a and family_b == args.family:
        raise ScenarioError("compare needs two scenarios or two families")
    tol = args.tol_polytope if args.tol_polytope is not None else scenario_a.tol_polytope
    da, db = scenario_a.draw(args.index), scenario_b.draw(args.index)
    _, sys_a = reduced_ratepair(constants_for(da, args.family), args.family, tol)
    _, sys_b = reduced_ratepair(constants_for(db, family_b), family_b, tol)
    try:
        a_has_b, wit_ab = contains(sys_a, sys_b, tol)
        b_has_a, wit_ba = contains(sys_b, sys_a, tol)
    except VariableMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPARE
    out = {"a": args.family, "b": family_b,
           "a_contains_b": a_has_b, "b_contains_a": b_has_a,
           "witness_outside_a": wit_ab, "witness_outside_b": wit_ba}
    if a_has_b and not b_has_a:
        out["strict"] = "a > b"
        out["witness_strict"] = wit_ba  # in a, violates b
    elif b_has_a and not a_has_b:
        out["strict"] = "b > a"
        out["witness_strict"] = wit_ab
    elif a_has_b and b_has_a:
        out["strict"] = "equal"
    else:
        out["strict"] = "incomparable"
    print(f"{args.family} contains {family_b}: {a_has_b}; "
          f"{family_b} contains {args.family}: {b_has_a} ({out['strict']})")
    _dump_json(out, args.out)
    return EXIT_OK


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("RRK_THREADS", "1")))
    except ValueError:
        return 1


def cmd_verify(args) -> int:
    kwargs = dict(samples=args.samples, seed=args.seed,
                  tol_polytope=args.tol_polytope if args.tol_polytope is not None
                  else TOL_POLYTOPE,
                  tol_identity=args.tol_identity if args.tol_identity is not None
                  else TOL_IDENTITY)
    n = _threads()
    if n > 1:
        try:
            with ProcessPoolExecutor(max_workers=n) as pool:
                report = run_check(args.check, mapper=lambda f, it: list(pool.map(f, it)),
                                   **kwargs)
        except OSError:
            report = run_check(args.check, **kwargs)
    else:
        report = run_check(args.check, **kwargs)
    print(report.summary())
    for key, val in sorted(report.details.items()):
        if key == "infeasible_source":
            print(f"  {key}: {val['count']} samples diverge one-sidedly (witnessed)")
        elif isinstance(val, dict) and val and all(isinstance(v, float) for v in val.values()):
            worst = max(val.values())
            print(f"  {key}: worst {worst:.3e}")
    out = args.out or f"verify-{args.check}.json"
    _dump_json(report.to_json_dict(), out)
    print(f"report written to {out}")
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_union(args) -> int:
    scenario = _load(args)
    samples = args.samples if args.samples is not None else scenario.count
    seed = scenario.seed
    tol = args.tol_polytope if args.tol_polytope is not None else scenario.tol_polytope
    polys: list[Polytope2D] = []
    points: list[tuple[float, float]] = []
    for i in range(samples):
        d = scenario.draw(i)
        consts = constants_for(d, args.family)
        _, reduced = reduced_ratepair(consts, args.family, tol)
        poly = vertices2d(reduced, tol)
        polys.append(poly)
        points.extend(poly.vertices)
    union = UnionApproximation(args.family, seed, polys, convex_hull(points))
    name = os.path.splitext(os.path.basename(args.scenario))[0]
    out = union.to_json_dict(f"union:{name}:{args.family}")
    print(f"union of {samples} samples: hull has {len(union.hull)} vertices")
    _dump_json(out, args.out)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(_vertices_csv(union.hull))
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(render_svg([(out["name"], union.hull)]))
    return EXIT_OK


def cmd_plot(args) -> int:
    named = []
    for path in args.regions:
        with open(path) as fh:
            data = json.load(fh)
        if "vertices" not in data:
            raise ScenarioError(f"{path}: no 'vertices' key")
        name = data.get("name") or os.path.splitext(os.path.basename(path))[0]
        named.append((name, [(float(x), float(y)) for x, y in data["vertices"]]))
    svg = render_svg(named)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rrkit",
        description="Achievable rate regions: evaluate, project, compare, verify.")
    parser.add_argument("--tol-polytope", type=float, default=None,
                        help="tolerance for polytope comparisons (default 1e-9)")
    parser.add_argument("--tol-identity", type=float, default=None,
                        help="tolerance for identity checks (default 1e-12)")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_scenario(p, with_family=True):
        p.add_argument("scenario", help="scenario JSON file")
        if with_family:
            p.add_argument("--family", choices=FAMILIES, required=True)
        p.add_argument("--index", type=int, default=0,
                       help="sample index within the scenario's stream")
        p.add_argument("--seed", type=int, default=None,
                       help="override the scenario's sampling seed")
        p.add_argument("--out", default=None, help="write JSON output here")

    p = sub.add_parser("eval", help="evaluate bound constants")
    add_scenario(p)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("project", help="rate-pair projection of a region")
    add_scenario(p)
    p.add_argument("--csv", default=None, help="write vertex CSV here")
    p.set_defaults(fn=cmd_project)

    p = sub.add_parser("compare", help="containment of two projected regions")
    add_scenario(p)
    p.add_argument("scenario_b", nargs="?", default=None,
                   help="second scenario (defaults to the first)")
    p.add_argument("--family-b", choices=FAMILIES, default=None)
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("verify", help="run a machine check")
    p.add_argument("check", choices=sorted(CHECKS))
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("union", help="sampled union approximation over inputs")
    add_scenario(p)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--csv", default=None)
    p.add_argument("--svg", default=None)
    p.set_defaults(fn=cmd_union)

    p = sub.add_parser("plot", help="render region JSON files as SVG")
    p.add_argument("regions", nargs="+", help="region JSON files")
    p.add_argument("--out", default=None, help="write SVG here (default stdout)")
    p.set_defaults(fn=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except json.JSONDecodeError as exc:
        print(f"error: parse failure at line {exc.lineno}, column {exc.colno}: "
              f"{exc.msg}", file=sys.stderr)
        return EXIT_USAGE
    except (ScenarioError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ModelError, UnboundedRegionError) as exc:
        print(f"error: invalid model: {exc}", file=sys.stderr)
        return EXIT_MODEL
    except VariableMismatchError as exc:
        print(f"error: incompatible comparison: {exc}", file=sys.stderr)
        return EXIT_COMPARE


if __name__ == "__main__":
    sys.exit(main())
