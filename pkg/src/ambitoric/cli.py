"""Command-line front end.

Spec files are JSON objects with rational numbers written as strings:

    {
      "q": ["0", "1", "0"],
      "A": ["-12", "10", "-2"],
      "B": ["0", "-2", "-2"],
      "x_interval": ["2", "3"],
      "y_interval": ["-1", "0"],
      "lattice": [["1", "0"], ["0", "1"]],
      "metric": "g0"            # or "g+", "g-", {"gp": ["0","0","1"]}
    }

Interval endpoints accept "inf" / "-inf".  Exit codes: 0 success,
1 negative classification verdict, 2 input error, 3 internal invariant
failure.  The default sampling density can be set with AMBITORIC_GRID.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from .quadratics import Mobius, Quadratic, Quartic, rat
from .ansatz import (
    AnsatzSpec,
    Interval,
    MetricChoice,
    ValidationError,
    conformal_factor,
    fibre_volume,
    mobius_transport,
    validate,
)
from .tensors import (
    FIELDS,
    FramePoint,
    eval_field,
    kaehler_volume_coefficient,
    omega_top_coefficient,
)
from .moment import (
    MomentError,
    convexity_check,
    fold_conic,
    hamiltonian_residual,
    level_set_line,
    moment_map,
)
from .classify import classify
from .special import (
    CSCData,
    EXTERIOR,
    INTERIOR,
    KerrParams,
    csc_construct,
    kerr,
    standard_polygon,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INVARIANT = 3


def _default_grid() -> int:
    try:
        return int(os.environ.get("AMBITORIC_GRID", "24"))
    except ValueError:
        return 24


def _load_spec(path: str) -> AnsatzSpec:
    with open(path) as fh:
        return AnsatzSpec.from_dict(json.load(fh))


def _dump_json(obj, path: Optional[str]):
    text = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# SVG emission (deterministic, fixed precision)
# ---------------------------------------------------------------------------

def _svg_document(width: float, height: float, body: List[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" '
            f'width="{width:.0f}" height="{height:.0f}" '
            f'viewBox="0 0 {width:.0f} {height:.0f}">')
    return "\n".join([head] + body + ["</svg>", ""])


class _Viewport:
    """Affine map from moment coordinates to SVG pixels."""

    def __init__(self, pts: List[Tuple[float, float]], size: float = 480.0,
                 margin: float = 40.0):
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        self.x0, self.x1 = min(xs), max(xs)
        self.y0, self.y1 = min(ys), max(ys)
        span = max(self.x1 - self.x0, self.y1 - self.y0, 1e-9)
        self.scale = (size - 2 * margin) / span
        self.margin = margin
        self.size = size

    def map(self, p: Tuple[float, float]) -> Tuple[float, float]:
        u = self.margin + (p[0] - self.x0) * self.scale
        v = self.size - self.margin - (p[1] - self.y0) * self.scale
        return u, v

    def polyline(self, pts, color: str, width: float = 1.5) -> str:
        coords = " ".join(f"{u:.3f},{v:.3f}" for u, v in map(self.map, pts))
        return (f'<polyline fill="none" stroke="{color}" '
                f'stroke-width="{width:.1f}" points="{coords}"/>')

    def dots(self, pts, color: str, r: float = 1.6) -> str:
        parts = []
        for p in pts:
            u, v = self.map(p)
            parts.append(f'<circle cx="{u:.3f}" cy="{v:.3f}" r="{r:.1f}" '
                         f'fill="{color}"/>')
        return "\n".join(parts)


def _conic_polylines(conic, box) -> List[List[Tuple[float, float]]]:
    """Trace the conic {v^T Q v = 0} inside the bounding box by sampling
    mu1 and solving the per-column quadratic in mu2."""
    if conic.matrix is None:
        return []
    Q = [[float(c) for c in row] for row in conic.matrix]
    (x0, x1), (y0, y1) = box
    branches: List[List[Tuple[float, float]]] = [[], []]
    n = 400
    for i in range(n + 1):
        m1 = x0 + (x1 - x0) * i / n
        a = Q[1][1]
        b = 2.0 * (Q[0][1] * m1 + Q[1][2])
        c = Q[0][0] * m1 * m1 + 2.0 * Q[0][2] * m1 + Q[2][2]
        if abs(a) < 1e-14:
            if abs(b) > 1e-14:
                m2 = -c / b
                if y0 <= m2 <= y1:
                    branches[0].append((m1, m2))
            continue
        disc = b * b - 4.0 * a * c
        if disc < 0:
            continue
        sq = math.sqrt(disc)
        for j, m2 in enumerate(((-b - sq) / (2 * a), (-b + sq) / (2 * a))):
            if y0 <= m2 <= y1:
                branches[j].append((m1, m2))
    return [br for br in branches if len(br) >= 2]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_validate(args) -> int:
    spec = _load_spec(args.spec)
    comps = validate(spec, grid=args.grid)
    out = [{"sign_xy": c.sign_xy, "sign_q": c.sign_q} for c in comps]
    _dump_json({"conic_type": spec.ctype, "components": out}, args.out)
    return EXIT_OK


def _cmd_eval(args) -> int:
    spec = _load_spec(args.spec)
    x, y = (float(v) for v in args.at.split(","))
    fields = [args.field] if args.field else list(FIELDS)
    out = {"x": x, "y": y, "f": float(conformal_factor(spec, x, y))}
    for f in fields:
        if f == "gp" and spec.metric.tag != "gp":
            continue
        blk = eval_field(spec, f, FramePoint(x, y))
        out[f] = [[float(v) for v in row] for row in blk.components]
    _dump_json(out, args.out)
    return EXIT_OK


def _cmd_check(args) -> int:
    spec = _load_spec(args.spec)
    comps = validate(spec, grid=args.grid)
    rng = np.random.default_rng(7)
    passed = failed = 0
    failures: List[str] = []

    def record(name: str, ok: bool, detail: str = ""):
        nonlocal passed, failed
        if ok:
            passed += 1
        else:
            failed += 1
            failures.append(f"{name}: {detail}")

    comp = comps[0]
    pts = comp.sample_points(6)
    idx = rng.permutation(len(pts))[: min(12, len(pts))]
    for k in idx:
        x, y = pts[int(k)]
        pt = FramePoint(x, y)
        Jp = eval_field(spec, "J+", pt).components
        Jm = eval_field(spec, "J-", pt).components
        record("J+^2=-Id", float(np.max(np.abs(Jp @ Jp + np.eye(4)))) < 1e-8)
        record("J-J+ commute",
               float(np.max(np.abs(Jp @ Jm - Jm @ Jp))) < 1e-8)
        gp = eval_field(spec, "g+", pt).components
        wp = eval_field(spec, "omega+", pt).components
        record("omega+=g+J+", float(np.max(np.abs(gp @ Jp - wp))) < 1e-8)
        f = conformal_factor(spec, x, y)
        g0 = eval_field(spec, "g0", pt).components
        record("g0=f g+", float(np.max(np.abs(g0 - f * gp))) < 1e-8)
        for s, ex in (("+", -2), ("-", 2)):
            lhs = omega_top_coefficient(spec, s, x, y)
            rhs = (f ** ex / (float(spec.A(x)) * float(spec.B(y)))
                   * kaehler_volume_coefficient(spec, s, x, y))
            record(f"omega{s}^2 identity",
                   abs(lhs - rhs) < 1e-8 * max(1.0, abs(lhs)))
        record("fibre volume relation",
               abs(fibre_volume(spec, MetricChoice("g0"), x, y) ** 2
                   - fibre_volume(spec, MetricChoice("g+"), x, y)
                   * fibre_volume(spec, MetricChoice("g-"), x, y))
               < 1e-6 * max(1.0, fibre_volume(spec, MetricChoice("g0"), x, y) ** 2))
        for s in ("+", "-"):
            res = hamiltonian_residual(spec, s, (Fraction(1), Fraction(0)), x, y)
            record(f"Hamiltonian mu{s}", res < 1e-5, f"residual {res:g}")
    report = {"passed": passed, "failed": failed, "failures": failures}
    _dump_json(report, args.out)
    return EXIT_OK if failed == 0 else EXIT_INVARIANT


def _cmd_classify(args) -> int:
    spec = _load_spec(args.spec)
    results = classify(spec, numeric_folds=not args.no_numeric)
    out = []
    all_ok = True
    for comp, verdict in results:
        all_ok = all_ok and verdict.completable
        d = verdict.to_dict()
        d["component"] = {"sign_xy": comp.sign_xy, "sign_q": comp.sign_q}
        out.append(d)
    _dump_json({"metric": spec.metric.tag, "verdicts": out}, args.out)
    return EXIT_OK if all_ok else EXIT_NEGATIVE


def _cmd_moment(args) -> int:
    spec = _load_spec(args.spec)
    comps = validate(spec, grid=args.grid)
    sign = args.sign
    rows: List[Tuple[float, float, float, float]] = []
    for comp in comps:
        for x, y in comp.sample_points(args.grid):
            try:
                mp = moment_map(spec, sign, x, y)
            except MomentError:
                continue
            rows.append((x, y, float(mp.mu1), float(mp.mu2)))
    conic = fold_conic(spec, sign)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write("x,y,mu1,mu2\n")
            for r in rows:
                fh.write(",".join(f"{v:.12g}" for v in r) + "\n")
    if conic.matrix is not None:
        conic_out = [[str(c) for c in row] for row in conic.matrix]
    else:
        conic_out = {"points": [[str(a), str(b)] for a, b in conic.points]}
    if args.svg:
        mus = [(r[2], r[3]) for r in rows]
        vp = _Viewport(mus)
        body = [vp.dots(mus, "#3465a4")]
        box = ((vp.x0, vp.x1), (vp.y0, vp.y1))
        for br in _conic_polylines(conic, box):
            body.append(vp.polyline(br, "#cc0000"))
        for axis, iv in (("X", spec.x_interval), ("Y", spec.y_interval)):
            for g in iv.endpoints_proj():
                try:
                    line = level_set_line(spec, sign, axis, g)
                except (MomentError, ValueError):
                    continue
                body.append(vp.polyline(
                    _line_segment(line, box), "#4e9a06", 1.0))
        with open(args.svg, "w") as fh:
            fh.write(_svg_document(vp.size, vp.size, body))
    _dump_json({"sign": sign, "samples": len(rows), "conic": conic_out},
               args.out)
    return EXIT_OK


def _line_segment(line, box):
    (x0, x1), (y0, y1) = box
    n1, n2 = (float(v) for v in line.normal)
    c = float(line.offset)
    pts = []
    if abs(n2) > abs(n1):
        for m1 in (x0, x1):
            pts.append((m1, (c - n1 * m1) / n2))
    else:
        for m2 in (y0, y1):
            pts.append(((c - n2 * m2) / n1, m2))
    return pts


def _cmd_kerr(args) -> int:
    params = KerrParams(rat(args.mass), rat(args.alpha))
    region = EXTERIOR if args.region == "exterior" else INTERIOR
    spec = kerr(params, region)
    _dump_json(spec.to_dict(), args.out)
    return EXIT_OK


def _cmd_examples(args) -> int:
    name = args.name
    if name in ("kerr", "kerr-exterior", "kerr-interior"):
        region = INTERIOR if name == "kerr-interior" else EXTERIOR
        spec = kerr(KerrParams(1, Fraction(1, 2)), region)
        _dump_json(spec.to_dict(), args.out)
        return EXIT_OK
    if name == "cp2" or name.startswith("hirzebruch:"):
        poly, lattice = standard_polygon(name)
        if args.format == "svg":
            vp = _Viewport(list(poly.vertices))
            ring = list(poly.vertices) + [poly.vertices[0]]
            body = [vp.polyline(ring, "#204a87", 2.0)]
            conic_box = ((vp.x0, vp.x1), (vp.y0, vp.y1))
            for br in _conic_polylines(_HYPERBOLA, conic_box):
                body.append(vp.polyline(br, "#cc0000"))
            text = _svg_document(vp.size, vp.size, body)
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return EXIT_OK
        out = {
            "vertices": [[f"{v[0]:.12g}", f"{v[1]:.12g}"] for v in poly.vertices],
            "normals": [[str(n[0]), str(n[1])] for n in poly.normals],
            "lattice": [[str(v) for v in row] for row in lattice],
        }
        _dump_json(out, args.out)
        return EXIT_OK
    if name.startswith("csc:"):
        return _cmd_csc_gen_from(name.split(":", 1)[1], args.out)
    raise ValidationError(f"unknown example {name!r}")


class _HyperbolaConic:
    # 4 mu1 mu2 + 1 = 0 in the homogeneous matrix convention
    matrix = ((Fraction(0), Fraction(2), Fraction(0)),
              (Fraction(2), Fraction(0), Fraction(0)),
              (Fraction(0), Fraction(0), Fraction(1)))


_HYPERBOLA = _HyperbolaConic()


def _cmd_gauge(args) -> int:
    spec = _load_spec(args.spec)
    a, b, c, d = (rat(v) for v in args.mobius.split(","))
    spec2 = mobius_transport(spec, Mobius(a, b, c, d))
    _dump_json(spec2.to_dict(), args.out)
    return EXIT_OK


def _cmd_csc_gen_from(path: str, out: Optional[str]) -> int:
    with open(path) as fh:
        d = json.load(fh)
    data = CSCData(
        q=Quadratic(*d["q"]),
        p=Quadratic(*d["p"]),
        rho=Quadratic(*d["rho"]),
        R=Quartic(*d["R"]),
    )
    kwargs = {}
    if "x_interval" in d:
        kwargs["x_interval"] = Interval(
            None if d["x_interval"][0] == "-inf" else rat(d["x_interval"][0]),
            None if d["x_interval"][1] == "inf" else rat(d["x_interval"][1]))
    if "y_interval" in d:
        kwargs["y_interval"] = Interval(
            None if d["y_interval"][0] == "-inf" else rat(d["y_interval"][0]),
            None if d["y_interval"][1] == "inf" else rat(d["y_interval"][1]))
    if "lattice" in d:
        kwargs["lattice"] = tuple(tuple(rat(v) for v in row)
                                  for row in d["lattice"])
    spec, report = csc_construct(data, **kwargs)
    obj = spec.to_dict()
    obj["report"] = {"einstein": report.einstein, "csc": report.csc}
    _dump_json(obj, out)
    return EXIT_OK


def _cmd_csc_gen(args) -> int:
    return _cmd_csc_gen_from(args.data, args.out)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ambitoric",
        description="Ambitoric ansatz geometry: validation, tensors, moment "
                    "maps, completability classification.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("spec", help="spec JSON file")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--grid", type=int, default=_default_grid())

    p = sub.add_parser("validate", help="list sign components")
    common(p)
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("eval", help="tensor blocks at a point")
    common(p)
    p.add_argument("--at", required=True, help="x,y")
    p.add_argument("--field", default=None, choices=list(FIELDS))
    p.set_defaults(fn=_cmd_eval)

    p = sub.add_parser("check", help="invariant suite with pass/fail counts")
    common(p)
    p.add_argument("--h", type=float, default=1e-3)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("classify", help="completability verdicts")
    common(p)
    p.add_argument("--no-numeric", action="store_true",
                   help="skip the numerical r-exponent confirmation")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("moment", help="moment-map samples, conic, figures")
    common(p)
    p.add_argument("--sign", default="+", choices=["+", "-"])
    p.add_argument("--csv", default=None)
    p.add_argument("--svg", default=None)
    p.set_defaults(fn=_cmd_moment)

    p = sub.add_parser("kerr", help="emit a Kerr spec file")
    common(p, spec=False)
    p.add_argument("--mass", default="1")
    p.add_argument("--alpha", default="1/2")
    p.add_argument("--region", default="exterior",
                   choices=["exterior", "interior"])
    p.set_defaults(fn=_cmd_kerr)

    p = sub.add_parser("examples", help="named example registry")
    common(p, spec=False)
    p.add_argument("name", help="kerr | kerr-interior | cp2 | hirzebruch:k | csc:<file>")
    p.add_argument("--format", default="json", choices=["json", "svg"])
    p.set_defaults(fn=_cmd_examples)

    p = sub.add_parser("gauge", help="Mobius-transport a spec file")
    common(p)
    p.add_argument("--mobius", required=True, help="a,b,c,d")
    p.set_defaults(fn=_cmd_gauge)

    p = sub.add_parser("csc-gen", help="build a CSC/Einstein spec from data")
    common(p, spec=False)
    p.add_argument("data", help="CSC data JSON file")
    p.set_defaults(fn=_cmd_csc_gen)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ValidationError, MomentError, ValueError, OSError,
            json.JSONDecodeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as err:
        print(f"internal invariant failure: {err}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
