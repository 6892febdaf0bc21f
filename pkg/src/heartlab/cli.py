"""Command-line front end: batch verification commands with JSON reports.

Exit codes: 0 when every requested check passes, 1 when a verified
counterexample is found, 2 on usage errors.  Coweights are comma-separated
rationals ("2", "-1/3"); a coordinate count matching the finite vertex set is
read in the finite fundamental-coweight basis and embedded, a full-length one
in the affine basis (override with --basis).  Set HEARTLAB_CACHE_DIR to keep
root enumerations on disk between runs.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
from fractions import Fraction
from pathlib import Path

from .borel import (
    character_n_ell_J,
    check_chain_and_union,
    pbw_character,
    positivity_axioms,
)
from .cartan import CartanData, ConfigurationError, build_cartan, finite_roots
from .chambers import check_roundtrip, locate_heart_cone
from .elliptic import check_classical_relations
from .lattices import (
    canonical_pairing,
    coweight,
    embed_finite_coweight,
    finite_coweight,
    vadd,
    vscale,
)
from .preproj import Rep, hn_filtration
from .stability import DOWN, UP, CentralCharge, normalize_stability, verify_slicing
from .weyl import longest_element, reduced_word


class UsageError(ValueError):
    pass


def _parse_coweight(cd: CartanData, text: str, basis: str | None):
    coords = [Fraction(part) for part in text.split(",")]
    if basis == "lambda" or (basis is None and len(coords) == cd.e):
        if len(coords) != cd.e:
            raise UsageError(f"expected {cd.e} finite coordinates, got {len(coords)}")
        return embed_finite_coweight(cd, finite_coweight(coords))
    if len(coords) != cd.n:
        raise UsageError(f"expected {cd.n} coordinates, got {len(coords)}")
    return coweight(coords)


def _parse_finite(cd: CartanData, text: str):
    coords = [Fraction(part) for part in text.split(",")]
    if len(coords) != cd.e:
        raise UsageError(f"expected {cd.e} finite coordinates, got {len(coords)}")
    return finite_coweight(coords)


def _parse_subset(cd: CartanData, text: str):
    if not text:
        return ()
    out = tuple(sorted(int(x) for x in text.split(",")))
    if any(i not in cd.finite_vertices for i in out):
        raise UsageError(f"subset {out} not within the finite vertices")
    return out


def _parse_range(text: str):
    if ".." in text:
        lo, hi = text.split("..")
        return range(int(lo), int(hi) + 1)
    value = int(text)
    return range(value, value + 1)


def _warm_cache(cd: CartanData) -> None:
    cache_dir = os.environ.get("HEARTLAB_CACHE_DIR")
    if not cache_dir:
        finite_roots(cd)
        return
    path = Path(cache_dir) / f"{cd.dynkin}.json"
    if path.exists():
        data = json.loads(path.read_text())
        computed = sorted(list(v) for v in finite_roots(cd))
        if data.get("finite_roots") != computed:
            raise RuntimeError(f"stale root cache at {path}")
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {
        "type": str(cd.dynkin),
        "finite_roots": sorted(list(v) for v in finite_roots(cd)),
        "w0_word": list(reduced_word(cd, longest_element(cd))),
    }
    path.write_text(json.dumps(payload))


def _emit(report, out: str | None) -> None:
    text = json.dumps(report, indent=2, default=str)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# fan rendering


def _slice_embedding(cd: CartanData):
    """2D coordinates for the level-one slice (rank at most 3)."""
    if cd.n == 2:
        corners = [(-1.0, 0.0), (1.0, 0.0)]
    elif cd.n == 3:
        corners = [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)]
    elif cd.n == 4:
        corners = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]
    else:
        raise UsageError("fan rendering supports rank at most 3")

    def embed(theta):
        level = canonical_pairing(theta, cd.marks)
        x = sum(float(t / level) * cx for t, (cx, _) in zip(theta, corners))
        y = sum(float(t / level) * cy for t, (_, cy) in zip(theta, corners))
        return x, y

    return corners, embed


def _wall_lines(cd: CartanData, window: int):
    """Wall equations (theta, alpha + n delta) = 0 restricted to the slice.

    On the slice the wall becomes an affine line in the fundamental-coweight
    coordinates; returns (coefficients, constant) pairs over the corners."""
    walls = []
    for alpha in finite_roots(cd):
        if not any(c > 0 for c in alpha):
            continue
        for n in range(-window, window + 1):
            beta = vadd(alpha, vscale(n, cd.marks))
            walls.append(beta)
    return walls


def _clip_wall(beta, corners, radius: float):
    """Segment of the wall inside the viewport square, in slice coordinates."""
    # wall: sum_i theta_i beta_i = 0 with sum theta_i marks_i = 1; parametrize
    # theta over the affine hull of the corners via barycentric coordinates.
    import numpy as np

    k = len(corners)
    # affine coordinates: theta = base + t1*(dir1) + ... over the simplex plane
    # work directly in 2D: find two points on the wall line inside the plane.
    # Solve for barycentric lambda with sum lambda = 1 and sum lambda beta = 0.
    a = np.array([[float(b) for b in beta], [1.0] * k])
    # particular solution and null direction
    sol, *_ = np.linalg.lstsq(a, np.array([0.0, 1.0]), rcond=None)
    null = np.eye(k) - np.linalg.pinv(a) @ a
    direction = None
    for col in null.T:
        if np.linalg.norm(col) > 1e-9:
            direction = col
            break
    if direction is None:
        return None
    pts = []
    corner_arr = np.array(corners)
    for t in (-radius * 40, radius * 40):
        lam = sol + t * direction
        pts.append(tuple(lam @ corner_arr))
    (x1, y1), (x2, y2) = pts
    return (x1, y1, x2, y2)


def cmd_fan(args) -> int:
    cd = build_cartan(args.type)
    _warm_cache(cd)
    if cd.n > 4:
        raise UsageError("fan rendering supports rank at most 3")
    rng = random.Random(args.seed)
    corners, embed = _slice_embedding(cd)
    radius = args.radius
    size = 420.0
    scale = size / (2.2 * radius)

    def to_px(x, y):
        cx = sum(c[0] for c in corners) / len(corners)
        cy = sum(c[1] for c in corners) / len(corners)
        return (size / 2 + (x - cx) * scale, size / 2 - (y - cy) * scale)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(size)}" height="{int(size)}" '
        f'viewBox="0 0 {int(size)} {int(size)}">',
        f'<rect width="{int(size)}" height="{int(size)}" fill="white"/>',
    ]
    palette = ["#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860"]
    samples = []
    for _ in range(args.samples):
        theta = tuple(Fraction(rng.randint(-3 * radius, 3 * radius), rng.randint(1, 4)) for _ in cd.vertices)
        level = canonical_pairing(theta, cd.marks)
        if level <= 0:
            continue
        upper, lower = locate_heart_cone(cd, theta)
        if not check_roundtrip(cd, theta, upper):
            return 1
        x, y = embed(theta)
        if abs(x) > 2 * radius or abs(y) > 2 * radius:
            continue
        px, py = to_px(x, y)
        color = palette[len(upper.word) % len(palette)]
        parts.append(f'<circle cx="{px:.2f}" cy="{py:.2f}" r="3" fill="{color}"/>')
        samples.append(
            {
                "point": [str(c) for c in theta],
                "upper": upper.to_json(),
                "lower": lower.to_json(),
            }
        )
    if cd.n == 2:
        # one-dimensional slice: walls are tick marks on a horizontal segment
        y0 = size / 2
        parts.append(f'<line x1="10" y1="{y0}" x2="{size-10}" y2="{y0}" stroke="black"/>')
        for beta in _wall_lines(cd, args.window):
            denom = beta[1] * cd.marks[0] - beta[0] * cd.marks[1]
            if denom == 0:
                continue
            t0 = Fraction(beta[1], denom)  # theta = (t, (1 - t m0)/m1) with wall eq
            x, _ = embed((t0, 1 - t0))
            px, _ = to_px(x, 0)
            if 0 <= px <= size:
                parts.append(
                    f'<line x1="{px:.2f}" y1="{y0-8}" x2="{px:.2f}" y2="{y0+8}" stroke="#333"/>'
                )
    elif cd.n == 4:
        pass  # three-dimensional slice: sample dots only, walls omitted
    else:
        for beta in _wall_lines(cd, args.window):
            clipped = _clip_wall(beta, corners, radius)
            if clipped is None:
                continue
            (x1, y1, x2, y2) = clipped
            p1, p2 = to_px(x1, y1), to_px(x2, y2)
            parts.append(
                f'<line x1="{p1[0]:.2f}" y1="{p1[1]:.2f}" x2="{p2[0]:.2f}" y2="{p2[1]:.2f}" '
                'stroke="#888" stroke-width="0.6"/>'
            )
    parts.append("</svg>")
    svg = "\n".join(parts)
    if args.out:
        Path(args.out).write_text(svg)
    report = {"type": str(cd.dynkin), "samples": samples, "svg": args.out or "stdout"}
    if not args.out:
        report["svg_text"] = svg
    print(json.dumps(report, indent=2))
    return 0


def cmd_locate(args) -> int:
    cd = build_cartan(args.type)
    _warm_cache(cd)
    theta = _parse_coweight(cd, args.theta, args.basis)
    upper, lower = locate_heart_cone(cd, theta)
    ok = check_roundtrip(cd, theta, upper) and check_roundtrip(cd, theta, lower)
    _emit({"upper": upper.to_json(), "lower": lower.to_json(), "ok": ok}, args.out)
    return 0 if ok else 1


def cmd_normalize(args) -> int:
    cd = build_cartan(args.type)
    _warm_cache(cd)
    theta = _parse_coweight(cd, args.theta, args.basis)
    omega = _parse_coweight(cd, args.omega, args.basis)
    Z = CentralCharge(theta, omega)
    interval = UP if args.interval == "up" else DOWN
    result = normalize_stability(cd, Z, interval)
    ok = result.revalidate(cd, Z)
    _emit(
        {
            "word": list(result.word),
            "J": list(result.J),
            "shift": result.shift,
            "flavor": result.flavor,
            "interval": result.interval,
            "ok": ok,
        },
        args.out,
    )
    return 0 if ok else 1


def cmd_arc(args) -> int:
    cd = build_cartan(args.type)
    _warm_cache(cd)
    J = _parse_subset(cd, args.J)
    lam = _parse_finite(cd, getattr(args, "lambda"))
    report = verify_slicing(cd, lam, J, _parse_range(args.n))
    _emit(report, args.out)
    return 0 if all(item["ok"] for item in report) else 1


def cmd_hn(args) -> int:
    cd = build_cartan(args.type)
    _warm_cache(cd)
    obj = json.loads(Path(args.rep).read_text())
    rep = Rep.from_json(cd, obj)
    theta = _parse_coweight(cd, args.theta, args.basis)
    hn = hn_filtration(rep, theta)
    report = {
        "dims": [list(d) for d in hn.dims],
        "factors": [list(d) for d in hn.factor_dims],
        "slopes": [str(mu) for mu in hn.slopes],
        "ok": all(b > a for a, b in zip(hn.slopes[1:], hn.slopes)),
    }
    _emit(report, args.out)
    return 0 if report["ok"] else 1


def cmd_roots(args) -> int:
    cd = build_cartan(args.type)
    _warm_cache(cd)
    J = _parse_subset(cd, args.J)
    lam = _parse_finite(cd, getattr(args, "lambda"))
    chain = check_chain_and_union(cd, J, lam, args.kmax, args.window)
    axioms = positivity_axioms(cd, J, lam, args.window)
    report = {
        "chain_ok": chain.ok,
        "chain_failures": chain.failures,
        "witness_count": len(chain.witnesses),
        "axioms_ok": axioms.ok,
        "axiom_failures": axioms.failures[:10],
    }
    _emit(report, args.out)
    return 0 if chain.ok and axioms.ok else 1


def cmd_char(args) -> int:
    cd = build_cartan(args.type)
    _warm_cache(cd)
    J = _parse_subset(cd, args.J)
    lam = _parse_finite(cd, getattr(args, "lambda"))
    a, b = character_n_ell_J(cd, J, lam, args.window, args.tmax)
    agree = a == b
    pbw_ok = True
    if args.pbw:
        pbw = pbw_character(cd, J, lam, args.window, args.tmax, max_degree=2)
        pbw_ok = pbw.table(1) == a
    if args.format == "csv":
        text = a.to_csv()
        if args.out:
            Path(args.out).write_text(text + "\n")
        else:
            print(text)
    else:
        _emit({"table": a.to_json(), "two_ways_agree": agree, "pbw_degree_one_ok": pbw_ok}, args.out)
    return 0 if agree and pbw_ok else 1


def cmd_ellcheck(args) -> int:
    cd = build_cartan(args.type)
    _warm_cache(cd)
    report = check_classical_relations(cd, args.lmax)
    payload = {
        "ok": report.ok,
        "solutions": report.solutions,
        "failures": report.failures[:10],
    }
    if report.assignment:
        payload["assignment"] = {
            "x_plus": list(report.assignment.x_plus),
            "x_minus": list(report.assignment.x_minus),
            "h": list(report.assignment.h),
            "h0_central": report.assignment.h0_central,
        }
    _emit(payload, args.out)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heartlab")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--type", required=True, help="Dynkin type, e.g. A2")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=["json", "csv", "svg"], default="json")

    p = sub.add_parser("fan", help="render the level-one slice of the chamber fan")
    common(p)
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--samples", type=int, default=60)
    p.set_defaults(func=cmd_fan)

    p = sub.add_parser("locate", help="classify a coweight in the heart fan")
    common(p)
    p.add_argument("--theta", required=True)
    p.add_argument("--basis", choices=["omega", "lambda"], default=None)
    p.set_defaults(func=cmd_locate)

    p = sub.add_parser("normalize", help="normal form of a central charge")
    common(p)
    p.add_argument("--theta", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--basis", choices=["omega", "lambda"], default=None)
    p.add_argument("--interval", choices=["up", "down"], default="up")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("arc", help="verify arc membership in translated chambers")
    common(p)
    p.add_argument("--J", required=True)
    p.add_argument("--lambda", required=True)
    p.add_argument("--n", default="-3..3")
    p.set_defaults(func=cmd_arc)

    p = sub.add_parser("hn", help="filtration of a representation from JSON")
    common(p)
    p.add_argument("--rep", required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--basis", choices=["omega", "lambda"], default=None)
    p.set_defaults(func=cmd_hn)

    p = sub.add_parser("roots", help="chain, union, and positivity for root sets")
    common(p)
    p.add_argument("--J", required=True)
    p.add_argument("--lambda", required=True)
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--kmax", type=int, default=4)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("char", help="graded characters of the positive half")
    common(p)
    p.add_argument("--J", required=True)
    p.add_argument("--lambda", required=True)
    p.add_argument("--window", type=int, default=4)
    p.add_argument("--tmax", type=int, default=2)
    p.add_argument("--pbw", action="store_true")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("ellcheck", help="degenerate relation check with sign search")
    common(p)
    p.add_argument("--lmax", type=int, default=2)
    p.set_defaults(func=cmd_ellcheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (UsageError, ConfigurationError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
