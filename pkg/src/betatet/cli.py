"""Command-line front end: ``betatet <command> [flags]``.

Exit status is 0 on success, 2 on bad arguments and 3 when the requested
value is a sentinel (its name goes to standard error).
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from functools import partial
from pathlib import Path
from typing import Sequence

from .abel import TauConfig, inverse_abel, radius_estimate, tau_jet
from .beta import beta_eval, default_series, g_coefficients
from .core import Params, Sentinel
from .dynamics import (ClassifyConfig, classify_point, koenigs_series, regular_s0,
                       residue_check, theta_map)
from .render import GridSpec, julia_mask, phase_plot

EXIT_OK, EXIT_USAGE, EXIT_SENTINEL = 0, 2, 3

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|inf|nan"
_REAL = rf"[+-]?(?:{_NUM})"
_COMPLEX = re.compile(
    rf"^(?:(?P<re>{_REAL})(?P<im>[+-](?:{_NUM})?)i"  # a+bi, a-i
    rf"|(?P<im_only>[+-]?(?:{_NUM})?)i"              # bi, -i
    rf"|(?P<re_only>{_REAL}))$", re.IGNORECASE)


def _coef(text: str) -> float:
    return float(text + "1") if text in ("", "+", "-") else float(text)


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (no spaces, scientific notation allowed)."""
    m = _COMPLEX.match(text)
    if m is None:
        raise ValueError(f"not a complex literal: {text!r}")
    if m.group("re_only") is not None:
        return complex(float(m.group("re_only")), 0.0)
    if m.group("im_only") is not None:
        return complex(0.0, _coef(m.group("im_only")))
    return complex(float(m.group("re")), _coef(m.group("im")))


def format_real(x: float, digits: int = 15) -> str:
    return f"{x:.{digits}g}"


def format_complex(z: complex, digits: int = 15) -> str:
    z = complex(z)
    im = f"{z.imag:+.{digits}g}"
    return f"{z.real:.{digits}g}{im}i"


def fmt(v, digits: int = 15) -> str:
    if isinstance(v, Sentinel):
        return str(v)
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return format_real(v, digits)
    return format_complex(v, digits)


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


# -- parser ------------------------------------------------------------------

def _common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--lambda", dest="lam", type=_complex_arg, default=1 + 0j)
    sp.add_argument("--mu", type=_complex_arg, default=1 + 0j)
    sp.add_argument("--K", dest="order", type=int, default=120, help="series order")
    sp.add_argument("--config", type=Path, help="JSON file of flag values")


def _tau_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.add_argument("--n-max", type=int, default=64)


def _grid_flags(sp: argparse.ArgumentParser, re_rng, im_rng, size) -> None:
    sp.add_argument("--re-min", type=float, default=re_rng[0])
    sp.add_argument("--re-max", type=float, default=re_rng[1])
    sp.add_argument("--im-min", type=float, default=im_rng[0])
    sp.add_argument("--im-max", type=float, default=im_rng[1])
    sp.add_argument("--width", type=int, default=size)
    sp.add_argument("--height", type=int, default=size)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", type=Path, required=True)


def _classify_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--window", type=int, default=None, help="orbit window K (default 80/Re lambda)")
    sp.add_argument("--delta", type=float, default=1e-8)
    sp.add_argument("--D", type=float, default=1e8)
    sp.add_argument("--probe-radius", type=float, default=0.02)
    sp.add_argument("--probes", type=int, default=8)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="betatet", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("eval", help="print beta(s) and F(s)")
    _common(sp)
    sp.add_argument("--s", type=_complex_arg, required=True)
    _tau_flags(sp)

    sp = sub.add_parser("series", help="write the series coefficients")
    _common(sp)
    sp.add_argument("--out", type=Path, help="output file (default: stdout)")

    sp = sub.add_parser("abel", help="print the inverse Abel result at s")
    _common(sp)
    sp.add_argument("--s", type=_complex_arg, required=True)
    _tau_flags(sp)

    sp = sub.add_parser("jet", help="write the Taylor jet of F at s and its radius estimate")
    _common(sp)
    sp.add_argument("--s", type=_complex_arg, required=True)
    sp.add_argument("--m", type=int, default=16)
    sp.add_argument("--k-shift", type=int, default=0)
    _tau_flags(sp)
    sp.add_argument("--out", type=Path, help="output file (default: stdout)")

    sp = sub.add_parser("classify", help="Fatou / Julia verdict at s")
    _common(sp)
    sp.add_argument("--s", type=_complex_arg, required=True)
    _classify_flags(sp)

    sp = sub.add_parser("theta", help="theta mapping against the regular iteration")
    _common(sp)
    sp.add_argument("--s", type=_complex_arg, required=True)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--n-max", type=int, default=100)
    sp.add_argument("--koenigs-order", type=int, default=32)

    sp = sub.add_parser("residue", help="contour integral around a pole of beta")
    _common(sp)
    sp.add_argument("--k-index", type=int, default=0)
    sp.add_argument("--radius", type=float, default=0.1)
    sp.add_argument("--nodes", type=int, default=512)

    sp = sub.add_parser("plot", help="phase plot as a P6 image")
    _common(sp)
    sp.add_argument("--func", choices=("beta", "abel"), default="beta")
    _tau_flags(sp)
    _grid_flags(sp, (-5.0, 10.0), (-7.5, 7.5), 256)

    sp = sub.add_parser("julia", help="Julia mask as a P6 image")
    _common(sp)
    _classify_flags(sp)
    _grid_flags(sp, (0.0, 2 * math.pi), (0.0, 2 * math.pi), 64)
    return ap


def _config_path(argv: list[str]) -> str | None:
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if a.startswith("--config="):
            return a.split("=", 1)[1]
    return None


def _apply_config(ap: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    path = _config_path(argv)
    if path is None or not argv:
        return ap.parse_args(argv)
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as e:
        ap.error(f"cannot read config: {e}")
    if not isinstance(data, dict):
        ap.error("config must be a JSON object")
    # config entries become flags placed before the command-line ones, so
    # explicit flags still win
    extra: list[str] = []
    for key, val in data.items():
        extra += [f"--{key.replace('_', '-')}", str(val)]
    return ap.parse_args([argv[0], *extra, *argv[1:]])


# -- commands ----------------------------------------------------------------

def _emit(out, pairs: list[tuple[str, object]]) -> int:
    code = EXIT_OK
    for name, v in pairs:
        print(f"{name} = {fmt(v)}", file=out)
        if isinstance(v, Sentinel):
            print(str(v), file=sys.stderr)
            code = EXIT_SENTINEL
    return code


def _cmd_eval(ns, p, gs, out) -> int:
    b = beta_eval(ns.s, p, gs)
    F = inverse_abel(ns.s, p, gs, tol=ns.tol, n_max=ns.n_max).F
    return _emit(out, [("beta", b), ("F", F)])


def _cmd_series(ns, p, gs, out) -> int:
    text = gs.dumps()
    if ns.out:
        ns.out.write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def _cmd_abel(ns, p, gs, out) -> int:
    r = inverse_abel(ns.s, p, gs, tol=ns.tol, n_max=ns.n_max)
    code = _emit(out, [("F", r.F), ("tau", r.tau)])
    _emit(out, [("n_used", r.n_used), ("rho_tail", r.rho_tail),
                ("converged", r.converged), ("k_shift", r.k_shift)])
    return code


def _cmd_jet(ns, p, gs, out) -> int:
    if ns.m < 0:
        raise ValueError("--m must be >= 0")
    cfg = TauConfig(ns.n_max, ns.k_shift, ns.tol)
    jet = tau_jet(ns.s, ns.m, p, cfg, gs)
    if isinstance(jet, Sentinel):
        return _emit(out, [("jet", jet)])
    if ns.out:
        ns.out.write_text(jet.dumps())
    else:
        out.write(jet.dumps())
    if jet.order >= 8:
        print(f"radius = {fmt(radius_estimate(jet))}", file=sys.stderr if not ns.out else out)
    return EXIT_OK


def _classify_cfg(ns) -> ClassifyConfig:
    return ClassifyConfig(ns.window, ns.delta, ns.D, ns.probe_radius, ns.probes)


def _cmd_classify(ns, p, gs, out) -> int:
    c = classify_point(ns.s, p, gs, _classify_cfg(ns))
    print(c.verdict, file=out)
    _emit(out, [("orbit_min", c.orbit_min), ("orbit_max", c.orbit_max),
                ("k_window", c.k_window)])
    return EXIT_OK


def _cmd_theta(ns, p, gs, out) -> int:
    ks = koenigs_series(p, ns.koenigs_order)
    if isinstance(ks, Sentinel):
        return _emit(out, [("theta", ks)])
    t = theta_map(ns.s, p, gs, ks, ns.n_max, ns.tol)
    code = _emit(out, [("theta", t.theta)])
    _emit(out, [("drift", t.drift), ("n_used", t.n_used), ("c", regular_s0(ks))])
    return code


def _cmd_residue(ns, p, gs, out) -> int:
    r = residue_check(p, gs, ns.k_index, ns.radius, ns.nodes)
    code = _emit(out, [("integral", r.integral), ("expected", r.expected)])
    _emit(out, [("rel_err", r.rel_err)])
    return code


def _grid(ns) -> GridSpec:
    return GridSpec(ns.re_min, ns.re_max, ns.im_min, ns.im_max, ns.width, ns.height)


def _abel_value(s, p, gs, tol, n_max):
    return inverse_abel(s, p, gs, tol=tol, n_max=n_max).F


def _cmd_plot(ns, p, gs, out) -> int:
    if ns.func == "beta":
        f = partial(beta_eval, p=p, gs=gs)
    else:
        f = partial(_abel_value, p=p, gs=gs, tol=ns.tol, n_max=ns.n_max)
    phase_plot(f, _grid(ns), ns.workers).write(ns.out)
    print(f"wrote {ns.out}", file=sys.stderr)
    return EXIT_OK


def _cmd_julia(ns, p, gs, out) -> int:
    julia_mask(p, gs, _grid(ns), _classify_cfg(ns), ns.workers).write(ns.out)
    print(f"wrote {ns.out}", file=sys.stderr)
    return EXIT_OK


COMMANDS = {"eval": _cmd_eval, "series": _cmd_series, "abel": _cmd_abel, "jet": _cmd_jet,
            "classify": _cmd_classify, "theta": _cmd_theta, "residue": _cmd_residue,
            "plot": _cmd_plot, "julia": _cmd_julia}


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        ns = _apply_config(ap, argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        p = Params(ns.lam, ns.mu)
        if ns.order < 1:
            raise ValueError("--K must be >= 1")
        gs = g_coefficients(p, ns.order)
        if isinstance(gs, Sentinel):
            print(str(gs), file=sys.stderr)
            return EXIT_SENTINEL
        return COMMANDS[ns.command](ns, p, gs, out)
    except ValueError as e:
        print(f"betatet: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
