"""Render the standard phase plots and Julia masks into a directory.

    python scripts/make_figures.py out/ --size 256 --workers 4
"""
import argparse
import math
from functools import partial
from pathlib import Path

from betatet import (GridSpec, Params, beta_eval, default_series, inverse_abel, julia_mask,
                     phase_plot)

LN2_HALF = math.log(2) / 2


def abel_value(s, p, gs):
    return inverse_abel(s, p, gs).F


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("out", type=Path)
    ap.add_argument("--size", type=int, default=200)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    n, w = args.size, args.workers

    e, r2 = Params(1, 1), Params(1, LN2_HALF)
    ge, g2 = default_series(e), default_series(r2)
    wide = GridSpec(-5, 10, -7.5, 7.5, n, n)
    jobs = {
        "beta_e.ppm": lambda: phase_plot(partial(beta_eval, p=e, gs=ge), wide, w),
        "beta_root2.ppm": lambda: phase_plot(partial(beta_eval, p=r2, gs=g2), wide, w),
        "abel_root2.ppm": lambda: phase_plot(partial(abel_value, p=r2, gs=g2),
                                             GridSpec(-2, 6, -4, 4, n, n), w),
        "julia_e.ppm": lambda: julia_mask(e, ge, GridSpec(0, 2 * math.pi, 0, 2 * math.pi,
                                                          n // 2, n // 2), workers=w),
        "julia_root2_corner.ppm": lambda: julia_mask(
            r2, g2, GridSpec(4.9, 5.1, math.pi - 0.1, math.pi + 0.1, n, n), workers=w),
    }
    for name, job in jobs.items():
        job().write(args.out / name)
        print(f"wrote {args.out / name}")


if __name__ == "__main__":
    main()
