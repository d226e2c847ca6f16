"""Domain-coloring phase plots and Julia masks written as binary PPM images."""
from __future__ import annotations

import colorsys
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Callable

import numpy as np

from .beta import GSeries, default_series
from .core import Checked, Params, Sentinel
from .dynamics import ClassifyConfig, Verdict, classify_point

BLACK = (0, 0, 0)
WHITE = (255, 255, 255)
GRAY = (128, 128, 128)


@dataclass(frozen=True)
class GridSpec:
    re_min: float
    re_max: float
    im_min: float
    im_max: float
    width: int
    height: int

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("grid bounds must satisfy min < max")
        if self.width < 1 or self.height < 1:
            raise ValueError("grid size must be positive")

    def point(self, row: int, col: int) -> complex:
        """Center of the cell at ``(row, col)``; row 0 is the top (largest Im)."""
        dx = (self.re_max - self.re_min) / self.width
        dy = (self.im_max - self.im_min) / self.height
        return complex(self.re_min + (col + 0.5) * dx, self.im_max - (row + 0.5) * dy)

    def row_points(self, row: int) -> list[complex]:
        return [self.point(row, c) for c in range(self.width)]

    def shifted(self, d: complex) -> "GridSpec":
        return GridSpec(self.re_min + d.real, self.re_max + d.real,
                        self.im_min + d.imag, self.im_max + d.imag, self.width, self.height)


@dataclass(frozen=True, eq=False)
class PixelMap:
    grid: GridSpec
    pixels: np.ndarray  # (height, width, 3) uint8, row-major

    def __post_init__(self):
        if self.pixels.shape != (self.grid.height, self.grid.width, 3):
            raise ValueError("pixel array does not match the grid")

    def __eq__(self, other) -> bool:
        return (isinstance(other, PixelMap) and self.grid == other.grid
                and np.array_equal(self.pixels, other.pixels))

    __hash__ = None

    def to_ppm(self) -> bytes:
        h, w = self.pixels.shape[:2]
        return f"P6\n{w} {h}\n255\n".encode("ascii") + self.pixels.astype(np.uint8).tobytes()

    def write(self, path: str | Path) -> None:
        Path(path).write_bytes(self.to_ppm())


def read_ppm(data: bytes) -> np.ndarray:
    """Parse a binary P6 image (no comments) into a ``(h, w, 3)`` array."""
    parts = data.split(maxsplit=4)
    if parts[0] != b"P6" or int(parts[3]) != 255:
        raise ValueError("not an 8-bit P6 image")
    w, h = int(parts[1]), int(parts[2])
    raw = np.frombuffer(parts[4], dtype=np.uint8)
    if raw.size != w * h * 3:
        raise ValueError("truncated pixel data")
    return raw.reshape(h, w, 3)


def phase_color(v: Checked) -> tuple[int, int, int]:
    """Hue from the argument, brightness ``1 - 1/(1 + ln(1 + |v|))``; sentinels are black."""
    if isinstance(v, Sentinel):
        return BLACK
    v = complex(v)
    a = abs(v)
    if not math.isfinite(a):
        return BLACK
    hue = (math.atan2(v.imag, v.real) / (2 * math.pi)) % 1.0
    val = 1 - 1 / (1 + math.log1p(a))
    r, g, b = colorsys.hsv_to_rgb(hue, 1.0, val)
    return (round(255 * r), round(255 * g), round(255 * b))


def _render_rows(pixel: Callable[[complex], tuple[int, int, int]], grid: GridSpec,
                 workers: int) -> np.ndarray:
    out = np.zeros((grid.height, grid.width, 3), dtype=np.uint8)
    rows = range(grid.height)
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(partial(_row, pixel, grid), rows))
    else:
        results = [_row(pixel, grid, r) for r in rows]
    for r, colors in enumerate(results):
        out[r] = colors
    return out


def _row(pixel, grid: GridSpec, row: int) -> list[tuple[int, int, int]]:
    return [pixel(s) for s in grid.row_points(row)]


def _phase_pixel(f, s: complex) -> tuple[int, int, int]:
    return phase_color(f(s))


def phase_plot(f: Callable[[complex], Checked], grid: GridSpec, workers: int = 1) -> PixelMap:
    """Domain coloring of ``f`` sampled at cell centers.

    With ``workers > 1`` rows are rendered in separate processes, so ``f``
    must then be picklable (a module-level function or a ``partial``).
    """
    return PixelMap(grid, _render_rows(partial(_phase_pixel, f), grid, workers))


_VERDICT_COLOR = {Verdict.JULIA: WHITE, Verdict.FATOU: BLACK, Verdict.UNDECIDED: GRAY}


def _julia_pixel(p: Params, gs: GSeries, cfg: ClassifyConfig, s: complex):
    return _VERDICT_COLOR[classify_point(s, p, gs, cfg).verdict]


def julia_mask(p: Params, gs: GSeries | None, grid: GridSpec,
               cfg: ClassifyConfig = ClassifyConfig(), workers: int = 1) -> PixelMap:
    """White for Julia, black for Fatou, gray for Undecided."""
    gs = gs or default_series(p)
    return PixelMap(grid, _render_rows(partial(_julia_pixel, p, gs, cfg), grid, workers))


def white_fraction(pm: PixelMap) -> float:
    return float(np.all(pm.pixels == 255, axis=2).mean())
