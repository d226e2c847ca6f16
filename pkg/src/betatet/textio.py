"""Text format shared by coefficient files (series and jets).

A header line of ``key=value`` tokens is followed by one ``c_k = <re> <im>``
line per coefficient.  Floats are written in hexadecimal so a reload is
bit-exact; decimal floats are accepted on input.
"""
from __future__ import annotations

import re
from typing import Sequence

_COEFF = re.compile(r"^c_(\d+)\s*=\s*(\S+)\s+(\S+)\s*$")


def parse_float(tok: str) -> float:
    if "0x" in tok.lower():
        return float.fromhex(tok)
    return float(tok)


def format_complex_pair(z: complex) -> str:
    return f"{z.real.hex()},{z.imag.hex()}"


def parse_complex_pair(tok: str) -> complex:
    re_s, im_s = tok.split(",")
    return complex(parse_float(re_s), parse_float(im_s))


def dump_coeffs(header: str, coeffs: Sequence[complex]) -> str:
    lines = [header]
    for k, c in enumerate(coeffs):
        c = complex(c)
        lines.append(f"c_{k} = {c.real.hex()} {c.imag.hex()}")
    return "\n".join(lines) + "\n"


def load_coeffs(text: str) -> tuple[dict[str, str], list[complex]]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty coefficient file")
    header = {}
    for tok in lines[0].split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise ValueError(f"bad header token {tok!r}")
        header[key] = val
    coeffs = []
    for ln in lines[1:]:
        m = _COEFF.match(ln.strip())
        if m is None or int(m.group(1)) != len(coeffs):
            raise ValueError(f"bad coefficient line {ln!r}")
        coeffs.append(complex(parse_float(m.group(2)), parse_float(m.group(3))))
    return header, coeffs
