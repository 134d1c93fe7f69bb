"""Exact decimal rendering of rational report values.

The printed tables round half-to-even at a fixed number of places;
prose midpoints truncate (a trailing ellipsis in spirit), while
enclosure radii round so the printed radius stays a valid bound.
Numbers below one are printed without a leading zero (".250000");
floats never feed these paths, only the irrational R_n column uses
float arithmetic and that is rendering-only.
"""

from __future__ import annotations

from fractions import Fraction


def _split(fr: Fraction, places: int, *, mode: str) -> tuple[int, int]:
    if fr < 0:
        raise ValueError("negative values are never rendered")
    scaled = fr * 10**places
    q, r = divmod(scaled.numerator, scaled.denominator)
    if mode == "half_even":
        if 2 * r > scaled.denominator or (2 * r == scaled.denominator and q % 2):
            q += 1
    elif mode != "trunc":
        raise ValueError(f"unknown mode {mode!r}")
    return divmod(q, 10**places)


def fixed(fr: Fraction, places: int, *, mode: str = "half_even") -> str:
    """Fixed-point decimal with the leading-zero-free convention."""
    whole, frac = _split(fr, places, mode=mode)
    digits = str(frac).zfill(places)
    return f"{whole}.{digits}" if whole else f".{digits}"


def truncated(fr: Fraction, places: int) -> str:
    return fixed(fr, places, mode="trunc")


def minimal_or_fixed(fr: Fraction, places: int) -> str:
    """Exact short decimals keep their minimal form ('0', '.5', '.625');
    anything longer is rounded to ``places`` digits."""
    if fr == 0:
        return "0"
    for p in range(places + 1):
        scaled = fr * 10**p
        if scaled.denominator == 1:
            if p == 0:
                return str(scaled.numerator)
            return fixed(fr, p)
    return fixed(fr, places)


def ratio(fr: Fraction | None) -> str:
    """The A_{n-1}/A_n column: 4 places, '-' for the first row."""
    return "-" if fr is None else fixed(fr, 4)


def growth_rate(a: int, n: int) -> str:
    """R_n = A^sigma_n^(-1/n): 'inf' at zero, '1' at one, else 3 places.

    Irrational, so this is the one float-rendered column.
    """
    if a == 0:
        return "inf"
    if a == 1:
        return "1"
    val = a ** (-1.0 / n)
    s = f"{val:.3f}"
    return s[1:] if s.startswith("0.") else s


def rational_str(fr: Fraction) -> str:
    """Exact 'p/q' form used by JSON output."""
    return f"{fr.numerator}/{fr.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)
