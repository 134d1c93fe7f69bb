"""Sequence tables, density series and certified limit enclosures.

The four integer families are

  A           admissible pairs over (0, k)
  Aprime      self-admissible subsets
  Asigma      sigma-admissible subsets
  Asigmaprime self-admissible maximal negative-semisymmetric subsets

with the structural meanings |B(g,k)| = A_k 2^(g-2k-1), |G(g)| = A'_g,
|B^sigma(g,k)| = A^sigma_k 2^floor((g-2k-1)/2), |G^sigma(g)| = A'^sigma_g.

Density series (exact rationals throughout):

  beta_g  = sum_{k <= floor((g-1)/2)} A_k 4^-k        (|B(g)| / |S(g)|)
  gamma_g = 1 - beta_g                                 (|G(g)| / |S(g)|)
  beta^sigma, gamma^sigma analogously with A^sigma_k 2^-k.

Monotone convergence plus the tail bounds beta_inf - beta_{2k+1} <=
(3/4)^k and beta^sigma_inf - beta^sigma_{2n-1} <= (sqrt3/2)^(n-1) yield
two-sided rational enclosures; the irrational sigma radius is replaced
by its minimal 64-bit dyadic upper square root, certified by squared
comparison.

Recursions tying the families together:

  A'_2k = 2 A'_2k-1        A'_2k+1 = 2 A'_2k - A_k         (A'_1 = 1)
  A'^sigma_2k = A'^sigma_2k-1
  A'^sigma_2k+1 = 2 A'^sigma_2k - A^sigma_k               (A'^sigma_1 = 1)

and the generating-function identities (checked coefficientwise on
truncated exact-rational series, a code path independent of the
recursion checker):

  (2z - 1) f(z) = z (g(z^2) - 1)
  (2z^2 - 1) f^sigma(z) = z (z + 1) (g^sigma(z^2) - 1)

with f = sum A'_n z^n, g = sum A_k z^k, and the halved substitutions
h(z) = 2 f(z/2), h^sigma likewise, whose coefficients must match
gamma_n = A'_n / 2^(n-1) and gamma^sigma_n = A'^sigma_n / 2^floor((n-1)/2).

Floats appear only in report rendering (the R_n column); every
postcondition path is integer or Fraction arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import admissible as adm
from . import render
from .errors import DomainError, MissingSequenceData
from .sets import (
    NumericalSet,
    anti_atom_set,
    d_monoid,
    enumerate_all_sets,
    is_closed_under_addition,
    largest_small_atom,
)

FAMILIES = adm.FAMILIES
PROVENANCES = ("enumerated", "recursion", "imported")

APRIME_ENUM_HORIZON = 18    # direct scans beyond this defer to the recursion


class SequenceTable:
    """Per-family values with provenance; indices form a prefix 1..max."""

    def __init__(self) -> None:
        self._data: dict[str, dict[int, tuple[int, str]]] = {
            f: {} for f in FAMILIES
        }

    def has(self, family: str, n: int) -> bool:
        return n in self._data[self._known(family)]

    def get(self, family: str, n: int) -> int:
        try:
            return self._data[self._known(family)][n][0]
        except KeyError:
            raise MissingSequenceData(f"{family}[{n}] is not filled") from None

    def provenance(self, family: str, n: int) -> str:
        try:
            return self._data[self._known(family)][n][1]
        except KeyError:
            raise MissingSequenceData(f"{family}[{n}] is not filled") from None

    def set_value(self, family: str, n: int, value: int, provenance: str) -> None:
        family = self._known(family)
        if provenance not in PROVENANCES:
            raise DomainError(f"unknown provenance {provenance!r}")
        if n != self.max_index(family) + 1:
            if n in self._data[family]:
                if self._data[family][n][0] != value:
                    raise DomainError(
                        f"refusing to overwrite {family}[{n}] with a new value"
                    )
                return
            raise DomainError(
                f"{family}[{n}] would break the contiguous prefix invariant"
            )
        self._data[family][n] = (value, provenance)

    def max_index(self, family: str) -> int:
        d = self._data[self._known(family)]
        return max(d) if d else 0

    def items(self, family: str) -> list[tuple[int, int, str]]:
        d = self._data[self._known(family)]
        return [(n, v, p) for n, (v, p) in sorted(d.items())]

    @staticmethod
    def _known(family: str) -> str:
        if family not in FAMILIES:
            raise DomainError(f"family must be one of {FAMILIES}, got {family!r}")
        return family


@dataclass(frozen=True)
class Enclosure:
    """A certified closed rational interval [lo, hi]."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise DomainError(f"empty enclosure [{self.lo}, {self.hi}]")

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def halfwidth(self) -> Fraction:
        return (self.hi - self.lo) / 2


@dataclass
class VerificationReport:
    items: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.items.append((name, ok, detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.items)

    def failures(self) -> list[tuple[str, bool, str]]:
        return [it for it in self.items if not it[1]]


# ---------------------------------------------------------------------------
# table filling

def _count(family: str, k: int, *, threads: int, limit: int | None) -> int:
    if threads > 1:
        return adm.partitioned_count(
            family, k, partitions=4 * threads, threads=threads, limit=limit
        )
    single = {
        "A": adm.count_A,
        "Aprime": adm.count_A_prime,
        "Asigma": adm.count_A_sigma,
        "Asigmaprime": adm.count_A_sigma_prime,
    }[family]
    return single(k, limit=limit)


def ensure_A(
    table: SequenceTable, n: int, *, allow_long: bool = False, threads: int = 1
) -> None:
    limit = None if allow_long else adm.A_LIMIT
    for k in range(table.max_index("A") + 1, n + 1):
        table.set_value("A", k, _count("A", k, threads=threads, limit=limit), "enumerated")


def ensure_Aprime(
    table: SequenceTable, n: int, *, allow_long: bool = False, threads: int = 1
) -> None:
    """Enumerate directly up to the scan horizon, recursion-fill beyond."""
    start = table.max_index("Aprime") + 1
    for k in range(start, min(n, APRIME_ENUM_HORIZON) + 1):
        table.set_value(
            "Aprime", k, _count("Aprime", k, threads=threads, limit=None), "enumerated"
        )
    if n > APRIME_ENUM_HORIZON:
        ensure_A(table, (n - 1) // 2, allow_long=allow_long, threads=threads)
        for k in range(table.max_index("Aprime") + 1, n + 1):
            if k % 2 == 0:
                v = 2 * table.get("Aprime", k - 1)
            else:
                v = 2 * table.get("Aprime", k - 1) - table.get("A", (k - 1) // 2)
            table.set_value("Aprime", k, v, "recursion")


def ensure_Asigma(
    table: SequenceTable, n: int, *, allow_long: bool = False, threads: int = 1
) -> None:
    limit = None if allow_long else adm.SIGMA_LIMIT
    for k in range(table.max_index("Asigma") + 1, n + 1):
        table.set_value(
            "Asigma", k, _count("Asigma", k, threads=threads, limit=limit), "enumerated"
        )


def ensure_Asigmaprime(
    table: SequenceTable, n: int, *, allow_long: bool = False, threads: int = 1
) -> None:
    start = table.max_index("Asigmaprime") + 1
    horizon = adm.SIGMA_LIMIT
    for k in range(start, min(n, horizon) + 1):
        table.set_value(
            "Asigmaprime",
            k,
            _count("Asigmaprime", k, threads=threads, limit=None),
            "enumerated",
        )
    if n > horizon:
        ensure_Asigma(table, (n - 1) // 2, allow_long=allow_long, threads=threads)
        for k in range(table.max_index("Asigmaprime") + 1, n + 1):
            if k % 2 == 0:
                v = table.get("Asigmaprime", k - 1)
            else:
                v = 2 * table.get("Asigmaprime", k - 1) - table.get(
                    "Asigma", (k - 1) // 2
                )
            table.set_value("Asigmaprime", k, v, "recursion")


ENSURERS = {
    "A": ensure_A,
    "Aprime": ensure_Aprime,
    "Asigma": ensure_Asigma,
    "Asigmaprime": ensure_Asigmaprime,
}


# ---------------------------------------------------------------------------
# densities

def beta(g: int, table: SequenceTable) -> Fraction:
    """|B(g)| / |S(g)| = sum A_k 4^-k over k <= floor((g-1)/2)."""
    if g < 1:
        raise DomainError(f"need g >= 1, got {g}")
    total = Fraction(0)
    for k in range(1, (g - 1) // 2 + 1):
        total += Fraction(table.get("A", k), 4**k)
    return total


def gamma(g: int, table: SequenceTable) -> Fraction:
    return 1 - beta(g, table)


def beta_sigma(g: int, table: SequenceTable) -> Fraction:
    if g < 1:
        raise DomainError(f"need g >= 1, got {g}")
    total = Fraction(0)
    for k in range(1, (g - 1) // 2 + 1):
        total += Fraction(table.get("Asigma", k), 2**k)
    return total


def gamma_sigma(g: int, table: SequenceTable) -> Fraction:
    return 1 - beta_sigma(g, table)


def enclose_beta_inf(n: int, table: SequenceTable) -> Enclosure:
    """[beta_{2n+1}, beta_{2n+1} + (3/4)^n] contains beta_inf."""
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    lo = beta(2 * n + 1, table)
    return Enclosure(lo, lo + Fraction(3, 4) ** n)


def dyadic_sqrt_upper(q: Fraction, *, bits: int = 64) -> Fraction:
    """Minimal m 2^-bits with (m 2^-bits)^2 >= q; certified by squaring."""
    if q < 0:
        raise DomainError("square root of a negative rational")
    target = q * 4**bits
    m = math.isqrt(target.numerator // target.denominator)
    while Fraction(m * m) < target:
        m += 1
    r = Fraction(m, 2**bits)
    assert r * r >= q
    return r


def enclose_gamma_sigma_inf(n: int, table: SequenceTable) -> Enclosure:
    """Certified enclosure of gamma^sigma_inf from the 2n-1 partial sum.

    The tail bound (sqrt3/2)^(n-1) is irrational; its minimal 64-bit
    dyadic upper square root keeps the interval rational and valid.  The
    upper beta endpoint is truncated at 1 (n = 1 gives [0, 1]).
    """
    if n < 1:
        raise DomainError(f"need n >= 1, got {n}")
    lo_beta = beta_sigma(2 * n - 1, table)
    radius = dyadic_sqrt_upper(Fraction(3, 4) ** (n - 1))
    hi_beta = min(lo_beta + radius, Fraction(1))
    return Enclosure(1 - hi_beta, 1 - lo_beta)


# ---------------------------------------------------------------------------
# verification: recursions

def verify_recursions(table: SequenceTable) -> VerificationReport:
    """Check every instance of the four interleaving recursions that the
    table can evaluate, regardless of provenance.  One report item per
    identity; the detail carries the instance count or first failure."""
    rep = VerificationReport()

    def _scan(name: str, instances: list[tuple[int, int, int]]) -> None:
        bad = [n for n, got, want in instances if got != want]
        detail = (f"{len(instances)} instances" if not bad
                  else f"first failure at n={bad[0]}")
        rep.add(name, not bad, detail)

    if table.has("Aprime", 1):
        rep.add("Aprime[1] == 1", table.get("Aprime", 1) == 1, "base case")
    even, odd = [], []
    for n in range(2, table.max_index("Aprime") + 1):
        if n % 2 == 0:
            even.append((n, table.get("Aprime", n), 2 * table.get("Aprime", n - 1)))
        elif table.has("A", (n - 1) // 2):
            want = 2 * table.get("Aprime", n - 1) - table.get("A", (n - 1) // 2)
            odd.append((n, table.get("Aprime", n), want))
    _scan("Aprime[2k] == 2 Aprime[2k-1]", even)
    _scan("Aprime[2k+1] == 2 Aprime[2k] - A[k]", odd)

    if table.has("Asigmaprime", 1):
        rep.add("Asigmaprime[1] == 1", table.get("Asigmaprime", 1) == 1, "base case")
    even, odd = [], []
    for n in range(2, table.max_index("Asigmaprime") + 1):
        if n % 2 == 0:
            even.append((n, table.get("Asigmaprime", n), table.get("Asigmaprime", n - 1)))
        elif table.has("Asigma", (n - 1) // 2):
            want = 2 * table.get("Asigmaprime", n - 1) - table.get(
                "Asigma", (n - 1) // 2
            )
            odd.append((n, table.get("Asigmaprime", n), want))
    _scan("Asigmaprime[2k] == Asigmaprime[2k-1]", even)
    _scan("Asigmaprime[2k+1] == 2 Asigmaprime[2k] - Asigma[k]", odd)
    return rep


# ---------------------------------------------------------------------------
# verification: generating functions

def _poly_mul(a: list[Fraction], b: list[Fraction], n_max: int) -> list[Fraction]:
    out = [Fraction(0)] * (n_max + 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if i + j > n_max:
                break
            out[i + j] += ai * bj
    return out


def verify_genfunc_coeffs(
    n_max: int, table: SequenceTable, *, sigma: bool = False
) -> VerificationReport:
    """Coefficientwise check of the generating-function identity up to z^n_max,
    plus the halved-series gamma form.  Truncated exact-rational series on
    both sides; nothing here reuses the recursion checker."""
    rep = VerificationReport()
    one = Fraction(1)
    if not sigma:
        f = [Fraction(table.get("Aprime", n)) if 1 <= n <= n_max else Fraction(0)
             for n in range(n_max + 1)]
        lhs = _poly_mul([Fraction(-1), Fraction(2)], f, n_max)
        g2 = [Fraction(0)] * (n_max + 1)
        g2[0] = Fraction(-1)
        for k in range(1, (n_max // 2) + 1):
            g2[2 * k] = Fraction(table.get("A", k))
        rhs = _poly_mul([Fraction(0), one], g2, n_max)
        label = "(2z-1) f(z) == z (g(z^2) - 1)"
    else:
        f = [Fraction(table.get("Asigmaprime", n)) if 1 <= n <= n_max else Fraction(0)
             for n in range(n_max + 1)]
        lhs = _poly_mul([Fraction(-1), Fraction(0), Fraction(2)], f, n_max)
        g2 = [Fraction(0)] * (n_max + 1)
        g2[0] = Fraction(-1)
        for k in range(1, (n_max // 2) + 1):
            g2[2 * k] = Fraction(table.get("Asigma", k))
        rhs = _poly_mul([Fraction(0), one, one], g2, n_max)
        label = "(2z^2-1) f^s(z) == z (z+1) (g^s(z^2) - 1)"
    bad = [n for n in range(n_max + 1) if lhs[n] != rhs[n]]
    rep.add(
        f"{label} up to z^{n_max}",
        not bad,
        f"{n_max + 1} coefficients" if not bad
        else f"z^{bad[0]}: {lhs[bad[0]]} vs {rhs[bad[0]]}",
    )

    # halved series: coefficients of h(z) = 2 f(z/2) are the gamma densities
    bad = []
    for n in range(1, n_max + 1):
        if sigma:
            coeff = Fraction(table.get("Asigmaprime", n), 2 ** ((n - 1) // 2))
            ok = coeff == gamma_sigma(n, table)
        else:
            coeff = Fraction(table.get("Aprime", n), 2 ** (n - 1))
            ok = coeff == gamma(n, table)
        if not ok:
            bad.append(n)
    name = ("gamma^s_n == Asigmaprime[n] / 2^floor((n-1)/2)" if sigma
            else "gamma_n == Aprime[n] / 2^(n-1)")
    rep.add(
        f"{name} for n <= {n_max}",
        not bad,
        f"{n_max} indices" if not bad else f"first failure at n={bad[0]}",
    )
    return rep


# ---------------------------------------------------------------------------
# growth report and bound checks

def growth_report(table: SequenceTable, n_max: int) -> list[dict]:
    """Rows with the tabulated ratio and R_n strings plus bound checks.

    ratio = A_{n-1}/A_n (4 places, '-' first), R_n = A^sigma_n^(-1/n)
    (3 places, literal 'inf' when the count is zero).  Each row carries
    bounds_ok for 2^floor((k-1)/2) <= A_k <= 3^(k-1) and, from n >= 3,
    A^sigma_n <= 3^floor((n-3)/2).
    """
    rows = []
    for n in range(1, n_max + 1):
        row: dict = {"n": n}
        if table.has("A", n):
            a = table.get("A", n)
            row["ratio"] = None if n == 1 else Fraction(table.get("A", n - 1), a)
            row["ratio_str"] = render.ratio(row["ratio"])
            lo, hi = 2 ** ((n - 1) // 2), 3 ** (n - 1)
            row["bounds_ok"] = lo <= a <= hi
        if table.has("Asigma", n):
            s = table.get("Asigma", n)
            row["R_str"] = render.growth_rate(s, n)
            if n >= 3:
                row["sigma_bound_ok"] = s <= 3 ** ((n - 3) // 2)
        rows.append(row)
    return rows


def anti_atom_bound_check(g_max: int, table: SequenceTable) -> VerificationReport:
    """For every monoid M != N_g with g <= g_max: |G(M)| <= A_k 2^(g-2k-1)
    <= (1/3)(3/4)^k 2^(g-1), with first-bound equality exactly at D_g."""
    rep = VerificationReport()
    checked = 0
    bad_first: list[str] = []
    bad_chain: list[str] = []
    bad_equal: list[str] = []
    for g in range(1, g_max + 1):
        dg: NumericalSet | None = None
        if g >= 3:
            dm = d_monoid(g)
            dg = NumericalSet(dm.frobenius, dm.interior)
        for s in enumerate_all_sets(g):
            if s.interior == 0 or not is_closed_under_addition(s):
                continue
            checked += 1
            k = g - largest_small_atom(s)
            if not table.has("A", k):
                ensure_A(table, k)
            a_k = table.get("A", k)
            size = len(anti_atom_set(s))
            first = a_k * 2 ** (g - 2 * k - 1)
            second = Fraction(1, 3) * Fraction(3, 4) ** k * 2 ** (g - 1)
            name = f"g={g} interior={s.interior:#x}"
            if not size <= first:
                bad_first.append(f"{name}: {size} > {first}")
            if not first <= second:
                bad_chain.append(f"{name}: {first} > {second}")
            if (size == first) != (dg is not None and s == dg):
                bad_equal.append(name)
    tally = f"{checked} monoids with g <= {g_max}"
    rep.add("|G(M)| <= A_k 2^(g-2k-1)", not bad_first,
            bad_first[0] if bad_first else tally)
    rep.add("A_k 2^(g-2k-1) <= (1/3)(3/4)^k 2^(g-1)", not bad_chain,
            bad_chain[0] if bad_chain else tally)
    rep.add("count-bound equality exactly at M == D_g", not bad_equal,
            bad_equal[0] if bad_equal else tally)
    return rep


# ---------------------------------------------------------------------------
# report tables

def table1_row(table: SequenceTable, n: int) -> dict:
    b = beta(2 * n + 1, table)
    return {
        "n": n,
        "Aprime": table.get("Aprime", n),
        "A": table.get("A", n),
        "beta": b,
        "beta_plus_bound": b + Fraction(3, 4) ** n,
        "ratio": None if n == 1 else Fraction(table.get("A", n - 1), table.get("A", n)),
    }


def format_table1_csv(row: dict) -> str:
    return ",".join(
        (
            str(row["n"]),
            str(row["Aprime"]),
            str(row["A"]),
            render.fixed(row["beta"], 6),
            render.fixed(row["beta_plus_bound"], 6),
            render.ratio(row["ratio"]),
        )
    )


def table2_row(table: SequenceTable, n: int) -> dict:
    return {
        "n": n,
        "Asigmaprime": table.get("Asigmaprime", 2 * n - 1),
        "Asigma": table.get("Asigma", n),
        "beta_sigma": beta_sigma(2 * n - 1, table),
        "R": render.growth_rate(table.get("Asigma", n), n),
    }


def format_table2_csv(row: dict) -> str:
    return ",".join(
        (
            str(row["n"]),
            str(row["Asigmaprime"]),
            str(row["Asigma"]),
            render.minimal_or_fixed(row["beta_sigma"], 5),
            row["R"],
        )
    )
