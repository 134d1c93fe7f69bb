"""Numerical sets, monoids, atoms and duality.

Conventions
-----------
A numerical set S is a cofinite subset of the nonnegative integers
containing 0.  Its Frobenius number g = max(Z - S) satisfies g >= 1
(so N itself is excluded).  S is determined by g together with its
*interior* S n (0, g), stored as a bitmask: bit i is set iff i in S,
for 0 < i < g.  Bits 0 and >= g are never stored; membership of 0 and
of everything above g is structural.

The atom monoid is A(S) = {n : n + S subset of S}.  Elements of
A(S) n (0, g) are the *small atoms*; a small atom is *large* if it
exceeds g/2.  The dual is S* = {n : g - n not in S}, again a numerical
set with Frobenius number g.

All masks are plain Python ints, so every operation here is exact.
Sums that land strictly above g are members automatically, hence each
containment test below truncates shifted masks at bit g.

Textual encoding: ``g=<int>;in=<comma-separated ascending interior>``,
e.g. ``g=7;in=1,3,5,6`` and ``g=7;in=`` for the empty interior.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import (
    DomainError,
    LimitExceeded,
    NotAMonoid,
    NotInG,
    ParseError,
)

FULL_ENUM_MAX_G = 24      # 2^(g-1) sets scanned by enumerate_all_sets
SIGMA_ENUM_MAX_G = 41     # 2^((g-1)/2) sets scanned by enumerate_sigma_sets


@functools.total_ordering
@dataclass(frozen=True, eq=False)
class NumericalSet:
    """A numerical set with Frobenius number ``frobenius``.

    ``interior`` holds S n (0, g) as a bitmask (bit i <-> i in S).
    Equality and ordering compare (frobenius, interior) by value across
    the whole hierarchy, so a monoid equals the equal plain set; the
    interior-mask order is the normalization used when levels of sets
    are compared or dumped.
    """

    frobenius: int
    interior: int

    def __post_init__(self) -> None:
        g = self.frobenius
        if g < 1:
            raise DomainError(f"Frobenius number must be >= 1, got {g}")
        if self.interior < 0 or self.interior & ~_window(g):
            raise DomainError(
                f"interior mask {self.interior:#x} has bits outside (0, {g})"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NumericalSet):
            return NotImplemented
        return (self.frobenius, self.interior) == (other.frobenius, other.interior)

    def __lt__(self, other: "NumericalSet") -> bool:
        if not isinstance(other, NumericalSet):
            return NotImplemented
        return (self.frobenius, self.interior) < (other.frobenius, other.interior)

    def __hash__(self) -> int:
        return hash((self.frobenius, self.interior))

    def __contains__(self, n: int) -> bool:
        if n == 0 or n > self.frobenius:
            return n >= 0
        if n == self.frobenius or n < 0:
            return False
        return bool(self.interior >> n & 1)

    def interior_elements(self) -> list[int]:
        return _bits(self.interior)

    def low_mask(self) -> int:
        """S n [0, g] as a mask: bit 0 set, bit g never set."""
        return self.interior | 1


class NumericalMonoid(NumericalSet):
    """A numerical set closed under addition.

    Construction validates closure and raises NotAMonoid otherwise;
    carrying the proof in the type lets monoid-only operations skip
    re-checking.
    """

    def __post_init__(self) -> None:
        super().__post_init__()
        if not is_closed_under_addition(self):
            raise NotAMonoid(f"{format_set(self)} is not closed under addition")


class SymmetryClass(enum.Enum):
    SYMMETRIC = "symmetric"
    PSEUDOSYMMETRIC = "pseudosymmetric"
    NEGATIVE_SEMISYMMETRIC = "negative_semisymmetric"
    NONE = "none"


def _window(g: int) -> int:
    """Mask of the open interval (0, g)."""
    return (1 << g) - 2


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _reflect(mask: int, g: int) -> int:
    """Bit-reverse over [0, g]: bit i of the result is bit g-i of mask."""
    return int(format(mask, f"0{g + 1}b")[::-1], 2)


def is_atom(s: NumericalSet, n: int) -> bool:
    """True iff n + S is a subset of S (n a member of A(S))."""
    if n <= 0:
        return n == 0
    g = s.frobenius
    if n > g:
        return True
    if n == g:
        return False
    low = s.low_mask()
    bad = ((low << n) & ((1 << (g + 1)) - 1)) & ~low
    return bad == 0


def atom_monoid(s: NumericalSet) -> NumericalMonoid:
    """A(S), returned with the same Frobenius number as S."""
    g = s.frobenius
    low = s.low_mask()
    ceiling = (1 << (g + 1)) - 1
    atoms = 0
    for n in s.interior_elements():
        if not ((low << n) & ceiling) & ~low:
            atoms |= 1 << n
    return NumericalMonoid(g, atoms)


def small_atoms(s: NumericalSet) -> list[int]:
    return atom_monoid(s).interior_elements()


def largest_small_atom(s: NumericalSet) -> int | None:
    atoms = atom_monoid(s).interior
    return atoms.bit_length() - 1 if atoms else None


def is_closed_under_addition(s: NumericalSet) -> bool:
    g = s.frobenius
    low = s.low_mask()
    ceiling = (1 << (g + 1)) - 1
    # a + 0 = a is always in S, so shift the interior only.
    for a in s.interior_elements():
        if ((s.interior << a) & ceiling) & ~low:
            return False
    return True


def as_monoid(s: NumericalSet) -> NumericalMonoid:
    """Re-type s as a monoid, raising NotAMonoid if it is not closed."""
    if isinstance(s, NumericalMonoid):
        return s
    return NumericalMonoid(s.frobenius, s.interior)


def dual(s: NumericalSet) -> NumericalSet:
    """S* = {n : g - n not in S}; an involution on S(g)."""
    g = s.frobenius
    return NumericalSet(g, ~_reflect(s.interior, g) & _window(g))


def is_negative_semisymmetric(s: NumericalSet) -> bool:
    """True iff x in S implies g - x not in S (for 0 <= x <= g)."""
    return s.interior & _reflect(s.interior, s.frobenius) == 0


def is_maximal_negative_semisymmetric(s: NumericalSet) -> bool:
    """True iff S contains exactly one of {x, g-x} for 0 < x < g, x != g/2.

    These are the symmetric sets for odd g and the pseudosymmetric ones
    for even g; together they form the family written S^sigma(g).
    """
    g = s.frobenius
    refl = _reflect(s.interior, g)
    if s.interior & refl:
        return False
    missing = ~(s.interior | refl) & _window(g)
    if g % 2 == 0:
        missing &= ~(1 << (g // 2))
    return missing == 0


def classify_symmetry(s: NumericalSet) -> SymmetryClass:
    g = s.frobenius
    d = dual(s)
    if d.interior == s.interior:
        return SymmetryClass.SYMMETRIC
    if g % 2 == 0 and d.interior == s.interior | (1 << (g // 2)):
        return SymmetryClass.PSEUDOSYMMETRIC
    if is_negative_semisymmetric(s):
        return SymmetryClass.NEGATIVE_SEMISYMMETRIC
    return SymmetryClass.NONE


def type_of_noatom_set(s: NumericalSet) -> Fraction:
    """Type of a set without small atoms, via the closed formula.

    type(S) = |S n [0,g)| |S* n [0,g)| / |S n S* n [0,g)|^2, a rational
    >= 1 that equals 1 exactly when S is symmetric.  Only valid on G(g);
    sets with a small atom raise NotInG.
    """
    if atom_monoid(s).interior:
        raise NotInG(f"{format_set(s)} has a small atom")
    a = 1 + s.interior.bit_count()
    d = dual(s)
    b = 1 + d.interior.bit_count()
    c = 1 + (s.interior & d.interior).bit_count()
    return Fraction(a * b, c * c)


def omitted_atom_set(m: NumericalSet) -> list[int]:
    """O(M) = {n not in M : n + (M - {0}) subset of M}, ascending.

    |O(M)| is the type of the monoid M; g is always a member.  Requires
    a monoid (NotAMonoid otherwise).
    """
    m = as_monoid(m)
    g = m.frobenius
    low = m.low_mask()
    ceiling = (1 << (g + 1)) - 1
    out = []
    # O(M) subset of N and every candidate n > g lies in M, so scan (0, g].
    for n in range(1, g + 1):
        if low >> n & 1:
            continue
        if not ((m.interior << n) & ceiling) & ~low:
            out.append(n)
    return out


def anti_atom_set(m: NumericalSet) -> list[NumericalSet]:
    """G(M) = all numerical sets whose atom monoid is exactly M.

    Every such S is sandwiched M subset S subset M*, so candidates are
    enumerated by toggling the gap mask M* - M.  Sorted by interior
    mask; M itself is always present.
    """
    m = as_monoid(m)
    gap = dual(m).interior & ~m.interior
    members = []
    extra = gap
    while True:
        s = NumericalSet(m.frobenius, m.interior | extra)
        if atom_monoid(s).interior == m.interior:
            members.append(s)
        if extra == 0:
            break
        extra = (extra - 1) & gap
    members.sort()
    return members


def d_monoid(g: int) -> NumericalMonoid:
    """D_g = N_g with floor((g+2)/2) adjoined; the unique monoid whose
    largest small atom is as small as possible.

    Defined for g >= 3: below that the adjoined element would not lie
    in (0, g) (for g = 2 it equals g itself, collapsing the Frobenius
    number), so DomainError is raised.
    """
    if g < 3:
        raise DomainError(f"D_g needs g >= 3 (g={g} is degenerate)")
    return NumericalMonoid(g, 1 << ((g + 2) // 2))


def n_g(g: int) -> NumericalMonoid:
    """The minimal numerical set N_g = {0} u (g, infinity)."""
    return NumericalMonoid(g, 0)


def enumerate_all_sets(g: int, *, max_g: int = FULL_ENUM_MAX_G) -> Iterator[NumericalSet]:
    """All 2^(g-1) numerical sets with Frobenius number g, ascending interior."""
    if g < 1:
        raise DomainError(f"Frobenius number must be >= 1, got {g}")
    if g > max_g:
        raise LimitExceeded(f"g={g} exceeds full-enumeration limit {max_g}")
    for c in range(1 << (g - 1)):
        yield NumericalSet(g, c << 1)


def enumerate_sigma_sets(g: int, *, max_g: int = SIGMA_ENUM_MAX_G) -> Iterator[NumericalSet]:
    """All 2^floor((g-1)/2) maximal negative-semisymmetric sets in S(g).

    Choice counter bit j (for the doubleton {j+1, g-j-1}) picks the high
    member when set, the low member when clear; g/2 is never included.
    """
    if g < 1:
        raise DomainError(f"Frobenius number must be >= 1, got {g}")
    if g > max_g:
        raise LimitExceeded(f"g={g} exceeds sigma-enumeration limit {max_g}")
    h = (g - 1) // 2
    for c in range(1 << h):
        interior = 0
        for j in range(h):
            x = j + 1
            interior |= 1 << (g - x) if c >> j & 1 else 1 << x
        yield NumericalSet(g, interior)


def format_set(s: NumericalSet) -> str:
    return f"g={s.frobenius};in=" + ",".join(str(i) for i in s.interior_elements())


def parse_set(text: str) -> NumericalSet:
    """Parse ``g=<int>;in=<elems>``; inverse of format_set."""
    head, sep, tail = text.strip().partition(";")
    if not sep or not head.startswith("g=") or not tail.startswith("in="):
        raise ParseError(f"expected 'g=<int>;in=<elems>', got {text!r}")
    try:
        g = int(head[2:])
    except ValueError as exc:
        raise ParseError(f"bad Frobenius number in {text!r}") from exc
    body = tail[3:]
    interior = 0
    prev = 0
    if body:
        for part in body.split(","):
            try:
                n = int(part)
            except ValueError as exc:
                raise ParseError(f"bad interior element {part!r} in {text!r}") from exc
            if n <= prev:
                raise ParseError(f"interior elements not ascending in {text!r}")
            if n >= g:
                raise ParseError(f"interior element {n} outside (0, g={g})")
            interior |= 1 << n
            prev = n
    return NumericalSet(g, interior)
