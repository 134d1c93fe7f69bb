"""Constructive maps between admissible data and numerical sets.

B(g, k) is the family of numerical sets with Frobenius number g whose
largest small atom is g - k (the largest small atom always exceeds g/2,
so g > 2k holds automatically).  The bijection implemented here sends an
admissible pair (L, M) over window k and a padding set P inside (k, g-k)
to

    S(L, M, P) = N_g u L u P u {g-k} u (g-k + M),

and decompose_B inverts it: L = S n (0,k), M = -(g-k) + (S n (g-k, g)),
P = S n (k, g-k).

The even/odd correspondence S(2n-1) x {0,1} -> S(2n) inserts or omits n:

    S'_eps = (S n [0, n-1]) u {eps * n} u (1 + (S n [n, inf)))

and carries G(2n-1) x {0,1} onto G(2n).

The sigma variant pairs a sigma-admissible M with a P that contains
exactly one of {x, g-x} for every x in (k, g-k) - {g/2} and builds
S(M*, M, P), landing in B^sigma(g, k).

Spawning grows the tree on u G(2k+1): a parent S in G(2k-1) has children

    S(Q) = N_{2k+1} u (S n [1, k-1]) u Q u (2 + (S n [k, 2k-2]))

with Q in {{}, {k}, {k, k+1}} always members, and Q = {k+1} a member
exactly when it has no small atom (3 or 4 children).  The symmetric tree
uses Q in {{k}} always and {k+1} conditionally (1 or 2 children).

Words: a set S in G(2k+1) is recorded as the flat word alpha_1..alpha_2k
with alpha_i = [i in S], displayed as a 2 x k matrix whose column l holds
(alpha_l, alpha_{2k+1-l}); row-major output is the top row then the
bottom row as displayed.  A sigma word has length k and represents
N_{2k+1} u {i : alpha_i = 1} u {2k+1-i : alpha_i = 0}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import admissible as adm
from .admissible import SubsetMask, sigma_decompose
from .errors import (
    BadSymmetricP,
    DomainError,
    EvenInput,
    HasSmallAtom,
    LimitExceeded,
    NoSmallAtom,
    NotAdmissible,
    NotSigmaAdmissible,
    WindowViolation,
    WrongParity,
)
from .sets import (
    NumericalSet,
    atom_monoid,
    classify_symmetry,
    largest_small_atom,
    SymmetryClass,
)

ADDITIVE_BASIS_LIMIT = 26

BinaryWord = tuple[int, ...]


@dataclass(frozen=True)
class BMembership:
    """Decomposition witness for a set in B(g, k)."""

    k: int
    l: SubsetMask
    m: SubsetMask
    p: tuple[int, ...]


def build_S_LMP(
    l: SubsetMask, m: SubsetMask, p: Iterable[int], g: int
) -> NumericalSet:
    """S(L, M, P) for admissible (L, M) and P inside (k, g-k)."""
    if not adm.is_admissible_pair(l, m):
        raise NotAdmissible(f"({l}, {m}) is not an admissible pair")
    k = m.window
    if not g > 2 * k:
        raise DomainError(f"need g > 2k, got g={g}, k={k}")
    p_bits = 0
    for x in p:
        if not k < x < g - k:
            raise WindowViolation(f"padding element {x} outside ({k}, {g - k})")
        p_bits |= 1 << x
    interior = l.bits | p_bits | (1 << (g - k)) | (m.bits << (g - k))
    return NumericalSet(g, interior)


def decompose_B(s: NumericalSet) -> BMembership:
    """Invert build_S_LMP; requires a small atom (the theorem's window for
    P is (k, g-k), correcting the transposed bound in the proof text)."""
    g = s.frobenius
    a = largest_small_atom(s)
    if a is None:
        raise NoSmallAtom(f"set has no small atom (g={g})")
    k = g - a
    l_bits = s.interior & ((1 << k) - 2)
    m_bits = (s.interior >> a) & ((1 << k) - 2)
    p_mask = s.interior & ~((1 << (k + 1)) - 1) & ((1 << a) - 1)
    return BMembership(k, SubsetMask(k, l_bits), SubsetMask(k, m_bits), tuple(_bits(p_mask)))


def even_odd_lift(s: NumericalSet, eps: int) -> NumericalSet:
    """S'_eps with Frobenius number g+1; needs odd g."""
    g = s.frobenius
    if g % 2 == 0:
        raise EvenInput(f"lift needs odd Frobenius number, got {g}")
    if eps not in (0, 1):
        raise DomainError(f"eps must be 0 or 1, got {eps}")
    n = (g + 1) // 2
    low = s.interior & ((1 << n) - 1)
    high = s.interior >> n
    return NumericalSet(g + 1, low | (eps << n) | (high << (n + 1)))


def even_odd_drop(s: NumericalSet) -> tuple[NumericalSet, int]:
    """Inverse of even_odd_lift; needs even g.  Returns (S, eps)."""
    g = s.frobenius
    if g % 2 == 1:
        raise EvenInput(f"drop needs even Frobenius number, got {g}")
    n = g // 2
    eps = s.interior >> n & 1
    low = s.interior & ((1 << n) - 1)
    high = s.interior >> (n + 1)
    return NumericalSet(g - 1, low | (high << n)), eps


def sigma_build(m: SubsetMask, p: Iterable[int], g: int) -> NumericalSet:
    """S(M*, M, P) for sigma-admissible M and symmetric-carried P.

    P must contain exactly one of {x, g-x} for every x in (k, g-k) with
    x != g/2; the result lies in B^sigma(g, k).
    """
    if not adm.is_sigma_admissible(m):
        raise NotSigmaAdmissible(f"{m} is not sigma-admissible")
    k = m.window
    if not g > 2 * k:
        raise DomainError(f"need g > 2k, got g={g}, k={k}")
    p_bits = 0
    for x in p:
        if not k < x < g - k:
            raise WindowViolation(f"padding element {x} outside ({k}, {g - k})")
        p_bits |= 1 << x
    if g % 2 == 0 and p_bits >> (g // 2) & 1:
        raise BadSymmetricP(f"padding may not contain g/2 = {g // 2}")
    refl = int(format(p_bits, f"0{g + 1}b")[::-1], 2)
    half_window = 0
    for x in range(k + 1, g - k):
        if 2 * x != g:
            half_window |= 1 << x
    if (p_bits | refl) & half_window != half_window or p_bits & refl:
        raise BadSymmetricP(
            f"padding must pick exactly one of each pair x, g-x in ({k}, {g - k})"
        )
    star = sigma_decompose(m).m_star
    return build_S_LMP(SubsetMask(k, star), m, _bits(p_bits), g)


def spawn_children(s: NumericalSet) -> list[NumericalSet]:
    """Children of S in G(2k-1) inside G(2k+1), sorted by interior mask.

    Q in {{}, {k}, {k, k+1}} always spawn members; {k+1} spawns one
    exactly when the result has no small atom.
    """
    g = s.frobenius
    if g % 2 == 0:
        raise WrongParity(f"spawning needs odd Frobenius number, got {g}")
    if atom_monoid(s).interior:
        raise HasSmallAtom("parent must have no small atoms")
    k = (g + 1) // 2
    base_low = s.interior & ((1 << k) - 1)
    base_high = (s.interior >> k) << (k + 2)
    base = base_low | base_high
    out = []
    for q in (0, 1 << k, 1 << (k + 1), (1 << k) | (1 << (k + 1))):
        child = NumericalSet(g + 2, base | q)
        if q == 1 << (k + 1) and atom_monoid(child).interior:
            continue
        out.append(child)
    out.sort()
    return out


def sigma_spawn_children(s: NumericalSet) -> list[NumericalSet]:
    """Children of S in G^sigma(2k-1) inside G^sigma(2k+1); 1 or 2 of them."""
    g = s.frobenius
    if g % 2 == 0:
        raise WrongParity(f"spawning needs odd Frobenius number, got {g}")
    if atom_monoid(s).interior:
        raise HasSmallAtom("parent must have no small atoms")
    if classify_symmetry(s) is not SymmetryClass.SYMMETRIC:
        raise DomainError("sigma spawning needs a symmetric parent")
    k = (g + 1) // 2
    base_low = s.interior & ((1 << k) - 1)
    base_high = (s.interior >> k) << (k + 2)
    base = base_low | base_high
    out = [NumericalSet(g + 2, base | (1 << k))]
    other = NumericalSet(g + 2, base | (1 << (k + 1)))
    if not atom_monoid(other).interior:
        out.append(other)
    out.sort()
    return out


# ---------------------------------------------------------------------------
# words

def set_to_word(s: NumericalSet) -> BinaryWord:
    """Flat word alpha_1..alpha_2k for S with odd Frobenius number 2k+1."""
    g = s.frobenius
    if g % 2 == 0:
        raise WrongParity(f"words encode odd Frobenius numbers, got g={g}")
    return tuple(s.interior >> i & 1 for i in range(1, g))


def word_to_set(word: Sequence[int], *, sigma: bool = False) -> NumericalSet:
    word = _validate_word(word)
    if sigma:
        k = len(word)
        g = 2 * k + 1
        interior = 0
        for i, a in enumerate(word, start=1):
            interior |= 1 << i if a else 1 << (g - i)
        return NumericalSet(g, interior)
    if len(word) % 2:
        raise DomainError(f"flat words have even length, got {len(word)}")
    g = len(word) + 1
    interior = 0
    for i, a in enumerate(word, start=1):
        interior |= a << i
    return NumericalSet(g, interior)


def set_to_sigma_word(s: NumericalSet) -> BinaryWord:
    g = s.frobenius
    if g % 2 == 0:
        raise WrongParity(f"sigma words encode odd Frobenius numbers, got g={g}")
    k = (g - 1) // 2
    return tuple(s.interior >> i & 1 for i in range(1, k + 1))


def word_membership(word: Sequence[int], *, sigma: bool = False) -> bool:
    """Does the word label a member of G(2k+1) (or G^sigma(2k+1))?

    sigma: every zero position must follow a bivalent prefix, i.e. for
    each i with alpha_i = 0 there is l < i with alpha_l = alpha_{i-l} = 1.

    Non-sigma (flat word alpha_1..alpha_2k): for every column i <= k of
    the wrap-around matrix with (alpha_i, alpha_{2k+1-i}) = (0, 1), the
    submatrix left of column i must be quadrivalent: some l < i has
    alpha_l = 1 and alpha_{2k+1-i+l} = 0.  This reproduces the paper's
    figure criterion; tests check it empirically against atom scans and
    no count in this package relies on it.
    """
    word = _validate_word(word)
    if sigma:
        for i in range(1, len(word) + 1):
            if word[i - 1]:
                continue
            if not any(
                word[l - 1] and word[i - l - 1] for l in range(1, i)
            ):
                return False
        return True
    if len(word) % 2:
        raise DomainError(f"flat words have even length, got {len(word)}")
    k = len(word) // 2
    n = len(word)  # alpha_{2k+1-i} = word[n - i]
    for i in range(1, k + 1):
        if word[i - 1] == 0 and word[n - i] == 1:
            if not any(
                word[l - 1] == 1 and word[n - i + l] == 0 for l in range(1, i)
            ):
                return False
    return True


def word_rowmajor(word: Sequence[int]) -> str:
    """Render a flat word as the 2k row-major bits of its display matrix."""
    word = _validate_word(word)
    if len(word) % 2:
        raise DomainError(f"flat words have even length, got {len(word)}")
    k = len(word) // 2
    top = word[:k]
    bottom = word[: k - 1 : -1] if k else ()
    return "".join(map(str, top + tuple(bottom)))


def _validate_word(word: Sequence[int]) -> BinaryWord:
    out = tuple(word)
    if any(a not in (0, 1) for a in out):
        raise DomainError(f"word entries must be 0/1, got {out!r}")
    return out


# ---------------------------------------------------------------------------
# tree levels

def tree_levels(levels: int, *, sigma: bool = False) -> Iterator[list[NumericalSet]]:
    """Yield levels 1..levels of the spawn tree, each sorted by interior.

    Level k holds G(2k+1) (resp. G^sigma(2k+1)); the partition property
    makes level-by-level spawning exhaustive.
    """
    if levels < 1:
        raise DomainError(f"levels must be >= 1, got {levels}")
    current = [NumericalSet(1, 0)]
    spawn = sigma_spawn_children if sigma else spawn_children
    for _ in range(levels):
        nxt: list[NumericalSet] = []
        for parent in current:
            nxt.extend(spawn(parent))
        nxt.sort()
        yield nxt
        current = nxt


# ---------------------------------------------------------------------------
# additive 2-bases

def additive_basis_count(k: int, *, limit: int | None = ADDITIVE_BASIS_LIMIT) -> int:
    """Number of F with {0} <= F <= [0, k] and F + F covering [0, k].

    Equals A'^sigma_{2k+1}.  The window is inclusive on both sides: the
    word construction F(alpha) = {0} u {i in [1,k] : alpha_i = 1} allows
    k itself, and coverage of k is what bivalence of the full word means.
    """
    if k < 0:
        raise DomainError(f"k must be >= 0, got {k}")
    if limit is not None and k > limit:
        raise LimitExceeded(f"additive-basis scan at k={k} exceeds limit {limit}")
    if k == 0:
        return 1
    target = (1 << (k + 1)) - 1
    if k <= 20:
        count = 0
        for c in range(1 << k):
            f = (c << 1) | 1
            sums = 0
            rest = f
            while rest:
                low = rest & -rest
                sums |= f << (low.bit_length() - 1)
                rest ^= low
                if sums & target == target:
                    count += 1
                    break
        return count
    count = 0
    chunk = 1 << 20
    for start in range(0, 1 << k, chunk):
        arr = (np.arange(start, min(start + chunk, 1 << k), dtype=np.int64) << 1) | 1
        sums = np.zeros(arr.shape, dtype=np.int64)
        for i in range(k + 1):
            sums |= np.where(((arr >> i) & 1) == 1, arr << i, 0)
        count += int(np.count_nonzero((sums & target) == target))
    return count


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out
