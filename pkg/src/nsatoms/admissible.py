"""Admissible pairs and their symmetric analogues over a window (0, k).

A pair (L, M) of subsets of the open interval (0, k) is *admissible* when

  (ad1)  L is a subset of M, and
  (ad2)  for every x in M there is y in L with x + y <= k and x + y not in M.

A(k) is the set of admissible pairs, A'(k) the set of M with (M, M)
admissible ("self-admissible").  A_k = |A(k)| and A'_k = |A'(k)|.

For the symmetric theory write, for M a subset of (0, k),

  M_+ = {m in M : k - m in M}
  M_- = {x in (0,k) : x not in M and k - x not in M}
  M*  = {x in (0,k) : k - x not in M}   (so M* = (M - M_+) u M_-)

M is *sigma-admissible* when M_- is empty and every x in M admits y in M*
with x + y < k (strict) and x + y not in M.  A^sigma_k counts these.

A'^sigma_k counts the maximal negative-semisymmetric subsets I of (0, k)
(exactly one of each doubleton {x, k-x}, never k/2) that are
self-admissible; for odd k this family coincides with the sigma-admissible
M having M_+ empty, and for even k it is the count consistent with
|G^sigma(k)| and the recursion A'^sigma_2k = A'^sigma_2k-1.  (The
equal-index containment A'^sigma_k <= A^sigma_k holds for odd k only.)

Masks are ints, bit i <-> element i.  Shifted-mask tests below pre-mask
the shifter so intermediate bits never exceed k; this keeps the same
code exact for both Python ints and fixed-width numpy lanes.

Textual encoding: ``k=<int>;set=<comma-separated ascending>``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import LimitExceeded, ParseError, WindowMismatch

A_LIMIT = 16
APRIME_LIMIT = 28
SIGMA_LIMIT = 33

FAMILIES = ("A", "Aprime", "Asigma", "Asigmaprime")

_NUMPY_CUTOVER = 1 << 12   # below this many candidates the plain loop wins


@dataclass(frozen=True, order=True)
class SubsetMask:
    """A subset of the open interval (0, window), as a bitmask."""

    window: int
    bits: int

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ParseError(f"window must be >= 1, got {self.window}")
        if self.bits < 0 or self.bits & ~((1 << self.window) - 2):
            raise ParseError(
                f"mask {self.bits:#x} has bits outside (0, {self.window})"
            )

    def elements(self) -> list[int]:
        return _bits(self.bits)


@dataclass(frozen=True)
class AdmissiblePair:
    l: SubsetMask
    m: SubsetMask


@dataclass(frozen=True)
class SigmaDecomposition:
    """The (M_+, M_-, M*) split of a subset of (0, k)."""

    window: int
    m_plus: int
    m_minus: int
    m_star: int


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _reflect(mask: int, k: int) -> int:
    return int(format(mask, f"0{k + 1}b")[::-1], 2)


def format_mask(m: SubsetMask) -> str:
    return f"k={m.window};set=" + ",".join(str(i) for i in m.elements())


def parse_mask(text: str) -> SubsetMask:
    head, sep, tail = text.strip().partition(";")
    if not sep or not head.startswith("k=") or not tail.startswith("set="):
        raise ParseError(f"expected 'k=<int>;set=<elems>', got {text!r}")
    try:
        k = int(head[2:])
    except ValueError as exc:
        raise ParseError(f"bad window in {text!r}") from exc
    bits = 0
    prev = 0
    body = tail[4:]
    if body:
        for part in body.split(","):
            try:
                n = int(part)
            except ValueError as exc:
                raise ParseError(f"bad element {part!r} in {text!r}") from exc
            if n <= prev:
                raise ParseError(f"elements not ascending in {text!r}")
            if n >= k:
                raise ParseError(f"element {n} outside (0, k={k})")
            bits |= 1 << n
            prev = n
    return SubsetMask(k, bits)


# ---------------------------------------------------------------------------
# membership predicates

def _pair_ok_bits(k: int, l_bits: int, m_bits: int) -> bool:
    """(ad1) + (ad2) on raw masks: shift L by each x in M, truncate above
    k, and demand a sum outside M."""
    if l_bits & ~m_bits:
        return False
    u = (1 << (k + 1)) - 2          # admissible sums: (0, k]
    rest = m_bits
    while rest:
        low = rest & -rest
        x = low.bit_length() - 1
        rest ^= low
        if not ((l_bits & (u >> x)) << x) & ~m_bits:
            return False
    return True


def is_admissible_pair(l: SubsetMask, m: SubsetMask) -> bool:
    if l.window != m.window:
        raise WindowMismatch(f"windows differ: {l.window} != {m.window}")
    return _pair_ok_bits(l.window, l.bits, m.bits)


def is_self_admissible(m: SubsetMask) -> bool:
    return _pair_ok_bits(m.window, m.bits, m.bits)


def sigma_decompose(m: SubsetMask) -> SigmaDecomposition:
    k = m.window
    w = (1 << k) - 2
    refl = _reflect(m.bits, k)
    m_plus = m.bits & refl
    m_minus = ~(m.bits | refl) & w
    m_star = ~refl & w
    return SigmaDecomposition(k, m_plus, m_minus, m_star)


def _sigma_ok_bits(k: int, m_bits: int) -> bool:
    w = (1 << k) - 2
    refl = _reflect(m_bits, k)
    if ~(m_bits | refl) & w:        # M_- must be empty
        return False
    m_star = ~refl & w
    rest = m_bits
    while rest:
        low = rest & -rest
        x = low.bit_length() - 1
        rest ^= low
        # strict: sums must stay inside (0, k)
        if not ((m_star & (w >> x)) << x) & ~m_bits:
            return False
    return True


def is_sigma_admissible(m: SubsetMask) -> bool:
    return _sigma_ok_bits(m.window, m.bits)


# ---------------------------------------------------------------------------
# A'(k): self-admissible subsets

def enumerate_self_admissible(k: int, *, limit: int | None = APRIME_LIMIT) -> Iterator[int]:
    """Yield the masks of A'(k) in ascending order."""
    _check(k, limit, "A'")
    for c in range(1 << (k - 1)):
        m = c << 1
        if _pair_ok_bits(k, m, m):
            yield m


def _count_aprime_range(k: int, lo: int, hi: int) -> int:
    """|{c in [lo, hi) : (c << 1) self-admissible}|."""
    if hi - lo < _NUMPY_CUTOVER:
        return sum(
            1 for c in range(lo, hi) if _pair_ok_bits(k, c << 1, c << 1)
        )
    total = 0
    u = (1 << (k + 1)) - 2
    chunk = 1 << 20
    for start in range(lo, hi, chunk):
        arr = np.arange(start, min(start + chunk, hi), dtype=np.int64) << 1
        ok = np.ones(arr.shape, dtype=bool)
        for x in range(1, k):
            has = (arr >> x) & 1
            kill = ((arr & (u >> x)) << x) & ~arr
            ok &= (has == 0) | (kill != 0)
        total += int(np.count_nonzero(ok))
    return total


def count_A_prime(k: int, *, limit: int | None = APRIME_LIMIT) -> int:
    _check(k, limit, "A'")
    return _count_aprime_range(k, 0, 1 << (k - 1))


# ---------------------------------------------------------------------------
# A(k): admissible pairs, the paper's two-phase algorithm

def _aprime_masks_sorted(k: int) -> list[int]:
    """A'(k) ordered by (popcount, mask value) for the nested-pair phase."""
    return sorted(enumerate_self_admissible(k, limit=None),
                  key=lambda m: (m.bit_count(), m))

_ARR_CACHE: dict[int, np.ndarray] = {}


def _index_space(m: int) -> np.ndarray:
    arr = _ARR_CACHE.get(m)
    if arr is None:
        arr = np.arange(1 << m, dtype=np.uint32)
        _ARR_CACHE[m] = arr
    return arr


def _count_pairs_for(k: int, m_bits: int) -> int:
    """Number of L with (L, M) admissible, for self-admissible M.

    Every L <= M passing (ad2) is itself self-admissible (sandwich), so
    scanning all submasks of M tests exactly the nested pairs of the
    two-phase algorithm.  Constraints are translated to element-index
    space: L must intersect H_x = {y in M : x + y <= k, x + y not in M}
    for each x in M.
    """
    elems = _bits(m_bits)
    m = len(elems)
    if m == 0:
        return 1
    u = (1 << (k + 1)) - 2
    t = u & ~m_bits
    pos = {b: j for j, b in enumerate(elems)}
    cons = set()
    for x in elems:
        h = m_bits & (t >> x)
        if h == 0:
            return 0
        cons.add(sum(1 << pos[b] for b in _bits(h)))
    # keep only minimal constraints; supersets are implied
    ordered = sorted(cons, key=lambda c: c.bit_count())
    minimal: list[int] = []
    for c in ordered:
        if not any(c & p == p for p in minimal):
            minimal.append(c)
    if (1 << m) < _NUMPY_CUTOVER:
        return sum(
            1 for i in range(1 << m) if all(i & c for c in minimal)
        )
    arr = _index_space(m)
    ok = (arr & minimal[0]) != 0
    for c in minimal[1:]:
        ok &= (arr & c) != 0
    return int(np.count_nonzero(ok))


def _count_a_over(k: int, masks: list[int]) -> int:
    return sum(_count_pairs_for(k, m) for m in masks)


def count_A(k: int, *, limit: int | None = A_LIMIT) -> int:
    """|A(k)|: materialize A'(k), then count nested pairs passing (ad2)."""
    _check(k, limit, "A")
    return _count_a_over(k, _aprime_masks_sorted(k))


# ---------------------------------------------------------------------------
# sigma counts

def _sigma_assignment_space(k: int) -> int:
    """Assignments of one digit per doubleton {i, k-i}: 0 keeps i, 1 keeps
    k-i, 2 keeps both.  Sets with M_- empty correspond bijectively."""
    return 3 ** ((k - 1) // 2)


def _count_asigma_range(k: int, lo: int, hi: int) -> int:
    h = (k - 1) // 2
    w = (1 << k) - 2
    base = 1 << (k // 2) if k % 2 == 0 else 0
    if hi - lo < _NUMPY_CUTOVER:
        total = 0
        for t in range(lo, hi):
            m_bits = base
            m_star = 0
            rem = t
            for j in range(h):
                d = rem % 3
                rem //= 3
                i = j + 1
                if d == 0:
                    m_bits |= 1 << i
                    m_star |= 1 << i
                elif d == 1:
                    m_bits |= 1 << (k - i)
                    m_star |= 1 << (k - i)
                else:
                    m_bits |= (1 << i) | (1 << (k - i))
            ok = True
            rest = m_bits
            while rest and ok:
                low = rest & -rest
                x = low.bit_length() - 1
                rest ^= low
                if not ((m_star & (w >> x)) << x) & ~m_bits:
                    ok = False
            total += ok
        return total
    total = 0
    chunk = 1 << 19
    for start in range(lo, hi, chunk):
        rem = np.arange(start, min(start + chunk, hi), dtype=np.int64)
        m = np.full(rem.shape, base, dtype=np.int64)
        star = np.zeros(rem.shape, dtype=np.int64)
        for j in range(h):
            d = rem % 3
            rem //= 3
            i = j + 1
            m |= np.where(d != 1, 1 << i, 0)
            m |= np.where(d != 0, 1 << (k - i), 0)
            star |= np.where(d == 0, 1 << i, 0)
            star |= np.where(d == 1, 1 << (k - i), 0)
        ok = np.ones(m.shape, dtype=bool)
        for x in range(1, k):
            has = (m >> x) & 1
            kill = ((star & (w >> x)) << x) & ~m
            ok &= (has == 0) | (kill != 0)
        total += int(np.count_nonzero(ok))
    return total


def count_A_sigma(k: int, *, limit: int | None = SIGMA_LIMIT) -> int:
    """|A^sigma(k)|, by scanning the 3^floor((k-1)/2) doubleton assignments."""
    _check(k, limit, "A^sigma")
    return _count_asigma_range(k, 0, _sigma_assignment_space(k))


def sigma_interior_bits(k: int, c: int) -> int:
    """Maximal negative-semisymmetric subset of (0, k) for choice counter c:
    bit j picks k-(j+1) when set, j+1 when clear; k/2 is never included."""
    out = 0
    for j in range((k - 1) // 2):
        x = j + 1
        out |= 1 << (k - x) if c >> j & 1 else 1 << x
    return out


def _count_asigmaprime_range(k: int, lo: int, hi: int) -> int:
    return sum(
        1
        for c in range(lo, hi)
        if _pair_ok_bits(k, m := sigma_interior_bits(k, c), m)
    )


def count_A_sigma_prime(k: int, *, limit: int | None = SIGMA_LIMIT) -> int:
    """|A'^sigma(k)|: self-admissible maximal negative-semisymmetric subsets.

    Equals |G^sigma(k)| for every k, and for odd k also the number of
    sigma-admissible M with M_+ empty.
    """
    _check(k, limit, "A'^sigma")
    return _count_asigmaprime_range(k, 0, 1 << ((k - 1) // 2))


def enumerate_sigma_prime(k: int, *, limit: int | None = SIGMA_LIMIT) -> Iterator[int]:
    """Yield the interior masks counted by count_A_sigma_prime, in counter order."""
    _check(k, limit, "A'^sigma")
    for c in range(1 << ((k - 1) // 2)):
        m = sigma_interior_bits(k, c)
        if _pair_ok_bits(k, m, m):
            yield m


# ---------------------------------------------------------------------------
# partitioned counting

def _space_size(family: str, k: int) -> int:
    if family == "Aprime":
        return 1 << (k - 1)
    if family == "Asigma":
        return _sigma_assignment_space(k)
    if family == "Asigmaprime":
        return 1 << ((k - 1) // 2)
    raise ValueError(f"unknown family {family!r}")


def _partition_ranges(n: int, parts: int) -> list[tuple[int, int]]:
    if n <= 0:
        return [(0, 0)]
    parts = max(1, min(parts, n))
    step = -(-n // parts)
    return [(lo, min(lo + step, n)) for lo in range(0, n, step)]


def _range_worker(args: tuple) -> int:
    family, k, lo, hi = args
    if family == "Aprime":
        return _count_aprime_range(k, lo, hi)
    if family == "Asigma":
        return _count_asigma_range(k, lo, hi)
    if family == "Asigmaprime":
        return _count_asigmaprime_range(k, lo, hi)
    raise ValueError(f"unknown family {family!r}")


def _a_worker(args: tuple) -> int:
    k, masks = args
    return _count_a_over(k, masks)


def partitioned_count(
    family: str,
    k: int,
    partitions: int,
    *,
    threads: int = 1,
    limit: int | None = None,
) -> int:
    """Split the family's search space into contiguous prefix ranges and sum
    the per-range counts.  The total is bit-identical for every partition
    count and thread count; partitions only bound the work-unit size.
    """
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")
    default = {"A": A_LIMIT, "Aprime": APRIME_LIMIT}.get(family, SIGMA_LIMIT)
    _check(k, limit if limit is not None else default, family)

    if family == "A":
        masks = _aprime_masks_sorted(k)
        ranges = _partition_ranges(len(masks), partitions)
        jobs = [(k, masks[lo:hi]) for lo, hi in ranges]
        worker = _a_worker
    else:
        ranges = _partition_ranges(_space_size(family, k), partitions)
        jobs = [(family, k, lo, hi) for lo, hi in ranges]
        worker = _range_worker

    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return sum(pool.map(worker, jobs))
    return sum(map(worker, jobs))


def _check(k: int, limit: int | None, name: str) -> None:
    if k < 1:
        raise ParseError(f"window must be >= 1, got {k}")
    if limit is not None and k > limit:
        raise LimitExceeded(f"{name} enumeration at k={k} exceeds limit {limit}")
