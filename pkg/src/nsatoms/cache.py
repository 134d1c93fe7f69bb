"""Durable sequence storage: a checksummed cache file and b-file interchange.

Cache format (text, UTF-8, LF):

    #nsatoms-cache v1
    <family> <index> <value>
    ...
    #sha256 <hex digest of the record lines>

Records are whitespace-separated, sorted by (family, index) on save.
Loading verifies the version header, the checksum, the per-family
contiguous prefix, and finally the interleaving recursions; any mismatch
raises (VersionMismatch or CorruptCache) rather than degrading silently.

B-files use the OEIS convention: one `n a(n)` pair per line, 1-based,
`#` comments ignored.
"""

from __future__ import annotations

import fcntl
import hashlib
from pathlib import Path

from .errors import CorruptCache, DomainError, ParseError, VersionMismatch
from .sequences import SequenceTable, verify_recursions

CACHE_HEADER = "#nsatoms-cache v1"


def _body_and_digest(records: list[tuple[str, int, int]]) -> tuple[str, str]:
    body = "".join(f"{f} {n} {v}\n" for f, n, v in records)
    return body, hashlib.sha256(body.encode()).hexdigest()


def save_cache(table: SequenceTable, path: str | Path) -> None:
    records = []
    for family in sorted(("A", "Aprime", "Asigma", "Asigmaprime")):
        for n, v, _prov in table.items(family):
            records.append((family, n, v))
    body, digest = _body_and_digest(records)
    with open(path, "w") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        fh.write(f"{CACHE_HEADER}\n{body}#sha256 {digest}\n")


def load_cache(path: str | Path) -> SequenceTable:
    with open(path) as fh:
        fcntl.flock(fh, fcntl.LOCK_SH)
        text = fh.read()
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#nsatoms-cache"):
        raise CorruptCache(f"{path}: missing cache header")
    if lines[0] != CACHE_HEADER:
        raise VersionMismatch(f"{path}: expected {CACHE_HEADER!r}, got {lines[0]!r}")
    if not lines[-1].startswith("#sha256 "):
        raise CorruptCache(f"{path}: missing checksum trailer")
    claimed = lines[-1].removeprefix("#sha256 ").strip()
    records: list[tuple[str, int, int]] = []
    for line in lines[1:-1]:
        parts = line.split()
        if len(parts) != 3:
            raise CorruptCache(f"{path}: malformed record {line!r}")
        family, n_s, v_s = parts
        try:
            records.append((family, int(n_s), int(v_s)))
        except ValueError:
            raise CorruptCache(f"{path}: malformed record {line!r}") from None
    _body, digest = _body_and_digest(records)
    if digest != claimed:
        raise CorruptCache(f"{path}: checksum mismatch")
    table = SequenceTable()
    try:
        for family, n, v in records:
            table.set_value(family, n, v, "imported")
    except DomainError as exc:
        raise CorruptCache(f"{path}: {exc}") from None
    rep = verify_recursions(table)
    if not rep.passed:
        bad = "; ".join(name for name, _ok, _d in rep.failures())
        raise CorruptCache(f"{path}: recursion check failed: {bad}")
    return table


def merge_into(table: SequenceTable, extra: SequenceTable) -> None:
    """Extend `table` with any longer prefixes held by `extra`.

    Overlapping entries must agree (set_value enforces that)."""
    for family in ("A", "Aprime", "Asigma", "Asigmaprime"):
        for n, v, p in extra.items(family):
            if n > table.max_index(family):
                table.set_value(family, n, v, p)
            elif table.get(family, n) != v:
                raise CorruptCache(
                    f"cache disagrees with computed {family}[{n}]: "
                    f"{v} vs {table.get(family, n)}"
                )


# ---------------------------------------------------------------------------
# b-files

def write_bfile(values: list[int], path: str | Path, *, start: int = 1) -> None:
    Path(path).write_text(
        "".join(f"{start + i} {v}\n" for i, v in enumerate(values))
    )


def read_bfile(path: str | Path) -> list[tuple[int, int]]:
    pairs: list[tuple[int, int]] = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"{path}: bad b-file line {raw!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"{path}: bad b-file line {raw!r}") from None
    for (n1, _), (n2, _) in zip(pairs, pairs[1:]):
        if n2 != n1 + 1:
            raise ParseError(f"{path}: indices not consecutive at {n1} -> {n2}")
    return pairs
