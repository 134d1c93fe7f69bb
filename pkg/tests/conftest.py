from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from nsatoms import cache as cachemod
from nsatoms import sequences as seq

# Single-core CI boxes make per-example deadlines flaky; the suite has
# its own wall-clock assertions where runtime is part of the contract.
settings.register_profile(
    "suite", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def table() -> seq.SequenceTable:
    """One shared table filled to full reference-table depth.

    A to 16, Aprime to 33, Asigma to 32, Asigmaprime to 63: everything
    the two reference tables and both enclosures consume.  Filled once;
    tests must not mutate it (take a fresh SequenceTable instead).
    """
    t = seq.SequenceTable()
    seq.ensure_A(t, 16)
    seq.ensure_Aprime(t, 33)
    seq.ensure_Asigma(t, 32)
    seq.ensure_Asigmaprime(t, 63)
    return t


@pytest.fixture(scope="session")
def session_cache(table, tmp_path_factory):
    """Path to a cache file holding the shared table.

    CLI tests point --cache here so reference commands start warm.  Commands
    run against it must not need values beyond the fixture's fill depth,
    otherwise the CLI would rewrite the file mid-session.
    """
    path = tmp_path_factory.mktemp("cache") / "nsatoms-cache.txt"
    cachemod.save_cache(table, path)
    return path
