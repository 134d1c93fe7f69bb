"""Constructive bijections, spawn trees, word criteria, additive bases."""

from __future__ import annotations

import itertools

import pytest

from nsatoms.admissible import (
    SubsetMask,
    count_A,
    count_A_prime,
    count_A_sigma,
    count_A_sigma_prime,
    enumerate_self_admissible,
    is_admissible_pair,
    is_sigma_admissible,
)
from nsatoms.errors import (
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
from nsatoms.sets import (
    NumericalSet,
    classify_symmetry,
    d_monoid,
    enumerate_all_sets,
    enumerate_sigma_sets,
    largest_small_atom,
    n_g,
    small_atoms,
)
from nsatoms.structures import (
    ADDITIVE_BASIS_LIMIT,
    BMembership,
    additive_basis_count,
    build_S_LMP,
    decompose_B,
    even_odd_drop,
    even_odd_lift,
    set_to_sigma_word,
    set_to_word,
    sigma_build,
    sigma_spawn_children,
    spawn_children,
    tree_levels,
    word_membership,
    word_rowmajor,
    word_to_set,
)


def iset(g: int, elems: tuple[int, ...] = ()) -> NumericalSet:
    mask = 0
    for x in elems:
        mask |= 1 << x
    return NumericalSet(g, mask)


def mask(k: int, elems: tuple[int, ...] = ()) -> SubsetMask:
    bits = 0
    for x in elems:
        bits |= 1 << x
    return SubsetMask(k, bits)


def g_members(g: int) -> list[NumericalSet]:
    return [s for s in enumerate_all_sets(g) if not small_atoms(s)]


def sigma_g_members(g: int) -> list[NumericalSet]:
    return sorted(s for s in enumerate_sigma_sets(g) if not small_atoms(s))


# ---------------------------------------------------------------------------
# build / decompose


@pytest.mark.parametrize(
    "g, k, lm, p, interior",
    (
        (7, 2, (1,), (3,), (1, 3, 5, 6)),
        (3, 1, (), (), (2,)),
        (5, 2, (), (), (3,)),
    ),
)
def test_build_examples(g, k, lm, p, interior):
    s = build_S_LMP(mask(k, lm), mask(k, lm), p, g)
    assert s == iset(g, interior)
    assert largest_small_atom(s) == g - k


def test_build_rejects_bad_data():
    with pytest.raises(NotAdmissible):
        build_S_LMP(mask(2), mask(2, (1,)), (), 7)
    with pytest.raises(WindowViolation):
        build_S_LMP(mask(2, (1,)), mask(2, (1,)), (5,), 7)  # 5 = g-k
    with pytest.raises(DomainError):
        build_S_LMP(mask(3, (1, 2)), mask(3, (1, 2)), (), 6)  # needs g > 2k


def test_decompose_examples():
    b = decompose_B(iset(7, (1, 3, 5, 6)))
    assert b == BMembership(2, mask(2, (1,)), mask(2, (1,)), (3,))
    assert decompose_B(d_monoid(3)) == BMembership(1, mask(1), mask(1), ())
    with pytest.raises(NoSmallAtom):
        decompose_B(n_g(5))


def test_build_decompose_round_trip_exhaustive():
    # every (admissible pair, padding) datum builds a distinct member of
    # B(g), decompose inverts it, and the data space exhausts B(g)
    for g in range(3, 12):
        built = []
        for k in range(1, (g - 1) // 2 + 1):
            pad = [x for x in range(k + 1, g - k)]
            for m_bits in enumerate_self_admissible(k):
                m = SubsetMask(k, m_bits)
                subs = m_bits
                while True:
                    l = SubsetMask(k, subs)
                    if is_admissible_pair(l, m):
                        for r in range(1 << len(pad)):
                            p = tuple(x for i, x in enumerate(pad) if r >> i & 1)
                            s = build_S_LMP(l, m, p, g)
                            d = decompose_B(s)
                            assert (d.k, d.l, d.m, d.p) == (k, l, m, p)
                            built.append(s)
                    if subs == 0:
                        break
                    subs = (subs - 1) & m_bits
        with_atoms = [s for s in enumerate_all_sets(g) if small_atoms(s)]
        assert sorted(built) == with_atoms


def test_block_sizes():
    # |B(g, k)| = A_k 2^(g-2k-1), and the blocks partition B(g)
    for g in range(3, 12):
        blocks: dict[int, int] = {}
        for s in enumerate_all_sets(g):
            a = largest_small_atom(s)
            if a is not None:
                blocks[g - a] = blocks.get(g - a, 0) + 1
        assert sorted(blocks) == list(range(1, (g - 1) // 2 + 1))
        for k, size in blocks.items():
            assert size == count_A(k) * 2 ** (g - 2 * k - 1)


# ---------------------------------------------------------------------------
# even/odd lift


def test_lift_examples():
    assert even_odd_lift(n_g(3), 0) == n_g(4)
    assert even_odd_lift(iset(3, (1,)), 1) == iset(4, (1, 2))
    assert even_odd_lift(iset(3, (1,)), 0) == iset(4, (1,))
    with pytest.raises(EvenInput):
        even_odd_lift(n_g(4), 0)
    with pytest.raises(DomainError):
        even_odd_lift(n_g(3), 2)


def test_lift_is_a_bijection_preserving_atom_freeness():
    for g in range(1, 12, 2):
        images = set()
        for s in enumerate_all_sets(g):
            for eps in (0, 1):
                up = even_odd_lift(s, eps)
                assert up.frobenius == g + 1
                assert even_odd_drop(up) == (s, eps)
                assert bool(small_atoms(up)) == bool(small_atoms(s))
                images.add(up.interior)
        assert len(images) == 1 << g  # onto S(g+1)
    with pytest.raises(EvenInput):
        even_odd_drop(n_g(3))


# ---------------------------------------------------------------------------
# sigma construction


def test_sigma_build_examples():
    assert sigma_build(mask(3, (1,)), (), 7) == iset(7, (1, 4, 5))
    assert sigma_build(mask(1), (2,), 5) == iset(5, (2, 4))
    assert sigma_build(mask(1), (3,), 5) == iset(5, (3, 4))


def test_sigma_build_results_are_maximal_members():
    for g in range(3, 14):
        for k in range(1, (g - 1) // 2 + 1):
            doubletons = [
                x for x in range(k + 1, g - k) if 2 * x != g and 2 * x < g
            ]
            for c in range(1 << (k - 1)):
                m = SubsetMask(k, c << 1)
                if not is_sigma_admissible(m):
                    continue
                for picks in itertools.product((0, 1), repeat=len(doubletons)):
                    p = tuple(
                        g - x if hi else x for x, hi in zip(doubletons, picks)
                    )
                    s = sigma_build(m, p, g)
                    assert largest_small_atom(s) == g - k
                    cls = classify_symmetry(s).value
                    assert cls in ("symmetric", "pseudosymmetric")


def test_sigma_build_rejects_bad_data():
    with pytest.raises(NotSigmaAdmissible):
        sigma_build(mask(3, (2,)), (), 9)
    with pytest.raises(WindowViolation):
        sigma_build(mask(1), (5,), 5)
    with pytest.raises(BadSymmetricP):
        sigma_build(mask(1), (2, 3), 5)  # both members of the pair {2,3}
    with pytest.raises(BadSymmetricP):
        sigma_build(mask(1), (2,), 4)  # 2 = g/2 may not be picked
    with pytest.raises(BadSymmetricP):
        sigma_build(mask(1), (), 7)  # misses the pairs {2,5} and {3,4}


# ---------------------------------------------------------------------------
# spawning


def test_spawn_examples():
    children = spawn_children(n_g(1))
    assert children == [n_g(3), iset(3, (1,)), iset(3, (1, 2))]
    with pytest.raises(WrongParity):
        spawn_children(n_g(2))
    with pytest.raises(HasSmallAtom):
        spawn_children(d_monoid(3))


def test_spawn_partitions_next_level():
    for k in range(1, 6):
        parents = g_members(2 * k - 1)
        children: list[NumericalSet] = []
        three = 0
        for s in parents:
            batch = spawn_children(s)
            assert len(batch) in (3, 4)
            three += len(batch) == 3
            children.extend(batch)
        assert sorted(children) == g_members(2 * k + 1)
        assert three == count_A(k)


def test_sigma_spawn_examples():
    assert sigma_spawn_children(n_g(1)) == [iset(3, (1,))]
    with pytest.raises(WrongParity):
        sigma_spawn_children(n_g(2))
    with pytest.raises(HasSmallAtom):
        sigma_spawn_children(d_monoid(3))
    with pytest.raises(DomainError):
        sigma_spawn_children(iset(5, (1,)))  # atom-free but not symmetric


def test_sigma_spawn_partitions_next_level():
    for k in range(1, 8):
        parents = sigma_g_members(2 * k - 1)
        children: list[NumericalSet] = []
        singles = 0
        for s in parents:
            batch = sigma_spawn_children(s)
            assert len(batch) in (1, 2)
            singles += len(batch) == 1
            children.extend(batch)
        assert sorted(children) == sigma_g_members(2 * k + 1)
        assert singles == count_A_sigma(k)
        if k >= 2:
            assert singles < len(parents)  # a two-child parent exists


def test_tree_levels_sizes():
    sizes = [len(level) for level in tree_levels(4)]
    assert sizes == [count_A_prime(2 * k + 1) for k in range(1, 5)]
    sigma_sizes = [len(level) for level in tree_levels(5, sigma=True)]
    assert sigma_sizes == [count_A_sigma_prime(2 * k + 1) for k in range(1, 6)]
    with pytest.raises(DomainError):
        next(tree_levels(0))


# ---------------------------------------------------------------------------
# word encodings


def test_word_round_trips():
    for g in range(1, 12, 2):
        for s in enumerate_all_sets(g):
            assert word_to_set(set_to_word(s)) == s
        for s in enumerate_sigma_sets(g):
            assert word_to_set(set_to_sigma_word(s), sigma=True) == s
    with pytest.raises(WrongParity):
        set_to_word(n_g(4))
    with pytest.raises(DomainError):
        word_to_set((0, 1, 0))  # flat words have even length
    with pytest.raises(DomainError):
        word_to_set((0, 2))


def test_word_rowmajor_layout():
    # top row alpha_1..alpha_k, bottom row alpha_2k..alpha_k+1
    assert word_rowmajor((1, 0, 0, 1, 1, 0)) == "100011"
    assert word_rowmajor(()) == ""


@pytest.mark.parametrize(
    "word, ok",
    (
        ((1, 1), True),
        ((0, 1), False),
    ),
)
def test_sigma_word_examples(word, ok):
    assert word_membership(word, sigma=True) is ok


def test_word_membership_counts_match_the_families():
    # the flat and sigma word criteria accept exactly the words of the
    # no-small-atom sets, level by level
    for k in range(1, 8):
        flat = sum(
            word_membership(w)
            for w in itertools.product((0, 1), repeat=2 * k)
        )
        assert flat == count_A_prime(2 * k + 1)
        sig = sum(
            word_membership(w, sigma=True)
            for w in itertools.product((0, 1), repeat=k)
        )
        assert sig == count_A_sigma_prime(2 * k + 1)


def test_word_membership_matches_atom_scan():
    for g in (5, 7, 9):
        for s in enumerate_all_sets(g):
            assert word_membership(set_to_word(s)) == (not small_atoms(s))
        for s in enumerate_sigma_sets(g):
            assert word_membership(set_to_sigma_word(s), sigma=True) == (
                not small_atoms(s)
            )


# ---------------------------------------------------------------------------
# additive 2-bases


@pytest.mark.parametrize("k, expected", ((0, 1), (3, 3), (4, 6)))
def test_additive_basis_examples(k, expected):
    assert additive_basis_count(k) == expected


def test_additive_basis_matches_sigma_prime():
    for k in range(0, 13):
        assert additive_basis_count(k) == count_A_sigma_prime(2 * k + 1)


def test_additive_basis_limit():
    with pytest.raises(LimitExceeded):
        additive_basis_count(ADDITIVE_BASIS_LIMIT + 1)
    with pytest.raises(LimitExceeded):
        additive_basis_count(9, limit=8)


def test_additive_basis_definition_spot_check():
    # brute force the definition independently for one small k
    k = 6
    hits = 0
    for r in range(1 << k):
        f = {0} | {i + 1 for i in range(k) if r >> i & 1}
        sums = {a + b for a in f for b in f}
        hits += all(x in sums for x in range(k + 1))
    assert hits == additive_basis_count(k)
