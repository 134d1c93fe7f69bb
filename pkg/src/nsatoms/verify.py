"""Cross-module verification suites.

Each suite pits two independently coded routes against each other:
abstract subset counters vs brute-force scans over actual numerical
sets, constructive bijections vs exhaustive enumeration, word criteria
vs atom-monoid membership.  Report items aggregate per identity, with
instance counts (or the first failing instance) in the detail strings.
A failed report maps to CLI exit status 1.
"""

from __future__ import annotations

from . import admissible as adm
from . import structures as st
from .sequences import (
    SequenceTable,
    VerificationReport,
    anti_atom_bound_check,
    ensure_A,
    ensure_Asigma,
    ensure_Asigmaprime,
    ensure_Aprime,
)
from .sets import (
    NumericalSet,
    SymmetryClass,
    anti_atom_set,
    classify_symmetry,
    d_monoid,
    enumerate_all_sets,
    enumerate_sigma_sets,
    is_closed_under_addition,
    largest_small_atom,
    small_atoms,
)


def oracle_suite(
    g_max: int = 12, sigma_g_max: int = 25, *, table: SequenceTable | None = None
) -> VerificationReport:
    """Brute-force scans of S(g) and S^sigma(g) against the counters.

    Checks |G(g)| = Aprime[g], |G^s(g)| = Asigmaprime[g], and that the
    sets with small atoms split into blocks B(g, k) (by largest small
    atom g - k) of the predicted sizes, exhausting S(g).
    """
    rep = VerificationReport()
    if table is None:
        table = SequenceTable()
    ensure_Aprime(table, g_max)
    ensure_Asigmaprime(table, sigma_g_max)
    ensure_A(table, max((g_max - 1) // 2, 1))
    ensure_Asigma(table, max((sigma_g_max - 1) // 2, 1))

    bad_g: list[str] = []
    bad_block: list[str] = []
    bad_part: list[str] = []
    for g in range(1, g_max + 1):
        buckets: dict[int, int] = {}
        no_atom = 0
        for s in enumerate_all_sets(g):
            a = largest_small_atom(s)
            if a is None:
                no_atom += 1
            else:
                k = g - a
                buckets[k] = buckets.get(k, 0) + 1
        if no_atom != table.get("Aprime", g):
            bad_g.append(f"g={g}: {no_atom} vs {table.get('Aprime', g)}")
        for k, size in sorted(buckets.items()):
            want = table.get("A", k) * 2 ** (g - 2 * k - 1)
            if size != want:
                bad_block.append(f"g={g},k={k}: {size} vs {want}")
        if no_atom + sum(buckets.values()) != 1 << (g - 1) or (
            buckets and set(buckets) != set(range(1, (g - 1) // 2 + 1))
        ):
            bad_part.append(f"g={g}")
    rep.add(f"|G(g)| == Aprime[g] for g <= {g_max}", not bad_g,
            bad_g[0] if bad_g else f"{g_max} values")
    rep.add(f"|B(g,k)| == A[k] 2^(g-2k-1) for g <= {g_max}", not bad_block,
            bad_block[0] if bad_block else "all blocks")
    rep.add(f"B(g) partitions by largest small atom for g <= {g_max}",
            not bad_part, bad_part[0] if bad_part else f"{g_max} values")

    bad_g = []
    bad_block = []
    bad_part = []
    for g in range(1, sigma_g_max + 1):
        buckets = {}
        no_atom = 0
        for s in enumerate_sigma_sets(g):
            a = largest_small_atom(s)
            if a is None:
                no_atom += 1
            else:
                k = g - a
                buckets[k] = buckets.get(k, 0) + 1
        if no_atom != table.get("Asigmaprime", g):
            bad_g.append(f"g={g}: {no_atom} vs {table.get('Asigmaprime', g)}")
        for k, size in sorted(buckets.items()):
            want = table.get("Asigma", k) * 2 ** ((g - 2 * k - 1) // 2)
            if size != want:
                bad_block.append(f"g={g},k={k}: {size} vs {want}")
        if no_atom + sum(buckets.values()) != 1 << ((g - 1) // 2):
            bad_part.append(f"g={g}")
    rep.add(f"|G^s(g)| == Asigmaprime[g] for g <= {sigma_g_max}", not bad_g,
            bad_g[0] if bad_g else f"{sigma_g_max} values")
    rep.add(
        f"|B^s(g,k)| == Asigma[k] 2^floor((g-2k-1)/2) for g <= {sigma_g_max}",
        not bad_block, bad_block[0] if bad_block else "all blocks")
    rep.add(f"B^s(g) partitions by largest small atom for g <= {sigma_g_max}",
            not bad_part, bad_part[0] if bad_part else f"{sigma_g_max} values")
    return rep


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def bijection_suite(
    g_max: int = 11,
    spawn_k_max: int = 6,
    sigma_spawn_k_max: int = 9,
    sigma_g_max: int = 15,
) -> VerificationReport:
    rep = VerificationReport()

    # build_S_LMP / decompose_B mutually inverse, and the data space
    # (admissible pair, padding) covers B(g) exactly once
    fwd_ok = True
    rev_ok = True
    cover_ok = True
    built_total = 0
    for g in range(3, g_max + 1):
        built: list[NumericalSet] = []
        for k in range(1, (g - 1) // 2 + 1):
            pad = [x for x in range(k + 1, g - k)]
            for m_bits in adm.enumerate_self_admissible(k, limit=None):
                m = adm.SubsetMask(k, m_bits)
                for l_bits in _submasks(m_bits):
                    l = adm.SubsetMask(k, l_bits)
                    if not adm.is_admissible_pair(l, m):
                        continue
                    for pick in range(1 << len(pad)):
                        p = tuple(x for i, x in enumerate(pad) if pick >> i & 1)
                        s = st.build_S_LMP(l, m, p, g)
                        built.append(s)
                        d = st.decompose_B(s)
                        fwd_ok = fwd_ok and (d.k, d.l, d.m, d.p) == (k, l, m, p)
        want = [s for s in enumerate_all_sets(g) if small_atoms(s)]
        cover_ok = cover_ok and sorted(built) == want
        built_total += len(built)
        for s in want:
            d = st.decompose_B(s)
            rev_ok = rev_ok and st.build_S_LMP(d.l, d.m, d.p, g) == s
    rep.add(f"decompose(build(L,M,P)) == (L,M,P) for g <= {g_max}", fwd_ok,
            f"{built_total} data tuples")
    rep.add(f"build(decompose(S)) == S over B(g), g <= {g_max}", rev_ok)
    rep.add(f"build covers B(g) exactly once for g <= {g_max}", cover_ok)

    # even/odd lift-drop: mutually inverse, onto, and G-carrying
    ok_round = True
    ok_onto = True
    carried = True
    for g in range(1, g_max, 2):
        lifted = set()
        for s in enumerate_all_sets(g):
            for eps in (0, 1):
                up = st.even_odd_lift(s, eps)
                lifted.add(up)
                ok_round = ok_round and st.even_odd_drop(up) == (s, eps)
                if not small_atoms(s):
                    carried = carried and not small_atoms(up)
        ok_onto = ok_onto and len(lifted) == 1 << g
    rep.add(f"drop(lift(S, eps)) == (S, eps) for odd g < {g_max}", ok_round)
    rep.add("lift is a bijection onto S(g+1)", ok_onto)
    rep.add("lift preserves the no-small-atom property", carried)

    # spawn partition: children of G(2k-1) are exactly G(2k+1)
    bad = []
    for k in range(1, spawn_k_max + 1):
        parents = [s for s in enumerate_all_sets(2 * k - 1) if not small_atoms(s)]
        children: list[NumericalSet] = []
        three = 0
        for p in parents:
            cs = st.spawn_children(p)
            if len(cs) == 3:
                three += 1
            children.extend(cs)
        targets = [s for s in enumerate_all_sets(2 * k + 1) if not small_atoms(s)]
        if sorted(children) != targets:
            bad.append(f"k={k}: not a partition")
        elif three != adm.count_A(k):
            bad.append(f"k={k}: {three} 3-child parents vs A[k]={adm.count_A(k)}")
    rep.add(
        f"spawn partitions G(2k+1), 3-child parents == A[k], k <= {spawn_k_max}",
        not bad, bad[0] if bad else f"{spawn_k_max} levels")

    bad = []
    for k in range(1, sigma_spawn_k_max + 1):
        parents = [s for s in enumerate_sigma_sets(2 * k - 1) if not small_atoms(s)]
        children = []
        singles = 0
        for p in parents:
            cs = st.sigma_spawn_children(p)
            if len(cs) == 1:
                singles += 1
            children.extend(cs)
        targets = [s for s in enumerate_sigma_sets(2 * k + 1) if not small_atoms(s)]
        if sorted(children) != sorted(targets):
            bad.append(f"k={k}: not a partition")
        elif singles != adm.count_A_sigma(k):
            bad.append(
                f"k={k}: {singles} 1-child parents vs Asigma[k]={adm.count_A_sigma(k)}"
            )
    rep.add(
        "sigma spawn partitions G^s(2k+1), 1-child parents == Asigma[k], "
        f"k <= {sigma_spawn_k_max}",
        not bad, bad[0] if bad else f"{sigma_spawn_k_max} levels")

    # word criteria agree with the atom scan
    ok_flat = True
    for g in range(3, min(g_max, 13) + 1, 2):
        for s in enumerate_all_sets(g):
            w = st.set_to_word(s)
            ok_flat = ok_flat and st.word_membership(w) == (not small_atoms(s))
    rep.add("flat word criterion == no-small-atoms", ok_flat)
    ok_sig = True
    for g in range(3, sigma_g_max + 1, 2):
        for s in enumerate_sigma_sets(g):
            w = st.set_to_sigma_word(s)
            ok_sig = ok_sig and st.word_membership(w, sigma=True) == (not small_atoms(s))
    rep.add("sigma word criterion == no-small-atoms", ok_sig)

    # sigma-build covers B^sigma(g) exactly once
    ok_cover = True
    for g in range(3, sigma_g_max + 1):
        built = []
        for k in range(1, (g - 1) // 2 + 1):
            for c in range(1 << (k - 1)):
                mask = adm.SubsetMask(k, c << 1)
                if not adm.is_sigma_admissible(mask):
                    continue
                pair_lo = [x for x in range(k + 1, g - k) if x < g - x]
                for pick in range(1 << len(pair_lo)):
                    chosen = [
                        g - x if (pick >> i) & 1 else x
                        for i, x in enumerate(pair_lo)
                    ]
                    built.append(st.sigma_build(mask, frozenset(chosen), g))
        want = [s for s in enumerate_sigma_sets(g) if small_atoms(s)]
        ok_cover = ok_cover and sorted(built) == sorted(want)
    rep.add(f"sigma build covers B^s(g) exactly once for g <= {sigma_g_max}",
            ok_cover)
    return rep


def anti_atom_corollaries(g_max: int, table: SequenceTable) -> VerificationReport:
    """Full monoid scan: |G(M)| = 1 iff M symmetric, pseudosymmetric
    forces |G(M)| = 2, and the D_g counts A_k (doubled at even g)."""
    rep = VerificationReport()
    checked = 0
    bad_sym: list[str] = []
    bad_pseudo: list[str] = []
    for g in range(1, g_max + 1):
        for s in enumerate_all_sets(g):
            if not is_closed_under_addition(s):
                continue
            checked += 1
            size = len(anti_atom_set(s))
            cls = classify_symmetry(s)
            name = f"g={g} interior={s.interior:#x}"
            if (size == 1) != (cls is SymmetryClass.SYMMETRIC):
                bad_sym.append(f"{name}: |G(M)|={size}, {cls.value}")
            if cls is SymmetryClass.PSEUDOSYMMETRIC and size != 2:
                bad_pseudo.append(f"{name}: |G(M)|={size}")
    tally = f"{checked} monoids with g <= {g_max}"
    rep.add("|G(M)| == 1 iff M symmetric", not bad_sym,
            bad_sym[0] if bad_sym else tally)
    rep.add("M pseudosymmetric implies |G(M)| == 2", not bad_pseudo,
            bad_pseudo[0] if bad_pseudo else tally)

    bad_d: list[str] = []
    for g in range(3, g_max + 1):
        k = (g - 1) // 2
        ensure_A(table, k)
        want = table.get("A", k) * (2 if g % 2 == 0 else 1)
        size = len(anti_atom_set(d_monoid(g)))
        if size != want:
            bad_d.append(f"g={g}: {size} vs {want}")
    rep.add(f"|G(D_g)| == A[floor((g-1)/2)] (doubled for even g), g <= {g_max}",
            not bad_d, bad_d[0] if bad_d else f"{max(g_max - 2, 0)} values")
    return rep


def bounds_suite(
    table: SequenceTable, k_max: int = 12, g_max: int = 10
) -> VerificationReport:
    rep = VerificationReport()
    ensure_A(table, min(k_max, adm.A_LIMIT))
    ensure_Asigma(table, min(2 * k_max, adm.SIGMA_LIMIT - 1))
    bad = []
    for k in range(1, table.max_index("A") + 1):
        a = table.get("A", k)
        if not 2 ** ((k - 1) // 2) <= a <= 3 ** (k - 1):
            bad.append(f"k={k}: {a}")
    rep.add(f"2^floor((k-1)/2) <= A[k] <= 3^(k-1), k <= {table.max_index('A')}",
            not bad, bad[0] if bad else "")
    bad = []
    for n in range(3, table.max_index("Asigma") + 1):
        s = table.get("Asigma", n)
        if not s <= 3 ** ((n - 3) // 2):
            bad.append(f"n={n}: {s}")
    rep.add(f"Asigma[n] <= 3^floor((n-3)/2), 3 <= n <= {table.max_index('Asigma')}",
            not bad, bad[0] if bad else "")
    rep.items.extend(anti_atom_bound_check(g_max, table).items)
    rep.items.extend(anti_atom_corollaries(g_max, table).items)
    return rep
