import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from hyperfocus.onefact import (
    FactorizationError,
    IsoMap,
    OneFactorization,
    automorphism_count,
    canonical_form,
    canonical_labeling,
    canonical_string,
    edges,
    enumerate_factorizations,
    format_compact,
    format_text,
    isomorphic,
    isomorphisms,
    parse_compact,
    parse_text,
    validate,
)
from hyperfocus.twelve import FIXTURE_SHA256, FIXTURE_FILES, fixture_digest, fixture_text

# labeled 1-factorization counts of K_4, K_6, K_8, K_10
LABELED = {4: 1, 6: 6, 8: 6240, 10: 1225566720}


def relabeled(F, rng):
    vp = list(range(F.n))
    cp = list(range(F.n - 1))
    rng.shuffle(vp)
    rng.shuffle(cp)
    return F.relabel(vp, cp)


def labeled_factorizations(n):
    """Every set of n-1 disjoint perfect matchings covering K_n (unordered)."""

    def matchings(free):
        if not free:
            yield []
            return
        a = free[0]
        for b in free[1:]:
            rest = [v for v in free if v not in (a, b)]
            for m in matchings(rest):
                yield [(a, b)] + m

    allm = [frozenset(m) for m in matchings(list(range(n)))]
    by_edge = {}
    for m in allm:
        for e in m:
            by_edge.setdefault(e, []).append(m)
    E = edges(n)

    def rec(used, chosen):
        for e in E:
            if e not in used:
                break
        else:
            yield list(chosen)
            return
        for m in by_edge[e]:
            if used.isdisjoint(m):
                chosen.append(m)
                yield from rec(used | m, chosen)
                chosen.pop()

    for fs in rec(frozenset(), []):
        yield OneFactorization.from_factors(n, [sorted(m) for m in fs])


def test_validate_examples(k4, survivor1, survivor2):
    assert validate(k4)
    assert not validate(OneFactorization(4, (0, 1, 2, 0, 2, 1)))
    assert validate(survivor1) and validate(survivor2)


def test_compact_k4():
    F = parse_compact("ABCCBA")
    assert F == OneFactorization.from_factors(4, [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]])


def test_fixture_transcriptions(survivor1, survivor2):
    for i, name in enumerate(FIXTURE_FILES):
        assert fixture_digest(i) == FIXTURE_SHA256[name]
        lines = fixture_text(i).splitlines()
        assert lines[0] == "onefact n=12"
        assert [l[0] for l in lines[1:]] == list("ABCDEFGHIJK")
    assert survivor1.factors()[0] == [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11)]
    assert survivor2.factors()[10] == [(0, 7), (1, 10), (2, 8), (3, 11), (4, 6), (5, 9)]
    s = format_compact(survivor2)
    assert len(s) == 66 and s[0] == "A"


def test_text_round_trip(survivor1, survivor2):
    for F in (survivor1, survivor2):
        assert parse_text(format_text(F)) == F
        assert parse_compact(format_compact(F)) == F


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([4, 6, 8, 10, 12]), st.integers(0, 2**32))
def test_round_trip_random(n, seed):
    rng = random.Random(seed)
    base = {4: "ABCCBA", 6: None}.get(n)
    F = parse_compact(base) if base else None
    if F is None:
        from hyperfocus.arcs import induced_factorization, is_hyperfocused, mult_subgroup_arc
        from hyperfocus.gf2m import make_ctx
        from hyperfocus.pg2 import PG2

        h = {6: 4, 8: 6, 10: 6, 12: 10}[n]
        ctx = make_ctx(h)
        arc, L = mult_subgroup_arc(ctx, n - 1)
        F = induced_factorization(n, is_hyperfocused(PG2(ctx), arc.points, L))
    G = relabeled(F, rng)
    assert parse_compact(format_compact(G)) == G
    assert parse_text(format_text(G)) == G


@pytest.mark.parametrize(
    "text",
    [
        "onefact n=4\nA: (0,1) (2,3)\nB: (0,2) (1,3)\n",  # missing factor
        "onefact n=4\nA: (0,1) (2,3)\nB: (0,2) (1,3)\nC: (0,3) (1,3)\n",  # not a matching
        "onefact 4\nA: (0,1) (2,3)\n",  # bad header
        "A: (0,1) (2,3)\n",  # no header
        "onefact n=4\nA: (0,1) (2,3)\nA: (0,2) (1,3)\nC: (0,3) (1,2)\n",  # repeated label
    ],
)
def test_parse_text_errors(text):
    with pytest.raises(FactorizationError):
        parse_text(text)


@pytest.mark.parametrize("line", ["ABCCBZ", "ABCCB", "AACCBB", "ABCABC"])
def test_parse_compact_errors(line):
    with pytest.raises(FactorizationError):
        parse_compact(line)


def test_text_tolerates_brackets():
    F = parse_text("onefact n=4\nA: [(0,1), (2,3)]\nB: [(0,2), (1,3)]\nC: [(0,3), (1,2)]\n")
    assert F.compact() == "ABCCBA"


def test_isomorphism_examples(survivor1, survivor2):
    m = isomorphic(survivor2, survivor2)
    assert m == IsoMap(tuple(range(12)), tuple(range(11)))
    rng = random.Random(0)
    G = relabeled(survivor2, rng)
    m = isomorphic(survivor2, G)
    assert m is not None and m.apply(survivor2) == G
    assert isomorphic(survivor1, survivor2) is None


def test_isomorphism_is_an_equivalence(classes8):
    rng = random.Random(8)
    for F in classes8:
        G = relabeled(F, rng)
        H = relabeled(G, rng)
        fg, gh = isomorphic(F, G), isomorphic(G, H)
        assert fg.inverse().apply(G) == F
        assert fg.then(gh).apply(F) == H
    for F, G in zip(classes8, classes8[1:]):
        assert isomorphic(F, G) is None


def test_automorphism_groups(survivor1, survivor2, k4):
    assert automorphism_count(k4) == 24
    assert automorphism_count(survivor2) == 110
    for m in isomorphisms(survivor1, survivor1):
        assert m.apply(survivor1) == survivor1


def test_canonical_form_examples(k4, classes8):
    assert canonical_form(k4) == k4
    rng = random.Random(1)
    F = classes8[3]
    strings = {canonical_string(relabeled(F, rng)) for _ in range(100)}
    assert len(strings) == 1


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 2**32))
def test_canonical_form_invariant_and_idempotent(seed):
    from hyperfocus.twelve import fixture

    rng = random.Random(seed)
    F = fixture(seed % 2)
    G = relabeled(F, rng)
    c = canonical_form(G)
    assert c == canonical_form(F)
    assert canonical_form(c) == c
    seq, m = canonical_labeling(G)
    assert m.apply(G).colors == seq


def test_canonical_forms_separate_the_survivors(survivor1, survivor2):
    assert canonical_string(survivor1) != canonical_string(survivor2)


def test_enumeration_counts(small_classes, classes8, classes10):
    counts = {n: sum(1 for F in small_classes if F.n == n) for n in (4, 6, 8, 10)}
    assert counts == {4: 1, 6: 1, 8: 6, 10: 396}
    for F in small_classes:
        assert validate(F)
        assert canonical_form(F) == F
    assert len({F.colors for F in classes10}) == 396


def test_orbit_stabilizer_sums(small_classes):
    for n, want in LABELED.items():
        total = sum(math.factorial(n) // automorphism_count(F) for F in small_classes if F.n == n)
        assert total == want


def test_labeled_k8_brute_force(classes8):
    labeled = list(labeled_factorizations(8))
    assert len(labeled) == LABELED[8]
    assert {canonical_form(F).colors for F in labeled} == {F.colors for F in classes8}


def test_enumeration_range():
    with pytest.raises(FactorizationError, match="ingest"):
        list(enumerate_factorizations(12))
    with pytest.raises(FactorizationError):
        list(enumerate_factorizations(7))


def test_pair_unions_are_even_cycles(classes10):
    for F in classes10[::7]:
        for a in range(F.n - 1):
            for b in range(a + 1, F.n - 1):
                cyc = F.pair_cycles(a, b)
                assert sum(map(len, cyc)) == F.n
                assert all(len(c) % 2 == 0 and len(c) >= 4 for c in cyc)
