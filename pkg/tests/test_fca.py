from __future__ import annotations

import random
from itertools import chain, combinations

import pytest

from helpers import LISTED_CONCEPTS, RUNNING, Z1, relation_chain
from isbell.chambers import OrderSignature, signature_at
from isbell.errors import CapExceededError, InputError
from isbell.fca import (
    EXT,
    INT,
    BoolRelation,
    Concept,
    build_tower,
    chamber_tower,
    close_extent,
    close_intent,
    concept_lattice,
    concept_lattice_bruteforce,
    derive_down,
    derive_up,
    diamond,
    is_concept,
    point_tower,
    specialize_to_face,
    threshold_relation,
    transport,
    transport_ext,
)
from isbell.gap import gap_matrix

ROWS, COLS = RUNNING.rows, RUNNING.cols
_R = relation_chain()
R0, R1, R2, R3A, R3B, R4 = (_R[k] for k in ("R0", "R1", "R2", "R3a", "R3b", "R4"))
R5, R6, R7, R8 = (_R[k] for k in ("R5", "R6", "R7", "R8"))
EXPECTED = LISTED_CONCEPTS


def C(extent: str, intent: str) -> Concept:
    return Concept(frozenset(extent.split()), frozenset(intent.split()))


def concepts(listed) -> set[Concept]:
    return {C(*x) for x in listed}


def test_derivations():
    assert derive_up(R2, {"c1"}) == {"d1", "d3"}
    assert derive_down(R2, {"d1", "d3"}) == {"c1"}
    assert derive_up(R2, ()) == set(COLS)
    assert derive_down(R2, ()) == set(ROWS)
    with pytest.raises(InputError):
        derive_up(R2, {"c9"})


@pytest.mark.parametrize("name,R", [("R2", R2), ("R3a", R3A), ("R3b", R3B), ("R4", R4)])
def test_listed_lattices(name, R):
    assert set(concept_lattice(R)) == concepts(EXPECTED[name])


def test_late_lattices():
    assert len(concept_lattice(R5)) == 3 and concept_lattice(R5).is_chain()
    for R in (R6, R7):
        L = concept_lattice(R)
        assert len(L) == 2 and L.is_chain()
    assert list(concept_lattice(R8)) == [Concept(frozenset(ROWS), frozenset(COLS))]


def test_transport_example():
    x = C("c1", "d1 d3")
    assert transport_ext(R2, R4, x) == C("c0 c1", "d1 d3")
    for kind in (EXT, INT):
        for y in concept_lattice(R2):
            assert transport(kind, R2, R2, y) == y
    with pytest.raises(InputError):
        transport_ext(R4, R2, C("c0", "d1 d3 d4"))
    with pytest.raises(InputError):
        transport("sideways", R2, R4, x)


def test_diamond():
    for v in diamond(R2, R3A, R3B, R4):
        assert v.ok, (v.kind, v.failures)


def test_thresholds(base):
    gap = gap_matrix(RUNNING, base)
    assert threshold_relation(gap, 0) == R0
    assert threshold_relation(gap, "1.6") == R4
    assert threshold_relation(gap, "inf") == R8
    with pytest.raises(InputError):
        threshold_relation(gap, -1)


def test_point_towers(base, p2, p3):
    chains = {
        "f1": [R0, R1, R2, R4, R5, R6, R7, R8],
        "f2": [R0, R1, R2, R3A, R4, R5, R6, R7, R8],
        "f3": [R0, R1, R2, R3B, R4, R5, R6, R7, R8],
    }
    for name, p in (("f1", base), ("f2", p2), ("f3", p3)):
        tower = point_tower(RUNNING, p)
        assert tower.relations == chains[name]
        ct = chamber_tower(signature_at(RUNNING, p), RUNNING)
        assert ct.relations == tower.relations


def test_strict_signature_levels():
    pairs = [(c, d) for c in ROWS for d in COLS]
    rest = [p for p in pairs if p not in Z1]
    sig = OrderSignature((tuple(sorted(Z1)),) + tuple((p,) for p in rest))
    tower = chamber_tower(sig, RUNNING)
    assert len(tower) == len(pairs) - len(Z1) + 1


def test_face_specialization(base, p2, p3):
    coarse = point_tower(RUNNING, base)
    for p in (p2, p3):
        checks = specialize_to_face(point_tower(RUNNING, p), coarse)
        assert all(c.ok for c in checks)
    assert all(c.ok and c.fine_to == c.fine_from + 1 for c in specialize_to_face(coarse, coarse))


def test_face_specialization_rejects_bad_merge(p2, p3):
    with pytest.raises(InputError):
        specialize_to_face(point_tower(RUNNING, p2), point_tower(RUNNING, p3))


def test_specialization_can_fail():
    # closing {c0} in the middle level pulls in c1, which the top level undoes
    rows, cols = ("c0", "c1", "c2"), ("d1", "d2")
    a = BoolRelation(rows, cols, frozenset([("c0", "d1")]))
    b = a.with_pairs([("c1", "d1")])
    c = b.with_pairs([("c0", "d2")])
    fine = build_tower([a, b, c])
    coarse = build_tower([a, c])
    (check,) = specialize_to_face(fine, coarse)
    assert not check.ext_ok


def test_tower_requires_strict_chain():
    with pytest.raises(InputError):
        build_tower([R2, R2])


def test_cap():
    rows = tuple(f"r{k}" for k in range(17))
    with pytest.raises(CapExceededError):
        concept_lattice(BoolRelation(rows, ("d",), frozenset()))


def random_relation(r: random.Random, n: int, m: int, density: float = 0.5) -> BoolRelation:
    rows = tuple(f"c{i}" for i in range(n))
    cols = tuple(f"d{j}" for j in range(m))
    return BoolRelation(rows, cols, frozenset(
        (c, d) for c in rows for d in cols if r.random() < density))


def subsets(xs):
    return chain.from_iterable(combinations(xs, k) for k in range(len(xs) + 1))


def test_lattice_laws():
    r = random.Random(12)
    for _ in range(40):
        R = random_relation(r, r.randint(1, 4), r.randint(1, 4))
        L = concept_lattice(R)
        assert list(L) == list(concept_lattice_bruteforce(R))
        assert all(is_concept(R, x) for x in L)
        assert L.top in L and L.bottom in L
        for a, b in combinations(L, 2):
            m, j = L.meet([a, b]), L.join([a, b])
            assert m in L and j in L
            assert m <= a and m <= b and a <= j and b <= j
        for F in subsets(R.rows):
            cl = close_extent(R, F)
            assert set(F) <= cl and close_extent(R, cl) == cl
        for G in subsets(R.cols):
            cl = close_intent(R, G)
            assert set(G) <= cl and close_intent(R, cl) == cl


def test_transport_characterizations():
    r = random.Random(13)
    for _ in range(40):
        R = random_relation(r, 3, 3, 0.4)
        R2 = R.with_pairs(p for p in ((c, d) for c in R.rows for d in R.cols) if r.random() < 0.3)
        L2 = concept_lattice(R2)
        for x in concept_lattice(R):
            lo, hi = transport(EXT, R, R2, x), transport(INT, R, R2, x)
            assert lo in L2 and hi in L2 and lo <= hi
            assert lo == min((y for y in L2 if x.extent <= y.extent), key=lambda y: len(y.extent))
            assert hi == max((y for y in L2 if x.intent <= y.intent), key=lambda y: len(y.extent))
