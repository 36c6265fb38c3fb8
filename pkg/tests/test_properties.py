from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from isbell.extreal import NEG_INF, POS_INF, ZERO, add, ext, residuate
from isbell.fca import BoolRelation, close_extent, concept_lattice, concept_lattice_bruteforce, derive_down, derive_up
from isbell.gap import gap_matrix
from isbell.metric import proj_dist, proj_dist_nucleus
from isbell.profunctor import (
    Potential,
    Profunctor,
    closure,
    gauge_transform,
    hom,
    isbell_lower,
    isbell_upper,
    make_nucleus_point,
    transform,
)

tenths = st.integers(-40, 40).map(lambda k: Fraction(k, 10))
extreals = st.one_of(tenths.map(ext), st.sampled_from([NEG_INF, POS_INF]))


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    m = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_cols))
    return Profunctor.from_rows([[draw(tenths) for _ in range(n)] for _ in range(m)])


@st.composite
def matrix_with_presheaves(draw, count=2):
    M = draw(matrices())
    fs = [Potential.presheaf(M, [draw(tenths) for _ in M.rows]) for _ in range(count)]
    return M, fs


@settings(max_examples=300, deadline=None)
@given(extreals, extreals, extreals)
def test_residuation_adjunction(x, y, z):
    assert (add(x, y) <= z) == (x <= residuate(z, y))


@settings(max_examples=150, deadline=None)
@given(matrix_with_presheaves(), st.data())
def test_isbell_adjunction(Mf, data):
    M, (f, _) = Mf
    g = Potential.copresheaf(M, [data.draw(extreals) for _ in M.cols])
    assert hom(f, isbell_lower(M, g)) == hom(g, isbell_upper(M, f))
    assert (f <= isbell_lower(M, g)) == (g <= isbell_upper(M, f))


@settings(max_examples=150, deadline=None)
@given(matrix_with_presheaves())
def test_closure_laws(Mf):
    M, (f, f2) = Mf
    cl = closure(M, f)
    assert cl >= f and closure(M, cl) == cl
    up = transform(M, f)
    assert transform(M, transform(M, up)) == up
    if f <= f2:
        assert cl <= closure(M, f2)


@settings(max_examples=150, deadline=None)
@given(matrix_with_presheaves(), tenths)
def test_translation_equivariance(Mf, lam):
    M, (f, _) = Mf
    assert isbell_upper(M, f.translate(lam)) == isbell_upper(M, f).translate(-lam)


@settings(max_examples=150, deadline=None)
@given(matrix_with_presheaves(count=3))
def test_metric_and_lipschitz(Mf):
    M, (a, b, c) = Mf
    dab = proj_dist(a, b)
    assert dab == proj_dist(b, a) and dab >= ZERO
    assert proj_dist(a, c) <= dab + proj_dist(b, c)
    assert proj_dist(transform(M, a), transform(M, b)) <= dab
    p, q = make_nucleus_point(M, a), make_nucleus_point(M, b)
    assert proj_dist(p.f, q.f) == proj_dist(p.g, q.g) == proj_dist_nucleus(p, q)


@settings(max_examples=150, deadline=None)
@given(matrix_with_presheaves(), st.data())
def test_gap_gauge_invariance(Mf, data):
    M, (f, _) = Mf
    u = [data.draw(tenths) for _ in M.rows]
    v = [data.draw(tenths) for _ in M.cols]
    N = gauge_transform(M, u, v)
    p = make_nucleus_point(M, f)
    q = make_nucleus_point(N, Potential.presheaf(N, [x.value - s for x, s in zip(f.values, u)]))
    assert gap_matrix(M, p).entries == gap_matrix(N, q).entries


@st.composite
def relations(draw):
    n, m = draw(st.integers(1, 5)), draw(st.integers(1, 5))
    rows = tuple(f"c{i}" for i in range(n))
    cols = tuple(f"d{j}" for j in range(m))
    bits = draw(st.lists(st.booleans(), min_size=n * m, max_size=n * m))
    pairs = [(c, d) for c in rows for d in cols]
    return BoolRelation(rows, cols, frozenset(p for p, b in zip(pairs, bits) if b))


@settings(max_examples=200, deadline=None)
@given(relations(), st.data())
def test_galois_connection(R, data):
    F = data.draw(st.frozensets(st.sampled_from(R.rows)))
    G = data.draw(st.frozensets(st.sampled_from(R.cols)))
    assert (F <= derive_down(R, G)) == (G <= derive_up(R, F))
    assert close_extent(R, close_extent(R, F)) == close_extent(R, F) >= F


@settings(max_examples=200, deadline=None)
@given(relations())
def test_lectic_matches_bruteforce(R):
    assert list(concept_lattice(R)) == list(concept_lattice_bruteforce(R))
