import itertools
import json

import pytest

from semitoric import crystal, polyhedra as P, rootdata
from semitoric.errors import DimensionTooLarge, PreconditionNotMet

A, B, C, D, E, F, G = (0, 0, 0), (1, 0, 0), (2, 1, 0), (0, 1, 0), (0, 2, 1), (1, 2, 1), (0, 1, 1)


def W(c, *w):
    return rootdata.WeylElement.from_word(c, w)


@pytest.fixture(scope="module")
def a2_poly(a2_crystal):
    return P.string_polytope(a2_crystal)


@pytest.fixture(scope="module")
def b2_poly(b2_crystal):
    return P.string_polytope(b2_crystal)


def test_double_description_cube():
    pts = list(itertools.product((0, 1), repeat=3))
    poly = P.hull(pts)
    assert len(poly.h_rep) == 6 and len(poly.v_rep) == 8


def test_hull_lower_dimensional():
    poly = P.hull([(0, 0, 0), (2, 0, 2), (0, 1, 0), (1, 0, 1)])
    assert poly.affine_dim == 2
    assert len(poly.equations) == 1
    assert sorted(poly.v_rep) == [(0, 0, 0), (0, 1, 0), (2, 0, 2)]


def test_dimension_guard():
    with pytest.raises(DimensionTooLarge):
        P.hull([(0,) * 9, (1,) + (0,) * 8], max_dim=8)


def test_a2_polytope(a2_poly):
    assert sorted(a2_poly.v_rep) == sorted([A, B, C, D, E, F, G])
    assert (1, 1, 0) in a2_poly.lattice_points and (1, 1, 0) not in a2_poly.v_rep


def test_a1_segment():
    c = rootdata.validate_cartan("A1")
    poly = P.string_polytope(crystal.generate(c, (1,), (2,)))
    assert sorted(poly.v_rep) == [(0,), (2,)]


B2_FACETS = [((1, 0, 0, 0), 0), ((0, 1, -1, 0), 0), ((0, 0, 1, -1), 0), ((0, 0, 0, 1), 0),
             ((-1, 1, -2, 1), -1), ((0, -1, 2, -2), -1), ((0, 0, -1, 1), -1), ((0, 0, 0, -1), -1)]


def test_b2_facets(b2_poly):
    assert len(b2_poly.h_rep) == 8
    for normal, off in B2_FACETS:
        assert b2_poly.facet_index(normal, off) is not None


def test_hull_invariants(a2_poly, b2_poly):
    for poly in (a2_poly, b2_poly):
        assert all(poly.contains(p) for p in poly.lattice_points)
        for k in range(len(poly.h_rep)):
            verts = poly.face_vertices(1 << k)
            assert P._exact.affine_dimension(verts) == poly.affine_dim - 1
        for p in poly.lattice_points:
            assert poly.tight[p] == poly.tight_set(p)


@pytest.mark.parametrize("name,lam", [("A2", (1, 1)), ("B2", (1, 1)), ("A3", (1, 1, 1))])
def test_cone_saturation(name, lam, b2):
    c = rootdata.validate_cartan(name)
    poly = P.string_polytope(crystal.generate(c, None, lam))
    for m in (2, 3):
        big = crystal.generate(c, None, tuple(m * x for x in lam))
        for b in big.elements:
            for h in poly.h_rep:
                # cone inequalities are the facets with zero offset
                if h.offset == 0:
                    assert h.value(b.coords) >= 0
        hull_m = P.string_polytope(big)
        assert sorted(hull_m.v_rep) == sorted(tuple(m * x for x in v) for v in poly.v_rep)


def test_face_union_examples(a2_poly, b2_poly):
    ok, fs = P.face_union_test(a2_poly, a2_poly.lattice_points)
    assert ok and len(fs.maximal_faces()) == 1
    t4zero = [p for p in b2_poly.lattice_points if p[3] == 0]
    ok, fs = P.face_union_test(b2_poly, t4zero)
    assert ok and fs.maximal_faces() == [1 << b2_poly.facet_index((0, 0, 0, 1), 0)]
    # the edges [AB] and [AD]
    ok, fs = P.face_union_test(a2_poly, [A, B, D])
    assert ok
    assert sorted(sorted(a2_poly.face_points(m)) for m in fs.maximal_faces()) == [[A, D], [A, B]]
    # (1,1,0) is interior to the edge [DC], so C is missing
    ok, witness = P.face_union_test(a2_poly, [D, (1, 1, 0)])
    assert not ok
    assert witness == ((1, 1, 0), C)


def test_face_union_rejects_foreign(a2_poly):
    with pytest.raises(ValueError):
        P.face_union_test(a2_poly, [(5, 5, 5)])


def comps(report):
    return sorted((c["dimension"], sorted(map(tuple, c["vertices"]))) for c in report.components)


def test_a2_curves(a2_crystal, a2_poly, a2):
    w0 = W(a2, 1, 2, 1)
    expect = {
        ((1,), (1, 2, 1)): [A, B], ((2,), (1, 2, 1)): [A, D],
        ((1, 2, 1), (1,)): [C, F], ((1, 2, 1), (2,)): [E, F],
        ((1, 2), (1, 2)): [B, C], ((1, 2), (2, 1)): [C, D], ((2, 1), (2, 1)): [D, E],
    }
    for (w, t), edge in expect.items():
        rep = P.degeneration_report(a2_crystal, W(a2, *w), W(a2, *t), a2_poly)
        assert comps(rep) == [(1, sorted(edge))], (w, t)
    rep = P.degeneration_report(a2_crystal, W(a2, 2, 1), W(a2, 1, 2), a2_poly)
    assert comps(rep) == sorted([(1, sorted([B, G])), (1, sorted([E, G]))])
    assert w0.length == 3


def test_a2_reducible_surfaces(a2_crystal, a2_poly, a2):
    w0 = W(a2, 1, 2, 1)
    for w, t, common in [((2, 1), w0, {A, G}), (w0, (1, 2), {F, G})]:
        ww = W(a2, *w) if isinstance(w, tuple) else w
        tt = W(a2, *t) if isinstance(t, tuple) else t
        rep = P.degeneration_report(a2_crystal, ww, tt, a2_poly)
        assert [c["dimension"] for c in rep.components] == [2, 2]
        a, b = (set(map(tuple, c["vertices"])) for c in rep.components)
        assert a & b == common


def test_b2_reports(b2_crystal, b2_poly, b2):
    w0 = W(b2, 1, 2, 1, 2)
    r = P.degeneration_report(b2_crystal, W(b2, 1, 2, 1), W(b2, 1, 2, 1), b2_poly)
    assert comps(r) == [(2, sorted([(0, 1, 0, 0), (2, 1, 0, 0), (2, 3, 1, 0), (0, 3, 1, 0)]))]
    r = P.degeneration_report(b2_crystal, W(b2, 1, 2), w0, b2_poly)
    assert comps(r) == [(2, sorted([(0, 0, 0, 0), (0, 1, 0, 0), (2, 1, 0, 0), (1, 0, 0, 0)]))]
    r = P.degeneration_report(b2_crystal, W(b2, 1), W(b2, 1), b2_poly)
    assert r.subset_size == 0 and r.is_face_union and r.components == []


def test_all_pairs_are_face_unions(a2_crystal, a2_poly, b2_crystal, b2_poly):
    for g, poly in [(a2_crystal, a2_poly), (b2_crystal, b2_poly)]:
        elems = rootdata.all_elements(g.cartan)
        for w in elems:
            for t in elems:
                rep = P.degeneration_report(g, w, t, poly)
                assert rep.is_face_union
                covered = set()
                for comp in rep.components:
                    covered |= set(poly.face_points(comp["tight_mask"]))
                assert len(covered) == rep.subset_size


@pytest.mark.parametrize("fixture", ["a2_crystal", "b2_crystal"])
def test_demazure_subsets_are_single_faces(fixture, request):
    g = request.getfixturevalue(fixture)
    poly = P.string_polytope(g)
    for w in rootdata.all_elements(g.cartan):
        if not rootdata.is_adapted(g.cartan, g.word, w):
            continue
        sub = {g.elements[k].coords for k in crystal.demazure_subset(g, w)}
        ok, fs = P.face_union_test(poly, sub)
        assert ok and len(fs.maximal_faces()) == 1


def test_sum_condition_spot_check(a2):
    # gamma in the subset for lam, delta outside it for mu => gamma + delta outside the subset for lam + mu
    lam, mu = (1, 1), (1, 0)
    gl, gm, gs = (crystal.generate(a2, (1, 2, 1), x) for x in (lam, mu, (2, 1)))
    for w, t in [((2, 1), (1, 2)), ((1, 2), (2, 1)), ((2, 1), (1, 2, 1))]:
        ww, tt = W(a2, *w), W(a2, *t)
        sub = lambda g: {g.elements[k].coords for k in crystal.richardson_subset(g, ww, tt)}
        sl, sm, ss = sub(gl), sub(gm), sub(gs)
        for x in sl:
            for y in (b.coords for b in gm.elements if b.coords not in sm):
                s = tuple(a + b for a, b in zip(x, y))
                assert s not in ss


def test_single_face_a2(a2_crystal, a2):
    w0 = W(a2, 1, 2, 1)
    assert P.adapted_single_face_check(a2_crystal, w0, w0)
    assert P.adapted_single_face_check(a2_crystal, W(a2, 1), W(a2, 2, 1))
    with pytest.raises(PreconditionNotMet):
        P.adapted_single_face_check(a2_crystal, W(a2, 1), W(a2, 1, 2))


def test_exports(a2_poly):
    data = json.loads(P.dumps(a2_poly.to_json()))
    assert len(data["vertices"]) == 7 and len(data["lattice_points"]) == 8
    off = a2_poly.to_off().splitlines()
    assert off[0] == "OFF" and off[1].split()[0] == "7"
