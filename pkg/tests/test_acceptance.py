"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.  Every check is exact and each
criterion also has a runtime target that counts towards the verdict.
"""
import itertools
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import small_weights, weyl_dim  # noqa: E402
from semitoric import crystal, geomlift, polyhedra as P, reparam, rootdata, tableaux  # noqa: E402
from semitoric import tropical as tr  # noqa: E402

FIG1 = {
    (0, 0, 0): (0, 0, 0), (1, 0, 0): (1, 0, 0), (0, 1, 0): (0, 0, 1), (1, 1, 0): (1, 0, 1),
    (2, 1, 0): (2, 0, 1), (0, 1, 1): (0, 1, 0), (0, 2, 1): (0, 1, 1), (1, 2, 1): (1, 1, 1),
}
FIG1_ETA = [((0, 0, 0), (1, 2, 1)), ((1, 0, 0), (2, 1, 0)), ((0, 1, 0), (0, 2, 1)), ((0, 1, 1), (1, 1, 0))]

B2_INEQUALITIES = [
    ((1, 0, 0, 0), 0), ((0, 1, -1, 0), 0), ((0, 0, 1, -1), 0), ((0, 0, 0, 1), 0),
    ((-1, 1, -2, 1), -1), ((0, -1, 2, -2), -1), ((0, 0, -1, 1), -1), ((0, 0, 0, -1), -1),
]

A, B, C, D, E, F, G = (0, 0, 0), (1, 0, 0), (2, 1, 0), (0, 1, 0), (0, 2, 1), (1, 2, 1), (0, 1, 1)


def W(c, *word):
    return rootdata.WeylElement.from_word(c, word)


def vertex_set(comp):
    return frozenset(map(tuple, comp["vertices"]))


def pmax(a, b):
    return -tr.pmin(-a, -b)


# ---------------------------------------------------------------------------
# criteria; each returns (ok, detail)


def c1_fig1():
    c = rootdata.validate_cartan("A2")
    g = crystal.generate(c, (1, 2, 1), (1, 1))
    got = {b.coords: crystal.lusztig_params(g, b).coords for b in g.elements}
    return len(g) == 8 and got == FIG1, f"{len(g)} elements, pairs match Fig. 1: {got == FIG1}"


def c2_schutzenberger():
    c = rootdata.validate_cartan("A2")
    g = crystal.generate(c, (1, 2, 1), (1, 1))
    bfs = crystal.eta_involution(g)
    routes = list(bfs) == list(crystal.eta_via_omega(g))
    pairs = all(g.eta(g.by_coords(x)).coords == y and g.eta(g.by_coords(y)).coords == x for x, y in FIG1_ETA)
    tabs = all(tableaux.evacuation(crystal.tableau_of(g, b)) == crystal.tableau_of(g, g.eta(b))
               for b in g.elements)
    return routes and pairs and tabs, f"routes agree {routes}, Fig. 1 pairs {pairs}, evacuation {tabs}"


def c3_bridge():
    sl3 = geomlift.sl_rep(2)
    a, b, c = tr.p(1), tr.p(2), tr.p(3)
    lus = (b + c - tr.pmin(a, c), tr.pmin(a, c), a + b - tr.pmin(a, c))
    string = (pmax(c, b - a), a + c, tr.pmin(a, b - c))
    eta = (a, c, b - c)
    jobs = [
        ("lusztig", geomlift.transition_components(sl3, (1, 2, 1), (2, 1, 2)), lus),
        ("string", geomlift.transition_components(sl3, (-1, -2, -1), (-2, -1, -2)), string),
        ("eta", geomlift.eta_components(sl3, (1, 2, 1), (1, 2, 1)), eta),
    ]
    ok, parts = True, []
    for name, comps, expect in jobs:
        rep = geomlift.tropical_bridge(comps, expect, lo=0, hi=5)
        lo, hi = rep["box"]
        npts = (hi - lo + 1) ** len(expect)
        ok &= rep["status"] == "pass" and npts == 216
        parts.append(f"{name} {rep['status']} on {npts} pts")
    return ok, ", ".join(parts)


def c4_round_trips():
    ok, counted = True, 0
    for name in ("A2", "A3", "B2"):
        c = rootdata.validate_cartan(name)
        reparam.ensure_moves(c)
        word = rootdata.w0_word(c)
        others = rootdata.w0_word_graph(c).words
        for lam in small_weights(c.n):
            g = crystal.generate(c, word, lam)
            for b in g.elements:
                counted += 1
                fwd = reparam.phi_forward(c, word, lam, b.coords)
                ok &= reparam.phi_inverse(c, word, lam, fwd.coords).coords == b.coords
                ok &= g.eta(g.eta(b)) is b
                lus = crystal.lusztig_params(g, b).coords
                for dst in others:
                    for flavor, x in ((reparam.STRING, b.coords), (reparam.LUSZTIG, lus)):
                        there = reparam.transition_coords(c, flavor, word, dst, x)
                        ok &= reparam.transition_coords(c, flavor, dst, word, there) == x
    return ok, f"{counted} elements checked across A2, A3, B2"


def c5_b2_moves():
    tables = geomlift.derive_rank2_moves("B2")
    for t in tables:
        reparam.register_move_table(t, replace=True)
    c = rootdata.validate_cartan("B2")
    g = crystal.generate(c, (1, 2, 1, 2), (1, 1))
    card = len(g) == 16 == weyl_dim(c, (1, 1))
    poly = P.string_polytope(g)
    facets = len(poly.h_rep) == 8 and all(poly.facet_index(n, o) is not None for n, o in B2_INEQUALITIES)
    word = (1, 2, 1, 2)

    def om(lam, t):
        return reparam.omega(c, word, lam, t).coords

    def expect(lam, t):
        t1, t2, t3, t4 = t
        l1, l2 = lam
        return (l1 - t1 + t2 - 2 * t3 + t4, l2 - t2 + 2 * t3 - 2 * t4, l1 - t3 + t4, l2 - t4)

    zero = (0, 0, 0, 0)
    units = [tuple(int(k == j) for k in range(4)) for j in range(4)]
    lin = all(
        tuple(x - y for x, y in zip(om((0, 0), u), om((0, 0), zero)))
        == tuple(x - y for x, y in zip(expect((0, 0), u), expect((0, 0), zero)))
        for u in units)
    const = all(om(lam, zero) == expect(lam, zero) for lam in [(0, 0), (1, 0), (0, 1)])
    affine = all(om(lam, t) == expect(lam, t)
                 for lam in [(1, 1), (2, 3)] for t in itertools.product(range(-1, 2), repeat=4))
    ok = card and facets and lin and const and affine
    return ok, f"|B| = {len(g)}, facets match {facets}, Omega coefficients match {lin and const and affine}"


def c6_b2_faces():
    c = rootdata.validate_cartan("B2")
    reparam.ensure_moves(c)
    g = crystal.generate(c, (1, 2, 1, 2), (1, 1))
    poly = P.string_polytope(g)
    w0 = W(c, 1, 2, 1, 2)
    phi4 = {(0, 0, 0, 0), (0, 1, 0, 0), (1, 0, 0, 0), (0, 3, 1, 0), (2, 1, 0, 0), (2, 3, 1, 0), (0, 1, 1, 0)}
    golden = [
        ("X_s1s2s1", W(c, 1, 2, 1), w0, [phi4]),
        ("X_s1s2s1^s1s2s1", W(c, 1, 2, 1), W(c, 1, 2, 1),
         [{(0, 1, 0, 0), (2, 1, 0, 0), (2, 3, 1, 0), (0, 3, 1, 0)}]),
        ("X_s1s2", W(c, 1, 2), w0, [{(0, 0, 0, 0), (0, 1, 0, 0), (2, 1, 0, 0), (1, 0, 0, 0)}]),
        ("X^s1s2", w0, W(c, 1, 2), [{(1, 3, 2, 1), (2, 3, 1, 0), (0, 3, 1, 0), (0, 3, 2, 1)}]),
    ]
    ok, parts = True, []
    for name, w, t, want in golden:
        rep = P.degeneration_report(g, w, t, poly)
        hit = rep.is_face_union and sorted(map(sorted, map(vertex_set, rep.components))) == sorted(map(sorted, want))
        ok &= hit
        parts.append(f"{name} {'ok' if hit else 'MISMATCH'}")
    rep = P.degeneration_report(g, w0, W(c, 1, 2, 1), poly)
    want = {1 << poly.facet_index((0, -1, 2, -2), -1), 1 << poly.facet_index((0, 0, 0, -1), -1)}
    hit = rep.is_face_union and {comp["tight_mask"] for comp in rep.components} == want
    ok &= hit
    parts.append(f"X^s1s2s1 {'ok' if hit else 'MISMATCH'}")
    return ok, ", ".join(parts)


def _all_pairs_face_unions(g, poly):
    elems = rootdata.all_elements(g.cartan)
    bad, nonempty = [], 0
    for w in elems:
        for t in elems:
            rep = P.degeneration_report(g, w, t, poly)
            nonempty += rep.subset_size > 0
            if not rep.is_face_union:
                bad.append((rep.w, rep.tau))
    return bad, nonempty


def c7_face_unions():
    a2 = rootdata.validate_cartan("A2")
    b2 = rootdata.validate_cartan("B2")
    reparam.ensure_moves(b2)
    ok, parts = True, []
    for c, word, lam in [(a2, (1, 2, 1), (1, 1)), (b2, (1, 2, 1, 2), (1, 1)),
                         (a2, (1, 2, 1), (2, 2)), (b2, (1, 2, 1, 2), (2, 2))]:
        g = crystal.generate(c, word, lam)
        bad, nonempty = _all_pairs_face_unions(g, P.string_polytope(g))
        ok &= not bad
        parts.append(f"{'A2' if c is a2 else 'B2'} lam={lam}: {nonempty} nonempty, {len(bad)} not face unions")

    g = crystal.generate(a2, (1, 2, 1), (1, 1))
    poly = P.string_polytope(g)

    def two_edges(w, t):
        rep = P.degeneration_report(g, W(a2, *w), W(a2, *t), poly)
        comps = rep.components
        shared = set.intersection(*(set(vertex_set(x)) for x in comps)) if comps else set()
        shape = [(x["dimension"], sorted(vertex_set(x))) for x in comps]
        return len(comps) == 2 and all(x["dimension"] == 1 for x in comps) and len(shared) == 1, shape

    literal, shape = two_edges((2, 1), (2, 1))
    ok &= literal
    parts.append(f"(s2s1, s2s1) gives {shape}")
    if not literal:
        # where the two-edge curve actually sits, for the record
        elsewhere, other = two_edges((2, 1), (1, 2))
        parts.append(f"two edges sharing one vertex found at (s2s1, s1s2) instead: {elsewhere} {other}")
    return ok, "; ".join(parts)


def c8_single_face():
    c = rootdata.validate_cartan("A3")
    word = tableaux.standard_word(3)
    g = crystal.generate(c, word, (1, 1, 1))
    poly = P.string_polytope(g)
    pairs = P.adapted_pairs(c, word)
    fails = [(rootdata.reduced_word(w).letters, rootdata.reduced_word(t).letters)
             for w, t in pairs if not P.adapted_single_face_check(g, w, t, poly)]
    return not fails, f"{len(pairs)} adapted pairs, {len(fails)} failures {fails[:3]}"


def _count_formula(T, n):
    # c_ij = number of entries j+1 in the first i rows
    out = {}
    for j in range(1, n + 1):
        for i in range(1, j + 1):
            out[(i, j)] = sum(row.count(j + 1) for row in T.rows[:i])
    return out


def c9_tableaux():
    ok, checked = True, 0
    for name in ("A2", "A3"):
        c = rootdata.validate_cartan(name)
        n = c.n
        word = tableaux.standard_word(n)
        index = tableaux.string_index(n)
        for lam in small_weights(n):
            g = crystal.generate(c, word, lam)
            tabs = [crystal.tableau_of(g, b) for b in g.elements]
            ok &= len(set(tabs)) == len(tabs) and set(tabs) == set(tableaux.ssyt_enumerate(lam))
            for b, T in zip(g.elements, tabs):
                counts = _count_formula(T, n)
                ok &= all(b.coords[pos] == counts[key] for key, pos in index.items())
                checked += 1
    return ok, f"{checked} elements, bijective and counting formula holds: {ok}"


def c10_tropical():
    f = tr.tropicalize(tr.parse_sf("(t1^3 + t2^3)/(t1 + t2)"))
    same, witness = tr.pl_equal_on_box(f, tr.pmin(2 * tr.p(1), 2 * tr.p(2)), radius=10, nvars=2)
    consts = all(tr.evaluate(tr.tropicalize(tr.parse_sf(s)), ()) == 0 for s in ("1", "5", "3/7", "2 + 3"))
    return same and consts, f"equal on [-10,10]^2 {same} (witness {witness}), constants to 0 {consts}"


CRITERIA = [
    (1, "Fig. 1 reproduction", c1_fig1, 1),
    (2, "Schutzenberger agreement", c2_schutzenberger, 1),
    (3, "A2 tropical bridge", c3_bridge, 10),
    (4, "inverse-map round trips", c4_round_trips, 30),
    (5, "B2 derived-move validation", c5_b2_moves, 30),
    (6, "B2 face golden data", c6_b2_faces, 10),
    (7, "union-of-faces theorem", c7_face_unions, 60),
    (8, "single-face proposition", c8_single_face, 120),
    (9, "type-A tableau bijection", c9_tableaux, 30),
    (10, "tropicalization engine", c10_tropical, 1),
]


def run(number, name, fn, target):
    start = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - start
    passed = ok and elapsed < target
    line = (f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {name} "
            f"({elapsed:.2f}s, target < {target}s) {detail}")
    return passed, line


@pytest.mark.parametrize("number,name,fn,target", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, name, fn, target, capsys):
    passed, line = run(number, name, fn, target)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [run(*crit) for crit in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(p for p, _ in results) else 1)
