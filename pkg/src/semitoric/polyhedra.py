"""Exact polytopes from lattice points, tight sets, and unions of faces.

The convex hull is computed by the double description method on the cone of
valid inequalities: an inequality ``a.x >= b`` is a vector ``(a, -b)`` with
nonnegative pairing against every homogenized point ``(p, 1)``.  Extreme rays
of that cone are the facets.  All arithmetic is on Python integers.
"""

import json
import math
from dataclasses import dataclass, field

from . import _exact, crystal, rootdata, tableaux
from .errors import DimensionTooLarge, NotStandardWord, NotTypeA, PreconditionNotMet


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _primitive_int(v):
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _initial_basis(rows):
    """Indices of a maximal linearly independent subset of ``rows`` (greedy, in order)."""
    chosen = []
    for k, r in enumerate(rows):
        if _exact.rank([rows[j] for j in chosen] + [r]) > len(chosen):
            chosen.append(k)
    return chosen


def double_description(rows):
    """Extreme rays of the pointed cone ``{y : r.y >= 0 for r in rows}``.

    ``rows`` must span the whole space.  Rays come back as primitive integer
    vectors, sorted.
    """
    dim = len(rows[0])
    basis = _initial_basis(rows)
    if len(basis) != dim:
        raise ValueError("rows do not span the ambient space")
    inv = _exact.inverse([rows[k] for k in basis])
    rays = []
    for col in range(dim):
        rays.append(_exact.primitive([inv[r][col] for r in range(dim)]))
    done = list(basis)
    zeros = [frozenset(k for k in done if _dot(rows[k], ray) == 0) for ray in rays]

    rest = [k for k in range(len(rows)) if k not in set(basis)]
    for k in rest:
        u = rows[k]
        vals = [_dot(u, ray) for ray in rays]
        pos = [j for j, v in enumerate(vals) if v > 0]
        neg = [j for j, v in enumerate(vals) if v < 0]
        zer = [j for j, v in enumerate(vals) if v == 0]
        new_rays, new_zeros = [], []
        for j in pos + zer:
            new_rays.append(rays[j])
            new_zeros.append(zeros[j] | ({k} if vals[j] == 0 else frozenset()))
        for jp in pos:
            for jn in neg:
                common = zeros[jp] & zeros[jn]
                if len(common) < dim - 2:
                    continue
                if any(common <= zeros[j] for j in range(len(rays)) if j != jp and j != jn):
                    continue
                r = tuple(vals[jp] * a - vals[jn] * b for a, b in zip(rays[jn], rays[jp]))
                new_rays.append(_primitive_int(r))
                new_zeros.append(common | {k})
        rays, zeros = new_rays, new_zeros
        done.append(k)
    return sorted(set(rays))


@dataclass(frozen=True)
class Inequality:
    """``normal . x >= offset``."""

    normal: tuple
    offset: int

    def value(self, x):
        return _dot(self.normal, x) - self.offset

    def __str__(self):
        terms = " + ".join(f"{c}*t{k + 1}" for k, c in enumerate(self.normal) if c)
        return f"{terms or '0'} >= {self.offset}"


@dataclass
class Polytope:
    dim: int
    h_rep: list
    equations: list
    v_rep: list
    lattice_points: list
    tight: dict = field(default_factory=dict)

    @property
    def affine_dim(self):
        return self.dim - len(self.equations)

    def contains(self, x):
        return all(h.value(x) >= 0 for h in self.h_rep) and all(_dot(a, x) == b for a, b in self.equations)

    def tight_set(self, x):
        mask = 0
        for k, h in enumerate(self.h_rep):
            if h.value(x) == 0:
                mask |= 1 << k
        return mask

    def face_points(self, mask):
        return [p for p in self.lattice_points if self.tight[p] & mask == mask]

    def face_vertices(self, mask):
        return [v for v in self.v_rep if self.tight_set(v) & mask == mask]

    def face_dimension(self, mask):
        return _exact.affine_dimension(self.face_vertices(mask))

    def closure(self, mask):
        """Largest mask defining the same face."""
        pts = self.face_points(mask)
        if not pts:
            return mask
        out = (1 << len(self.h_rep)) - 1
        for p in pts:
            out &= self.tight[p]
        return out

    def facet_index(self, normal, offset):
        """Index of the facet equal to ``normal.x >= offset`` up to positive scaling, or None."""
        target = _primitive_int(tuple(normal) + (-offset,))
        for k, h in enumerate(self.h_rep):
            if _primitive_int(h.normal + (-h.offset,)) == target:
                return k
        return None

    def to_json(self):
        return {
            "dim": self.dim,
            "inequalities": [{"normal": list(h.normal), "offset": h.offset} for h in self.h_rep],
            "equations": [{"normal": list(a), "value": b} for a, b in self.equations],
            "vertices": [list(v) for v in self.v_rep],
            "lattice_points": [{"point": list(p), "tight_mask": self.tight[p]} for p in self.lattice_points],
        }

    def to_off(self):
        """OFF text: vertices, then one face per facet listing its vertices."""
        idx = {v: k for k, v in enumerate(self.v_rep)}
        faces = []
        for k in range(len(self.h_rep)):
            vs = self.face_vertices(1 << k)
            faces.append([idx[v] for v in _cyclic(vs)] if self.affine_dim == 3 == self.dim else
                         [idx[v] for v in vs])
        lines = ["OFF", f"{len(self.v_rep)} {len(faces)} 0"]
        lines += [" ".join(str(x) for x in v) for v in self.v_rep]
        lines += [f"{len(f)} " + " ".join(str(k) for k in f) for f in faces]
        return "\n".join(lines) + "\n"


def _cyclic(vs):
    # display-only ordering of a planar facet in 3-space
    if len(vs) < 3:
        return vs
    c = [sum(v[k] for v in vs) / len(vs) for k in range(3)]
    e1 = [vs[0][k] - c[k] for k in range(3)]
    n = None
    for v in vs[1:]:
        d = [v[k] - c[k] for k in range(3)]
        cr = [e1[1] * d[2] - e1[2] * d[1], e1[2] * d[0] - e1[0] * d[2], e1[0] * d[1] - e1[1] * d[0]]
        if any(abs(x) > 1e-12 for x in cr):
            n = cr
            break
    if n is None:
        return vs
    e2 = [n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2], n[0] * e1[1] - n[1] * e1[0]]

    def ang(v):
        d = [v[k] - c[k] for k in range(3)]
        return math.atan2(sum(a * b for a, b in zip(d, e2)), sum(a * b for a, b in zip(d, e1)))

    return sorted(vs, key=ang)


def hull(points, max_dim=8):
    """Exact convex hull of integer points, with the tight set of every point."""
    points = sorted({tuple(int(x) for x in p) for p in points})
    if not points:
        raise ValueError("empty point set")
    d = len(points[0])
    if d > max_dim:
        raise DimensionTooLarge(f"ambient dimension {d} exceeds the guard {max_dim}")
    base = points[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in points[1:]]
    if diffs:
        _, pivots = _exact.rref(diffs)
    else:
        pivots = []
    r = len(pivots)
    equations = []
    if r < d:
        rows = [list(x) for x in diffs] if diffs else []
        normals = _exact.nullspace(rows, d) if rows else [
            tuple(int(i == j) for j in range(d)) for i in range(d)]
        equations = sorted((tuple(a), _dot(a, base)) for a in normals)
    ineqs = []
    if r > 0:
        proj = [tuple(p[k] for k in pivots) + (1,) for p in points]
        for ray in double_description(proj):
            a, c = ray[:-1], ray[-1]
            normal = [0] * d
            for k, col in enumerate(pivots):
                normal[col] = a[k]
            ineqs.append(Inequality(tuple(normal), -c))
    ineqs.sort(key=lambda h: (h.normal, h.offset))
    poly = Polytope(d, ineqs, equations, [], points)
    poly.tight = {p: poly.tight_set(p) for p in points}
    poly.v_rep = [p for p in points if _is_vertex(poly, p, r)]
    return poly


def _is_vertex(poly, p, r):
    normals = [h.normal for k, h in enumerate(poly.h_rep) if poly.tight[p] >> k & 1]
    if r == 0:
        return True
    return bool(normals) and _exact.rank(normals) == r


def string_polytope(g, max_dim=8):
    """Convex hull of the string data of a crystal."""
    if len(g.word) > max_dim:
        raise DimensionTooLarge(f"ambient dimension {len(g.word)} exceeds the guard {max_dim}")
    return hull([b.coords for b in g], max_dim)


# ---------------------------------------------------------------------------
# unions of faces


@dataclass
class FaceSet:
    faces: list
    maximal: list

    def maximal_faces(self):
        return [m for m, flag in zip(self.faces, self.maximal) if flag]


def face_lattice(poly):
    """All nonempty faces as closed facet masks, mapped to their lattice point sets."""
    cached = getattr(poly, "_faces", None)
    if cached is not None:
        return cached
    top = poly.closure(0)
    out = {top: frozenset(poly.face_points(top))}
    frontier = [top]
    nfacets = len(poly.h_rep)
    while frontier:
        nxt = []
        for m in frontier:
            for k in range(nfacets):
                if m >> k & 1:
                    continue
                pts = poly.face_points(m | 1 << k)
                if not pts:
                    continue
                sub = poly.closure(m | 1 << k)
                if sub not in out:
                    out[sub] = frozenset(pts)
                    nxt.append(sub)
        frontier = nxt
    poly._faces = out
    return out


def face_union_test(poly, subset):
    """Whether ``subset`` is exactly a union of faces of ``poly``.

    Returns ``(True, FaceSet)`` with the maximal faces inside the subset, or
    ``(False, (gamma, missing))`` where the minimal face through ``gamma``
    contains the lattice point ``missing`` outside the subset.
    """
    subset = {tuple(p) for p in subset}
    unknown = subset - set(poly.tight)
    if unknown:
        raise ValueError(f"points {sorted(unknown)[:3]} are not lattice points of the polytope")
    for gamma in sorted(subset):
        face = poly.face_points(poly.tight[gamma])
        missing = [q for q in face if q not in subset]
        if missing:
            return False, (gamma, min(missing))
    inside = {m: pts for m, pts in face_lattice(poly).items() if pts <= subset}
    order = sorted(inside, key=lambda m: (-len(inside[m]), m))
    maximal = [not any(inside[m] < inside[o] for o in order if o != m) for m in order]
    fs = FaceSet(order, maximal)
    covered = set().union(*(inside[m] for m in fs.maximal_faces())) if order else set()
    assert covered == subset, "face decomposition must cover the subset exactly"
    return True, fs


@dataclass
class DegenerationReport:
    w: tuple
    tau: tuple
    subset_size: int
    is_face_union: bool
    components: list
    witness: tuple = None

    def to_json(self):
        out = {
            "w": list(self.w),
            "tau": list(self.tau),
            "subset_size": self.subset_size,
            "is_face_union": self.is_face_union,
            "components": self.components,
        }
        if self.witness is not None:
            out["witness"] = [list(x) for x in self.witness]
        return out


def degeneration_report(g, w, tau, poly=None):
    """Richardson subset of ``g`` for ``(w, tau)`` decomposed into maximal faces."""
    poly = poly or string_polytope(g)
    ids = crystal.richardson_subset(g, w, tau)
    subset = {g.elements[k].coords for k in ids}
    wl = rootdata.reduced_word(w).letters
    tl = rootdata.reduced_word(tau).letters
    if not subset:
        return DegenerationReport(wl, tl, 0, True, [])
    ok, info = face_union_test(poly, subset)
    if not ok:
        return DegenerationReport(wl, tl, len(subset), False, [], witness=info)
    comps = []
    for mask in info.maximal_faces():
        verts = poly.face_vertices(mask)
        comps.append({
            "tight_mask": mask,
            "facets": [k for k in range(len(poly.h_rep)) if mask >> k & 1],
            "dimension": _exact.affine_dimension(verts),
            "vertices": [list(v) for v in verts],
            "lattice_count": len(poly.face_points(mask)),
        })
    return DegenerationReport(wl, tl, len(subset), True, comps)


def report_json(g, report, type_name=None):
    out = {
        "type": type_name or [list(r) for r in g.cartan.a],
        "lambda": list(g.lam),
        "word": list(g.word),
    }
    out.update(report.to_json())
    return out


def adapted_single_face_check(g, w, tau, poly=None):
    """For the standard type A word adapted to ``w`` and with ``i*`` adapted to ``tau``:
    the Richardson subset is empty or a single face."""
    c = g.cartan
    n = c.n
    expect = tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)) for i in range(n))
    if c.a != expect:
        raise NotTypeA("the single-face check is stated for type A")
    if tuple(g.word) != tableaux.standard_word(n):
        raise NotStandardWord("the single-face check needs the standard word")
    if not rootdata.is_adapted(c, g.word, w):
        raise PreconditionNotMet(f"word {g.word} is not adapted to {rootdata.reduced_word(w).letters}")
    istar = rootdata.star_word(c, g.word)
    if not rootdata.is_adapted(c, istar, tau):
        raise PreconditionNotMet(f"word {istar} is not adapted to {rootdata.reduced_word(tau).letters}")
    rep = degeneration_report(g, w, tau, poly)
    return rep.subset_size == 0 or (rep.is_face_union and len(rep.components) == 1)


def adapted_pairs(c, word):
    """All ``(w, tau)`` with ``word`` adapted to ``w`` and ``word*`` adapted to ``tau``."""
    word = tuple(word)
    istar = rootdata.star_word(c, word)
    ws = [rootdata.WeylElement.from_word(c, word[:p]) for p in range(len(word) + 1)]
    taus = [rootdata.WeylElement.from_word(c, istar[:p]) for p in range(len(istar) + 1)]
    return [(w, t) for w in ws for t in taus]


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True)
