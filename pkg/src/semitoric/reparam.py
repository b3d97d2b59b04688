"""Reparametrizations of the canonical basis.

String and Lusztig coordinates along one reduced word of ``w0`` are moved to
another word by composing rank-2 moves along a braid chain.  The linear maps
relating string data of ``b`` to Lusztig data of its image under the
Schützenberger involution live here too.
"""

import threading
from dataclasses import dataclass, field

from . import rootdata
from .errors import DimensionMismatch, NotSameGroup, UnsupportedLocalType
from .tropical import PLExpr, linear, p, pmin

STRING = "string"
LUSZTIG = "lusztig"
FLAVORS = (STRING, LUSZTIG)


@dataclass(frozen=True)
class ParamVector:
    flavor: str
    word: tuple
    coords: tuple
    cartan: rootdata.CartanData = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.flavor not in FLAVORS:
            raise ValueError(f"unknown flavor {self.flavor!r}")
        object.__setattr__(self, "word", tuple(self.word))
        object.__setattr__(self, "coords", tuple(int(x) for x in self.coords))
        if len(self.coords) != len(self.word):
            raise DimensionMismatch(
                f"{len(self.coords)} coordinates for a word of length {len(self.word)}")

    def to_json(self):
        return {"word": list(self.word), "flavor": self.flavor, "coords": list(self.coords)}


# ---------------------------------------------------------------------------
# rank-2 move tables


@dataclass(frozen=True)
class Rank2MoveTable:
    """Local moves for a segment ``(i, j, i, ...)`` rewritten to ``(j, i, j, ...)``.

    ``key`` is ``(a_ij, a_ji)`` for the first letter ``i`` of the source
    segment; it fixes the orientation in non-simply-laced types.
    """

    local_type: str
    key: tuple
    string_move: tuple
    lusztig_move: tuple
    provenance: str = "paper"

    @property
    def size(self):
        return len(self.string_move)

    def move(self, flavor):
        return self.string_move if flavor == STRING else self.lusztig_move

    def reversed_key(self):
        return (self.key[1], self.key[0])


def _compile(exprs):
    fns = tuple(e.fn for e in exprs)
    return lambda seg: tuple(f(seg) for f in fns)


_A1A1 = Rank2MoveTable("A1xA1", (0, 0), (p(2), p(1)), (p(2), p(1)))

# string move for (1,2,1) -> (2,1,2)
_A2_STRING = (
    p(2) + p(3) - pmin(p(2), p(1) + p(3)),
    p(1) + p(3),
    pmin(p(2), p(1) + p(3)) - p(3),
)
# Lusztig move: a' = b + c - min(a, c), b' = min(a, c), c' = a + b - min(a, c)
_A2_LUSZTIG = (
    p(2) + p(3) - pmin(p(1), p(3)),
    pmin(p(1), p(3)),
    p(1) + p(2) - pmin(p(1), p(3)),
)
_A2 = Rank2MoveTable("A2", (-1, -1), _A2_STRING, _A2_LUSZTIG)

_REGISTRY = {_A1A1.key: _A1A1, _A2.key: _A2}
_LOCK = threading.Lock()
_COMPILED = {}


def register_move_table(table, replace=False):
    """Add a move table to the shared registry (used for derived moves)."""
    with _LOCK:
        if table.key in _REGISTRY and not replace:
            return _REGISTRY[table.key]
        _REGISTRY[table.key] = table
        for k in [k for k in _COMPILED if k[0] == table.key]:
            del _COMPILED[k]
        _CHAINS.clear()
    return table


def unregister_move_table(key):
    with _LOCK:
        _REGISTRY.pop(tuple(key), None)
        for k in [k for k in _COMPILED if k[0] == tuple(key)]:
            del _COMPILED[k]
        _CHAINS.clear()


def move_table(key):
    key = tuple(key)
    try:
        return _REGISTRY[key]
    except KeyError:
        name = {1: "A2", 2: "B2", 3: "G2", 0: "A1xA1"}.get(key[0] * key[1], str(key))
        raise UnsupportedLocalType(
            f"no move table for local type {name} with orientation {key}; derive it first") from None


def registered_tables():
    return dict(_REGISTRY)


def _compiled(key, flavor):
    k = (tuple(key), flavor)
    fn = _COMPILED.get(k)
    if fn is None:
        fn = _compile(move_table(key).move(flavor))
        _COMPILED[k] = fn
    return fn


def local_move(table, flavor, coords):
    """Apply a rank-2 move to a short coordinate vector."""
    coords = tuple(int(x) for x in coords)
    if len(coords) != table.size:
        raise DimensionMismatch(f"{table.local_type} move takes {table.size} coordinates")
    return tuple(e(coords) for e in table.move(flavor))


def needed_keys(c):
    """Orientation keys of all rank-2 subsystems of ``c``."""
    keys = set()
    for i in range(c.n):
        for j in range(c.n):
            if i != j:
                keys.add((c.a[i][j], c.a[j][i]))
    return keys


def ensure_moves(c):
    """Make sure move tables exist for every local type of ``c``, deriving them if needed."""
    for key in sorted(needed_keys(c)):
        if key in _REGISTRY:
            continue
        from . import geomlift

        kind, _ = _kind_of(key)
        tables = geomlift.derive_rank2_moves(kind)
        for tab in tables:
            register_move_table(tab)
        move_table(key)


def _kind_of(key):
    return {0: ("A1xA1", 2), 1: ("A2", 3), 2: ("B2", 4), 3: ("G2", 6)}[key[0] * key[1]]


# ---------------------------------------------------------------------------
# transitions

_CHAINS = {}


def _chain(c, src, dst):
    k = (c.a, src, dst)
    steps = _CHAINS.get(k)
    if steps is None:
        graph = rootdata.w0_word_graph(c)
        out = []
        cur = src
        for nxt, pos, kind in graph.path(src, dst):
            i, j = cur[pos], cur[pos + 1]
            m = rootdata._LOCAL_TYPES[c.a[i - 1][j - 1] * c.a[j - 1][i - 1]][1]
            out.append((pos, m, (c.a[i - 1][j - 1], c.a[j - 1][i - 1])))
            cur = nxt
        steps = tuple(out)
        _CHAINS[k] = steps
    return steps


def apply_chain(steps, flavor, coords):
    coords = list(coords)
    for pos, m, key in steps:
        coords[pos:pos + m] = _compiled(key, flavor)(coords[pos:pos + m])
    return tuple(coords)


def transition_coords(c, flavor, src, dst, coords):
    """Coordinates moved from word ``src`` to word ``dst`` (both tuples)."""
    src, dst = tuple(src), tuple(dst)
    if src == dst:
        return tuple(coords)
    return apply_chain(_chain(c, src, dst), flavor, coords)


def _word_letters(word):
    return tuple(word.letters) if isinstance(word, rootdata.ReducedWord) else tuple(word)


def transition(pv, target_word, cartan=None):
    """Reparametrize ``pv`` in ``target_word`` along a braid chain."""
    c = cartan or pv.cartan
    if isinstance(target_word, rootdata.ReducedWord):
        tc = target_word.target.cartan
        if c is None:
            c = tc
        elif tc.a != c.a:
            raise NotSameGroup("source and target words belong to different Cartan data")
    if c is None:
        raise ValueError("Cartan data is required")
    dst = _word_letters(target_word)
    w0 = rootdata.longest_element(c)[0]
    for w in (pv.word, dst):
        if len(w) != c.num_pos_roots or rootdata.WeylElement.from_word(c, w) != w0:
            raise NotSameGroup(f"{w} is not a reduced word for w0 of this Cartan data")
    coords = transition_coords(c, pv.flavor, pv.word, dst, pv.coords)
    return ParamVector(pv.flavor, dst, coords, c)


def chains_between(c, src, dst, limit=None):
    """All simple braid chains (as step tuples) from ``src`` to ``dst``; for chain-independence tests."""
    graph = rootdata.w0_word_graph(c)
    src, dst = tuple(src), tuple(dst)
    out = []

    def walk(u, seen, steps):
        if limit is not None and len(out) >= limit:
            return
        if u == dst:
            out.append(tuple(steps))
            return
        for v, pos, kind in graph.adjacency[u]:
            if v in seen:
                continue
            i, j = u[pos], u[pos + 1]
            key = (c.a[i - 1][j - 1], c.a[j - 1][i - 1])
            m = rootdata._LOCAL_TYPES[key[0] * key[1]][1]
            seen.add(v)
            steps.append((pos, m, key))
            walk(v, seen, steps)
            steps.pop()
            seen.discard(v)

    walk(src, {src}, [])
    return out


# ---------------------------------------------------------------------------
# linear maps


def _check(word, vec):
    if len(vec) != len(word):
        raise DimensionMismatch(f"expected {len(word)} coordinates, got {len(vec)}")


def _phi_coeffs(c, word):
    # t'_k = lam_{i_k} - t_k - sum_{j>k} a_{i_k i_j} t_j
    word = tuple(word)
    N = len(word)
    rows = []
    for k in range(N):
        row = [0] * N
        row[k] = -1
        for j in range(k + 1, N):
            row[j] = -c.a[word[k] - 1][word[j] - 1]
        rows.append(tuple(row))
    return tuple(rows)


def phi_forward_matrix(c, word):
    """Coefficient matrix of the linear part of :func:`phi_forward`."""
    return _phi_coeffs(c, _word_letters(word))


def _apply_affine(rows, const, t):
    return tuple(const[k] + sum(r * x for r, x in zip(rows[k], t)) for k in range(len(rows)))


def phi_forward(c, word, lam, t):
    """Lusztig data in ``word`` of the partner of the element with string data ``t``."""
    word = _word_letters(word)
    _check(word, t)
    const = tuple(lam[i - 1] for i in word)
    return ParamVector(LUSZTIG, word, _apply_affine(_phi_coeffs(c, word), const, t), c)


def omega(c, word, lam, t):
    """Same numbers as :func:`phi_forward`, read as Lusztig data in the word ``i*``."""
    word = _word_letters(word)
    out = phi_forward(c, word, lam, t)
    return ParamVector(LUSZTIG, rootdata.star_word(c, word), out.coords, c)


def phi_inverse(c, word, lam, t_prime, convention="jk"):
    """String data recovered from Lusztig data, inverting :func:`phi_forward`.

    ``t_k = l'_k - t'_k - sum_{j>k} M[j][k] t'_j`` with
    ``M[j][k] = <beta_j, beta_k^vee>`` and ``l'_k = <lam*, beta_k^vee>``, the
    string data of the lowest element of ``B(lam)``.  ``convention="kj"``
    swaps the indices of ``M``; it only differs in non-simply-laced types and
    does not invert :func:`phi_forward` there.
    """
    word = _word_letters(word)
    _check(word, t_prime)
    rs = rootdata.positive_root_sequence(c, word)
    star = rootdata.star_involution(c)
    lam_star = tuple(lam[star[i] - 1] for i in range(1, c.n + 1))
    lp = rs.l_prime(lam_star)
    M = rs.pairing
    N = len(word)
    out = []
    for k in range(N):
        s = lp[k] - t_prime[k]
        for j in range(k + 1, N):
            m = M[j][k] if convention == "jk" else M[k][j]
            s -= m * t_prime[j]
        out.append(s)
    return ParamVector(STRING, word, out, c)


def zeta_matrix(c, word, dual=False):
    word = _word_letters(word)
    N = len(word)
    rows = []
    for k in range(N):
        row = [0] * N
        row[k] = -1
        for j in range(k + 1, N):
            a = c.a[word[k] - 1][word[j] - 1] if dual else c.a[word[j] - 1][word[k] - 1]
            row[j] = -a
        rows.append(tuple(row))
    return tuple(rows)


def zeta_tropical(c, word, t, dual=False):
    """Tropical form of the monomial map ``t'_k = t_k^{-1} prod_{j>k} t_j^{-a_{i_j i_k}}``."""
    word = _word_letters(word)
    _check(word, t)
    rows = zeta_matrix(c, word, dual)
    return _apply_affine(rows, (0,) * len(word), t)


def linear_pl(rows, const=None):
    """PL vector map for an affine map given by integer rows."""
    const = const or (0,) * len(rows)
    return tuple(linear(r, k) for r, k in zip(rows, const))


def is_pl_vector(exprs):
    return all(isinstance(e, PLExpr) for e in exprs)
