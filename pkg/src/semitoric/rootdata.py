"""Finite-type Cartan data, Weyl group elements, reduced words and root sequences.

Conventions
-----------
* ``a[i][j] = <alpha_j, alpha_i^vee>`` (row ``i`` pairs against the coroot ``i``).
* Weights are integer vectors in fundamental-weight coordinates; roots are
  integer vectors in simple-root coordinates; coroots in simple-coroot
  coordinates.
* Words use the 1-based letters ``1..n``; everything stored in arrays is
  0-based.
"""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm

import numpy as np

from . import _exact
from .errors import NotCartan, NotFiniteType, TooManyWords

PRESETS = {
    "A1": [[2]],
    "A2": [[2, -1], [-1, 2]],
    "A3": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "A4": [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]],
    "B2": [[2, -1], [-2, 2]],
    "G2": [[2, -1], [-3, 2]],
}

# product a_ij * a_ji -> (name of the rank-2 type, braid relation length m_ij)
_LOCAL_TYPES = {0: ("A1xA1", 2), 1: ("A2", 3), 2: ("B2", 4), 3: ("G2", 6)}


def _as_matrix(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class CartanData:
    a: tuple
    d: tuple
    num_pos_roots: int

    @property
    def n(self):
        return len(self.a)

    @cached_property
    def matrix(self):
        return np.array(self.a, dtype=np.int64)

    @cached_property
    def positive_roots(self):
        """Positive roots in simple-root coordinates, sorted by height then lexicographically."""
        return _positive_roots(self.a)

    @cached_property
    def positive_coroots(self):
        return _positive_roots(tuple(zip(*self.a)))

    def local_type(self, i, j):
        """Name and braid length of the rank-2 subsystem on letters i, j (1-based)."""
        prod = self.a[i - 1][j - 1] * self.a[j - 1][i - 1]
        return _LOCAL_TYPES[prod]

    def pairing(self, root, coroot):
        """<root, coroot> for a root in simple-root and a coroot in simple-coroot coordinates."""
        return sum(
            coroot[i] * self.a[i][j] * root[j]
            for i in range(self.n) for j in range(self.n)
            if coroot[i] and root[j]
        )

    def root_to_weight(self, root):
        return tuple(sum(self.a[i][j] * root[j] for j in range(self.n)) for i in range(self.n))

    @cached_property
    def identity(self):
        return WeylElement.identity(self)

    @cached_property
    def simple_reflections(self):
        return tuple(WeylElement.simple(self, i) for i in range(1, self.n + 1))


def _reflect_root(a, i, root):
    # s_i(beta) = beta - <beta, alpha_i^vee> alpha_i
    c = sum(a[i][j] * root[j] for j in range(len(root)))
    if c == 0:
        return root
    out = list(root)
    out[i] -= c
    return tuple(out)


def _positive_roots(a, limit=10_000):
    n = len(a)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(simple)
    queue = deque(simple)
    while queue:
        r = queue.popleft()
        for i in range(n):
            s = _reflect_root(a, i, r)
            if s not in seen:
                seen.add(s)
                queue.append(s)
                if len(seen) > limit:
                    raise NotFiniteType("root orbit does not terminate")
    pos = [r for r in seen if all(x >= 0 for x in r)]
    return tuple(sorted(pos, key=lambda r: (sum(r), r)))


def _symmetrizers(a):
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        comp = [start]
        d[start] = Fraction(1)
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j == i or a[i][j] == 0:
                    continue
                # d_i a_ij = d_j a_ji
                want = d[i] * a[i][j] / a[j][i]
                if d[j] is None:
                    d[j] = want
                    comp.append(j)
                    queue.append(j)
                elif d[j] != want:
                    raise NotCartan("matrix is not symmetrizable")
        den = lcm(*(d[i].denominator for i in comp))
        ints = [int(d[i] * den) for i in comp]
        g = 0
        for x in ints:
            g = gcd(g, x)
        for i, x in zip(comp, ints):
            d[i] = x // g
    return tuple(int(x) for x in d)


def validate_cartan(matrix):
    """Check a square integer matrix and return its :class:`CartanData`.

    Raises :class:`NotCartan` for a malformed matrix and :class:`NotFiniteType`
    when the symmetrized matrix is not positive definite.
    """
    if isinstance(matrix, str):
        try:
            matrix = PRESETS[matrix]
        except KeyError:
            raise NotCartan(f"unknown preset {matrix!r}") from None
    rows = [list(r) for r in matrix]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NotCartan("Cartan matrix must be square and nonempty")
    for r in rows:
        for x in r:
            if int(x) != x:
                raise NotCartan("Cartan matrix entries must be integers")
    a = _as_matrix(rows)
    for i in range(n):
        if a[i][i] != 2:
            raise NotCartan(f"diagonal entry a[{i+1}][{i+1}] = {a[i][i]} != 2")
        for j in range(n):
            if i == j:
                continue
            if a[i][j] > 0:
                raise NotCartan(f"positive off-diagonal entry at ({i+1},{j+1})")
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise NotCartan(f"asymmetric zero pattern at ({i+1},{j+1})")
    d = _symmetrizers(a)
    sym = [[d[i] * a[i][j] for j in range(n)] for i in range(n)]
    # Sylvester's criterion
    for k in range(1, n + 1):
        if _exact.det([row[:k] for row in sym[:k]]) <= 0:
            raise NotFiniteType("symmetrized Cartan matrix is not positive definite")
    npos = len(_positive_roots(a))
    return CartanData(a=a, d=d, num_pos_roots=npos)


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element stored as its integer action on the weight lattice.

    ``root_action`` is the same element acting on simple-root coordinates; it is
    carried along to make positivity tests cheap and does not take part in
    equality.
    """

    action: tuple
    length: int
    cartan: CartanData = field(compare=False, repr=False)
    root_action: tuple = field(compare=False, repr=False)

    @classmethod
    def identity(cls, cartan):
        n = cartan.n
        eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return cls(eye, 0, cartan, eye)

    @classmethod
    def simple(cls, cartan, i):
        n, a, k = cartan.n, cartan.a, i - 1
        # weights: lambda -> lambda - lambda_k alpha_k, alpha_k = column k of a
        act = tuple(
            tuple(int(r == c) - (a[r][k] if c == k else 0) for c in range(n)) for r in range(n)
        )
        # roots: alpha_c -> alpha_c - a_kc alpha_k
        ract = tuple(
            tuple(int(r == c) - (a[k][c] if r == k else 0) for c in range(n)) for r in range(n)
        )
        return cls(act, 1, cartan, ract)

    @classmethod
    def from_word(cls, cartan, word):
        w = cls.identity(cartan)
        for i in word:
            w = w.right_multiply(i)
        return w

    def _compose(self, other):
        act = _matmul(self.action, other.action)
        ract = _matmul(self.root_action, other.root_action)
        return act, ract

    def __mul__(self, other):
        act, ract = self._compose(other)
        w = WeylElement(act, 0, self.cartan, ract)
        return WeylElement(act, _inversions(w), self.cartan, ract)

    def right_multiply(self, i):
        """``w * s_i`` with the length updated by one step."""
        s = self.cartan.simple_reflections[i - 1]
        act, ract = self._compose(s)
        delta = -1 if self.is_right_descent(i) else 1
        return WeylElement(act, self.length + delta, self.cartan, ract)

    def inverse(self):
        act = _exact.inverse(self.action)
        ract = _exact.inverse(self.root_action)
        return WeylElement(_as_matrix(act), self.length, self.cartan, _as_matrix(ract))

    def apply_weight(self, lam):
        return tuple(sum(row[j] * lam[j] for j in range(len(lam))) for row in self.action)

    def apply_root(self, root):
        return tuple(sum(row[j] * root[j] for j in range(len(root))) for row in self.root_action)

    def is_right_descent(self, i):
        """True when ``w(alpha_i) < 0``, i.e. ``l(w s_i) < l(w)``."""
        col = [row[i - 1] for row in self.root_action]
        return any(x < 0 for x in col)

    def reduced_word(self):
        return reduced_word(self)

    def __hash__(self):
        return hash(self.action)


def _matmul(x, y):
    n = len(x)
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(n) if x[i][k]) for j in range(n))
        for i in range(n)
    )


def _inversions(w):
    return sum(1 for r in w.cartan.positive_roots if any(x < 0 for x in w.apply_root(r)))


@dataclass(frozen=True)
class ReducedWord:
    letters: tuple
    target: WeylElement

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __getitem__(self, k):
        return self.letters[k]


def make_word(cartan, letters):
    """Wrap letters as a :class:`ReducedWord`, rejecting non-reduced input."""
    letters = tuple(int(x) for x in letters)
    if any(not 1 <= x <= cartan.n for x in letters):
        raise ValueError(f"letters must lie in 1..{cartan.n}: {letters}")
    w = WeylElement.from_word(cartan, letters)
    if w.length != len(letters):
        raise ValueError(f"word {letters} is not reduced")
    return ReducedWord(letters, w)


def reduced_word(w):
    """A reduced word for ``w``, peeling the smallest right descent each step."""
    letters = []
    cur = w
    while cur.length > 0:
        i = next(i for i in range(1, w.cartan.n + 1) if cur.is_right_descent(i))
        letters.append(i)
        cur = cur.right_multiply(i)
    return ReducedWord(tuple(reversed(letters)), w)


def _greedy_ascend(w, letters):
    letters = list(letters)
    n = w.cartan.n
    while True:
        i = next((i for i in range(1, n + 1) if not w.is_right_descent(i)), None)
        if i is None:
            return w, letters
        w = w.right_multiply(i)
        letters.append(i)


def longest_element(c):
    """The longest element ``w0`` and a reduced word found by greedy ascent."""
    w0, letters = _greedy_ascend(c.identity, [])
    return w0, ReducedWord(tuple(letters), w0)


def star_involution(c):
    """Map ``i -> i*`` defined by ``w0(alpha_i) = -alpha_{i*}`` (1-based dict)."""
    w0 = _w0(c)
    out = {}
    for i in range(1, c.n + 1):
        simple = tuple(int(j == i - 1) for j in range(c.n))
        img = w0.apply_root(simple)
        j = next(k for k, x in enumerate(img) if x)
        assert img[j] == -1 and sum(abs(x) for x in img) == 1
        out[i] = j + 1
    return out


_W0_CACHE = {}


def _w0(c):
    if c.a not in _W0_CACHE:
        _W0_CACHE[c.a] = longest_element(c)
    return _W0_CACHE[c.a][0]


def w0_word(c):
    if c.a not in _W0_CACHE:
        _W0_CACHE[c.a] = longest_element(c)
    return _W0_CACHE[c.a][1]


def star_word(c, word):
    star = star_involution(c)
    return tuple(star[i] for i in word)


@dataclass(frozen=True)
class WordGraph:
    """Reduced words of one element together with their braid-move edges.

    ``edges`` holds ``(u, v, position, local_type)`` with ``position`` the
    0-based start of the rewritten segment.
    """

    words: tuple
    edges: tuple

    @cached_property
    def adjacency(self):
        adj = {u: [] for u in self.words}
        for u, v, pos, kind in self.edges:
            adj[u].append((v, pos, kind))
            adj[v].append((u, pos, kind))
        return adj

    def is_connected(self):
        if not self.words:
            return True
        seen = {self.words[0]}
        queue = deque([self.words[0]])
        while queue:
            u = queue.popleft()
            for v, _, _ in self.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == len(self.words)

    def path(self, src, dst):
        """Shortest braid-move chain from ``src`` to ``dst`` as ``[(word, pos, kind), ...]``."""
        src, dst = tuple(src), tuple(dst)
        prev = {src: None}
        queue = deque([src])
        while queue:
            u = queue.popleft()
            if u == dst:
                break
            for v, pos, kind in self.adjacency[u]:
                if v not in prev:
                    prev[v] = (u, pos, kind)
                    queue.append(v)
        if dst not in prev:
            raise KeyError(f"{dst} not reachable from {src}")
        steps = []
        cur = dst
        while prev[cur] is not None:
            u, pos, kind = prev[cur]
            steps.append((cur, pos, kind))
            cur = u
        return steps[::-1]


def braid_neighbors(c, word):
    """Words obtained from ``word`` by one braid move, with (position, local type)."""
    word = tuple(word)
    out = []
    for p in range(len(word) - 1):
        i, j = word[p], word[p + 1]
        if i == j:
            continue
        kind, m = c.local_type(i, j)
        seg = word[p:p + m]
        if len(seg) < m:
            continue
        if all(seg[k] == (i if k % 2 == 0 else j) for k in range(m)):
            new = tuple(j if k % 2 == 0 else i for k in range(m))
            out.append((word[:p] + new + word[p + m:], p, kind))
    return out


def all_reduced_words(w, guard=100_000):
    """Every reduced word of ``w`` with the braid-move adjacency between them."""
    c = w.cartan
    memo = {}

    def words_of(x):
        if x.length == 0:
            return [()]
        if x.action in memo:
            return memo[x.action]
        out = []
        for i in range(1, c.n + 1):
            if x.is_right_descent(i):
                for u in words_of(x.right_multiply(i)):
                    out.append(u + (i,))
                    if len(out) > guard:
                        raise TooManyWords(f"more than {guard} reduced words")
        memo[x.action] = out
        return out

    words = tuple(sorted(words_of(w)))
    present = set(words)
    edges = []
    for u in words:
        for v, pos, kind in braid_neighbors(c, u):
            if v in present and u < v:
                edges.append((u, v, pos, kind))
    return WordGraph(words, tuple(edges))


_GRAPH_CACHE = {}


def w0_word_graph(c):
    if c.a not in _GRAPH_CACHE:
        _GRAPH_CACHE[c.a] = all_reduced_words(_w0(c))
    return _GRAPH_CACHE[c.a]


def extend_adapted(c, w):
    """A reduced word for ``w0`` whose prefix of length ``l(w)`` is reduced for ``w``."""
    prefix = reduced_word(w).letters
    w0, letters = _greedy_ascend(w, prefix)
    return ReducedWord(tuple(letters), w0)


def is_adapted(c, word, w):
    """Whether the reduced word for ``w0`` starts with a reduced word of ``w``."""
    p = w.length
    return WeylElement.from_word(c, tuple(word)[:p]) == w


@dataclass(frozen=True)
class RootSequence:
    word: tuple
    beta: tuple
    beta_coroot: tuple
    pairing: tuple
    cartan: CartanData = field(compare=False, repr=False)

    def l_prime(self, lam):
        """``<lam, beta_k^vee>`` for every k."""
        return tuple(sum(c[i] * lam[i] for i in range(len(lam))) for c in self.beta_coroot)


def positive_root_sequence(c, word):
    """Roots ``s_{i_1}...s_{i_{k-1}}(alpha_{i_k})`` along a reduced word, with coroots."""
    word = tuple(word)
    at = tuple(zip(*c.a))
    beta, cobeta = [], []
    for k, i in enumerate(word):
        r = tuple(int(j == i - 1) for j in range(c.n))
        cr = r
        for letter in reversed(word[:k]):
            r = _reflect_root(c.a, letter - 1, r)
            cr = _reflect_root(at, letter - 1, cr)
        beta.append(r)
        cobeta.append(cr)
    pairing = tuple(
        tuple(c.pairing(beta[k], cobeta[j]) for j in range(len(word))) for k in range(len(word))
    )
    return RootSequence(word, tuple(beta), tuple(cobeta), pairing, c)


def weyl_dimension(c, lam):
    """Dimension of the irreducible module of highest weight ``lam`` (Weyl's product formula)."""
    num = Fraction(1)
    for co in c.positive_coroots:
        h = sum(co)  # <rho, alpha^vee>
        num *= Fraction(h + sum(x * y for x, y in zip(co, lam)), h)
    assert num.denominator == 1
    return int(num)


def all_elements(c, limit=100_000):
    """Every element of the Weyl group, by breadth-first search from the identity."""
    start = c.identity
    seen = {start.action: start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(1, c.n + 1):
            v = w.right_multiply(i)
            if v.action not in seen:
                seen[v.action] = v
                queue.append(v)
                if len(seen) > limit:
                    raise TooManyWords("Weyl group too large")
    return sorted(seen.values(), key=lambda w: (w.length, reduced_word(w).letters))
