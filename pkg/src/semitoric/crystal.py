"""The finite crystal ``B(lam)`` in string coordinates.

Elements are identified by their string data along a fixed reduced word of
``w0``.  The Kashiwara operator ``f_i`` moves the data to a word starting with
``i``, adds one to the leading coordinate and moves back; it is defined exactly
when ``phi_i = eps_i + <wt, alpha_i^vee>`` is positive.
"""

import json
from collections import deque
from dataclasses import dataclass, field

from . import reparam, rootdata, tableaux
from .errors import (CrystalOverflow, NotStandardWord, NotTypeA,
                     PropagationConflict, WeightNotDominant)
from .reparam import LUSZTIG, STRING, ParamVector


@dataclass(frozen=True)
class CrystalElement:
    id: int
    string_coords: ParamVector
    weight: tuple

    @property
    def coords(self):
        return self.string_coords.coords


@dataclass
class CrystalGraph:
    cartan: rootdata.CartanData
    word: tuple
    lam: tuple
    elements: list
    f_edges: dict
    eta_pairing: tuple = None
    _index: dict = field(default=None, repr=False)

    def __post_init__(self):
        self._index = {e.coords: e.id for e in self.elements}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def by_coords(self, coords):
        return self.elements[self._index[tuple(coords)]]

    def id_of(self, coords):
        return self._index.get(tuple(coords))

    @property
    def highest(self):
        return self.elements[self._index[(0,) * len(self.word)]]

    @property
    def lowest(self):
        low = rootdata.longest_element(self.cartan)[0].apply_weight(self.lam)
        hits = [e for e in self.elements if e.weight == low]
        assert len(hits) == 1, "lowest weight space must be one-dimensional"
        return hits[0]

    def f(self, i, b):
        j = self.f_edges.get((_id(b), i))
        return None if j is None else self.elements[j]

    def e(self, i, b):
        j = self._e_edges.get((_id(b), i))
        return None if j is None else self.elements[j]

    @property
    def _e_edges(self):
        if not hasattr(self, "_e_cache"):
            self._e_cache = {(t, i): s for (s, i), t in self.f_edges.items()}
        return self._e_cache

    def eps(self, i, b):
        return epsilon(self.cartan, self.word, i, _coords(self, b))

    def phi(self, i, b):
        b = self.elements[_id(b)] if not isinstance(b, CrystalElement) else b
        return self.eps(i, b) + b.weight[i - 1]

    def ensure_eta(self):
        if self.eta_pairing is None:
            self.eta_pairing = eta_involution(self)
        return self.eta_pairing

    def eta(self, b):
        return self.elements[self.ensure_eta()[_id(b)]]


def _id(b):
    return b.id if isinstance(b, CrystalElement) else int(b)


def _coords(g, b):
    if isinstance(b, CrystalElement):
        return b.coords
    return g.elements[int(b)].coords


# ---------------------------------------------------------------------------
# operators on raw string data


def _first_letter_words(c, word):
    """For each letter i, the reduced word starting with i closest to ``word``."""
    graph = rootdata.w0_word_graph(c)
    out = {}
    seen = {word}
    queue = deque([word])
    while queue and len(out) < c.n:
        u = queue.popleft()
        out.setdefault(u[0], u)
        for v, _, _ in graph.adjacency[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return out


_FRONT = {}


def front_word(c, word, i):
    key = (c.a, tuple(word))
    if key not in _FRONT:
        _FRONT[key] = _first_letter_words(c, tuple(word))
    return _FRONT[key][i]


def epsilon(c, word, i, coords):
    """``eps_i``: leading string coordinate after moving to a word that starts with ``i``."""
    u = front_word(c, word, i)
    return reparam.transition_coords(c, STRING, word, u, coords)[0]


def string_weight(c, word, lam, coords):
    """``lam - sum_k t_k alpha_{i_k}`` in fundamental-weight coordinates."""
    wt = list(lam)
    for t, letter in zip(coords, word):
        if t:
            for r in range(c.n):
                wt[r] -= t * c.a[r][letter - 1]
    return tuple(wt)


def lusztig_weight(c, word, lam, coords):
    """``lam - sum_k t_k beta_k`` for Lusztig data along ``word``."""
    rs = rootdata.positive_root_sequence(c, word)
    wt = list(lam)
    for t, beta in zip(coords, rs.beta):
        if t:
            w = c.root_to_weight(beta)
            for r in range(c.n):
                wt[r] -= t * w[r]
    return tuple(wt)


def _apply_f(c, word, i, coords, flavor=STRING):
    u = front_word(c, word, i)
    moved = list(reparam.transition_coords(c, flavor, word, u, coords))
    moved[0] += 1
    return reparam.transition_coords(c, flavor, u, word, moved)


def check_dominant(c, lam):
    lam = tuple(int(x) for x in lam)
    if len(lam) != c.n or any(x < 0 for x in lam):
        raise WeightNotDominant(f"{lam} is not a dominant weight of rank {c.n}")
    return lam


def generate(c, word=None, lam=None, limit=1_000_000):
    """Breadth-first closure of the highest weight element under all ``f_i``.

    Raises :class:`CrystalOverflow` past ``limit`` elements (a symptom of
    wrong move tables, never of valid input at desk scale).
    """
    if word is None:
        word = rootdata.w0_word(c)
    word = reparam._word_letters(word)
    lam = check_dominant(c, lam)
    rootdata.make_word(c, word)
    if len(word) != c.num_pos_roots:
        raise ValueError(f"{word} is not a reduced word for w0")
    for key in reparam.needed_keys(c):
        reparam.move_table(key)

    start = (0,) * len(word)
    seen = {start: string_weight(c, word, lam, start)}
    edges = {}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        wt = seen[t]
        for i in range(1, c.n + 1):
            if epsilon(c, word, i, t) + wt[i - 1] <= 0:
                continue
            s = _apply_f(c, word, i, t)
            edges[(t, i)] = s
            if s not in seen:
                seen[s] = string_weight(c, word, lam, s)
                queue.append(s)
                if len(seen) > limit:
                    raise CrystalOverflow(f"more than {limit} elements")

    order = sorted(seen)
    ids = {t: k for k, t in enumerate(order)}
    elements = [CrystalElement(ids[t], ParamVector(STRING, word, t, c), seen[t]) for t in order]
    f_edges = {(ids[s], i): ids[t] for (s, i), t in sorted(edges.items())}
    return CrystalGraph(c, word, lam, elements, f_edges)


# ---------------------------------------------------------------------------
# Schützenberger involution


def eta_involution(g):
    """Permutation of ids with ``eta(high) = low`` and ``eta(f_i b) = e_{i*} eta(b)``."""
    star = rootdata.star_involution(g.cartan)
    eta = {g.highest.id: g.lowest.id}
    queue = deque([g.highest.id])
    while queue:
        b = queue.popleft()
        for i in range(1, g.cartan.n + 1):
            fb = g.f_edges.get((b, i))
            if fb is None:
                continue
            target = g._e_edges.get((eta[b], star[i]))
            if target is None:
                raise PropagationConflict(
                    f"e_{star[i]} undefined on the image of element {b} under eta")
            if fb in eta:
                if eta[fb] != target:
                    raise PropagationConflict(f"two paths disagree at element {fb}")
                continue
            eta[fb] = target
            queue.append(fb)
    if len(eta) != len(g.elements):
        raise PropagationConflict("eta is not defined on every element")
    perm = tuple(eta[k] for k in range(len(g.elements)))
    if sorted(perm) != list(range(len(perm))) or any(perm[perm[k]] != k for k in range(len(perm))):
        raise PropagationConflict("eta is not an involution")
    return perm


def lusztig_params(g, b, word=None):
    """Lusztig data of ``b`` along ``word`` (default: the graph's word).

    Computed as ``Omega_{i*}(lam, c_{i*}(eta(b)))``.
    """
    c = g.cartan
    word = g.word if word is None else reparam._word_letters(word)
    istar = rootdata.star_word(c, word)
    partner = g.eta(b)
    t = reparam.transition_coords(c, STRING, g.word, istar, partner.coords)
    out = reparam.omega(c, istar, g.lam, t)
    assert out.word == word
    return out


# ---------------------------------------------------------------------------
# an independent crystal in Lusztig coordinates


def generate_lusztig(c, word, lam):
    """``B(lam)`` built directly in Lusztig coordinates along ``word``.

    ``f_i`` adds one to the leading coordinate in a word starting with ``i``;
    ``eps_i`` is that leading coordinate and the weight is
    ``lam - sum t_k beta_k``.  Returns ``(elements, f_edges)`` keyed by
    coordinate tuples.
    """
    word = reparam._word_letters(word)
    lam = check_dominant(c, lam)
    start = (0,) * len(word)
    seen = {start: tuple(lam)}
    edges = {}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        wt = seen[t]
        for i in range(1, c.n + 1):
            u = front_word(c, word, i)
            eps = reparam.transition_coords(c, LUSZTIG, word, u, t)[0]
            if eps + wt[i - 1] <= 0:
                continue
            s = _apply_f(c, word, i, t, LUSZTIG)
            edges[(t, i)] = s
            if s not in seen:
                seen[s] = lusztig_weight(c, word, lam, s)
                queue.append(s)
    return seen, edges


def string_to_lusztig_map(g):
    """Match ``g`` with the Lusztig-coordinate crystal along parallel ``f``-paths."""
    lus, ledges = generate_lusztig(g.cartan, g.word, g.lam)
    match = {g.highest.id: (0,) * len(g.word)}
    queue = deque([g.highest.id])
    while queue:
        b = queue.popleft()
        for i in range(1, g.cartan.n + 1):
            fb = g.f_edges.get((b, i))
            fl = ledges.get((match[b], i))
            if (fb is None) != (fl is None):
                raise PropagationConflict(f"f_{i} defined on only one side at element {b}")
            if fb is None:
                continue
            if fb in match:
                if match[fb] != fl:
                    raise PropagationConflict(f"inconsistent matching at element {fb}")
                continue
            match[fb] = fl
            queue.append(fb)
    if len(match) != len(g.elements) or len(lus) != len(g.elements):
        raise PropagationConflict("string and Lusztig crystals have different sizes")
    return match


def eta_via_omega(g):
    """``eta`` computed from the linear map ``Omega`` instead of by propagation.

    ``Omega_i(lam, c_i(b))`` is the Lusztig data of ``eta(b)`` along ``i*``;
    moving it back to ``i`` and looking it up in the Lusztig crystal gives
    ``eta(b)``.
    """
    c = g.cartan
    match = string_to_lusztig_map(g)
    back = {v: k for k, v in match.items()}
    perm = []
    for b in g.elements:
        om = reparam.omega(c, g.word, g.lam, b.coords)
        lus = reparam.transition_coords(c, LUSZTIG, om.word, g.word, om.coords)
        if lus not in back:
            raise PropagationConflict(f"Omega image {lus} of element {b.id} is not in the crystal")
        perm.append(back[lus])
    return tuple(perm)


# ---------------------------------------------------------------------------
# Demazure and Richardson subsets


def demazure_subset(g, w):
    """Ids of ``B_w(lam)``: string data along an adapted word vanish past ``l(w)``."""
    c = g.cartan
    adapted = rootdata.extend_adapted(c, w).letters
    p = w.length
    out = set()
    for b in g.elements:
        t = reparam.transition_coords(c, STRING, g.word, adapted, b.coords)
        if not any(t[p:]):
            out.add(b.id)
    return out


def richardson_subset(g, w, tau):
    eta = g.ensure_eta()
    return demazure_subset(g, w) & {eta[b] for b in demazure_subset(g, tau)}


# ---------------------------------------------------------------------------
# type A tableaux


def _check_type_a(g):
    c = g.cartan
    n = c.n
    expect = tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)) for i in range(n))
    if c.a != expect:
        raise NotTypeA("tableaux are only available in type A")
    if tuple(g.word) != tableaux.standard_word(n):
        raise NotStandardWord(f"tableaux need the standard word {tableaux.standard_word(n)}")


def tableau_of(g, b):
    _check_type_a(g)
    return tableaux.tableau_of_string(g.lam, _coords(g, b))


def ssyt_enumerate(shape):
    return tableaux.ssyt_enumerate(shape)


# ---------------------------------------------------------------------------
# export


def to_json(g, with_lusztig=True):
    g.ensure_eta()
    elems = []
    for b in g.elements:
        item = {"id": b.id, "string": list(b.coords), "weight": list(b.weight)}
        if with_lusztig:
            item["lusztig"] = list(lusztig_params(g, b).coords)
        elems.append(item)
    return {
        "cartan": [list(r) for r in g.cartan.a],
        "lambda": list(g.lam),
        "word": list(g.word),
        "elements": elems,
        "f_edges": [[s, i, t] for (s, i), t in sorted(g.f_edges.items())],
        "eta": list(g.eta_pairing),
    }


def dumps(g):
    return json.dumps(to_json(g), indent=2, sort_keys=True)


def to_dot(g):
    g.ensure_eta()
    lines = ["digraph crystal {", "  node [shape=box];"]
    for b in g.elements:
        label = ",".join(str(x) for x in b.coords)
        lines.append(f'  n{b.id} [label="({label})"];')
    for (s, i), t in sorted(g.f_edges.items()):
        lines.append(f'  n{s} -> n{t} [label="{i}"];')
    done = set()
    for b, e in enumerate(g.eta_pairing):
        if b < e and (b, e) not in done:
            done.add((b, e))
            lines.append(f"  n{b} -> n{e} [style=dashed, dir=both, color=gray];")
        elif b == e:
            lines.append(f"  n{b} -> n{b} [style=dashed, color=gray];")
    lines.append("}")
    return "\n".join(lines) + "\n"
