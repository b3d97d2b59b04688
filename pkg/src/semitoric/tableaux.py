"""Semistandard Young tableaux for type A, kept independent of the crystal code.

Shapes are given as dominant weights ``lam`` of ``A_n``: row ``i`` (1-based)
has length ``lam_i + ... + lam_n`` and entries lie in ``1..n+1``.
"""

from dataclasses import dataclass

from .errors import InconsistentCounts


def row_lengths(lam):
    n = len(lam)
    return tuple(sum(lam[k] for k in range(i, n)) for i in range(n))


@dataclass(frozen=True)
class TableauA:
    shape: tuple
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "shape", tuple(self.shape))
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))

    @property
    def size(self):
        return len(self.shape) + 1

    def is_semistandard(self):
        lengths = row_lengths(self.shape)
        if tuple(len(r) for r in self.rows) != lengths:
            return False
        for r in self.rows:
            if any(x < 1 or x > self.size for x in r):
                return False
            if any(r[k] > r[k + 1] for k in range(len(r) - 1)):
                return False
        for i in range(len(self.rows) - 1):
            upper, lower = self.rows[i], self.rows[i + 1]
            if any(upper[k] >= lower[k] for k in range(len(lower))):
                return False
        return True

    def count(self, row, value):
        """How many entries equal ``value`` in row ``row`` (both 1-based)."""
        return self.rows[row - 1].count(value)

    def reading_word(self):
        """Row reading word, bottom row first."""
        return tuple(x for r in reversed(self.rows) for x in r)

    def __str__(self):
        return "\n".join(" ".join(str(x) for x in r) for r in self.rows if r)


def ssyt_enumerate(lam):
    """All semistandard tableaux of shape ``lam``, by backtracking over cells."""
    lam = tuple(lam)
    lengths = row_lengths(lam)
    top = len(lam) + 1
    cells = [(i, k) for i in range(len(lengths)) for k in range(lengths[i])]
    rows = [[0] * L for L in lengths]
    out = []

    def fill(idx):
        if idx == len(cells):
            out.append(TableauA(lam, rows))
            return
        i, k = cells[idx]
        lo = 1
        if k > 0:
            lo = max(lo, rows[i][k - 1])
        if i > 0:
            lo = max(lo, rows[i - 1][k] + 1)
        for v in range(lo, top + 1):
            rows[i][k] = v
            fill(idx + 1)
        rows[i][k] = 0

    fill(0)
    return out


# ---------------------------------------------------------------------------
# counts along the standard word (1, 2,1, 3,2,1, ..., n,...,1)


def standard_word(n):
    return tuple(x for j in range(1, n + 1) for x in range(j, 0, -1))


def string_index(n):
    """Position in the standard word of each count ``c_ij`` (1 <= i <= j <= n).

    Block ``j`` of the word reads ``(j, j-1, ..., 1)`` and carries
    ``(c_jj, c_{j-1,j}, ..., c_1j)``.
    """
    pos = {}
    k = 0
    for j in range(1, n + 1):
        for i in range(j, 0, -1):
            pos[(i, j)] = k
            k += 1
    return pos


def string_of_tableau(T):
    """String data along the standard word: ``c_ij`` = number of ``j+1`` in the first ``i`` rows."""
    n = len(T.shape)
    pos = string_index(n)
    out = [0] * len(pos)
    for (i, j), k in pos.items():
        out[k] = sum(T.count(r, j + 1) for r in range(1, i + 1))
    return tuple(out)


def lusztig_counts_of_tableau(T):
    """``t_ij`` = number of ``j+1`` in row ``i``, for ``i <= j``."""
    n = len(T.shape)
    return {(i, j): T.count(i, j + 1) for j in range(1, n + 1) for i in range(1, j + 1)}


def tableau_of_string(lam, coords):
    """Rebuild the tableau from string data along the standard word."""
    lam = tuple(lam)
    n = len(lam)
    pos = string_index(n)
    if len(coords) != len(pos):
        raise InconsistentCounts(f"expected {len(pos)} string coordinates")
    lengths = row_lengths(lam)
    rows = []
    for i in range(1, n + 1):
        counts = {}
        for j in range(i, n + 1):
            above = coords[pos[(i - 1, j)]] if i > 1 else 0
            counts[j + 1] = coords[pos[(i, j)]] - above
        own = lengths[i - 1] - sum(counts.values())
        if own < 0 or any(v < 0 for v in counts.values()):
            raise InconsistentCounts(f"negative count in row {i} for string {tuple(coords)}")
        row = [i] * own
        for v in range(i + 1, n + 2):
            row += [v] * counts[v]
        rows.append(row)
    T = TableauA(lam, rows)
    if not T.is_semistandard():
        raise InconsistentCounts(f"string {tuple(coords)} gives a non-semistandard filling")
    return T


# ---------------------------------------------------------------------------
# Schützenberger involution (evacuation) via insertion


def insert(word):
    """Row-insertion tableau of a word, as a list of rows."""
    P = []
    for x in word:
        for row in P:
            k = next((k for k, y in enumerate(row) if y > x), None)
            if k is None:
                row.append(x)
                break
            row[k], x = x, row[k]
        else:
            P.append([x])
    return P


def evacuation(T):
    """Schützenberger involution: insert the reversed, complemented reading word."""
    top = T.size
    word = tuple(top + 1 - x for x in reversed(T.reading_word()))
    P = insert(word)
    rows = P + [[] for _ in range(len(T.shape) - len(P))]
    return TableauA(T.shape, rows)
