"""Subtraction-free expressions, tropicalization, and min-plus piecewise-linear maps.

An :class:`SFExpr` is a tree over ``+``, ``*`` and ``/`` whose leaves are the
variables ``t1..tN`` or positive rational constants; no subtraction node can be
built.  Tropicalization sends ``+ -> min``, ``* -> +``, ``/ -> -``, ``t_i -> p_i``
and every positive constant to ``0``.
"""

import ast
import itertools
import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import DimensionMismatch

# ---------------------------------------------------------------------------
# subtraction-free expressions


class SFExpr:
    def __add__(self, other):
        return SFAdd((self, _sf(other)))

    __radd__ = __add__

    def __mul__(self, other):
        return SFMul((self, _sf(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return SFDiv(self, _sf(other))

    def __rtruediv__(self, other):
        return SFDiv(_sf(other), self)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 1:
            raise ValueError("only positive integer powers are subtraction-free here")
        return SFMul((self,) * k)

    def __sub__(self, other):
        raise TypeError("subtraction is not allowed in a subtraction-free expression")

    __rsub__ = __sub__

    def __neg__(self):
        raise TypeError("negation is not allowed in a subtraction-free expression")

    def variables(self):
        out = set()
        self._collect(out)
        return out

    @property
    def nvars(self):
        vs = self.variables()
        return max(vs) + 1 if vs else 0

    def value(self, point):
        """Exact value at a point of positive rationals."""
        return self._value([Fraction(x) for x in point])


def _sf(x):
    if isinstance(x, SFExpr):
        return x
    return SFConst(x)


@dataclass(frozen=True)
class SFVar(SFExpr):
    index: int  # 0-based

    def _collect(self, out):
        out.add(self.index)

    def _value(self, p):
        return p[self.index]

    def __str__(self):
        return f"t{self.index + 1}"


@dataclass(frozen=True)
class SFConst(SFExpr):
    value_: Fraction

    def __init__(self, value):
        value = Fraction(value)
        if value <= 0:
            raise ValueError(f"constants must be positive rationals, got {value}")
        object.__setattr__(self, "value_", value)

    def _collect(self, out):
        pass

    def _value(self, p):
        return self.value_

    def __str__(self):
        return str(self.value_)


@dataclass(frozen=True)
class SFAdd(SFExpr):
    args: tuple

    def _collect(self, out):
        for a in self.args:
            a._collect(out)

    def _value(self, p):
        return sum(a._value(p) for a in self.args)

    def __str__(self):
        return "(" + " + ".join(str(a) for a in self.args) + ")"


@dataclass(frozen=True)
class SFMul(SFExpr):
    args: tuple

    def _collect(self, out):
        for a in self.args:
            a._collect(out)

    def _value(self, p):
        v = Fraction(1)
        for a in self.args:
            v *= a._value(p)
        return v

    def __str__(self):
        return "*".join(str(a) for a in self.args)


@dataclass(frozen=True)
class SFDiv(SFExpr):
    num: SFExpr
    den: SFExpr

    def _collect(self, out):
        self.num._collect(out)
        self.den._collect(out)

    def _value(self, p):
        return self.num._value(p) / self.den._value(p)

    def __str__(self):
        return f"({self.num})/({self.den})"


def t(i):
    """The variable ``t_i`` (1-based)."""
    return SFVar(i - 1)


_VAR = re.compile(r"^t(\d+)$")


def parse_sf(text):
    """Parse a subtraction-free expression such as ``"(t1**3 + t2^3)/(t1 + t2)"``.

    Identifiers are ``t1, t2, ...``; literals are positive integers or
    decimals; operators ``+ * /``, parentheses, and ``^``/``**`` with a positive
    integer exponent.
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")
    return _from_ast(tree.body)


def _from_ast(node):
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Add):
            return _from_ast(node.left) + _from_ast(node.right)
        if isinstance(node.op, ast.Mult):
            return _from_ast(node.left) * _from_ast(node.right)
        if isinstance(node.op, ast.Div):
            return _from_ast(node.left) / _from_ast(node.right)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                raise ValueError("exponents must be integer literals")
            return _from_ast(node.left) ** node.right.value
        raise ValueError(f"operator {type(node.op).__name__} is not subtraction-free")
    if isinstance(node, ast.Name):
        m = _VAR.match(node.id)
        if not m or int(m.group(1)) < 1:
            raise ValueError(f"unknown identifier {node.id!r}")
        return t(int(m.group(1)))
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return SFConst(Fraction(str(node.value)))
    raise ValueError(f"unsupported syntax: {ast.dump(node)}")


# ---------------------------------------------------------------------------
# piecewise-linear min-plus expressions


class PLExpr:
    """Piecewise-linear expression over integer vectors.

    Nodes: variable ``p_i``, integer constant, ``plus``, ``minus``, ``min`` and
    integer ``scale``.  Calling an expression evaluates it exactly.
    """

    def __add__(self, other):
        return PLPlus((self, _pl(other)))

    def __radd__(self, other):
        return PLPlus((_pl(other), self))

    def __sub__(self, other):
        return PLMinus(self, _pl(other))

    def __rsub__(self, other):
        return PLMinus(_pl(other), self)

    def __neg__(self):
        return PLScale(-1, self)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return PLScale(k, self)

    __rmul__ = __mul__

    @cached_property
    def fn(self):
        """Compiled evaluation closure taking an integer sequence."""
        return eval(f"lambda t: {self._code()}", {"min": min})  # noqa: S307 - generated from our own tree

    @property
    def nvars(self):
        out = set()
        self._collect(out)
        return max(out) + 1 if out else 0

    def __call__(self, point):
        return self.fn(point)

    def to_json(self):
        return self._json()

    def __str__(self):
        return self._str()


def _pl(x):
    if isinstance(x, PLExpr):
        return x
    if isinstance(x, int):
        return PLConst(x)
    raise TypeError(f"cannot use {x!r} in a PL expression")


@dataclass(frozen=True, eq=True)
class PLVar(PLExpr):
    index: int  # 0-based

    def _code(self):
        return f"t[{self.index}]"

    def _collect(self, out):
        out.add(self.index)

    def _np(self, pts):
        return pts[:, self.index]

    def _json(self):
        return {"op": "var", "index": self.index + 1}

    def _str(self):
        return f"p{self.index + 1}"


@dataclass(frozen=True)
class PLConst(PLExpr):
    value: int

    def _code(self):
        return f"({self.value})"

    def _collect(self, out):
        pass

    def _np(self, pts):
        return np.full(len(pts), self.value, dtype=pts.dtype)

    def _json(self):
        return {"op": "const", "value": self.value}

    def _str(self):
        return str(self.value)


@dataclass(frozen=True)
class PLPlus(PLExpr):
    args: tuple

    def _code(self):
        return "(" + " + ".join(a._code() for a in self.args) + ")"

    def _collect(self, out):
        for a in self.args:
            a._collect(out)

    def _np(self, pts):
        out = self.args[0]._np(pts)
        for a in self.args[1:]:
            out = out + a._np(pts)
        return out

    def _json(self):
        return {"op": "plus", "args": [a._json() for a in self.args]}

    def _str(self):
        return "(" + " + ".join(a._str() for a in self.args) + ")"


@dataclass(frozen=True)
class PLMinus(PLExpr):
    left: PLExpr
    right: PLExpr

    def _code(self):
        return f"({self.left._code()} - {self.right._code()})"

    def _collect(self, out):
        self.left._collect(out)
        self.right._collect(out)

    def _np(self, pts):
        return self.left._np(pts) - self.right._np(pts)

    def _json(self):
        return {"op": "minus", "args": [self.left._json(), self.right._json()]}

    def _str(self):
        return f"({self.left._str()} - {self.right._str()})"


@dataclass(frozen=True)
class PLMin(PLExpr):
    args: tuple

    def _code(self):
        return "min(" + ", ".join(a._code() for a in self.args) + ")"

    def _collect(self, out):
        for a in self.args:
            a._collect(out)

    def _np(self, pts):
        out = self.args[0]._np(pts)
        for a in self.args[1:]:
            out = np.minimum(out, a._np(pts))
        return out

    def _json(self):
        return {"op": "min", "args": [a._json() for a in self.args]}

    def _str(self):
        return "min(" + ", ".join(a._str() for a in self.args) + ")"


@dataclass(frozen=True)
class PLScale(PLExpr):
    k: int
    arg: PLExpr

    def _code(self):
        return f"({self.k} * {self.arg._code()})"

    def _collect(self, out):
        self.arg._collect(out)

    def _np(self, pts):
        return self.k * self.arg._np(pts)

    def _json(self):
        return {"op": "scale", "k": self.k, "arg": self.arg._json()}

    def _str(self):
        return f"{self.k}*{self.arg._str()}"


def p(i):
    """The projection ``p_i`` (1-based)."""
    return PLVar(i - 1)


def pmin(*args):
    if len(args) == 1:
        return _pl(args[0])
    return PLMin(tuple(_pl(a) for a in args))


def linear(coeffs, const=0):
    """PL expression ``const + sum_k coeffs[k] * p_{k+1}``."""
    terms = [PLScale(c, PLVar(k)) if c != 1 else PLVar(k) for k, c in enumerate(coeffs) if c]
    if const or not terms:
        terms.append(PLConst(const))
    return terms[0] if len(terms) == 1 else PLPlus(tuple(terms))


def from_json(obj):
    if isinstance(obj, str):
        obj = json.loads(obj)
    op = obj["op"]
    if op == "var":
        return PLVar(obj["index"] - 1)
    if op == "const":
        return PLConst(int(obj["value"]))
    if op == "plus":
        return PLPlus(tuple(from_json(a) for a in obj["args"]))
    if op == "minus":
        left, right = obj["args"]
        return PLMinus(from_json(left), from_json(right))
    if op == "min":
        return PLMin(tuple(from_json(a) for a in obj["args"]))
    if op == "scale":
        return PLScale(int(obj["k"]), from_json(obj["arg"]))
    raise ValueError(f"unknown PL node {op!r}")


# ---------------------------------------------------------------------------
# tropicalization and evaluation


def tropicalize(e):
    """Image of a subtraction-free expression under the semifield homomorphism."""
    if isinstance(e, SFVar):
        return PLVar(e.index)
    if isinstance(e, SFConst):
        return PLConst(0)
    if isinstance(e, SFAdd):
        return PLMin(tuple(tropicalize(a) for a in e.args))
    if isinstance(e, SFMul):
        return PLPlus(tuple(tropicalize(a) for a in e.args))
    if isinstance(e, SFDiv):
        return PLMinus(tropicalize(e.num), tropicalize(e.den))
    raise TypeError(f"not a subtraction-free expression: {e!r}")


def evaluate(f, point, nvars=None):
    """Exact integer value of ``f`` at ``point``.

    ``nvars`` is the declared number of variables; it defaults to the largest
    variable index used by ``f``.
    """
    point = tuple(int(x) for x in point)
    need = f.nvars if nvars is None else nvars
    if len(point) < need or (nvars is not None and len(point) != nvars):
        raise DimensionMismatch(f"expected {need} coordinates, got {len(point)}")
    return f.fn(point)


def box_points(nvars, radius=None, lo=None, hi=None):
    """All integer points of a box, in lexicographic order, as an int64 array."""
    if radius is not None:
        lo, hi = -radius, radius
    axis = np.arange(lo, hi + 1, dtype=np.int64)
    if nvars == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*([axis] * nvars), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def evaluate_many(f, pts):
    """Vectorized evaluation over an ``(M, N)`` integer array."""
    return f._np(np.asarray(pts))


def pl_equal_on_box(f, g, radius=10, nvars=None, lo=None, hi=None):
    """Compare two PL expressions on an integer box.

    Returns ``(True, None)`` or ``(False, witness)`` where ``witness`` is the
    first differing point in lexicographic order.  The box is
    ``[-radius, radius]^N`` unless ``lo``/``hi`` are given.
    """
    n = max(f.nvars, g.nvars) if nvars is None else nvars
    if lo is None:
        pts = box_points(n, radius=radius)
    else:
        pts = box_points(n, lo=lo, hi=hi)
    diff = evaluate_many(f, pts) != evaluate_many(g, pts)
    if not diff.any():
        return True, None
    k = int(np.argmax(diff))
    return False, tuple(int(x) for x in pts[k])


def iter_box(nvars, radius):
    return itertools.product(range(-radius, radius + 1), repeat=nvars)
