"""Complete flags over Q, genericity, and the triangle and edge invariants.

A flag is stored as an invertible n x n rational matrix whose first ``a``
columns span E^(a).  Covectors are row vectors; the dual flag of E is stored
the same way, with the dual vectors as columns.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Sequence

from . import _linalg as la

Vector = tuple[Fraction, ...]


class GenericityError(ValueError):
    """The flags are not in general position for the requested operation."""


@dataclass(frozen=True)
class Flag:
    basis: tuple[tuple[Fraction, ...], ...]   # rows of the basis matrix

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.basis)
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("basis matrix must be square")
        if la.det(rows) == 0:
            raise ValueError("basis matrix must be invertible")
        object.__setattr__(self, "basis", rows)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> Flag:
        return cls(tuple(zip(*cols)))

    @classmethod
    def standard(cls, n: int, descending: bool = False) -> Flag:
        order = range(n - 1, -1, -1) if descending else range(n)
        return cls.from_columns([[Fraction(int(i == j)) for i in range(n)] for j in order])

    @property
    def n(self) -> int:
        return len(self.basis)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.basis)

    def subspace(self, a: int) -> list[Vector]:
        """Spanning vectors of E^(a)."""
        return [self.column(j) for j in range(a)]

    def same_as(self, other: Flag) -> bool:
        for a in range(1, self.n):
            if la.rank(self.subspace(a) + other.subspace(a)) != a:
                return False
        return True

    def transform(self, phi) -> Flag:
        return Flag(tuple(tuple(r) for r in la.matmul(phi, self.basis)))

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.basis]


def annihilator(vectors: Sequence[Sequence[Fraction]], n: int) -> list[Vector]:
    """Basis of the covectors vanishing on the span of ``vectors``."""
    if not vectors:
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    return [tuple(v) for v in la.nullspace([list(v) for v in vectors], n)]


def intersect(u: Sequence[Sequence[Fraction]], w: Sequence[Sequence[Fraction]], n: int) -> list[Vector]:
    """Basis of span(u) cap span(w)."""
    if not u or not w:
        return []
    # solve sum x_i u_i - sum y_j w_j = 0
    cols = [list(v) for v in u] + [[-x for x in v] for v in w]
    rows = la.transpose(cols)
    sols = la.nullspace(rows, len(cols))
    out = []
    for s in sols:
        vec = [sum((s[i] * u[i][r] for i in range(len(u))), Fraction(0)) for r in range(n)]
        out.append(vec)
    if not out:
        return []
    red, piv = la.rref(out)
    return [tuple(red[i]) for i in range(len(piv))]


def dual_flag(E: Flag) -> Flag:
    """(E^perp)^(a) = (E^(n-a))^perp.  Columns: rows of E^-1 in reverse order."""
    inv = la.inverse(E.basis)
    return Flag.from_columns([inv[i] for i in range(E.n - 1, -1, -1)])


# ---------------------------------------------------------------------------
# genericity


def _dim_sum(*spaces) -> int:
    vecs = [v for s in spaces for v in s]
    return la.rank(vecs) if vecs else 0


def is_generic_pair(E: Flag, G: Flag) -> bool:
    """E^(a) + G^(c) is direct for all a + c = n."""
    n = E.n
    return all(_dim_sum(E.subspace(a), G.subspace(n - a)) == n for a in range(n + 1))


def is_generic_pair_intersections(E: Flag, G: Flag) -> bool:
    """Equivalent test: E^(a) cap G^(c) = 0 for all a + c = n."""
    n = E.n
    return all(not intersect(E.subspace(a), G.subspace(n - a), n) for a in range(1, n))


def _stack_det(parts: Sequence[tuple[Flag, int]]) -> Fraction:
    cols = [v for F, k in parts for v in F.subspace(k)]
    return la.det(la.transpose(cols))


def is_max_span_triple(E: Flag, F: Flag, G: Flag) -> bool:
    """dim(E^(a) + F^(b) + G^(c)) = n whenever a + b + c = n.

    For a + b + c = n this is the same as nonvanishing of the stacked
    determinant, which is what the invariants divide by.
    """
    n = E.n
    return all(
        _stack_det([(E, a), (F, b), (G, n - a - b)]) != 0
        for a in range(n + 1) for b in range(n + 1 - a)
    )


def is_max_span_triple_dims(E: Flag, F: Flag, G: Flag) -> bool:
    """The full definition: dim(E^(a)+F^(b)+G^(c)) = min(a+b+c, n) for all a, b, c."""
    n = E.n
    return all(
        _dim_sum(E.subspace(a), F.subspace(b), G.subspace(c)) == min(a + b + c, n)
        for a, b, c in iproduct(range(n + 1), repeat=3)
    )


def is_max_span_quad(E: Flag, F: Flag, G: Flag, H: Flag) -> bool:
    """E^(a) + F^(b) + G^(c) + H^(d) = V whenever a + b + c + d = n."""
    n = E.n
    return all(
        _stack_det([(E, a), (F, b), (G, c), (H, n - a - b - c)]) != 0
        for a in range(n + 1) for b in range(n + 1 - a) for c in range(n + 1 - a - b)
    )


# ---------------------------------------------------------------------------
# invariants


def wedge(E: Flag, a: int, F: Flag, b: int, G: Flag, c: int) -> Fraction:
    """e^(a) ^ f^(b) ^ g^(c) as the determinant of stacked basis columns."""
    if a + b + c != E.n:
        raise ValueError("wedge degrees must sum to n")
    return _stack_det([(E, a), (F, b), (G, c)])


def triangle_invariant(E: Flag, F: Flag, G: Flag, a: int, b: int, c: int) -> Fraction:
    n = E.n
    if a + b + c != n or min(a, b, c) <= 0:
        raise ValueError(f"({a},{b},{c}) is not an interior vertex of Theta_{n}")
    w = lambda x, y, z: wedge(E, x, F, y, G, z)
    num = w(a - 1, b + 1, c) * w(a, b - 1, c + 1) * w(a + 1, b, c - 1)
    den = w(a + 1, b - 1, c) * w(a, b + 1, c - 1) * w(a - 1, b, c + 1)
    if num == 0 or den == 0:
        raise GenericityError("triple is not max-span")
    return num / den


def edge_invariant(E: Flag, G: Flag, F: Flag, F2: Flag, j: int) -> Fraction:
    n = E.n
    if not 1 <= j <= n - 1:
        raise ValueError("edge index out of range")
    num = _stack_det([(E, j), (G, n - j - 1), (F, 1)]) * _stack_det([(E, j - 1), (G, n - j), (F2, 1)])
    den = _stack_det([(E, j), (G, n - j - 1), (F2, 1)]) * _stack_det([(E, j - 1), (G, n - j), (F, 1)])
    if num == 0 or den == 0:
        raise GenericityError("quadruple is not max-span")
    return -num / den


def pgl_transport_pair(E: Flag, G: Flag) -> list[list[Fraction]]:
    """phi with phi E standard ascending and phi G standard descending.

    Built from the lines L_a = E^(a) cap G^(n-a+1), sent to the basis e_a.
    """
    n = E.n
    if not is_generic_pair(E, G):
        raise GenericityError("pair is not generic")
    lines = []
    for a in range(1, n + 1):
        L = intersect(E.subspace(a), G.subspace(n - a + 1), n)
        if len(L) != 1:
            raise GenericityError("intersection is not a line")
        lines.append(L[0])
    return la.inverse(la.transpose(lines))


# ---------------------------------------------------------------------------
# random sampling


def random_flag(n: int, rng: random.Random, lo: int = -9, hi: int = 9) -> Flag:
    while True:
        rows = [[Fraction(rng.randint(lo, hi)) for _ in range(n)] for _ in range(n)]
        if la.det(rows) != 0:
            return Flag(tuple(tuple(r) for r in rows))


def random_triple(n: int, rng: random.Random) -> tuple[Flag, Flag, Flag]:
    """Random max-span triple (rejection sampling)."""
    while True:
        t = tuple(random_flag(n, rng) for _ in range(3))
        if is_max_span_triple(*t):
            return t


def random_quad(n: int, rng: random.Random) -> tuple[Flag, Flag, Flag, Flag]:
    while True:
        t = tuple(random_flag(n, rng) for _ in range(4))
        if is_max_span_quad(*t):
            return t
