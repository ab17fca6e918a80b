"""Matrices over (possibly noncommutative) algebras, and the shearing matrices.

Entries are TorusElements or commutative LaurentPolynomials; products keep
the left factor on the left in every entry.  The classical matrices are built
in the commutative layer, the quantum ones by Weyl-ordering each entry.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .qtorus import LaurentPolynomial, LaurentRing, QuantumTorus, weyl_order
from .triangle_quiver import fg_poisson, fg_torus, left_index_order, right_index_order


class NcMatrix:
    __slots__ = ("algebra", "rows")

    def __init__(self, algebra, rows: Sequence[Sequence]):
        self.algebra = algebra
        rows = tuple(tuple(r) for r in rows)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        self.rows = rows

    @classmethod
    def identity(cls, algebra, n: int) -> NcMatrix:
        one, zero = algebra.one(), algebra.zero()
        return cls(algebra, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    @property
    def size(self) -> int:
        r, c = self.shape
        if r != c:
            raise ValueError("matrix is not square")
        return r

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def entry(self, i: int, j: int):
        """1-based entry access."""
        return self.rows[i - 1][j - 1]

    def __matmul__(self, other: NcMatrix) -> NcMatrix:
        if self.algebra != other.algebra:
            raise ValueError("matrices over different algebras")
        r, m = self.shape
        m2, c = other.shape
        if m != m2:
            raise ValueError("dimension mismatch")
        zero = self.algebra.zero()
        out = []
        for i in range(r):
            row = []
            for j in range(c):
                acc = zero
                for k in range(m):
                    a, b = self.rows[i][k], other.rows[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return NcMatrix(self.algebra, out)

    matmul = __matmul__

    def __add__(self, other: NcMatrix) -> NcMatrix:
        return NcMatrix(self.algebra, [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)])

    def scale(self, x) -> NcMatrix:
        """Left multiplication of every entry by x."""
        return NcMatrix(self.algebra, [[x * a for a in r] for r in self.rows])

    def map(self, f: Callable, algebra=None) -> NcMatrix:
        return NcMatrix(self.algebra if algebra is None else algebra, [[f(a) for a in r] for r in self.rows])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> NcMatrix:
        return NcMatrix(self.algebra, [[self.rows[i][j] for j in cols] for i in rows])

    def __eq__(self, other) -> bool:
        if not isinstance(other, NcMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_upper_triangular(self) -> bool:
        return all(self.rows[i][j].is_zero() for i in range(len(self.rows)) for j in range(i))

    def is_lower_triangular(self) -> bool:
        return all(self.rows[i][j].is_zero() for i in range(len(self.rows)) for j in range(i + 1, len(self.rows)))

    def specialize(self) -> NcMatrix:
        """Entrywise q = omega = 1."""
        alg = self.algebra.classical_ring() if isinstance(self.algebra, QuantumTorus) else self.algebra
        return self.map(lambda u: u.specialize(), alg)

    def weyl(self, torus: QuantumTorus) -> NcMatrix:
        """Entrywise Weyl ordering of a commutative matrix into ``torus``."""
        return self.map(lambda p: weyl_order(p, torus), torus)

    def __repr__(self) -> str:
        return "NcMatrix([\n" + ",\n".join("  [" + ", ".join(map(repr, r)) + "]" for r in self.rows) + "\n])"


def matmul(a: NcMatrix, b: NcMatrix) -> NcMatrix:
    return a @ b


def product(mats: Sequence[NcMatrix]) -> NcMatrix:
    mats = list(mats)
    out = mats[0]
    for m in mats[1:]:
        out = out @ m
    return out


def commutative_det(m: NcMatrix):
    """Leibniz expansion, skipping zero entries (fine for sparse small matrices)."""
    n = m.size
    alg = m.algebra
    total = alg.zero()

    def rec(row: int, used: int, sign: int, acc):
        nonlocal total
        if row == n:
            total = total + (acc if sign > 0 else -acc)
            return
        for col in range(n):
            if used >> col & 1:
                continue
            x = m.rows[row][col]
            if x.is_zero():
                continue
            # parity: count used columns greater than col
            inv = bin(used >> (col + 1)).count("1")
            rec(row + 1, used | (1 << col), sign * (-1) ** inv, acc * x)

    rec(0, 0, 1, alg.one())
    return total


# ---------------------------------------------------------------------------
# shearing matrices (commutative layer)


def _check_index(ring: LaurentRing, k: int, n: int | None):
    n = ring.n if n is None else n
    if not 1 <= k <= n - 1:
        raise ValueError(f"index {k} out of range 1..{n - 1}")
    return n


def _diag_plus(ring, diag: Sequence, off: tuple[int, int] | None) -> NcMatrix:
    n = len(diag)
    zero = ring.zero()
    rows = [[diag[i] if i == j else zero for j in range(n)] for i in range(n)]
    if off is not None:
        i, j = off
        rows[i][j] = ring.one()
    return NcMatrix(ring, rows)


def shear_left(ring: LaurentRing, k: int, x: LaurentPolynomial | None = None, n: int | None = None,
               normalized: bool = True) -> NcMatrix:
    """X^{-(k-1)/n} (diag(X, .., X, 1, .., 1) + E_{k,k+1}), with k-1 copies of X."""
    n = _check_index(ring, k, n)
    if k == 1:
        return _diag_plus(ring, [ring.one()] * n, (0, 1))
    diag = [x if i < k - 1 else ring.one() for i in range(n)]
    m = _diag_plus(ring, diag, (k - 1, k))
    return m.scale(x.root_power(Fraction(-(k - 1), n))) if normalized else m


def shear_right(ring: LaurentRing, k: int, x: LaurentPolynomial | None = None, n: int | None = None,
                normalized: bool = True) -> NcMatrix:
    """X^{(k-1)/n} (diag(1, .., 1, X^-1, .., X^-1) + E_{n-k+1,n-k}), with k-1 copies of X^-1."""
    n = _check_index(ring, k, n)
    if k == 1:
        return _diag_plus(ring, [ring.one()] * n, (n - 1, n - 2))
    xinv = x.root_power(-1)
    diag = [xinv if i >= n - k + 1 else ring.one() for i in range(n)]
    m = _diag_plus(ring, diag, (n - k, n - k - 1))
    return m.scale(x.root_power(Fraction(k - 1, n))) if normalized else m


def shear_edge(ring: LaurentRing, j: int, z: LaurentPolynomial, n: int | None = None,
               normalized: bool = True) -> NcMatrix:
    """Z^{-j/n} diag(Z, .., Z, 1, .., 1) with j copies of Z."""
    n = _check_index(ring, j, n)
    m = _diag_plus(ring, [z if i < j else ring.one() for i in range(n)], None)
    return m.scale(z.root_power(Fraction(-j, n))) if normalized else m


def uturn(ring, n: int | None = None) -> NcMatrix:
    """Antidiagonal matrix with entry (i, n+1-i) = (-1)^(n-i)."""
    n = ring.n if n is None else n
    zero = ring.zero()
    rows = [[zero] * n for _ in range(n)]
    for i in range(1, n + 1):
        rows[i - 1][n - i] = ring.one() if (n - i) % 2 == 0 else -ring.one()
    return NcMatrix(ring, rows)


# ---------------------------------------------------------------------------
# left / right / edge matrices


def left_factors(ring: LaurentRing, xs: Mapping[tuple, LaurentPolynomial], n: int | None = None,
                 normalized: bool = True):
    """Factors of M^left in product order, as (k, vertex or None, matrix)."""
    n = ring.n if n is None else n
    out = []
    for k in range(n - 1, 0, -1):
        out.append((1, None, shear_left(ring, 1, None, n)))
        for l in range(2, k + 1):
            v = (l - 1, n - k, k - l + 1)
            if v not in xs:
                raise KeyError(f"missing assignment for vertex {v}")
            out.append((l, v, shear_left(ring, l, xs[v], n, normalized)))
    return out


def right_factors(ring: LaurentRing, xs: Mapping[tuple, LaurentPolynomial], n: int | None = None,
                 normalized: bool = True):
    n = ring.n if n is None else n
    out = []
    for k in range(n - 1, 0, -1):
        out.append((1, None, shear_right(ring, 1, None, n)))
        for l in range(2, k + 1):
            v = (k - l + 1, n - k, l - 1)
            if v not in xs:
                raise KeyError(f"missing assignment for vertex {v}")
            out.append((l, v, shear_right(ring, l, xs[v], n, normalized)))
    return out


def edge_factors(ring: LaurentRing, zs: Sequence[LaurentPolynomial], n: int | None = None,
                 normalized: bool = True):
    n = ring.n if n is None else n
    if len(zs) != n - 1:
        raise ValueError(f"need {n - 1} edge coordinates")
    return [(j, shear_edge(ring, j, z, n, normalized)) for j, z in enumerate(zs, start=1)]


def m_left(ring, xs, n=None, normalized=True) -> NcMatrix:
    return product([m for _, _, m in left_factors(ring, xs, n, normalized)])


def m_right(ring, xs, n=None, normalized=True) -> NcMatrix:
    return product([m for _, _, m in right_factors(ring, xs, n, normalized)])


def m_edge(ring, zs, n=None, normalized=True) -> NcMatrix:
    return product([m for _, m in edge_factors(ring, zs, n, normalized)])


def fg_assignments(n: int):
    """Interior-vertex and edge generators of the commutative FG ring."""
    ring = fg_torus(n).classical_ring()
    al = fg_poisson(n).aliases
    xs = {v: ring.gen(al[v]) for v in left_index_order(n)}
    z = [ring.gen(f"Z{j}") for j in range(1, n)]
    z1 = [ring.gen(f"Z'{j}") for j in range(1, n)]
    z2 = [ring.gen(f"Z''{j}") for j in range(1, n)]
    return ring, xs, z, z1, z2


def commutative_left(n: int, normalized: bool = True) -> NcMatrix:
    """m_edge(Z) m_left(X) m_edge(Z') in the commutative FG ring."""
    ring, xs, z, z1, _ = fg_assignments(n)
    return m_edge(ring, z, None, normalized) @ m_left(ring, xs, None, normalized) @ m_edge(ring, z1, None, normalized)


def commutative_right(n: int, normalized: bool = True) -> NcMatrix:
    ring, xs, z, _, z2 = fg_assignments(n)
    xs = {v: ring.gen(fg_poisson(n).aliases[v]) for v in right_index_order(n)}
    return m_edge(ring, z, None, normalized) @ m_right(ring, xs, None, normalized) @ m_edge(ring, z2, None, normalized)


def quantum_left(spec, normalized: bool = True) -> NcMatrix:
    """L^omega: the commutative triple product, Weyl-ordered entrywise.

    ``normalized=False`` drops every determinant normalizer; the result is
    not a quantum matrix and exists only to show that the normalizers matter.
    """
    n = spec if isinstance(spec, int) else spec.n
    return commutative_left(n, normalized).weyl(fg_torus(n))


def quantum_right(spec, normalized: bool = True) -> NcMatrix:
    n = spec if isinstance(spec, int) else spec.n
    return commutative_right(n, normalized).weyl(fg_torus(n))
