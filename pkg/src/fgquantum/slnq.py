"""Membership tests for M_n^q and SL_n^q over a quantum torus.

A 2x2 matrix (a b; c d) is a point of M_2^q when

    ba = q ab,  dc = q cd,  ca = q ac,  db = q bd,  bc = cb,
    da - ad = (q - q^-1) bc,

and an n x n matrix is a point of M_n^q when every 2x2 submatrix is.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .ncmatrix import NcMatrix
from .qtorus import QuantumTorus, TorusElement

RELATIONS = ("ba=qab", "dc=qcd", "ca=qac", "db=qbd", "bc=cb", "da-ad=(q-q^-1)bc")


@dataclass
class RelationFailure:
    relation: str
    rows: tuple[int, int] | None
    cols: tuple[int, int] | None
    residual: TorusElement

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "rows": list(self.rows) if self.rows else None,
            "cols": list(self.cols) if self.cols else None,
            "residual": self.residual.to_json(),
        }


@dataclass
class RelationReport:
    failures: list[RelationFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed

    def extend(self, other: RelationReport) -> None:
        self.failures.extend(other.failures)

    def to_json(self) -> dict:
        return {"passed": self.passed, "failures": [f.to_json() for f in self.failures]}


def _mul(x: TorusElement, y: TorusElement) -> TorusElement:
    if x.is_zero() or y.is_zero():
        return x.torus.zero()
    return x * y


def m2q_residuals(a, b, c, d) -> dict[str, TorusElement]:
    """Left side minus right side of each relation."""
    t: QuantumTorus = a.torus
    for x in (b, c, d):
        if x.torus != t:
            raise ValueError("entries live in different algebras")
    q, qi = t.q_power(1), t.q_power(-1)
    bc = _mul(b, c)
    return {
        "ba=qab": _mul(b, a) - _mul(a, b).scale(q),
        "dc=qcd": _mul(d, c) - _mul(c, d).scale(q),
        "ca=qac": _mul(c, a) - _mul(a, c).scale(q),
        "db=qbd": _mul(d, b) - _mul(b, d).scale(q),
        "bc=cb": bc - _mul(c, b),
        "da-ad=(q-q^-1)bc": _mul(d, a) - _mul(a, d) - bc.scale(q - qi),
    }


def check_m2q(a, b, c, d, rows=None, cols=None) -> RelationReport:
    rep = RelationReport()
    for name, r in m2q_residuals(a, b, c, d).items():
        if not r.is_zero():
            rep.failures.append(RelationFailure(name, rows, cols, r))
    return rep


def check_mnq(m: NcMatrix) -> RelationReport:
    n = m.size
    rep = RelationReport()
    for i, j in combinations(range(n), 2):
        for k, l in combinations(range(n), 2):
            rep.extend(check_m2q(m[i, k], m[i, l], m[j, k], m[j, l], (i + 1, j + 1), (k + 1, l + 1)))
    return rep


def quantum_determinant(m: NcMatrix) -> TorusElement:
    """sum over permutations s of (-q^-1)^{inv(s)} M_{1 s(1)} ... M_{n s(n)}.

    Factors are taken in ascending row order.  On M_2^q this is ad - q^-1 bc.
    """
    n = m.size
    t: QuantumTorus = m.algebra
    mq = -t.q_power(-1)
    terms: dict[int, TorusElement] = {}

    def rec(row: int, used: int, inv: int, acc: TorusElement):
        if row == n:
            terms[inv] = terms[inv] + acc if inv in terms else acc
            return
        for col in range(n):
            if used >> col & 1:
                continue
            x = m[row, col]
            if x.is_zero():
                continue
            rec(row + 1, used | (1 << col), inv + bin(used >> (col + 1)).count("1"), acc * x)

    rec(0, 0, 0, t.one())
    total = t.zero()
    for inv, s in terms.items():
        coeff = t.q_power(0)
        for _ in range(inv):
            coeff = coeff * mq
        total = total + s.scale(coeff)
    return total


def check_slnq(m: NcMatrix) -> RelationReport:
    rep = check_mnq(m)
    res = quantum_determinant(m) - m.algebra.one()
    if not res.is_zero():
        rep.failures.append(RelationFailure("Det^q=1", None, None, res))
    return rep
