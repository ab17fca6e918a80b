"""Quantum tori with n-th roots of generators.

A quantum torus T(P) on generators X_1..X_N has relations

    X_i^{r} X_j^{s} = q^{P_ij r s} X_j^{s} X_i^{r},      r, s in Z/n,

with q = omega^{n^2}.  Coefficients live in Q[h, 1/h] where h^2 = omega, so
q = h^{2 n^2}.  A monomial X_1^{m_1/n} ... X_N^{m_N/n} is stored by its
integer numerators (m_1, ..., m_N) and is always kept in ascending
generator order (the normal order).

Elements are immutable.  Internally an element is a dict mapping
``(numerators, h_power)`` to a nonzero rational coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from numbers import Rational
from typing import Iterable, Mapping, Sequence

Exps = tuple[int, ...]


class PresentationError(ValueError):
    """Bad torus presentation, or elements from different presentations."""


def _rational(c) -> Fraction | int:
    if isinstance(c, bool) or not isinstance(c, Rational):
        raise TypeError(f"exact rational coefficient required, got {c!r}")
    return c


def _fmt_frac(num: int, den: int) -> str:
    f = Fraction(num, den)
    return str(f.numerator) if f.denominator == 1 else f"({f})"


# ---------------------------------------------------------------------------
# coefficients


class HalfOmegaLaurent:
    """Laurent polynomial in h = omega^(1/2) with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Rational] | None = None):
        clean = {}
        for k, c in (terms or {}).items():
            c = _rational(c)
            if c != 0:
                clean[int(k)] = c
        self._terms = clean

    @classmethod
    def h_power(cls, k: int, coeff: Rational = 1) -> HalfOmegaLaurent:
        return cls({k: coeff})

    @classmethod
    def coerce(cls, x) -> HalfOmegaLaurent:
        if isinstance(x, HalfOmegaLaurent):
            return x
        return cls({0: x})

    @property
    def terms(self) -> dict[int, Rational]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def evaluate_at_one(self) -> Fraction:
        return Fraction(sum(self._terms.values()))

    def __add__(self, other) -> HalfOmegaLaurent:
        other = HalfOmegaLaurent.coerce(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return HalfOmegaLaurent(out)

    __radd__ = __add__

    def __neg__(self) -> HalfOmegaLaurent:
        return HalfOmegaLaurent({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> HalfOmegaLaurent:
        return self + (-HalfOmegaLaurent.coerce(other))

    def __rsub__(self, other) -> HalfOmegaLaurent:
        return HalfOmegaLaurent.coerce(other) - self

    def __mul__(self, other) -> HalfOmegaLaurent:
        other = HalfOmegaLaurent.coerce(other)
        out: dict[int, Rational] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return HalfOmegaLaurent(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, Rational) and not isinstance(other, bool):
            other = HalfOmegaLaurent.coerce(other)
        if not isinstance(other, HalfOmegaLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms):
            c = self._terms[k]
            if k == 0:
                parts.append(str(c))
            else:
                parts.append(("" if c == 1 else f"{c}*") + f"h^{k}")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class QuantumTorus:
    """Presentation (n, generator names, antisymmetric integer matrix P)."""

    n: int
    names: tuple[str, ...]
    poisson: tuple[tuple[int, ...], ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _above: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        names = tuple(self.names)
        rows = tuple(tuple(r) for r in self.poisson)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "poisson", rows)
        if not isinstance(self.n, int) or self.n < 1:
            raise PresentationError("n must be a positive integer")
        if len(set(names)) != len(names):
            raise PresentationError("generator names must be unique")
        N = len(names)
        if len(rows) != N or any(len(r) != N for r in rows):
            raise PresentationError("poisson matrix must be square with one row per generator")
        for i in range(N):
            for j in range(N):
                v = rows[i][j]
                if isinstance(v, bool) or not isinstance(v, int):
                    raise PresentationError("poisson entries must be integers")
                if v != -rows[j][i]:
                    raise PresentationError(f"poisson matrix not antisymmetric at ({names[i]}, {names[j]})")
        object.__setattr__(self, "_index", {nm: i for i, nm in enumerate(names)})
        # for each i: nonzero (j, P_ji) with j > i, used by the normal-order twist
        above = tuple(
            tuple((j, rows[j][i]) for j in range(i + 1, N) if rows[j][i]) for i in range(N)
        )
        object.__setattr__(self, "_above", above)

    def __hash__(self):
        return hash((self.n, self.names, self.poisson))

    @property
    def ngens(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def P(self, a: str, b: str) -> int:
        return self.poisson[self.index(a)][self.index(b)]

    # -- exponent arithmetic -------------------------------------------------

    def pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        """sum_{k,l} P_kl a_k b_l, in units of omega (numerators)."""
        P = self.poisson
        total = 0
        for k, ak in enumerate(a):
            if ak:
                row = P[k]
                for l, bl in enumerate(b):
                    if bl:
                        total += row[l] * ak * bl
        return total

    def _twist(self, a: Exps, b: Exps) -> int:
        # X^a X^b = omega^{twist} X^{a+b}
        above = self._above
        total = 0
        for i, bi in enumerate(b):
            if bi:
                for j, p in above[i]:
                    aj = a[j]
                    if aj:
                        total += p * aj * bi
        return total

    def weyl_h_power(self, m: Sequence[int]) -> int:
        """h-power c with [X_1^{m_1/n}...X_N^{m_N/n}] = h^c X^m (normal)."""
        P = self.poisson
        nz = [(i, x) for i, x in enumerate(m) if x]
        total = 0
        for (i, mi), (j, mj) in combinations(nz, 2):
            total += P[i][j] * mi * mj
        return -total

    def exps_from_mapping(self, exps: Mapping[str, int]) -> Exps:
        out = [0] * self.ngens
        for name, v in exps.items():
            out[self.index(name)] += int(v)
        return tuple(out)

    # -- constructors ---------------------------------------------------------

    def zero(self) -> TorusElement:
        return TorusElement(self, {})

    def one(self) -> TorusElement:
        return TorusElement(self, {((0,) * self.ngens, 0): 1})

    def q_power(self, k: int) -> HalfOmegaLaurent:
        return HalfOmegaLaurent.h_power(2 * self.n * self.n * k)

    def monomial(self, exps: Sequence[int] | Mapping[str, int], coeff=1) -> TorusElement:
        """Normal-ordered monomial with integer numerators ``exps``."""
        if isinstance(exps, Mapping):
            exps = self.exps_from_mapping(exps)
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.ngens:
            raise PresentationError("exponent vector length does not match the torus")
        coeff = HalfOmegaLaurent.coerce(coeff)
        return TorusElement(self, {(exps, k): c for k, c in coeff._terms.items()})

    def gen(self, name: str, exp: Rational = 1) -> TorusElement:
        """X_name^exp for exp in Z/n."""
        num = Fraction(exp) * self.n
        if num.denominator != 1:
            raise PresentationError(f"exponent {exp} is not in Z/{self.n}")
        exps = [0] * self.ngens
        exps[self.index(name)] = int(num)
        return TorusElement(self, {(tuple(exps), 0): 1})

    def weyl_monomial(self, exps: Sequence[int] | Mapping[str, int], coeff: Rational = 1) -> TorusElement:
        if isinstance(exps, Mapping):
            exps = self.exps_from_mapping(exps)
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.ngens:
            raise PresentationError("exponent vector length does not match the torus")
        c = _rational(coeff)
        if c == 0:
            return self.zero()
        return TorusElement(self, {(exps, self.weyl_h_power(exps)): c})

    def classical_ring(self) -> LaurentRing:
        return LaurentRing(self.n, self.names)


def make_torus(n: int, names: Sequence[str], poisson: Sequence[Sequence[int]]) -> QuantumTorus:
    return QuantumTorus(n, tuple(names), tuple(tuple(r) for r in poisson))


# ---------------------------------------------------------------------------
# elements


class TorusElement:
    __slots__ = ("torus", "_terms", "_hash")

    def __init__(self, torus: QuantumTorus, terms: Mapping[tuple[Exps, int], Rational]):
        self.torus = torus
        self._terms = {k: c for k, c in terms.items() if c != 0}
        self._hash = None

    # -- inspection -----------------------------------------------------------

    def flat_terms(self) -> dict[tuple[Exps, int], Rational]:
        return dict(self._terms)

    def terms(self) -> dict[Exps, HalfOmegaLaurent]:
        """Map from normal-ordered exponent numerators to coefficients."""
        grouped: dict[Exps, dict[int, Rational]] = {}
        for (e, k), c in self._terms.items():
            grouped.setdefault(e, {})[k] = c
        return {e: HalfOmegaLaurent(t) for e, t in grouped.items()}

    def weyl_terms(self) -> dict[Exps, HalfOmegaLaurent]:
        """Coefficients with respect to the Weyl-ordered monomials [X^e]."""
        out = {}
        for e, c in self.terms().items():
            shift = self.torus.weyl_h_power(e)
            out[e] = HalfOmegaLaurent({k - shift: v for k, v in c.terms.items()})
        return out

    def monomials(self) -> set[Exps]:
        return {e for e, _ in self._terms}

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self.monomials()) == 1

    def num_terms(self) -> int:
        return len(self._terms)

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: TorusElement):
        if other.torus is not self.torus and other.torus != self.torus:
            raise PresentationError("elements belong to different quantum tori")

    def _coerce(self, other) -> TorusElement | None:
        if isinstance(other, TorusElement):
            self._check(other)
            return other
        if isinstance(other, HalfOmegaLaurent):
            return self.torus.one().scale(other)
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.torus.one().scale(other)
        return None

    def __add__(self, other) -> TorusElement:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return TorusElement(self.torus, out)

    __radd__ = __add__

    def __neg__(self) -> TorusElement:
        return TorusElement(self.torus, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> TorusElement:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> TorusElement:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> TorusElement:
        """Multiply by a central scalar (rational or Laurent in h)."""
        c = HalfOmegaLaurent.coerce(c)
        out: dict[tuple[Exps, int], Rational] = {}
        for (e, k), v in self._terms.items():
            for k2, c2 in c._terms.items():
                key = (e, k + k2)
                out[key] = out.get(key, 0) + v * c2
        return TorusElement(self.torus, out)

    def __mul__(self, other) -> TorusElement:
        if not isinstance(other, TorusElement):
            if isinstance(other, (HalfOmegaLaurent, Rational)) and not isinstance(other, bool):
                return self.scale(other)
            return NotImplemented
        self._check(other)
        t = self.torus
        twist = t._twist
        out: dict[tuple[Exps, int], Rational] = {}
        for (e1, k1), c1 in self._terms.items():
            for (e2, k2), c2 in other._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                key = (e, k1 + k2 + 2 * twist(e1, e2))
                out[key] = out.get(key, 0) + c1 * c2
        return TorusElement(t, out)

    def __rmul__(self, other) -> TorusElement:
        if isinstance(other, (HalfOmegaLaurent, Rational)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> TorusElement:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.torus.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> TorusElement:
        """Inverse of a monomial c * h^k * X^m."""
        if len(self._terms) != 1:
            raise ValueError("only single-term monomials are invertible")
        ((e, k), c), = self._terms.items()
        neg = tuple(-x for x in e)
        # X^m X^{-m} = 1, so (X^m)^{-1} = X^{-m}
        return TorusElement(self.torus, {(neg, -k): 1 / Fraction(c)})

    def commutes_with(self, other: TorusElement) -> bool:
        return self * other == other * self

    # -- equality -------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, TorusElement):
            return self.torus == other.torus and self._terms == other._terms
        if isinstance(other, (Rational, HalfOmegaLaurent)) and not isinstance(other, bool):
            return self._terms == self.torus.one().scale(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.torus, frozenset(self._terms.items())))
        return self._hash

    # -- conversions ----------------------------------------------------------

    def specialize(self) -> LaurentPolynomial:
        """q = omega = 1: drop the h-powers and collect in the commutative ring."""
        out: dict[Exps, Rational] = {}
        for (e, _), c in self._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.torus.classical_ring(), out)

    def monomial_str(self, e: Exps) -> str:
        names = self.torus.names
        n = self.torus.n
        parts = []
        for name, m in zip(names, e):
            if m:
                parts.append(name if m == n else f"{name}^{_fmt_frac(m, n)}")
        return "*".join(parts) or "1"

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for (e, k) in sorted(self._terms):
            c = self._terms[(e, k)]
            pre = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            hp = "" if k == 0 else f"h^{k}*"
            out.append(f"{pre}{hp}{self.monomial_str(e)}")
        return " + ".join(out)

    def to_json(self) -> dict:
        names = self.torus.names
        terms = []
        for (e, k) in sorted(self._terms):
            c = Fraction(self._terms[(e, k)])
            terms.append({
                "h_pow": k,
                "coeff": f"{c.numerator}/{c.denominator}",
                "exps": {names[i]: m for i, m in enumerate(e) if m},
            })
        return {"terms": terms, "n": self.torus.n}

    @classmethod
    def from_json(cls, data: Mapping, torus: QuantumTorus) -> TorusElement:
        if int(data["n"]) != torus.n:
            raise PresentationError("serialized n does not match the torus")
        out = torus.zero()
        for t in data["terms"]:
            coeff = Fraction(t["coeff"])
            e = torus.exps_from_mapping(t["exps"])
            out = out + TorusElement(torus, {(e, int(t["h_pow"])): coeff})
        return out


def monomial(t: QuantumTorus, exps: Sequence[int] | Mapping[str, int], coeff=1) -> TorusElement:
    return t.monomial(exps, coeff)


def mul(u: TorusElement, v: TorusElement) -> TorusElement:
    return u * v


# ---------------------------------------------------------------------------
# commutative layer


@dataclass(frozen=True)
class LaurentRing:
    """Q[X_1^{+-1/n}, ..., X_N^{+-1/n}] with commuting variables."""

    n: int
    names: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def ngens(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise PresentationError(f"unknown generator {name!r}") from None

    def zero(self) -> LaurentPolynomial:
        return LaurentPolynomial(self, {})

    def one(self) -> LaurentPolynomial:
        return LaurentPolynomial(self, {(0,) * self.ngens: 1})

    def const(self, c) -> LaurentPolynomial:
        return LaurentPolynomial(self, {(0,) * self.ngens: _rational(c)})

    def monomial(self, exps: Sequence[int] | Mapping[str, int], coeff=1) -> LaurentPolynomial:
        if isinstance(exps, Mapping):
            out = [0] * self.ngens
            for k, v in exps.items():
                out[self.index(k)] += int(v)
            exps = out
        exps = tuple(int(e) for e in exps)
        if len(exps) != self.ngens:
            raise PresentationError("exponent vector length does not match the ring")
        return LaurentPolynomial(self, {exps: _rational(coeff)})

    def gen(self, name: str, exp: Rational = 1) -> LaurentPolynomial:
        num = Fraction(exp) * self.n
        if num.denominator != 1:
            raise PresentationError(f"exponent {exp} is not in Z/{self.n}")
        e = [0] * self.ngens
        e[self.index(name)] = int(num)
        return LaurentPolynomial(self, {tuple(e): 1})


class LaurentPolynomial:
    __slots__ = ("ring", "_terms")

    def __init__(self, ring: LaurentRing, terms: Mapping[Exps, Rational]):
        self.ring = ring
        self._terms = {e: c for e, c in terms.items() if c != 0}

    def terms(self) -> dict[Exps, Rational]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _coerce(self, other) -> LaurentPolynomial | None:
        if isinstance(other, LaurentPolynomial):
            if other.ring != self.ring:
                raise PresentationError("polynomials belong to different rings")
            return other
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self.ring.const(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.ring, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[Exps, Rational] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.root_power(k)
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def root_power(self, r: Rational) -> LaurentPolynomial:
        """x^r for a coefficient-one monomial x, provided the result stays in Z/n."""
        if len(self._terms) != 1:
            raise ValueError("fractional powers need a single monomial")
        (e, c), = self._terms.items()
        if c != 1:
            raise ValueError("fractional powers need coefficient one")
        r = Fraction(r)
        new = []
        for x in e:
            y = x * r
            if y.denominator != 1:
                raise ValueError(f"exponent leaves Z/{self.ring.n}")
            new.append(int(y))
        return LaurentPolynomial(self.ring, {tuple(new): 1})

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self._terms == self.ring.const(other)._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def evaluate(self, values: Mapping[str, Rational]) -> Fraction:
        """Substitute rationals; every exponent that occurs must be an integer."""
        n = self.ring.n
        vals = [Fraction(values[name]) if name in values else None for name in self.ring.names]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = Fraction(c)
            for i, m in enumerate(e):
                if m:
                    if m % n:
                        raise ValueError("cannot evaluate a fractional power exactly")
                    if vals[i] is None:
                        raise KeyError(self.ring.names[i])
                    term *= vals[i] ** (m // n)
            total += term
        return total

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        n = self.ring.n
        for e in sorted(self._terms):
            c = self._terms[e]
            mono = "*".join(
                nm if m == n else f"{nm}^{_fmt_frac(m, n)}" for nm, m in zip(self.ring.names, e) if m
            )
            if not mono:
                out.append(str(c))
            else:
                out.append(("" if c == 1 else "-" if c == -1 else f"{c}*") + mono)
        return " + ".join(out)


def specialize_commutative(u: TorusElement) -> LaurentPolynomial:
    return u.specialize()


# ---------------------------------------------------------------------------
# Weyl ordering


def weyl_order(w, t: QuantumTorus) -> TorusElement:
    """Weyl ordering of a word or of a commutative Laurent polynomial.

    ``w`` is either a sequence of ``(generator, exponent)`` pairs with
    exponents in Z/n, or a :class:`LaurentPolynomial` whose generator names
    belong to ``t``; the latter is ordered monomial by monomial.
    """
    if isinstance(w, LaurentPolynomial):
        if w.ring.n != t.n:
            raise PresentationError("ring and torus use different n")
        idx = [t.index(nm) for nm in w.ring.names]
        out = {}
        N = t.ngens
        for e, c in w._terms.items():
            m = [0] * N
            for i, x in zip(idx, e):
                m[i] += x
            m = tuple(m)
            out[(m, t.weyl_h_power(m))] = c
        return TorusElement(t, out)
    letters = []
    for name, r in w:
        num = Fraction(r) * t.n
        if num.denominator != 1:
            raise PresentationError(f"exponent {r} is not in Z/{t.n}")
        letters.append((t.index(name), int(num)))
    N = t.ngens
    P = t.poisson
    correction = 0
    for (i, a), (j, b) in combinations(letters, 2):
        correction += P[i][j] * a * b
    product = t.one()
    for i, m in letters:
        e = [0] * N
        e[i] = m
        product = product * TorusElement(t, {(tuple(e), 0): 1})
    return product.scale(HalfOmegaLaurent.h_power(-correction))


# ---------------------------------------------------------------------------
# tensor products and generator maps


def tensor_name(name: str, factor: int) -> str:
    return f"{name}^({factor})"


def tensor(ts: Sequence[QuantumTorus]) -> QuantumTorus:
    """Tensor product; block-diagonal P, names suffixed ``^(i)`` (1-based).

    A single factor is returned unchanged.
    """
    ts = list(ts)
    if not ts:
        raise PresentationError("empty tensor product")
    if len({t.n for t in ts}) != 1:
        raise PresentationError("tensor factors must share n")
    if len(ts) == 1:
        return ts[0]
    names = []
    N = sum(t.ngens for t in ts)
    P = [[0] * N for _ in range(N)]
    off = 0
    for f, t in enumerate(ts, start=1):
        names.extend(tensor_name(nm, f) for nm in t.names)
        for i in range(t.ngens):
            for j in range(t.ngens):
                P[off + i][off + j] = t.poisson[i][j]
        off += t.ngens
    return make_torus(ts[0].n, names, P)


def factor_injection(ts: Sequence[QuantumTorus], i: int) -> GeneratorMap:
    """Inclusion of the i-th (1-based) factor into ``tensor(ts)``."""
    big = tensor(ts)
    src = ts[i - 1]
    if len(ts) == 1:
        return GeneratorMap.from_powers(src, big, {nm: {nm: 1} for nm in src.names})
    return GeneratorMap.from_powers(src, big, {nm: {tensor_name(nm, i): 1} for nm in src.names})


@dataclass
class PairingFailure:
    first: str
    second: str
    expected: int
    got: int


class GeneratorMap:
    """Algebra map sending each source generator to a Weyl-ordered monomial.

    ``roots[name]`` holds the numerators of the image of X_name^{1/n}; the
    image of X_name^{m/n} is the Weyl monomial with numerators m * roots.
    Generators absent from the map may not occur in arguments of ``apply``.
    """

    def __init__(self, src: QuantumTorus, dst: QuantumTorus, roots: Mapping[str, Sequence[int]]):
        if src.n != dst.n:
            raise PresentationError("source and target tori must share n")
        self.src = src
        self.dst = dst
        self.roots: dict[str, Exps] = {}
        for name, e in roots.items():
            src.index(name)
            e = tuple(int(x) for x in e)
            if len(e) != dst.ngens:
                raise PresentationError("image exponent length does not match the target")
            self.roots[name] = e

    @classmethod
    def from_powers(cls, src, dst, images: Mapping[str, Mapping[str, int]]) -> GeneratorMap:
        """X_name |-> [prod dst_k^{power_k}] with integer powers."""
        return cls(src, dst, {nm: dst.exps_from_mapping(p) for nm, p in images.items()})

    @classmethod
    def from_elements(cls, src, dst, images: Mapping[str, TorusElement]) -> GeneratorMap:
        """Images given as elements; each must be a Weyl-normalized monomial."""
        roots = {}
        for name, el in images.items():
            if el.torus != dst:
                raise PresentationError("image lives in the wrong torus")
            terms = el.flat_terms()
            if len(terms) != 1:
                raise PresentationError(f"image of {name} is not a monomial")
            ((e, k), c), = terms.items()
            if c != 1 or k != dst.weyl_h_power(e):
                raise PresentationError(f"image of {name} must have coefficient one in Weyl normalization")
            if any(x % dst.n for x in e):
                raise PresentationError(f"image of {name} must have integer exponents")
            roots[name] = tuple(x // dst.n for x in e)
        return cls(src, dst, roots)

    def validate(self) -> list[PairingFailure]:
        fails = []
        names = [nm for nm in self.src.names if nm in self.roots]
        for a, b in combinations(names, 2):
            want = self.src.P(a, b)
            got = self.dst.pairing(self.roots[a], self.roots[b])
            if want != got:
                fails.append(PairingFailure(a, b, want, got))
        return fails

    def is_valid(self) -> bool:
        return not self.validate()

    def image_of_monomial(self, e: Sequence[int]) -> TorusElement:
        dst = self.dst
        result = dst.one()
        for name, m in zip(self.src.names, e):
            if not m:
                continue
            if name not in self.roots:
                raise PresentationError(f"generator {name} is outside the domain of the map")
            y = tuple(m * x for x in self.roots[name])
            result = result * dst.weyl_monomial(y)
        return result

    def apply(self, u: TorusElement) -> TorusElement:
        if u.torus != self.src:
            raise PresentationError("argument is not in the source torus")
        out = self.dst.zero()
        cache: dict[Exps, TorusElement] = {}
        for (e, k), c in u.flat_terms().items():
            if e not in cache:
                cache[e] = self.image_of_monomial(e)
            out = out + cache[e].scale(HalfOmegaLaurent.h_power(k, c))
        return out

    __call__ = apply


def generator_map_hom(src: QuantumTorus, dst: QuantumTorus, images: Mapping[str, TorusElement]) -> GeneratorMap:
    return GeneratorMap.from_elements(src, dst, images)
