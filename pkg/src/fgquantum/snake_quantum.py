"""Snake-move quantum tori and the factorization of the quantum left/right matrix.

For a snake sweep with move indices j_1, ..., j_{N-1}, each move gets a small
torus S_j on generators z_1..z_{n-1}, z'_1..z'_{n-1} and (diamond moves) one
x, and a matrix

    left:   M_j = [ prod_k S^edge_k(z_k) . S^left_j(x_{j-1})    . prod_k S^edge_k(z'_k) ]
    right:  M_j = [ prod_k S^edge_k(z_k) . S^right_j(x_{n-j+1}) . prod_k S^edge_k(z'_k) ]

The Poisson matrices of the S_j are found by solving the linear conditions
that (a) every M_j is a quantum SL_n point and (b) the sweep embedding of the
left (right) subalgebra of T_n into the tensor product is a homomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import _linalg as la
from .ncmatrix import NcMatrix, product, shear_edge, shear_left, shear_right
from .qtorus import (
    GeneratorMap,
    LaurentPolynomial,
    LaurentRing,
    QuantumTorus,
    TorusElement,
    make_torus,
    tensor,
    tensor_name,
)
from .snakes_classical import SnakeSequence, preferred_sequence
from .triangle_quiver import fg_poisson, fg_torus, subalgebra_generators


class ConstructionError(RuntimeError):
    """The snake-move constraint system has no acceptable solution."""


def _side(side: str) -> str:
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    return side


def merge_index(n: int, j: int, side: str) -> int | None:
    """Edge index k whose shears absorb into the x of move j (None for j = 1)."""
    if j == 1:
        return None
    return j - 1 if side == "left" else n - j + 1


def blocked_index(n: int, j: int, side: str) -> int:
    """Edge index k whose shear does not commute with the move's shear."""
    return j if side == "left" else n - j


def x_name(n: int, j: int, side: str) -> str | None:
    m = merge_index(n, j, side)
    return None if m is None else f"x{m}"


def move_generator_names(n: int, j: int, side: str) -> list[str]:
    names = [f"z{k}" for k in range(1, n)]
    x = x_name(n, j, side)
    if x:
        names.append(x)
    names += [f"z'{k}" for k in range(1, n)]
    return names


def support_pairs(n: int, j: int, side: str) -> list[tuple[str, str]]:
    """Generator pairs allowed a nonzero Poisson entry (nearest neighbours)."""
    pairs = []
    for k in range(1, n):
        for l in range(k + 1, n):
            if l - k == 1:
                pairs += [(f"z{k}", f"z{l}"), (f"z'{k}", f"z'{l}")]
        for l in range(1, n):
            if abs(k - l) <= 1:
                pairs.append((f"z{k}", f"z'{l}"))
    x = x_name(n, j, side)
    if x:
        near = {merge_index(n, j, side), blocked_index(n, j, side)}
        for k in sorted(m for m in near if 1 <= m <= n - 1):
            pairs += [(f"z{k}", x), (x, f"z'{k}")]
    return pairs


def move_commutative_matrix(n: int, j: int, side: str, ring: LaurentRing | None = None,
                            rename=None) -> NcMatrix:
    """The product inside the brackets of M_j, in the commutative layer.

    ``rename`` maps the local generator names to names of ``ring``.
    """
    ring = ring or LaurentRing(n, tuple(move_generator_names(n, j, side)))
    g = (lambda s: ring.gen(rename(s))) if rename else ring.gen
    z = [g(f"z{k}") for k in range(1, n)]
    z1 = [g(f"z'{k}") for k in range(1, n)]
    x = x_name(n, j, side)
    xg = g(x) if x else None
    mid = shear_left(ring, j, xg, n) if side == "left" else shear_right(ring, j, xg, n)
    return product([shear_edge(ring, k, z[k - 1], n) for k in range(1, n)] + [mid]
                   + [shear_edge(ring, k, z1[k - 1], n) for k in range(1, n)])


@dataclass(frozen=True)
class SnakeMoveTorus:
    n: int
    j: int
    kind: str
    side: str
    torus: QuantumTorus

    @property
    def x(self) -> str | None:
        return x_name(self.n, self.j, self.side)


def snake_move_matrix(t: SnakeMoveTorus) -> NcMatrix:
    return move_commutative_matrix(t.n, t.j, t.side, t.torus.classical_ring()).weyl(t.torus)


def j_sequence(seq: SnakeSequence, side: str) -> list[int]:
    n = seq.snakes[0].n
    if side == "left":
        return [m.k for m in seq.moves]
    return [n - m.k + 1 for m in seq.moves]


# ---------------------------------------------------------------------------
# the sweep embedding (combinatorial part)


@lru_cache(maxsize=None)
def embedding_slots(n: int, side: str) -> tuple[tuple[int, ...], dict[str, tuple[tuple[int, str], ...]]]:
    """Move indices of the preferred sweep and, for each subalgebra generator,
    the (factor, generator) slots making up its image.

    Along each edge index k the slots z_k, [x], z'_k of consecutive factors
    form a chain; it is cut inside every factor whose shear blocks k.  The
    first piece belongs to Z_k, the last to Z'_k (Z''_k on the right), and
    every middle piece holds exactly one x, whose interior generator it is.
    """
    _side(side)
    seq = preferred_sequence(n, side)
    js = j_sequence(seq, side)
    al = fg_poisson(n).aliases
    owner_of_x = {i: al[m.vertex] for i, m in enumerate(seq.moves, start=1) if m.kind == "diamond"}
    far = "Z'" if side == "left" else "Z''"
    images: dict[str, list[tuple[int, str]]] = {}
    for k in range(1, n):
        pieces: list[list[tuple[int, str]]] = [[]]
        for i, j in enumerate(js, start=1):
            pieces[-1].append((i, f"z{k}"))
            if merge_index(n, j, side) == k:
                pieces[-1].append((i, f"x{k}"))
            if blocked_index(n, j, side) == k:
                pieces.append([])
            pieces[-1].append((i, f"z'{k}"))
        for p, piece in enumerate(pieces):
            xs = [(i, g) for i, g in piece if g.startswith("x")]
            if p == 0 or p == len(pieces) - 1:
                if xs:
                    raise ConstructionError(f"boundary chain for k={k} contains an x slot")
                name = f"Z{k}" if p == 0 else f"{far}{k}"
            else:
                if len(xs) != 1:
                    raise ConstructionError(f"interior chain for k={k} has {len(xs)} x slots")
                name = owner_of_x[xs[0][0]]
            images.setdefault(name, []).extend(piece)
    return tuple(js), {nm: tuple(v) for nm, v in images.items()}


# ---------------------------------------------------------------------------
# solving for the snake-move Poisson matrices


def _pair_row(names: list[str], var: dict, u: dict[str, int], w: dict[str, int]) -> dict[int, int]:
    """Coefficients of sum_{a,b} P_ab u_a w_b in the unknowns P_ab (a before b)."""
    row: dict[int, int] = {}
    pos = {nm: i for i, nm in enumerate(names)}
    for a, ua in u.items():
        for b, wb in w.items():
            if a == b or not ua or not wb:
                continue
            if pos[a] < pos[b]:
                key, sgn = (a, b), 1
            else:
                key, sgn = (b, a), -1
            if key in var:
                row[var[key]] = row.get(var[key], 0) + sgn * ua * wb
    return row


def _monomial_exps(p, names) -> dict[str, int] | None:
    if p.is_zero():
        return None
    terms = p.terms()
    if len(terms) != 1:
        raise ConstructionError("snake-move matrix entries must be monomials")
    (e, c), = terms.items()
    if c != 1:
        raise ConstructionError("snake-move matrix entries must have coefficient one")
    return {nm: x for nm, x in zip(names, e) if x}


def _c1_rows(n: int, j: int, side: str, var: dict, names: list[str]):
    """Linear conditions for M_j to lie in SL_n^q when entries are Weyl monomials.

    For Weyl monomials U V = omega^{pair(u,v)} V U, so e.g. ba = q ab
    becomes pair(b, a) = n^2.
    """
    m = move_commutative_matrix(n, j, side)
    ex = [[_monomial_exps(m[r, c], names) for c in range(n)] for r in range(n)]
    q = n * n
    rows = []
    for r1, r2 in combinations(range(n), 2):
        for c1, c2 in combinations(range(n), 2):
            a, b, c, d = ex[r1][c1], ex[r1][c2], ex[r2][c1], ex[r2][c2]
            if b is not None and c is not None:
                raise ConstructionError("both off-diagonal entries nonzero; relation is not linear")
            for u, w, rhs in ((b, a, q), (d, c, q), (c, a, q), (d, b, q), (d, a, 0)):
                if u is not None and w is not None:
                    rows.append((_pair_row(names, var, u, w), rhs))
    # quantum determinant of a triangular matrix: ordered product of the diagonal
    diag = [ex[i][i] for i in range(n)]
    total: dict[int, int] = {}
    for i, k in combinations(range(n), 2):
        for v, c in _pair_row(names, var, diag[i], diag[k]).items():
            total[v] = total.get(v, 0) + c
    rows.append((total, 0))
    return rows


@dataclass
class PoissonSolution:
    n: int
    side: str
    tori: dict[int, SnakeMoveTorus]
    free_parameters: int
    equations: int
    unknowns: int


@lru_cache(maxsize=None)
def solve_snake_move_poissons(n: int, side: str = "left") -> PoissonSolution:
    """Solve (C1) and (C2) jointly for all move indices j = 1..n-1."""
    _side(side)
    if n < 2:
        raise ValueError("n must be at least 2")
    js, slots = embedding_slots(n, side)
    names = {j: move_generator_names(n, j, side) for j in range(1, n)}
    var: dict[tuple[int, str, str], int] = {}
    for j in range(1, n):
        for a, b in support_pairs(n, j, side):
            na = names[j]
            if na.index(a) > na.index(b):
                a, b = b, a
            var[(j, a, b)] = len(var)
    rows: list[tuple[dict[int, int], int]] = []
    for j in range(1, n):
        local = {(a, b): v for (jj, a, b), v in var.items() if jj == j}
        rows += _c1_rows(n, j, side, local, names[j])
    # (C2): factor-wise pairings of the images add up to the FG pairing
    T = fg_torus(n)
    gens = subalgebra_generators(fg_poisson(n), side)
    for U, V in combinations(gens, 2):
        total: dict[int, int] = {}
        for i, j in enumerate(js, start=1):
            local = {(a, b): v for (jj, a, b), v in var.items() if jj == j}
            u = {g: 1 for f, g in slots[U] if f == i}
            w = {g: 1 for f, g in slots[V] if f == i}
            for v, c in _pair_row(names[j], local, u, w).items():
                total[v] = total.get(v, 0) + c
        rows.append((total, T.P(U, V)))
    N = len(var)
    A = [[Fraction(r.get(i, 0)) for i in range(N)] for r, _ in rows]
    b = [Fraction(rhs) for _, rhs in rows]
    sol = la.solve(A, b, N)
    if sol is None:
        raise ConstructionError(f"snake-move Poisson system is infeasible (n={n}, side={side})")
    x, null = sol
    if any(v.denominator != 1 for v in x):
        raise ConstructionError("snake-move Poisson solution is not integral")
    tori = {}
    for j in range(1, n):
        na = names[j]
        P = [[0] * len(na) for _ in na]
        for (jj, a, bb), v in var.items():
            if jj == j:
                ia, ib = na.index(a), na.index(bb)
                P[ia][ib] = int(x[v])
                P[ib][ia] = -int(x[v])
        kind = "tail" if j == 1 else "diamond"
        tori[j] = SnakeMoveTorus(n, j, kind, side, make_torus(n, na, P))
    return PoissonSolution(n, side, tori, len(null), len(rows), N)


def solve_snake_move_poisson(n: int, j: int, kind: str | None = None, side: str = "left") -> SnakeMoveTorus:
    if not 1 <= j <= n - 1:
        raise ValueError("move index out of range")
    expected = "tail" if j == 1 else "diamond"
    if kind is not None and kind != expected:
        raise ValueError(f"move {j} is a {expected} move")
    return solve_snake_move_poissons(n, side).tori[j]


# ---------------------------------------------------------------------------
# embedding and factorization


def _tname(name: str, i: int, count: int) -> str:
    return name if count == 1 else tensor_name(name, i)


@dataclass
class EmbeddingSpec:
    n: int
    side: str
    sequence: SnakeSequence
    js: list[int]
    factor_tori: list[SnakeMoveTorus]
    tensor_torus: QuantumTorus
    slots: dict[str, tuple[tuple[int, str], ...]]
    hom: GeneratorMap

    def image_table(self) -> dict[str, list[str]]:
        """Per generator, the monomial in each factor ('1' when empty)."""
        out = {}
        for name, sl in self.slots.items():
            cells = []
            for i in range(1, len(self.js) + 1):
                gens = [g for f, g in sl if f == i]
                cells.append(" ".join(gens) if gens else "1")
            out[name] = cells
        return out

    def retraction_classes(self) -> dict[str, str]:
        """Tensor generator -> the subalgebra generator whose image uses it."""
        out = {}
        count = len(self.js)
        for name, sl in self.slots.items():
            for i, g in sl:
                out[_tname(g, i, count)] = name
        return out

    def is_retraction(self) -> bool:
        """Every tensor generator lies in the image of exactly one generator."""
        count = len(self.js)
        used = [_tname(g, i, count) for sl in self.slots.values() for i, g in sl]
        return len(used) == len(set(used)) and set(used) == set(self.tensor_torus.names)

    def distinguished_terms(self) -> list[str]:
        """The terms of the factor product that survive the regrouping.

        One per subalgebra generator (Z_k^(1), the x of each diamond,
        Z'_k^(N-1)) plus the bare tail shear X_0^(i) of every tail move.
        """
        last = len(self.js)
        far = "Z'" if self.side == "left" else "Z''"
        out = []
        for k in range(1, self.n):
            out.append(f"Z{k}^(1)")
        for i, j in enumerate(self.js, start=1):
            m = merge_index(self.n, j, self.side)
            out.append(f"X0^({i})" if m is None else f"X{m}^({i})")
        for k in range(1, self.n):
            out.append(f"{far}{k}^({last})")
        return out


@lru_cache(maxsize=None)
def build_embedding(n: int, side: str = "left") -> EmbeddingSpec:
    sol = solve_snake_move_poissons(n, side)
    js, slots = embedding_slots(n, side)
    tori = [sol.tori[j] for j in js]
    big = tensor([t.torus for t in tori])
    count = len(js)
    images = {}
    for name, sl in slots.items():
        powers: dict[str, int] = {}
        for i, g in sl:
            key = _tname(g, i, count)
            powers[key] = powers.get(key, 0) + 1
        images[name] = powers
    hom = GeneratorMap.from_powers(fg_torus(n), big, images)
    fails = hom.validate()
    if fails:
        f = fails[0]
        raise ConstructionError(f"embedding is not a homomorphism at ({f.first}, {f.second})")
    return EmbeddingSpec(n, side, preferred_sequence(n, side), list(js), tori, big, slots, hom)


def factor_matrix(spec: EmbeddingSpec, i: int) -> NcMatrix:
    """M_{j_i} pushed into the tensor torus (i is 1-based)."""
    t = spec.factor_tori[i - 1]
    count = len(spec.js)
    comm = move_commutative_matrix(spec.n, t.j, spec.side, spec.tensor_torus.classical_ring(),
                                   lambda g: _tname(g, i, count))
    return comm.weyl(spec.tensor_torus)


@dataclass
class FactorizationReport:
    n: int
    side: str
    equal: bool
    first_mismatch: tuple[int, int] | None = None
    residual: TorusElement | None = None
    lhs: NcMatrix | None = None
    rhs: NcMatrix | None = None

    def to_json(self) -> dict:
        return {
            "n": self.n, "side": self.side, "equal": self.equal,
            "first_mismatch": list(self.first_mismatch) if self.first_mismatch else None,
            "residual": self.residual.to_json() if self.residual is not None else None,
        }


def verify_factorization(n: int, side: str = "left") -> FactorizationReport:
    """Image of the FG matrix under the embedding vs the product of M_{j_i}."""
    from .ncmatrix import quantum_left, quantum_right

    spec = build_embedding(n, side)
    fg = quantum_left(n) if side == "left" else quantum_right(n)
    lhs = fg.map(spec.hom.apply, spec.tensor_torus)
    rhs = product([factor_matrix(spec, i) for i in range(1, len(spec.js) + 1)])
    for r in range(n):
        for c in range(n):
            if lhs[r, c] != rhs[r, c]:
                return FactorizationReport(n, side, False, (r + 1, c + 1), lhs[r, c] - rhs[r, c], lhs, rhs)
    return FactorizationReport(n, side, True, None, None, lhs, rhs)


# ---------------------------------------------------------------------------
# the two lemmas behind the factorization


@dataclass
class LemmaReport:
    passed: bool
    failures: list = field(default_factory=list)


def _lift(p: LaurentPolynomial, ring: LaurentRing, rename) -> LaurentPolynomial:
    idx = [ring.index(rename(nm)) for nm in p.ring.names]
    terms = {}
    for e, c in p.terms().items():
        v = [0] * ring.ngens
        for i, x in zip(idx, e):
            v[i] += x
        terms[tuple(v)] = c
    return LaurentPolynomial(ring, terms)


def check_lemma_weyl_product(tori, matrices, ambient: QuantumTorus | None = None) -> LemmaReport:
    """[A_1][A_2]...[A_m] = [A_1 A_2 ... A_m] in the tensor of the tori.

    ``matrices[i]`` is a commutative-layer matrix over the ring of ``tori[i]``.
    With ``ambient`` given the matrices must already live over its ring and
    no tensor is formed (used for negative controls).
    """
    tori = list(tori)
    if ambient is None:
        ambient = tensor(tori)
        ring = ambient.classical_ring()
        count = len(tori)
        lifted = [m.map(lambda p, i=i: _lift(p, ring, lambda g: _tname(g, i, count)), ring)
                  for i, m in enumerate(matrices, start=1)]
    else:
        lifted = list(matrices)
    left = product([m.weyl(ambient) for m in lifted])
    right = product(lifted).weyl(ambient)
    fails = []
    size = left.size
    for r in range(size):
        for c in range(size):
            if left[r, c] != right[r, c]:
                fails.append(((r + 1, c + 1), left[r, c] - right[r, c]))
    return LemmaReport(not fails, fails)


def snake_factor_matrices(n: int, side: str = "left"):
    """(tori, commutative matrices) of the preferred sweep, for the product lemma."""
    spec = build_embedding(n, side)
    tori = [t.torus for t in spec.factor_tori]
    mats = [move_commutative_matrix(n, t.j, side, t.torus.classical_ring()) for t in spec.factor_tori]
    return tori, mats


def check_lemma_commutation(n: int, side: str = "left") -> LemmaReport:
    """S^edge_k commutes with S^left_j iff k != j (S^right_j: iff k != n - j),
    and the edge shear merges into the neighbouring left/right shear.
    """
    ring = LaurentRing(n, ("z", "x"))
    z, x = ring.gen("z"), ring.gen("x")
    sh = shear_left if side == "left" else shear_right
    fails = []
    for j in range(1, n):
        for k in range(1, n):
            E = shear_edge(ring, k, z)
            S = sh(ring, j, x)
            commute = (E @ S) == (S @ E)
            expect = k != blocked_index(n, j, side)
            if commute != expect:
                fails.append(("commute", k, j, commute))
        m = merge_index(n, j, side)
        if m is not None:
            merged = sh(ring, j, z * x)
            if shear_edge(ring, m, z) @ sh(ring, j, x) != merged or sh(ring, j, x) @ shear_edge(ring, m, z) != merged:
                fails.append(("merge", m, j))
    return LemmaReport(not fails, fails)
