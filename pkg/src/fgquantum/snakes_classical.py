"""Snakes, projective bases and the classical snake-move matrices.

Snakes live in Theta_{n-1}.  A snake with head (n-1,0,0) is handled directly;
for the other two heads we rotate coordinates and flags cyclically so that
the head becomes (n-1,0,0):

    head (0,n-1,0):  canonical coordinates (b, c, a), flags (F, G, E)
    head (0,0,n-1):  canonical coordinates (c, a, b), flags (G, E, F)

Cyclic rotation leaves the lines L_nu and the triangle invariants unchanged,
so all constructions below are done in the canonical frame.

Covectors are row vectors; a projective basis is stored as the matrix with
rows u_1..u_n, and the change of basis matrix is B = U U'^{-1}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from . import _linalg as la
from .flags import (
    Flag,
    GenericityError,
    annihilator,
    edge_invariant,
    is_max_span_quad,
    random_flag,
    random_quad,
    random_triple,
    triangle_invariant,
)
from .ncmatrix import m_left, m_right
from .qtorus import LaurentRing
from .triangle_quiver import fg_poisson, interior_vertices

Vertex = tuple[int, int, int]
Covector = tuple[Fraction, ...]


# ---------------------------------------------------------------------------
# frames


def _heads(n: int) -> dict[str, Vertex]:
    return {"E": (n - 1, 0, 0), "F": (0, n - 1, 0), "G": (0, 0, n - 1)}


def to_canonical(v: Vertex, head: Vertex) -> Vertex:
    a, b, c = v
    if head[0]:
        return (a, b, c)
    if head[1]:
        return (b, c, a)
    return (c, a, b)


def from_canonical(v: Vertex, head: Vertex) -> Vertex:
    x, y, z = v
    if head[0]:
        return (x, y, z)
    if head[1]:
        return (z, x, y)
    return (y, z, x)


def canonical_flags(flags: tuple[Flag, Flag, Flag], head: Vertex):
    E, F, G = flags
    if head[0]:
        return (E, F, G)
    if head[1]:
        return (F, G, E)
    return (G, E, F)


# ---------------------------------------------------------------------------
# snakes


def _succ_left(v: Vertex, alpha: int) -> Vertex:
    return (alpha, v[1] + 1, v[2])


def _succ_right(v: Vertex, alpha: int) -> Vertex:
    return (alpha, v[1], v[2] + 1)


@dataclass(frozen=True)
class Snake:
    vertices: tuple[Vertex, ...]     # sigma_1..sigma_n, original coordinates
    chirality: str = "left"
    head: Vertex | None = None

    def __post_init__(self):
        verts = tuple(tuple(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        n = len(verts)
        if n < 2:
            raise ValueError("a snake has at least two vertices")
        head = self.head if self.head is not None else (n - 1, 0, 0)
        object.__setattr__(self, "head", tuple(head))
        if self.chirality not in ("left", "right"):
            raise ValueError("chirality must be 'left' or 'right'")
        if self.head not in _heads(n).values():
            raise ValueError("snake head must be a corner of Theta_{n-1}")
        if any(min(v) < 0 or sum(v) != n - 1 for v in verts):
            raise ValueError("snake vertices must lie in Theta_{n-1}")
        c = self.canonical
        for k in range(1, n + 1):
            a, b, g = c[k - 1]
            if self.chirality == "left":
                ok = a == k - 1 and (k == n or (b >= c[k][1] and g >= c[k][2]))
            else:
                ok = a == n - k and (k == 1 or (b >= c[k - 2][1] and g >= c[k - 2][2]))
            if not ok:
                raise ValueError(f"not a {self.chirality} snake at position {k}")

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def canonical(self) -> tuple[Vertex, ...]:
        return tuple(to_canonical(v, self.head) for v in self.vertices)

    @classmethod
    def from_canonical(cls, verts: Sequence[Vertex], chirality: str, head: Vertex) -> Snake:
        return cls(tuple(from_canonical(v, head) for v in verts), chirality, head)


def enumerate_snakes(n: int, chirality: str = "left", head: Vertex | None = None) -> list[Snake]:
    head = (n - 1, 0, 0) if head is None else head
    out = []

    def grow(path: list[Vertex]):
        if len(path) == n:
            verts = path if chirality == "right" else path[::-1]
            out.append(Snake.from_canonical(verts, chirality, head))
            return
        last = path[-1]
        alpha = last[0] - 1
        for nxt in (_succ_left(last, alpha), _succ_right(last, alpha)):
            grow(path + [nxt])

    grow([(n - 1, 0, 0)])
    return out


@dataclass(frozen=True)
class Move:
    kind: str                 # "diamond" or "tail"
    k: int                    # snake position that changes
    vertex: Vertex | None     # interior vertex of Theta_n (original coords), diamonds only


def classify_adjacent(s: Snake, t: Snake) -> Move | None:
    """Move taking s to t, or None when the pair is not adjacent."""
    if s.n != t.n or s.chirality != t.chirality or s.head != t.head:
        raise ValueError("snakes must share size, chirality and head")
    n = s.n
    a, b = s.canonical, t.canonical
    diff = [k for k in range(1, n + 1) if a[k - 1] != b[k - 1]]
    if len(diff) != 1:
        return None
    k = diff[0]
    if s.chirality == "left":
        if k == n:
            return None
        nxt = a[k]
        if a[k - 1] != _succ_right(nxt, k - 1) or b[k - 1] != _succ_left(nxt, k - 1):
            return None
        if k == 1:
            return Move("tail", 1, None)
        v = (k - 1, nxt[1] + 1, nxt[2] + 1)
    else:
        if k == 1:
            return None
        prev = a[k - 2]
        if a[k - 1] != _succ_left(prev, n - k) or b[k - 1] != _succ_right(prev, n - k):
            return None
        if k == n:
            return Move("tail", n, None)
        v = (n - k, prev[1] + 1, prev[2] + 1)
    return Move("diamond", k, from_canonical(v, s.head))


# ---------------------------------------------------------------------------
# lines and projective bases


def line(E: Flag, F: Flag, G: Flag, v: Vertex) -> Covector:
    """Generator of L_v = (E^(a) + F^(b) + G^(c))^perp."""
    n = E.n
    a, b, c = v
    span = E.subspace(a) + F.subspace(b) + G.subspace(c)
    ann = annihilator(span, n)
    if len(ann) != 1:
        raise GenericityError(f"L{v} is not a line")
    return ann[0]


def in_line(u: Sequence[Fraction], E: Flag, F: Flag, G: Flag, v: Vertex) -> bool:
    a, b, c = v
    span = E.subspace(a) + F.subspace(b) + G.subspace(c)
    return all(sum(x * y for x, y in zip(u, w)) == 0 for w in span)


def split(u: Sequence[Fraction], l: Covector, r: Covector) -> tuple[Fraction, Fraction]:
    """(x, y) with u + x l + y r = 0."""
    n = len(u)
    rows = [[l[i], r[i]] for i in range(n)]
    sol = la.solve(rows, [-Fraction(x) for x in u], 2)
    if sol is None or sol[1]:
        raise GenericityError("coplanarity relation has no unique solution")
    x, y = sol[0]
    return x, y


@dataclass(frozen=True)
class ProjectiveBasis:
    covectors: tuple[Covector, ...]
    lines: tuple[Vertex, ...]

    def matrix(self) -> list[list[Fraction]]:
        return [list(u) for u in self.covectors]


def projective_basis(E: Flag, F: Flag, G: Flag, snake: Snake, normalization: Sequence) -> ProjectiveBasis:
    """Basis u_1..u_n of V^* adapted to the snake, from u_n (left) or u_1 (right)."""
    n = snake.n
    A, B, C = canonical_flags((E, F, G), snake.head)
    cv = snake.canonical
    u0 = tuple(Fraction(x) for x in normalization)
    start = n if snake.chirality == "left" else 1
    if not any(u0) or not in_line(u0, A, B, C, cv[start - 1]):
        raise ValueError("normalization must be a nonzero covector in the head line")
    us: dict[int, Covector] = {start: u0}
    if snake.chirality == "left":
        order = [(k, k + 1) for k in range(n - 1, 0, -1)]
        alpha_of = lambda k: k - 1
        sign_left, sign_right = 1, -1
    else:
        order = [(k, k - 1) for k in range(2, n + 1)]
        alpha_of = lambda k: n - k
        sign_left, sign_right = -1, 1
    for k, prev in order:
        nu = cv[prev - 1]
        vl, vr = _succ_left(nu, alpha_of(k)), _succ_right(nu, alpha_of(k))
        l, r = line(A, B, C, vl), line(A, B, C, vr)
        x, y = split(us[prev], l, r)
        if cv[k - 1] == vl:
            us[k] = tuple(sign_left * x * t for t in l)
        else:
            us[k] = tuple(sign_right * y * t for t in r)
    return ProjectiveBasis(tuple(us[k] for k in range(1, n + 1)), snake.vertices)


def change_of_basis(U: ProjectiveBasis | Sequence, V: ProjectiveBasis | Sequence) -> list[list[Fraction]]:
    """B with [[u]]_U B = [[u]]_V, i.e. B = U V^{-1} (rows are basis covectors)."""
    mu = U.matrix() if isinstance(U, ProjectiveBasis) else [list(r) for r in U]
    mv = V.matrix() if isinstance(V, ProjectiveBasis) else [list(r) for r in V]
    return la.matmul(mu, la.inverse(mv))


def coordinates(u: Sequence, U: ProjectiveBasis | Sequence) -> list[Fraction]:
    mu = U.matrix() if isinstance(U, ProjectiveBasis) else [list(r) for r in U]
    return la.matmul([list(map(Fraction, u))], la.inverse(mu))[0]


# ---------------------------------------------------------------------------
# closed forms (all rational: the fractional prefactors cancel)


def _diag(d: Sequence) -> list[list[Fraction]]:
    n = len(d)
    return [[Fraction(d[i]) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def left_move_matrix(n: int, k: int, X: Fraction | None = None) -> list[list[Fraction]]:
    """X^{(k-1)/n} S^left_k(X) = diag(X, .., X, 1, .., 1) + E_{k,k+1}."""
    m = _diag([X if i < k - 1 else 1 for i in range(n)])
    m[k - 1][k] = Fraction(1)
    return m


def right_move_matrix(n: int, k: int, X: Fraction | None = None) -> list[list[Fraction]]:
    """X^{-(k-1)/n} S^right_k(X) = diag(1, .., 1, X^-1, .., X^-1) + E_{n-k+1,n-k}."""
    m = _diag([1 / Fraction(X) if i >= n - k + 1 else 1 for i in range(n)])
    m[n - k][n - k - 1] = Fraction(1)
    return m


def edge_move_matrix(zs: Sequence[Fraction]) -> list[list[Fraction]]:
    """prod_j Z_j^{j/n} S^edge_j(Z_j) = diag(Z_1...Z_{n-1}, Z_2...Z_{n-1}, .., 1)."""
    n = len(zs) + 1
    d = []
    for i in range(n):
        p = Fraction(1)
        for z in zs[i:]:
            p *= z
        d.append(p)
    return _diag(d)


def uturn_matrix(n: int) -> list[list[Fraction]]:
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(1, n + 1):
        m[i - 1][n - i] = Fraction((-1) ** (n - i))
    return m


def move_matrix(move: Move, snake: Snake, flags) -> list[list[Fraction]]:
    """Closed-form change of basis for an adjacent pair starting at ``snake``.

    Left diamonds at position k use S^left_k; right diamonds at position p use
    S^right_{n-p+1}, and the right tail (position n) is S^right_1.
    """
    n = snake.n
    if move.kind == "tail":
        return left_move_matrix(n, 1) if snake.chirality == "left" else right_move_matrix(n, 1)
    A, B, C = canonical_flags(flags, snake.head)
    X = triangle_invariant(A, B, C, *to_canonical(move.vertex, snake.head))
    if snake.chirality == "left":
        return left_move_matrix(n, move.k, X)
    return right_move_matrix(n, n - move.k + 1, X)


# ---------------------------------------------------------------------------
# sequences


@dataclass
class SnakeSequence:
    snakes: list[Snake]
    moves: list[Move] = field(default_factory=list)

    def __post_init__(self):
        if not self.moves:
            for s, t in zip(self.snakes, self.snakes[1:]):
                m = classify_adjacent(s, t)
                if m is None:
                    raise ValueError("consecutive snakes are not adjacent")
                self.moves.append(m)


def bottom_top(n: int, side: str) -> tuple[Snake, Snake]:
    if side == "left":
        head = (n - 1, 0, 0)
        bot = [(k - 1, 0, n - k) for k in range(1, n + 1)]
        top = [(k - 1, n - k, 0) for k in range(1, n + 1)]
        return Snake(tuple(bot), "left", head), Snake(tuple(top), "left", head)
    if side == "right":
        head = (0, 0, n - 1)
        bot = [(k - 1, 0, n - k) for k in range(1, n + 1)]
        top = [(0, k - 1, n - k) for k in range(1, n + 1)]
        return Snake(tuple(bot), "right", head), Snake(tuple(top), "right", head)
    raise ValueError("side must be 'left' or 'right'")


def preferred_sequence(n: int, side: str = "left") -> SnakeSequence:
    """The sweep whose moves follow the factor order of the left/right matrix."""
    if n < 2:
        raise ValueError("n must be at least 2")
    bot, _ = bottom_top(n, side)
    cur = list(bot.canonical)
    snakes = [bot]
    for k in range(n - 1, 0, -1):
        for l in range(1, k + 1):
            if side == "left":
                p, db = l, 1
            else:
                p, db = n - l + 1, -1
            a, b, c = cur[p - 1]
            cur[p - 1] = (a, b + db, c - db)
            snakes.append(Snake.from_canonical(cur, side, bot.head))
    return SnakeSequence(snakes)


def adjacency_graph(n: int, side: str) -> dict[Snake, list[tuple[Snake, Move]]]:
    bot, _ = bottom_top(n, side)
    snakes = enumerate_snakes(n, side, bot.head)
    g: dict[Snake, list[tuple[Snake, Move]]] = {s: [] for s in snakes}
    for s in snakes:
        for t in snakes:
            m = classify_adjacent(s, t)
            if m is not None:
                g[s].append((t, m))
    return g


def all_sequences(n: int, side: str) -> Iterator[SnakeSequence]:
    """Every sequence of adjacent snakes from the bottom to the top snake."""
    g = adjacency_graph(n, side)
    bot, top = bottom_top(n, side)

    def walk(path, moves):
        s = path[-1]
        if s == top:
            yield SnakeSequence(list(path), list(moves))
            return
        for t, m in g[s]:
            yield from walk(path + [t], moves + [m])

    yield from walk([bot], [])


def sequence_product(seq: SnakeSequence, flags) -> list[list[Fraction]]:
    n = seq.snakes[0].n
    out = la.identity(n)
    for s, m in zip(seq.snakes, seq.moves):
        out = la.matmul(out, move_matrix(m, s, flags))
    return out


def head_normalization(flags, snake: Snake, rng: random.Random | None = None) -> Covector:
    A, B, C = canonical_flags(flags, snake.head)
    pos = snake.n if snake.chirality == "left" else 1
    u = line(A, B, C, snake.canonical[pos - 1])
    s = Fraction(rng.choice([x for x in range(-5, 6) if x])) if rng else Fraction(1)
    return tuple(s * x for x in u)


def direct_change(flags, s: Snake, t: Snake, u0) -> list[list[Fraction]]:
    E, F, G = flags
    return change_of_basis(projective_basis(E, F, G, s, u0), projective_basis(E, F, G, t, u0))


# ---------------------------------------------------------------------------
# verification of the move formulas


@dataclass
class MoveReport:
    kind: str
    n: int
    cases: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.cases > 0 and not self.failures

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "cases": self.cases, "passed": self.passed,
                "failures": self.failures}


def _mat_str(m) -> list[list[str]]:
    return [[str(x) for x in r] for r in m]


def verify_move(flags: tuple, kind: str, rng: random.Random | None = None) -> MoveReport:
    """Compare the change of basis of projective bases with the closed form.

    ``flags`` is (E, F, G) except for ``edge`` where it is (E, G, F, F').
    Diamond and tail kinds check every adjacent pair of that kind.
    """
    rng = rng or random.Random(0)
    n = flags[0].n
    rep = MoveReport(kind, n)

    def record(B, T, **info):
        rep.cases += 1
        if B != T:
            rep.failures.append({**info, "direct": _mat_str(B), "closed_form": _mat_str(T)})

    if kind in ("diamond", "tail", "right-diamond", "right-tail"):
        chir = "right" if kind.startswith("right") else "left"
        want = kind.split("-")[-1]
        snakes = enumerate_snakes(n, chir)
        for s in snakes:
            u0 = head_normalization(flags, s, rng)
            for t in snakes:
                m = classify_adjacent(s, t)
                if m is None or m.kind != want:
                    continue
                B = direct_change(flags, s, t, u0)
                T = move_matrix(m, s, flags)
                record(B, T, k=m.k, vertex=m.vertex)
                if m.kind == "diamond":
                    # determinant carries the n-th power of the prefactor
                    X = triangle_invariant(*flags, *m.vertex)
                    e = m.k - 1 if chir == "left" else -(n - m.k)
                    if la.det(B) != X ** e:
                        rep.failures.append({"k": m.k, "vertex": m.vertex, "det": str(la.det(B))})
        return rep

    if kind == "edge":
        E, G, F, F2 = flags
        s = Snake(tuple((n - k, 0, k - 1) for k in range(1, n + 1)), "left", (0, 0, n - 1))
        t = Snake(tuple((k - 1, 0, n - k) for k in range(1, n + 1)), "left", (n - 1, 0, 0))
        u0 = head_normalization((G, F, E), s, rng)
        U = projective_basis(G, F, E, s, u0)
        V = projective_basis(E, F2, G, t, u0)
        zs = [edge_invariant(E, G, F, F2, j) for j in range(1, n)]
        record(change_of_basis(U, V), edge_move_matrix(zs))
        return rep

    if kind == "uturn":
        E, F, G = flags
        s = Snake(tuple((n - k, 0, k - 1) for k in range(1, n + 1)), "left", (0, 0, n - 1))
        t = Snake(tuple((k - 1, 0, n - k) for k in range(1, n + 1)), "left", (n - 1, 0, 0))
        # u_n = u'_1: build U' from its own head, then rescale so its first covector is u_n
        u0 = head_normalization(flags, s, rng)
        U = projective_basis(E, F, G, s, u0)
        V = projective_basis(E, F, G, t, head_normalization(flags, t))
        ratio = _ratio(U.covectors[-1], V.covectors[0])
        V = ProjectiveBasis(tuple(tuple(ratio * x for x in u) for u in V.covectors), V.lines)
        record(change_of_basis(U, V), uturn_matrix(n))
        return rep

    raise ValueError(f"unknown move kind {kind!r}")


def _ratio(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    """lambda with u = lambda v (u, v proportional)."""
    for x, y in zip(u, v):
        if y:
            lam = Fraction(x) / y
            break
    else:
        raise ZeroDivisionError("zero covector")
    if any(Fraction(x) != lam * y for x, y in zip(u, v)):
        raise ValueError("covectors are not proportional")
    return lam


# ---------------------------------------------------------------------------
# invariants as shears


def shear(p: Sequence[Fraction], target: Covector, third: Covector) -> Covector:
    """The point p' on the target line with p + p' + p'' = 0, p'' on the third line."""
    x, _ = split(p, target, third)
    return tuple(x * t for t in target)


def triangle_cycle(E: Flag, F: Flag, G: Flag, v: Vertex, direction: str, p0: Sequence) -> Fraction:
    """Total shearing around the downward triangle of the interior vertex v.

    nu'_i is v minus the i-th unit vector, nu_i is v plus e_i minus the
    other two unit vectors, and Delta_i = {nu_i, nu'_{i+2}, nu'_{i+1}}.
    """
    a, b, c = v
    nup = [(a - 1, b, c), (a, b - 1, c), (a, b, c - 1)]
    nu = [(a + 1, b - 1, c - 1), (a - 1, b + 1, c - 1), (a - 1, b - 1, c + 1)]
    L = lambda w: line(E, F, G, w)
    if not in_line(p0, E, F, G, nup[0]):
        raise ValueError("p0 must lie on the line of nu'_1")
    # a shear inside Delta_i between two nu' lines uses nu_i as the third line
    def step(p, frm, to):
        third = ({0, 1, 2} - {frm, to}).pop()
        return shear(p, L(nup[to]), L(nu[third]))
    if direction == "ccw":
        path = [(0, 2), (2, 1), (1, 0)]
    elif direction == "cw":
        path = [(0, 1), (1, 2), (2, 0)]
    else:
        raise ValueError("direction must be 'ccw' or 'cw'")
    p = tuple(map(Fraction, p0))
    for frm, to in path:
        p = step(p, frm, to)
    return _ratio(p, p0)


def edge_cycle(E: Flag, G: Flag, F: Flag, F2: Flag, j: int, direction: str, p0: Sequence) -> Fraction:
    """Total shearing around the j-th diamond across the edge (E, G).

    The diamond has the two edge lines (E^(j-1)+G^(n-j))^perp and
    (E^(j)+G^(n-j-1))^perp, and the lines (E^(j-1)+F'^(1)+G^(n-j-1))^perp
    and (E^(j-1)+F^(1)+G^(n-j-1))^perp on either side.
    """
    n = E.n
    e0 = line(E, F2, G, (j - 1, 0, n - j))
    e1 = line(E, F2, G, (j, 0, n - j - 1))
    top = line(E, F2, G, (j - 1, 1, n - j - 1))
    bot = line(G, F, E, (n - j - 1, 1, j - 1))
    p = tuple(map(Fraction, p0))
    if not _rank1(p, e0):
        raise ValueError("p0 must lie on the first edge line")
    # ccw: through the F' side first, back across the F side
    if direction == "ccw":
        p = shear(p, e1, top)
        p = shear(p, e0, bot)
    elif direction == "cw":
        p = shear(p, e1, bot)
        p = shear(p, e0, top)
    else:
        raise ValueError("direction must be 'ccw' or 'cw'")
    return _ratio(p, p0)


def _rank1(p, l) -> bool:
    try:
        _ratio(p, l)
        return True
    except (ValueError, ZeroDivisionError):
        return False


# ---------------------------------------------------------------------------
# batch verification


def triangle_symmetries(E: Flag, F: Flag, G: Flag) -> list[str]:
    """Symmetries of the triangle invariant; returns failure descriptions."""
    n = E.n
    bad = []
    for a in range(1, n):
        for b in range(1, n - a):
            c = n - a - b
            t = triangle_invariant(E, F, G, a, b, c)
            if t != triangle_invariant(G, E, F, c, a, b):
                bad.append(f"rotation at {(a, b, c)}")
            if t * triangle_invariant(F, E, G, b, a, c) != 1:
                bad.append(f"reflection at {(a, b, c)}")
    return bad


PROPS = ("symmetry", "diamond", "tail", "right", "edge", "uturn", "shears", "path", "bridge")


def verify_prop(n: int, prop: str, trials: int, seed: int) -> dict:
    """Run one family of checks on seeded random flags; returns a summary."""
    rng = random.Random(seed)
    cases = 0
    failures: list = []
    for trial in range(trials):
        if prop == "edge":
            E, F, G, F2 = random_quad(n, rng)
            rep = verify_move((E, G, F, F2), "edge", rng)
            cases += rep.cases
            failures += [{"trial": trial, **f} for f in rep.failures]
            continue
        flags = random_triple(n, rng)
        if prop == "symmetry":
            cases += 1
            failures += [{"trial": trial, "what": f} for f in triangle_symmetries(*flags)]
        elif prop in ("diamond", "tail", "uturn"):
            if n == 2 and prop == "diamond":
                continue
            rep = verify_move(flags, prop, rng)
            cases += rep.cases
            failures += [{"trial": trial, **f} for f in rep.failures]
        elif prop == "right":
            for kind in (("right-tail",) if n == 2 else ("right-diamond", "right-tail")):
                rep = verify_move(flags, kind, rng)
                cases += rep.cases
                failures += [{"trial": trial, "kind": kind, **f} for f in rep.failures]
        elif prop == "shears":
            E, F, G = flags
            for v in [(a, b, n - a - b) for a in range(1, n) for b in range(1, n - a)]:
                p0 = line(E, F, G, (v[0] - 1, v[1], v[2]))
                X = triangle_invariant(E, F, G, *v)
                for d, want in (("ccw", X), ("cw", 1 / X)):
                    cases += 1
                    got = triangle_cycle(E, F, G, v, d, p0)
                    if got != want:
                        failures.append({"trial": trial, "vertex": v, "direction": d, "got": str(got)})
            F2 = _fourth_flag(E, F, G, rng)
            for j in range(1, n):
                p0 = line(E, F2, G, (j - 1, 0, n - j))
                Z = edge_invariant(E, G, F, F2, j)
                for d, want in (("ccw", -Z), ("cw", -1 / Z)):
                    cases += 1
                    got = edge_cycle(E, G, F, F2, j, d, p0)
                    if got != want:
                        failures.append({"trial": trial, "edge": j, "direction": d, "got": str(got)})
        elif prop in ("path", "bridge"):
            check = verify_paths if prop == "path" else verify_matrix_bridge
            for side in ("left", "right"):
                rep = check(flags, side, rng)
                cases += rep.cases
                failures += [{"trial": trial, "side": side, **f} for f in rep.failures]
        else:
            raise ValueError(f"unknown proposition {prop!r}")
    return {"n": n, "prop": prop, "trials": trials, "seed": seed, "cases": cases,
            "passed": cases > 0 and not failures, "failures": failures}


def _fourth_flag(E, F, G, rng):
    while True:
        F2 = random_flag(E.n, rng)
        if is_max_span_quad(E, F, G, F2):
            return F2


def verify_paths(flags, side: str, rng: random.Random | None = None) -> MoveReport:
    """Every snake sequence from bottom to top gives the direct change of basis."""
    n = flags[0].n
    rep = MoveReport(f"path-{side}", n)
    bot, top = bottom_top(n, side)
    u0 = head_normalization(flags, bot, rng)
    direct = direct_change(flags, bot, top, u0)
    for seq in all_sequences(n, side):
        rep.cases += 1
        prod = sequence_product(seq, flags)
        if prod != direct:
            rep.failures.append({"moves": [(m.kind, m.k, m.vertex) for m in seq.moves]})
    return rep


def verify_matrix_bridge(flags, side: str, rng: random.Random | None = None) -> MoveReport:
    """m_left (m_right) without normalizers, at X = tau, is the bottom-to-top change of basis.

    The normalized matrix differs from this one by the scalar det^{-1/n},
    so this is the rational form of "B / Det^{1/n} = M^left(tau)".
    """
    n = flags[0].n
    rep = MoveReport(f"bridge-{side}", n)
    al = fg_poisson(n).aliases
    verts = interior_vertices(n)
    ring = LaurentRing(n, tuple(al[v] for v in verts))
    xs = {v: ring.gen(al[v]) for v in verts}
    build = m_left if side == "left" else m_right
    sym = build(ring, xs, n, normalized=False)
    values = {al[v]: triangle_invariant(*flags, *v) for v in verts}
    M = [[p.evaluate(values) for p in row] for row in sym.rows]
    bot, top = bottom_top(n, side)
    B = direct_change(flags, bot, top, head_normalization(flags, bot, rng))
    rep.cases += 1
    if M != B:
        rep.failures.append({"direct": _mat_str(B), "m_evaluated": _mat_str(M)})
    return rep
