"""Discrete triangles and the Fock-Goncharov quiver of a single triangle.

Vertices of Theta_n are triples (a, b, c) of nonnegative integers summing to
n.  The torus T_n uses the non-corner vertices.  Boundary vertices get the
aliases

    Z_j   = (j, 0, n-j),   Z'_j = (j, n-j, 0),   Z''_j = (0, j, n-j),

and interior vertices are numbered X_1, X_2, ... in the order they are used
by the left matrix, i.e. X_{(l-1)(n-k)(k-l+1)} for k = n-1..1, l = 2..k.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .qtorus import QuantumTorus, make_torus

Vertex = tuple[int, int, int]


def theta_vertices(n: int, level: int | None = None) -> list[Vertex]:
    """All (a, b, c) >= 0 with a + b + c = level (default n), lexicographic."""
    if n < 2:
        raise ValueError("n must be at least 2")
    s = n if level is None else level
    if s not in (n, n - 1):
        raise ValueError("level must be n or n-1")
    return [(a, b, s - a - b) for a in range(s + 1) for b in range(s - a + 1)]


def is_corner(v: Vertex) -> bool:
    return sum(1 for x in v if x == 0) == 2


def is_interior(v: Vertex) -> bool:
    return all(x > 0 for x in v)


def interior_vertices(n: int) -> list[Vertex]:
    return [v for v in theta_vertices(n) if is_interior(v)]


def left_index_order(n: int) -> list[Vertex]:
    """Interior vertices in the order they appear in the left matrix."""
    return [(l - 1, n - k, k - l + 1) for k in range(n - 1, 0, -1) for l in range(2, k + 1)]


def right_index_order(n: int) -> list[Vertex]:
    """Interior vertices in the order they appear in the right matrix."""
    return [(k - l + 1, n - k, l - 1) for k in range(n - 1, 0, -1) for l in range(2, k + 1)]


def aliases(n: int) -> dict[Vertex, str]:
    out: dict[Vertex, str] = {}
    for j in range(1, n):
        out[(j, 0, n - j)] = f"Z{j}"
    for i, v in enumerate(left_index_order(n), start=1):
        out[v] = f"X{i}"
    for j in range(1, n):
        out[(j, n - j, 0)] = f"Z'{j}"
    for j in range(1, n):
        out[(0, j, n - j)] = f"Z''{j}"
    return out


def _arrows(n: int) -> list[tuple[Vertex, Vertex]]:
    arrows = []
    for a, b, c in theta_vertices(n, n - 1):
        u, v, w = (a + 1, b, c), (a, b, c + 1), (a, b + 1, c)
        arrows += [(u, v), (v, w), (w, u)]
    if n >= 2:
        for a in range(n - 1):
            for b in range(n - 1 - a):
                c = n - 2 - a - b
                u, v, w = (a + 1, b, c + 1), (a + 1, b + 1, c), (a, b + 1, c + 1)
                arrows += [(u, v), (v, w), (w, u)]
    return [(s, t) for s, t in arrows if not is_corner(s) and not is_corner(t)]


@dataclass(frozen=True)
class FGQuiverSpec:
    n: int
    vertices: tuple[Vertex, ...]       # lexicographic, corners removed
    aliases: dict                      # vertex -> name
    poisson: tuple[tuple[int, ...], ...]  # indexed like ``vertices``

    def __hash__(self):
        return hash((self.n, self.vertices, self.poisson))

    @property
    def generator_names(self) -> list[str]:
        """Torus generator order: Z's, X's, Z''s, Z'''s."""
        return list(aliases(self.n).values())

    def vertex_of(self, name: str) -> Vertex:
        for v, nm in self.aliases.items():
            if nm == name:
                return v
        raise KeyError(name)

    def P(self, nu, mu) -> int:
        """Poisson entry; arguments may be vertices or alias names."""
        if isinstance(nu, str):
            nu = self.vertex_of(nu)
        if isinstance(mu, str):
            mu = self.vertex_of(mu)
        return self.poisson[self.vertices.index(nu)][self.vertices.index(mu)]

    def torus(self) -> QuantumTorus:
        return fg_torus(self.n)

    def subalgebra_generators(self, side: str) -> list[str]:
        return subalgebra_generators(self, side)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "vertices": [",".join(map(str, v)) for v in self.vertices],
            "aliases": {",".join(map(str, v)): nm for v, nm in self.aliases.items()},
            "generator_order": self.generator_names,
            "poisson": [list(r) for r in self.poisson],
        }


@lru_cache(maxsize=None)
def fg_poisson(n: int) -> FGQuiverSpec:
    if n < 2:
        raise ValueError("n must be at least 2")
    verts = tuple(v for v in theta_vertices(n) if not is_corner(v))
    idx = {v: i for i, v in enumerate(verts)}
    P = [[0] * len(verts) for _ in verts]
    for s, t in _arrows(n):
        P[idx[s]][idx[t]] += 1
        P[idx[t]][idx[s]] -= 1
    return FGQuiverSpec(n, verts, aliases(n), tuple(tuple(r) for r in P))


@lru_cache(maxsize=None)
def fg_torus(n: int) -> QuantumTorus:
    """The torus T_n with generators ordered Z, X, Z', Z''."""
    spec = fg_poisson(n)
    al = spec.aliases
    order = list(al)
    idx = {v: i for i, v in enumerate(spec.vertices)}
    P = [[spec.poisson[idx[u]][idx[v]] for v in order] for u in order]
    return make_torus(n, [al[v] for v in order], P)


def subalgebra_generators(spec: FGQuiverSpec, side: str) -> list[str]:
    """Generators of T_L (no Z'') or T_R (no Z')."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    out = []
    for nm in spec.aliases.values():
        primes = nm.count("'")
        if (side == "left" and primes == 2) or (side == "right" and primes == 1):
            continue
        out.append(nm)
    return out
