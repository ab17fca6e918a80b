import pytest

from fgquantum.triangle_quiver import (
    aliases,
    fg_poisson,
    interior_vertices,
    is_corner,
    is_interior,
    subalgebra_generators,
    theta_vertices,
)


def test_interior_n4():
    assert interior_vertices(4) == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]


def test_interior_n2_empty():
    assert interior_vertices(2) == []


def test_theta_order_is_lexicographic():
    vs = theta_vertices(3, 3)
    assert vs == sorted(vs) and len(vs) == 10


def test_theta_rejects_small_n():
    with pytest.raises(ValueError):
        theta_vertices(1, 1)


def test_corner_and_interior_tests():
    assert is_corner((4, 0, 0)) and not is_corner((3, 1, 0))
    assert is_interior((1, 1, 2)) and not is_interior((0, 2, 2))


@pytest.mark.parametrize("n", range(2, 9))
def test_vertex_count(n):
    spec = fg_poisson(n)
    assert len(spec.vertices) == 3 * (n - 1) + (n - 1) * (n - 2) // 2


@pytest.mark.parametrize("n", range(2, 9))
def test_antisymmetric_and_range(n):
    spec = fg_poisson(n)
    P = spec.poisson
    N = len(P)
    for i in range(N):
        for j in range(N):
            assert P[i][j] == -P[j][i]
            assert P[i][j] in (-2, -1, 0, 1, 2)


def _adjacent(u, v):
    d = sorted(x - y for x, y in zip(u, v))
    return d == [-1, 0, 1]


def _on_boundary(u):
    return 0 in u


@pytest.mark.parametrize("n", range(2, 8))
def test_edge_weight_rule(n):
    spec = fg_poisson(n)
    for u in spec.vertices:
        for v in spec.vertices:
            if u >= v:
                continue
            p = abs(spec.P(u, v))
            if not _adjacent(u, v):
                assert p == 0
            else:
                # a lattice edge lies on the boundary iff both ends share a zero coordinate
                boundary = any(a == 0 and b == 0 for a, b in zip(u, v))
                assert p == (1 if boundary else 2)


def test_sample_relations_n4():
    spec = fg_poisson(4)
    assert spec.P("Z3", "Z2") == 1
    assert spec.P("X1", "X3") == 2
    assert spec.P("Z3", "Z'3") == 2
    assert spec.P("X3", "Z''2") == 2


def test_aliases_n4():
    al = aliases(4)
    assert al[(1, 1, 2)] == "X1" and al[(2, 1, 1)] == "X2" and al[(1, 2, 1)] == "X3"
    assert al[(1, 0, 3)] == "Z1" and al[(1, 3, 0)] == "Z'1" and al[(0, 1, 3)] == "Z''1"


def test_subalgebras():
    spec = fg_poisson(4)
    left = subalgebra_generators(spec, "left")
    assert len(left) == 9 and not any(g.startswith("Z''") for g in left)
    right = subalgebra_generators(spec, "right")
    assert {g for g in right if g.startswith("Z''")} == {"Z''1", "Z''2", "Z''3"}
    assert not any(g.startswith("Z'") and not g.startswith("Z''") for g in right)
    assert subalgebra_generators(fg_poisson(2), "left") == ["Z1", "Z'1"]
    with pytest.raises(ValueError):
        subalgebra_generators(spec, "up")


def test_json_keys():
    d = fg_poisson(3).to_json()
    assert "1,1,1" in d["vertices"]
    assert d["n"] == 3
