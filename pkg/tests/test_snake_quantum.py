from fractions import Fraction

import pytest

from fgquantum.ncmatrix import NcMatrix, fg_assignments, m_edge, m_left, product
from fgquantum.qtorus import GeneratorMap, LaurentRing, make_torus, tensor
from fgquantum.slnq import check_slnq
from fgquantum.snake_quantum import (
    SnakeMoveTorus,
    blocked_index,
    build_embedding,
    check_lemma_commutation,
    check_lemma_weyl_product,
    embedding_slots,
    factor_matrix,
    merge_index,
    move_commutative_matrix,
    snake_factor_matrices,
    snake_move_matrix,
    solve_snake_move_poisson,
    solve_snake_move_poissons,
    verify_factorization,
)
from fgquantum.triangle_quiver import fg_poisson, fg_torus, subalgebra_generators

SIDES = ("left", "right")


def test_n2_tail_torus():
    t = solve_snake_move_poisson(2, 1, "tail").torus
    assert t.names == ("z1", "z'1")
    assert t.P("z1", "z'1") == 2


def test_n3_tail_pairing():
    t = solve_snake_move_poisson(3, 1).torus
    assert t.P("z1", "z'1") == 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("side", SIDES)
def test_poisson_matrices_antisymmetric_integral(n, side):
    for j, st in solve_snake_move_poissons(n, side).tori.items():
        P = st.torus.poisson
        for a in range(len(P)):
            for b in range(len(P)):
                assert P[a][b] == -P[b][a]
        assert st.kind == ("tail" if j == 1 else "diamond")


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("side", SIDES)
def test_every_move_matrix_is_a_point(n, side):
    for st in solve_snake_move_poissons(n, side).tori.values():
        assert check_slnq(snake_move_matrix(st)).passed


def test_move_argument_checks():
    with pytest.raises(ValueError):
        solve_snake_move_poisson(4, 4)
    with pytest.raises(ValueError):
        solve_snake_move_poisson(4, 1, "diamond")
    with pytest.raises(ValueError):
        solve_snake_move_poissons(4, "up")


def test_merge_and_blocked_indices():
    assert [merge_index(4, j, "left") for j in (1, 2, 3)] == [None, 1, 2]
    assert [merge_index(4, j, "right") for j in (1, 2, 3)] == [None, 3, 2]
    assert [blocked_index(4, j, "left") for j in (1, 2, 3)] == [1, 2, 3]
    assert [blocked_index(4, j, "right") for j in (1, 2, 3)] == [3, 2, 1]


def test_m3_display_n4():
    R = LaurentRing(4, ("z1", "z2", "z3", "x2", "z'1", "z'2", "z'3"))
    g = R.gen
    one, zero = R.one(), R.zero()

    def diag(d):
        return NcMatrix(R, [[d[i] if i == k else zero for k in range(4)] for i in range(4)])

    def edge(p):
        a, b, c = (g(f"{p}{k}") for k in (1, 2, 3))
        pre = g(f"{p}1", Fraction(-1, 4)) * g(f"{p}2", Fraction(-2, 4)) * g(f"{p}3", Fraction(-3, 4))
        return diag([a * b * c, b * c, c, one]).scale(pre)

    x = g("x2")
    mid = NcMatrix(R, [[x, zero, zero, zero], [zero, x, zero, zero],
                       [zero, zero, one, one], [zero, zero, zero, one]]).scale(g("x2", Fraction(-2, 4)))
    want = edge("z") @ mid @ edge("z'")
    assert move_commutative_matrix(4, 3, "left", R) == want


# images of the n = 4 left generators, factor by factor
N4_TABLE = {
    "Z1": ["z1", "1", "1", "1", "1", "1"],
    "Z2": ["z2 z'2", "z2", "1", "1", "1", "1"],
    "Z3": ["z3 z'3", "z3 z'3", "z3", "1", "1", "1"],
    "X1": ["z'1", "z1 x1 z'1", "z1 z'1", "z1", "1", "1"],
    "X2": ["1", "z'2", "z2 x2 z'2", "z2 z'2", "z2", "1"],
    "X3": ["1", "1", "1", "z'1", "z1 x1 z'1", "z1"],
    "Z'1": ["1", "1", "1", "1", "1", "z'1"],
    "Z'2": ["1", "1", "1", "1", "z'2", "z2 z'2"],
    "Z'3": ["1", "1", "z'3", "z3 z'3", "z3 z'3", "z3 z'3"],
}


def test_embedding_table_n4():
    spec = build_embedding(4)
    assert spec.js == [1, 2, 3, 1, 2, 1]
    table = spec.image_table()
    assert set(table) == set(N4_TABLE)
    for name, cells in N4_TABLE.items():
        assert [set(c.split()) for c in table[name]] == [set(c.split()) for c in cells]


def test_root_image_n4():
    spec = build_embedding(4)
    im = spec.hom.apply(fg_torus(4).gen("X2", Fraction(1, 4)))
    want = spec.tensor_torus.weyl_monomial({"z'2^(2)": 1, "z2^(3)": 1, "x2^(3)": 1, "z'2^(3)": 1,
                                             "z2^(4)": 1, "z'2^(4)": 1, "z2^(5)": 1})
    assert im == want


def test_embedding_slots_n3():
    js, slots = embedding_slots(3, "left")
    assert js == (1, 2, 1)
    assert set(slots["X1"]) == {(1, "z'1"), (2, "z1"), (2, "x1"), (2, "z'1"), (3, "z1")}
    assert set(slots["Z2"]) == {(1, "z2"), (1, "z'2"), (2, "z2")}
    assert set(slots["Z'2"]) == {(2, "z'2"), (3, "z2"), (3, "z'2")}
    assert slots["Z1"] == ((1, "z1"),) and slots["Z'1"] == ((3, "z'1"),)


def test_n2_embedding_is_identity():
    spec = build_embedding(2)
    assert spec.tensor_torus.names == ("z1", "z'1")
    assert spec.image_table() == {"Z1": ["z1"], "Z'1": ["z'1"]}


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("side", SIDES)
def test_embedding_is_a_retraction(n, side):
    spec = build_embedding(n, side)
    assert spec.is_retraction()
    assert set(spec.retraction_classes().values()) == set(subalgebra_generators(fg_poisson(n), side))
    assert spec.hom.validate() == []


def test_distinguished_terms_n4():
    assert build_embedding(4).distinguished_terms() == [
        "Z1^(1)", "Z2^(1)", "Z3^(1)", "X0^(1)", "X1^(2)", "X2^(3)",
        "X0^(4)", "X1^(5)", "X0^(6)", "Z'1^(6)", "Z'2^(6)", "Z'3^(6)"]


def test_distinguished_terms_right_use_double_primes():
    terms = build_embedding(3, "right").distinguished_terms()
    assert terms[-2:] == ["Z''1^(3)", "Z''2^(3)"]


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("side", SIDES)
def test_factorization(n, side):
    rep = verify_factorization(n, side)
    assert rep.equal, rep.to_json()
    assert rep.to_json()["first_mismatch"] is None


def _hom_with(spec, tori):
    """The embedding rebuilt over replacement factor tori."""
    big = tensor([t.torus for t in tori])
    count = len(tori)
    images = {}
    for name, sl in spec.slots.items():
        powers = {}
        for i, g in sl:
            key = g if count == 1 else f"{g}^({i})"
            powers[key] = powers.get(key, 0) + 1
        images[name] = powers
    return GeneratorMap.from_powers(fg_torus(spec.n), big, images)


def test_n3_tail_pairing_is_forced():
    # shifting P(z1, z'1) in one tail factor breaks either the point or the embedding
    spec = build_embedding(3)
    for delta in (-2, -1, 1, 2):
        tori = list(spec.factor_tori)
        t = tori[0].torus
        P = [list(r) for r in t.poisson]
        a, b = t.index("z1"), t.index("z'1")
        P[a][b] += delta
        P[b][a] -= delta
        bad = SnakeMoveTorus(3, 1, "tail", "left", make_torus(3, t.names, P))
        tori[0] = bad
        point = check_slnq(snake_move_matrix(bad)).passed
        hom_ok = not _hom_with(spec, tori).validate()
        assert not (point and hom_ok)


def test_perturbed_image_is_not_a_homomorphism():
    spec = build_embedding(4)
    images = {nm: {f"{g}^({i})": 1 for i, g in sl} for nm, sl in spec.slots.items()}
    del images["X2"]["z2^(5)"]
    hom = GeneratorMap.from_powers(fg_torus(4), spec.tensor_torus, images)
    fails = hom.validate()
    assert fails
    assert all("X2" in (f.first, f.second) for f in fails)
    assert any({f.first, f.second} == {"X2", "Z'2"} for f in fails)


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("side", SIDES)
def test_weyl_product_lemma(n, side):
    assert check_lemma_weyl_product(*snake_factor_matrices(n, side)).passed


def test_weyl_product_lemma_negative_control():
    # edge factors with non-commuting entries: ordering each factor separately is wrong
    R, xs, z, z1, _ = fg_assignments(3)
    rep = check_lemma_weyl_product([], [m_edge(R, z), m_left(R, xs), m_edge(R, z1)], ambient=fg_torus(3))
    assert not rep.passed


@pytest.mark.parametrize("n", range(2, 7))
@pytest.mark.parametrize("side", SIDES)
def test_commutation_lemma(n, side):
    assert check_lemma_commutation(n, side).passed


@pytest.mark.parametrize("side", SIDES)
def test_products_of_consecutive_factors_are_points(side):
    spec = build_embedding(4, side)
    mats = [factor_matrix(spec, i) for i in range(1, len(spec.js) + 1)]
    for a in range(len(mats) - 1):
        assert check_slnq(product(mats[a:a + 2])).passed


def test_free_parameter_counts():
    assert [solve_snake_move_poissons(n).free_parameters for n in (2, 3, 4)] == [0, 10, 28]
