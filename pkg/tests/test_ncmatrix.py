from fractions import Fraction

import pytest

from fgquantum.ncmatrix import (
    NcMatrix,
    commutative_det,
    commutative_left,
    commutative_right,
    fg_assignments,
    left_factors,
    m_edge,
    m_left,
    matmul,
    quantum_left,
    quantum_right,
    shear_edge,
    shear_left,
    shear_right,
    uturn,
)
from fgquantum.qtorus import LaurentRing, weyl_order
from fgquantum.triangle_quiver import fg_poisson, fg_torus, subalgebra_generators


def ring2(n):
    return LaurentRing(n, ("z", "x"))


def consts(R, rows):
    return NcMatrix(R, [[R.const(c) for c in r] for r in rows])


def test_identity_is_neutral():
    R = ring2(3)
    A = shear_left(R, 2, R.gen("x"))
    I = NcMatrix.identity(R, 3)
    assert A @ I == A and I @ A == A


def test_unipotent_square():
    R = ring2(2)
    S = shear_left(R, 1)
    assert matmul(S, S) == consts(R, [[1, 2], [0, 1]])


def test_dimension_mismatch():
    R = ring2(3)
    a = NcMatrix(R, [[R.one(), R.one()]])
    with pytest.raises(ValueError):
        a @ a


def test_shear_left_1_ignores_x():
    R = ring2(4)
    assert shear_left(R, 1) == shear_left(R, 1, R.gen("x"))
    assert shear_left(R, 1) == consts(R, [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def test_shear_right_1_ignores_x():
    R = ring2(3)
    assert shear_right(R, 1) == consts(R, [[1, 0, 0], [0, 1, 0], [0, 1, 1]])


def test_shear_edge_form():
    R = ring2(4)
    z = R.gen("z")
    E = shear_edge(R, 3, z)
    norm = z.root_power(Fraction(-3, 4))
    for i in range(4):
        assert E[i, i] == (norm * z if i < 3 else norm)


def test_uturn_n2():
    R = ring2(2)
    assert uturn(R) == consts(R, [[0, -1], [1, 0]])


@pytest.mark.parametrize("n", range(2, 7))
def test_uturn_power_and_det(n):
    # U^2 = (-1)^(n-1) I, so U^n is +-I only for even n (for odd n it is +-U)
    R = ring2(n)
    U = uturn(R)
    I = NcMatrix.identity(R, n)
    assert U @ U == I.scale(R.const((-1) ** (n - 1)))
    P = I
    for _ in range(n):
        P = P @ U
    assert P in ((I, I.scale(R.const(-1))) if n % 2 == 0 else (U, U.scale(R.const(-1))))
    assert commutative_det(U) == R.one()


@pytest.mark.parametrize("n", range(2, 6))
def test_shear_determinants_are_one(n):
    R = ring2(n)
    x, z = R.gen("x"), R.gen("z")
    for k in range(1, n):
        assert commutative_det(shear_left(R, k, x)) == R.one()
        assert commutative_det(shear_right(R, k, x)) == R.one()
        assert commutative_det(shear_edge(R, k, z)) == R.one()


def test_index_out_of_range():
    R = ring2(3)
    with pytest.raises(ValueError):
        shear_left(R, 3, R.gen("x"))
    with pytest.raises(ValueError):
        shear_edge(R, 0, R.gen("z"))


def test_missing_assignment():
    R = ring2(3)
    with pytest.raises(KeyError):
        m_left(R, {})


def test_m_left_n2():
    R = ring2(2)
    assert m_left(R, {}) == consts(R, [[1, 1], [0, 1]])


def test_m_left_factor_order_n4():
    R, xs, *_ = fg_assignments(4)
    order = [(k, v) for k, v, _ in left_factors(R, xs)]
    assert order == [(1, None), (2, (1, 1, 2)), (3, (2, 1, 1)), (1, None), (2, (1, 2, 1)), (1, None)]


def test_m_left_n3_expansion():
    R, xs, *_ = fg_assignments(3)
    X = xs[(1, 1, 1)]
    want = shear_left(R, 1) @ shear_left(R, 2, X) @ shear_left(R, 1)
    assert m_left(R, xs) == want


def test_n2_triple_product():
    R, xs, z, z1, _ = fg_assignments(2)
    Z, Zp = z[0], z1[0]
    half = lambda p, s: p.root_power(Fraction(s, 2))
    want = NcMatrix(R, [[half(Z, 1) * half(Zp, 1), half(Z, 1) * half(Zp, -1)],
                        [R.zero(), half(Z, -1) * half(Zp, -1)]])
    assert commutative_left(2) == want


def test_quantum_left_n2():
    t = fg_torus(2)
    L = quantum_left(2)
    h = Fraction(1, 2)
    assert L[0, 0] == weyl_order([("Z1", h), ("Z'1", h)], t)
    assert L[0, 1] == weyl_order([("Z1", h), ("Z'1", -h)], t)
    assert L[1, 0].is_zero()
    assert L[1, 1] == weyl_order([("Z1", -h), ("Z'1", -h)], t)


@pytest.mark.parametrize("n", range(2, 7))
def test_specialization_is_commutative_product(n):
    R, xs, z, z1, _ = fg_assignments(n)
    want = m_edge(R, z) @ m_left(R, xs) @ m_edge(R, z1)
    assert quantum_left(n).specialize() == want
    assert quantum_right(n).specialize() == commutative_right(n)


@pytest.mark.parametrize("n", range(2, 7))
def test_entries_use_subalgebra_generators(n):
    spec = fg_poisson(n)
    t = fg_torus(n)
    for side, M in (("left", quantum_left(n)), ("right", quantum_right(n))):
        allowed = {t.index(g) for g in subalgebra_generators(spec, side)}
        for row in M.rows:
            for u in row:
                for e in u.monomials():
                    assert {i for i, x in enumerate(e) if x} <= allowed


@pytest.mark.parametrize("n", range(2, 7))
def test_edge_left_commutation_rule(n):
    R = ring2(n)
    z, x = R.gen("z"), R.gen("x")
    for j in range(1, n):
        for k in range(1, n):
            E, S = shear_edge(R, k, z), shear_left(R, j, x)
            assert (E @ S == S @ E) == (k != j)
            S = shear_right(R, j, x)
            assert (E @ S == S @ E) == (k != n - j)
