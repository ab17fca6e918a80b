from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from fgquantum.ncmatrix import NcMatrix, commutative_det, quantum_left, quantum_right, uturn
from fgquantum.qtorus import HalfOmegaLaurent, make_torus, weyl_order
from fgquantum.slnq import RELATIONS, check_m2q, check_mnq, check_slnq, m2q_residuals, quantum_determinant
from fgquantum.snake_quantum import build_embedding, factor_matrix
from fgquantum.triangle_quiver import fg_torus


def column_det(m):
    """sum_s (-q^-1)^inv(s) M_{s(1),1} ... M_{s(n),n}: the column-ordered expansion."""
    n = m.size
    t = m.algebra
    total = t.zero()
    for s in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if s[i] > s[j])
        term = t.one()
        for col in range(n):
            term = term * m[s[col], col]
        coeff = HalfOmegaLaurent.h_power(-2 * n * n * inv, (-1) ** inv)
        total = total + term.scale(coeff)
    return total


def two_gen():
    return make_torus(2, ["z", "z'"], [[0, 2], [-2, 0]])


def test_identity_passes():
    t = fg_torus(3)
    one, zero = t.one(), t.zero()
    assert check_m2q(one, zero, zero, one).passed
    assert quantum_determinant(NcMatrix.identity(t, 3)) == one


def test_n2_tail_snake_move_point():
    t = two_gen()
    h = Fraction(1, 2)
    a = weyl_order([("z", h), ("z'", h)], t)
    b = weyl_order([("z", h), ("z'", -h)], t)
    d = weyl_order([("z", -h), ("z'", -h)], t)
    assert check_m2q(a, b, t.zero(), d).passed
    assert check_slnq(NcMatrix(t, [[a, b], [t.zero(), d]])).passed


def test_wrong_poisson_fails():
    t = make_torus(2, ["z", "z'"], [[0, 1], [-1, 0]])
    h = Fraction(1, 2)
    a = weyl_order([("z", h), ("z'", h)], t)
    b = weyl_order([("z", h), ("z'", -h)], t)
    d = weyl_order([("z", -h), ("z'", -h)], t)
    rep = check_m2q(a, b, t.zero(), d, (1, 2), (1, 2))
    assert not rep.passed
    assert {f.relation for f in rep.failures} <= set(RELATIONS)
    f = rep.failures[0]
    assert f.residual == m2q_residuals(a, b, t.zero(), d)[f.relation]
    assert f.to_json()["rows"] == [1, 2]


def test_diagonal_commuting_passes():
    t = make_torus(3, ["a", "b"], [[0, 0], [0, 0]])
    z = t.zero()
    M = NcMatrix(t, [[t.gen("a"), z], [z, t.gen("b")]])
    assert check_mnq(M).passed


@pytest.mark.parametrize("n", [2, 3])
def test_theorem_small(n):
    assert check_slnq(quantum_left(n)).passed
    assert check_slnq(quantum_right(n)).passed


def test_stripped_normalizers_fail_n4():
    assert not check_mnq(quantum_left(4, normalized=False)).passed


def test_triangular_det_is_diagonal_product():
    L = quantum_left(3)
    prod = L[0, 0] * L[1, 1] * L[2, 2]
    assert quantum_determinant(L) == prod == L.algebra.one()


def test_two_by_two_det_forms():
    M = quantum_left(2)
    t = M.algebra
    a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    q, qi = t.q_power(1), t.q_power(-1)
    assert quantum_determinant(M) == a * d - (b * c).scale(qi)
    assert d * a - (b * c).scale(q) == a * d - (b * c).scale(qi)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_row_and_column_expansion_agree(n):
    for M in (quantum_left(n), quantum_right(n)):
        assert quantum_determinant(M) == column_det(M) == M.algebra.one()


def test_constant_uturn_is_only_a_classical_point():
    t = make_torus(3, ["a"], [[0]])
    R = t.classical_ring()
    U = uturn(R, 3).weyl(t)
    # antidiagonal minors have a = d = 0 but bc != 0
    rep = check_mnq(U)
    assert not rep.passed
    assert {f.relation for f in rep.failures} == {"da-ad=(q-q^-1)bc"}
    assert all(f.residual.specialize().is_zero() for f in rep.failures)


@st.composite
def monomial_quads(draw):
    t = make_torus(2, ["x", "y", "z"], [[0, 1, -2], [-1, 0, 1], [2, -1, 0]])
    out = []
    for _ in range(4):
        if draw(st.booleans()) and draw(st.booleans()):
            out.append(t.zero())
        else:
            e = [draw(st.integers(-3, 3)) for _ in range(3)]
            out.append(t.weyl_monomial(e))
    return out


@settings(max_examples=300, deadline=None)
@given(monomial_quads())
def test_transpose_symmetry(quad):
    a, b, c, d = quad
    assert check_m2q(a, b, c, d).passed == check_m2q(a, c, b, d).passed


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_q1_reduction_on_commuting_entries(vals):
    t = make_torus(3, ["a", "b"], [[0, 0], [0, 0]])
    R = t.classical_ring()
    ents = [R.const(v) * R.gen("a", Fraction(i % 3, 3)) for i, v in enumerate(vals)]
    C = NcMatrix(R, [ents[0:3], ents[3:6], ents[6:9]])
    M = C.weyl(t)
    for i, j in ((0, 1), (1, 2)):
        for k, l in ((0, 1), (0, 2)):
            res = m2q_residuals(M[i, k], M[i, l], M[j, k], M[j, l])
            assert all(r.specialize().is_zero() for r in res.values())
    assert quantum_determinant(M).specialize() == commutative_det(C)


def test_product_of_commuting_snake_factors_is_a_point():
    spec = build_embedding(3)
    A, B = factor_matrix(spec, 1), factor_matrix(spec, 2)
    AB = A @ B
    assert check_slnq(AB).passed
    assert quantum_determinant(AB) == quantum_determinant(A) * quantum_determinant(B)
