import random
from fractions import Fraction

import pytest

from frameforms import (
    DegreeError,
    DimensionError,
    FrameManifold,
    GaussianRational,
    Poly,
    Session,
    Spinor,
    build_clifford_table,
    clifford_mul,
)

ZERO = GaussianRational(0)
ONE = GaussianRational(1)
IU = GaussianRational(0, 1)


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum((a[r][k] * b[k][c] for k in range(n)), ZERO) for c in range(n))
        for r in range(n)
    )


def _identity(n):
    return tuple(tuple(ONE if r == c else ZERO for c in range(n)) for r in range(n))


def _scaled_identity(n, c):
    return tuple(tuple(c if r == k else ZERO for k in range(n)) for r in range(n))


@pytest.mark.parametrize("n", range(1, 9))
def test_clifford_relations(n):
    t = build_clifford_table(n)
    dim = t.spinor_dim
    assert dim == 2 ** (n // 2)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            anti = _matmul(t.gamma(i), t.gamma(j))
            anti = tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(anti, _matmul(t.gamma(j), t.gamma(i)))
            )
            expected = _scaled_identity(dim, GaussianRational(-2)) if i == j else _scaled_identity(dim, ZERO)
            assert anti == expected, (n, i, j)


def test_frozen_table_n2():
    t = build_clifford_table(2)
    assert t.gamma(1) == ((ZERO, IU), (IU, ZERO))
    assert t.gamma(2) == ((ZERO, ONE), (-ONE, ZERO))


def test_frozen_table_n3():
    t = build_clifford_table(3)
    assert t.gamma(3) == ((-IU, ZERO), (ZERO, IU))


def test_frozen_table_n4():
    t = build_clifford_table(4)
    assert t.gamma(1) == (
        (ZERO, IU, ZERO, ZERO),
        (IU, ZERO, ZERO, ZERO),
        (ZERO, ZERO, ZERO, -IU),
        (ZERO, ZERO, -IU, ZERO),
    )
    assert t.gamma(2) == (
        (ZERO, ONE, ZERO, ZERO),
        (-ONE, ZERO, ZERO, ZERO),
        (ZERO, ZERO, ZERO, -ONE),
        (ZERO, ZERO, ONE, ZERO),
    )
    assert t.gamma(3) == (
        (ZERO, ZERO, IU, ZERO),
        (ZERO, ZERO, ZERO, IU),
        (IU, ZERO, ZERO, ZERO),
        (ZERO, IU, ZERO, ZERO),
    )
    assert t.gamma(4) == (
        (ZERO, ZERO, ONE, ZERO),
        (ZERO, ZERO, ZERO, ONE),
        (-ONE, ZERO, ZERO, ZERO),
        (ZERO, -ONE, ZERO, ZERO),
    )


def test_volume_element_squares_to_identity():
    t = build_clifford_table(4)
    vol = t.gamma(1)
    for i in (2, 3, 4):
        vol = _matmul(vol, t.gamma(i))
    assert _matmul(vol, vol) == _identity(4)


@pytest.mark.parametrize("n", range(1, 9))
def test_gamma_is_signed_permutation(n):
    """Each generator permutes the basis spinors up to a scalar (bijective)."""
    t = build_clifford_table(n)
    for i in range(1, n + 1):
        g = t.gamma(i)
        for col in range(t.spinor_dim):
            nonzero = [r for r in range(t.spinor_dim) if g[r][col]]
            assert len(nonzero) == 1
        for row in range(t.spinor_dim):
            nonzero = [c for c in range(t.spinor_dim) if g[row][c]]
            assert len(nonzero) == 1


def test_clifford_mul_examples():
    s = Session()
    M = FrameManifold(s, 4)
    t = build_clifford_table(4)
    u0 = Spinor.basis(t.spinor_dim, 0)
    assert clifford_mul(t, M.e(1), clifford_mul(t, M.e(1), u0)) == -1 * u0
    psi = u0 + 2 * Spinor.basis(t.spinor_dim, 3)
    lhs = clifford_mul(t, M.e(1) + M.e(2), psi)
    rhs = clifford_mul(t, M.e(1), psi) + clifford_mul(t, M.e(2), psi)
    assert lhs == rhs
    anti = clifford_mul(t, M.e(1), clifford_mul(t, M.e(2), u0)) + clifford_mul(
        t, M.e(2), clifford_mul(t, M.e(1), u0)
    )
    assert anti == Spinor.zero(t.spinor_dim)


def test_clifford_mul_degree_error():
    s = Session()
    M = FrameManifold(s, 4)
    t = build_clifford_table(4)
    with pytest.raises(DegreeError):
        clifford_mul(t, M.e(1) * M.e(2), Spinor.basis(4, 0))
    assert clifford_mul(t, M.zero(), Spinor.basis(4, 0)) == 0


def test_spinor_algebra():
    s = Session()
    g = s.symbol("g")
    a = Spinor.basis(4, 0)
    b = Spinor.basis(4, 1)
    combo = a * g + b * Fraction(1, 2)
    assert combo.coefficients() == [(0, Poly.from_symbol(g)), (1, Poly.constant(Fraction(1, 2)))]
    assert combo - combo == 0
    assert str(Spinor.zero(4)) == "0"
    assert str(a - b) == "u0-u1"
    assert combo.substitute_scalars({g: Poly.constant(0)}) == b * Fraction(1, 2)
    with pytest.raises(DimensionError):
        a + Spinor.basis(2, 0)
    with pytest.raises(DimensionError):
        Spinor.basis(4, 5)


def test_build_rejects_bad_dimension():
    with pytest.raises(DimensionError):
        build_clifford_table(0)


def test_random_spinor_linearity():
    rng = random.Random(21)
    s = Session()
    M = FrameManifold(s, 5)
    t = build_clifford_table(5)
    for _ in range(50):
        v = M.zero()
        for g in range(1, 6):
            v = v + M.e(g) * Fraction(rng.randint(-2, 2))
        psi = Spinor.zero(t.spinor_dim)
        for k in range(t.spinor_dim):
            psi = psi + Spinor.basis(t.spinor_dim, k) * Fraction(rng.randint(-2, 2))
        phi = Spinor.basis(t.spinor_dim, rng.randrange(t.spinor_dim))
        assert clifford_mul(t, v, psi + phi) == clifford_mul(t, v, psi) + clifford_mul(t, v, phi)
