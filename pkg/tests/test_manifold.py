import random
from fractions import Fraction

import pytest

from frameforms import (
    DegreeError,
    DimensionError,
    FileFormatError,
    FrameManifold,
    MissingDeclarationError,
    RedeclarationError,
    Session,
    load_manifold,
    parse_form,
    print_form,
)


def nilpotent4(session):
    """de1 = de2 = 0, de3 = e12, de4 = e13."""
    M = FrameManifold(session, 4)
    M.declare_d(1, 0)
    M.declare_d(2, 0)
    M.declare_d(3, M.e(1) * M.e(2))
    M.declare_d(4, M.e(1) * M.e(3))
    return M


def iwasawa6(session):
    M = FrameManifold(session, 6)
    for i in (1, 2, 3, 4):
        M.declare_d(i, 0)
    M.declare_d(5, M.e(1) * M.e(3) + M.e(4) * M.e(2))
    M.declare_d(6, M.e(1) * M.e(4) + M.e(2) * M.e(3))
    return M


def test_new_manifold():
    M = FrameManifold(Session(), 4)
    assert [print_form(g) for g in M.generators()] == ["e1", "e2", "e3", "e4"]
    assert FrameManifold(Session(), 1).dim == 1
    with pytest.raises(DimensionError):
        FrameManifold(Session(), 0)


def test_declare_d_examples():
    s = Session()
    M = FrameManifold(s, 4)
    M.declare_d(3, M.e(1) * M.e(2))
    assert M.d_table[3] == M.e(1) * M.e(2)
    M.declare_d(1, 0)
    assert M.d_table[1] == 0
    with pytest.raises(DegreeError):
        M.declare_d(4, M.e(1))
    with pytest.raises(RedeclarationError):
        M.declare_d(3, M.e(1) * M.e(4))
    # declaring through the generator form also works
    M.declare_d(M.e(2), 0)
    assert M.d_table[2] == 0


def test_d_examples():
    s = Session()
    M = nilpotent4(s)
    assert M.d(M.e(4)) == M.e(1) * M.e(3)
    assert M.d(M.e(1) * M.e(4)) == 0
    s2 = Session()
    W = iwasawa6(s2)
    assert W.d(W.e(4) * W.e(5)) == -parse_form(W, "134")


def test_d_missing_declaration():
    M = FrameManifold(Session(), 3)
    M.declare_d(1, 0)
    assert M.d(M.e(1)) == 0
    with pytest.raises(MissingDeclarationError):
        M.d(M.e(2))


def test_d_symbols_are_constants():
    s = Session()
    M = nilpotent4(s)
    g = s.symbol("g")
    assert M.d(M.e(4) * g) == (M.e(1) * M.e(3)) * g
    assert M.d(M.scalar(g)) == 0


def test_lie_bracket_examples():
    M = nilpotent4(Session())
    e = M.e
    assert M.lie_bracket(e(1), e(2)) == -e(3)
    assert M.lie_bracket(e(1), e(1)) == 0
    assert M.lie_bracket(e(1), e(3)) == -e(4)
    assert M.lie_bracket(e(2), e(3)) == 0


def test_lie_derivative_examples():
    M = nilpotent4(Session())
    e = M.e
    assert M.lie_derivative(e(1), e(3)) == e(2)
    assert M.lie_derivative(e(1), M.scalar(5)) == 0
    for k in range(1, 5):
        assert M.lie_derivative(e(4), e(k)) == 0


def _rand_form(rng, M, deg, nterms=2):
    out = M.zero()
    for _ in range(nterms):
        mono = rng.sample(range(1, M.dim + 1), deg)
        term = M.scalar(Fraction(rng.randint(-3, 3), rng.randint(1, 2)))
        for g in mono:
            term = term * M.e(g)
        out = out + term
    return out


@pytest.mark.parametrize("builder", [nilpotent4, iwasawa6])
def test_d_squared_zero(builder):
    rng = random.Random(3)
    M = builder(Session())
    for i in range(1, M.dim + 1):
        assert M.d(M.d(M.e(i))) == 0
    for _ in range(100):
        w = _rand_form(rng, M, rng.randint(1, 3), 3)
        assert M.d(M.d(w)) == 0


@pytest.mark.parametrize("builder", [nilpotent4, iwasawa6])
def test_jacobi_identity(builder):
    rng = random.Random(4)
    M = builder(Session())

    def bracket(a, b):
        return M.lie_bracket(a, b)

    for _ in range(50):
        X = _rand_form(rng, M, 1, 2)
        Y = _rand_form(rng, M, 1, 2)
        Z = _rand_form(rng, M, 1, 2)
        total = (
            bracket(X, bracket(Y, Z))
            + bracket(Y, bracket(Z, X))
            + bracket(Z, bracket(X, Y))
        )
        assert total == 0


@pytest.mark.parametrize("builder", [nilpotent4, iwasawa6])
def test_lie_derivative_commutes_with_d(builder):
    rng = random.Random(5)
    M = builder(Session())
    for _ in range(50):
        X = _rand_form(rng, M, 1, 2)
        w = _rand_form(rng, M, rng.randint(1, 2), 2)
        assert M.lie_derivative(X, M.d(w)) == M.d(M.lie_derivative(X, w))


IWASAWA_FILE = """
dim 6
# the two non-closed generators
d 5 = 13+42
d 6 = 14+23
"""


def test_load_manifold():
    M = load_manifold(Session(), IWASAWA_FILE)
    assert M.dim == 6
    assert M.d(M.e(5)) == M.e(1) * M.e(3) + M.e(4) * M.e(2)
    assert M.d(M.e(1)) == 0  # omitted indices default to zero
    assert M.d(M.e(4) * M.e(5)) == -parse_form(M, "134")


def test_load_manifold_errors():
    s = Session()
    with pytest.raises(FileFormatError):
        load_manifold(s, "d 1 = 12\n")  # d before dim
    with pytest.raises(FileFormatError):
        load_manifold(s, "dim 4\ndim 4\n")
    with pytest.raises(FileFormatError):
        load_manifold(s, "dim 4\nwhatever\n")
    with pytest.raises(FileFormatError):
        load_manifold(s, "")
    err = None
    try:
        load_manifold(s, "dim 4\nd 3 = 1x\n")
    except FileFormatError as exc:
        err = exc
    assert err is not None and err.line == 2
    with pytest.raises(FileFormatError):
        load_manifold(s, "dim 4\nd 3 = 15\n")  # index above dim
    with pytest.raises(FileFormatError):
        load_manifold(s, "dim 0\n")
