import pytest

from frameforms import (
    DimensionError,
    FileFormatError,
    FormBasis,
    GaussianRational,
    NotLinearError,
    Session,
    cartan_test,
    degree,
    equations_for_Vn,
    frame_bundle,
    is_linear,
    load_ideal,
    reduced_polar_equations,
    wedge,
)
from frameforms.cli import G2_PHI, G2_STAR_PHI, g2_ideal


def _g2():
    session = Session()
    bundle = frame_bundle(session, 7)
    return bundle, g2_ideal(bundle)


def test_frame_bundle_structure():
    s = Session()
    P = frame_bundle(s, 7)
    assert P.manifold.dim == 56
    expected = P.manifold.zero()
    for j in range(1, 8):
        expected = expected + P.theta(j) * P.manifold.e(7 + j)
    assert P.d(P.theta(1)) == expected
    assert P.omega(1, 3) == P.manifold.e(10)


def test_frame_bundle_small_dimensions():
    s = Session()
    P2 = frame_bundle(s, 2)
    M = P2.manifold
    assert P2.d(P2.theta(1)) == M.e(1) * M.e(3) + M.e(2) * M.e(4)
    P1 = frame_bundle(Session(), 1)
    assert P1.d(P1.theta(1)) == P1.manifold.e(1) * P1.manifold.e(2)
    with pytest.raises(DimensionError):
        frame_bundle(Session(), 0)
    with pytest.raises(DimensionError):
        frame_bundle(Session(), 10)


def test_p_grid_size():
    P = frame_bundle(Session(), 7)
    assert len(P.p) == 7 * 7 * 7
    assert str(P.p[(8, 1)]) == "p81"


def test_is_linear_examples():
    P, ideal = _g2()
    assert is_linear(P, ideal)
    assert not is_linear(P, [P.theta(1) * P.theta(2)])
    assert not is_linear(P, [P.omega(1, 1) * P.omega(1, 2)])


def test_equations_for_vn_g2():
    P, ideal = _g2()
    container = equations_for_Vn(P, ideal)
    assert container.size() == 49
    assert not container.inconsistent
    # for the linear system every equation is homogeneous linear in p
    for eq in container.elements:
        assert eq.total_degree() == 1
        assert not eq.terms.get(())


def test_equations_for_vn_trivial_cases():
    P = frame_bundle(Session(), 2)
    assert equations_for_Vn(P, []).size() == 0
    # the substituted 3-form in two thetas vanishes identically
    ideal = [P.d(P.theta(1) * P.theta(2))]
    assert equations_for_Vn(P, ideal).size() == 0


def test_equations_for_vn_nonlinear_propagates():
    from frameforms import NonLinearError

    P = frame_bundle(Session(), 2)
    with pytest.raises(NonLinearError):
        equations_for_Vn(P, [P.omega(1, 1) * P.omega(1, 2)])


def test_reduced_polar_equations_g2():
    P, ideal = _g2()
    # j = 3: a single independent polar equation from d(phi)
    basis = FormBasis(P.manifold)
    for form in ideal:
        for eq in reduced_polar_equations(P, form, 3):
            basis.insert(eq)
    assert basis.size() == 1
    # j = 0 on a form of degree > 1 emits nothing
    assert reduced_polar_equations(P, ideal[0], 0) == []
    # j = 6 gives the 28-dimensional polar space
    basis6 = FormBasis(P.manifold)
    for form in ideal:
        for eq in reduced_polar_equations(P, form, 6):
            basis6.insert(eq)
    assert basis6.size() == 28


def test_polar_recursion_small_case():
    """The double hook of d(theta^12) spans omega_11 + omega_22 modulo theta.

    The recursion contracts the highest flag vector first, so the sign
    of the emitted one-form is the opposite of the handwritten
    theta_1-then-theta_2 composition; the span is what c_j measures.
    """
    P = frame_bundle(Session(), 2)
    form = P.d(P.theta(1) * P.theta(2))
    assert degree(form) == 3
    assert form == -wedge(P.theta(1) * P.theta(2), P.omega(1, 1) + P.omega(2, 2))
    out = reduced_polar_equations(P, form, 2)
    nonzero = [w for w in out if w]
    assert len(nonzero) == 1
    trace = P.omega(1, 1) + P.omega(2, 2)
    assert nonzero[0] == trace or nonzero[0] == -trace
    span = FormBasis(P.manifold)
    span.insert(nonzero[0])
    assert not span.insert(trace)


def test_polar_equations_ignore_theta_multiples():
    """Adding a pure-theta form to a generator leaves the polar ranks alone."""
    P, ideal = _g2()
    noisy = [
        ideal[0] + (P.theta(1) * P.theta(2) * P.theta(3) * P.theta(4)) * 5,
        ideal[1],
    ]
    for j in range(8):
        clean = FormBasis(P.manifold)
        dirty = FormBasis(P.manifold)
        for form in ideal:
            for eq in reduced_polar_equations(P, form, j):
                clean.insert(eq)
        for form in noisy:
            for eq in reduced_polar_equations(P, form, j):
                dirty.insert(eq)
        assert clean.size() == dirty.size()


def test_cartan_g2():
    P, ideal = _g2()
    report = cartan_test(P, ideal)
    assert report.c == (0, 0, 0, 1, 5, 15, 28)
    assert report.codim == 49
    assert report.involutive


def test_cartan_empty_ideal():
    P = frame_bundle(Session(), 3)
    report = cartan_test(P, [])
    assert report.c == (0, 0, 0)
    assert report.codim == 0
    assert report.involutive


def test_cartan_deterministic():
    P, ideal = _g2()
    assert cartan_test(P, ideal) == cartan_test(P, ideal)


def test_cartan_c_monotone():
    P, ideal = _g2()
    report = cartan_test(P, ideal)
    assert all(a <= b for a, b in zip(report.c, report.c[1:]))


def test_cartan_flag_permutation():
    P, ideal = _g2()
    report = cartan_test(P, ideal, flag_order=[7, 6, 5, 4, 3, 2, 1])
    assert report.codim == 49
    assert sum(report.c) == 49 and report.involutive
    with pytest.raises(DimensionError):
        cartan_test(P, ideal, flag_order=[1, 1, 2, 3, 4, 5, 6])


def test_cartan_requires_linearity():
    P = frame_bundle(Session(), 2)
    with pytest.raises(NotLinearError):
        cartan_test(P, [P.theta(1) * P.theta(2)])


def test_load_ideal():
    s = Session()
    P = frame_bundle(s, 7)
    text = f"# the G2 system\nd: {G2_PHI}\nd: {G2_STAR_PHI}\n"
    ideal = load_ideal(P, text)
    assert len(ideal) == 2
    assert ideal == g2_ideal(P)

    P2 = frame_bundle(Session(), 2)
    verbatim = load_ideal(P2, "12\n")
    assert verbatim == [P2.theta(1) * P2.theta(2)]
    assert load_ideal(P2, "# nothing\n\n") == []


def test_load_ideal_errors():
    P = frame_bundle(Session(), 2)
    err = None
    try:
        load_ideal(P, "12\n3\n")  # 3 is not a theta index when n = 2
    except FileFormatError as exc:
        err = exc
    assert err is not None and err.line == 2
    with pytest.raises(FileFormatError):
        load_ideal(P, "d: 1x\n")


def test_vn_equations_affine_property():
    """Every emitted equation is affine in the p symbols for linear ideals."""
    P, ideal = _g2()
    container = equations_for_Vn(P, ideal)
    for eq in container.elements:
        assert eq.total_degree() <= 1


def _echelon_rank_dense(rows):
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = col = 0
    while col < ncols and rank < len(rows):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def test_g2_numbers_against_independent_echelon():
    """Recompute the polar rank and codimension with a plain dense echelon."""
    zero = GaussianRational(0)
    P, ideal = _g2()
    polar = []
    for form in ideal:
        polar.extend(w for w in reduced_polar_equations(P, form, 6) if w)
    keys = sorted({m for w in polar for m in w.terms})
    dense = [
        [w.terms[k].constant_value() if k in w.terms else zero for k in keys]
        for w in polar
    ]
    assert _echelon_rank_dense(dense) == 28

    eqs = equations_for_Vn(P, ideal).elements
    syms = sorted({s for eq in eqs for s in eq.free_symbols()}, key=lambda s: s.index)
    pos = {s: i for i, s in enumerate(syms)}
    rows = []
    for eq in eqs:
        row = [zero] * len(syms)
        for mono, c in eq.terms.items():
            row[pos[mono[0][0]]] = c
        rows.append(row)
    assert _echelon_rank_dense(rows) == 49
