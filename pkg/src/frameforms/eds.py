"""Linear exterior differential systems on the frame bundle.

The bundle over an n-manifold is modeled as a parallelizable manifold
of dimension n(n+1): generators 1..n are the tautological one-forms
theta^i, generator i*n+j is the connection form omega_ij, and the only
structure equations are d theta^i = sum_j theta^j ∧ omega_ij (the omega
generators are never differentiated).

Integral n-planes are coordinatized by substituting every omega
generator with sum_j p_ij theta^j; the coefficients of the substituted
ideal cut out V_n and are affine in the p symbols exactly when the
system is linear.  Reduced polar equations come from contracting ideal
generators with flag vectors down to degree one and projecting modulo
the theta's; Cartan's test compares the sum of their ranks c_0..c_{n-1}
with the codimension of V_n.
"""

from __future__ import annotations

from dataclasses import dataclass

from .basis import AffineBasis, FormBasis
from .errors import (
    DimensionError,
    FileFormatError,
    FormParseError,
    FrameIndexError,
    InconsistentError,
    NotLinearError,
)
from .exterior import Form, degree, hook, parse_form, substitute_form
from .manifold import FrameManifold
from .scalar import Session

__all__ = [
    "FrameBundle",
    "frame_bundle",
    "is_linear",
    "equations_for_Vn",
    "reduced_polar_equations",
    "cartan_test",
    "CartanReport",
    "load_ideal",
]


class FrameBundle:
    """The frame-bundle manifold of an n-dimensional base, plus Grassmannian symbols."""

    def __init__(self, session: Session, n: int):
        if not 1 <= n <= 9:
            raise DimensionError(f"base dimension must be in 1..9, got {n}")
        self.session = session
        self.n = n
        self.manifold = FrameManifold(session, n * (n + 1))
        for i in range(1, n + 1):
            x = self.manifold.zero()
            for j in range(1, n + 1):
                x = x + self.manifold.e(j) * self.manifold.e(i * n + j)
            self.manifold.declare_d(i, x)
        self.p = {}
        for i in range(n + 1, n * (n + 1) + 1):
            for j in range(1, n + 1):
                self.p[(i, j)] = session.symbol(f"p{i}{j}")
        self._modulo_ic = {i: self.manifold.zero() for i in range(1, n + 1)}

    def theta(self, i: int) -> Form:
        if not 1 <= i <= self.n:
            raise FrameIndexError(f"theta index {i} outside 1..{self.n}")
        return self.manifold.e(i)

    def omega(self, i: int, j: int) -> Form:
        return self.manifold.e(i * self.n + j)

    def d(self, w: Form) -> Form:
        return self.manifold.d(w)

    def parse(self, text: str) -> Form:
        return parse_form(self.manifold, text)

    def modulo_ic(self, w: Form) -> Form:
        """Project modulo the independence forms (theta^i -> 0)."""
        return substitute_form(w, self._modulo_ic)


def frame_bundle(session: Session, n: int) -> FrameBundle:
    return FrameBundle(session, n)


def is_linear(bundle: FrameBundle, ideal) -> bool:
    """True when every monomial of every generator has exactly one omega factor."""
    n = bundle.n
    for form in ideal:
        for mono, _ in form.terms.items():
            if sum(1 for g in mono if g > n) != 1:
                return False
    return True


def equations_for_Vn(bundle: FrameBundle, ideal) -> AffineBasis:
    """Equations cutting out the integral n-planes, as an affine equation set.

    Substitutes every omega generator by its p-combination of thetas and
    collects every monomial coefficient; the size of the returned basis
    is the codimension of V_n.
    """
    n = bundle.n
    rules = {}
    for i in range(n + 1, n * (n + 1) + 1):
        x = bundle.manifold.zero()
        for j in range(1, n + 1):
            x = x + bundle.theta(j) * bundle.p[(i, j)]
        rules[i] = x
    container = AffineBasis()
    for form in ideal:
        substituted = substitute_form(form, rules)
        for _, coeff in substituted.coefficients():
            container.insert(coeff)
    return container


def reduced_polar_equations(bundle: FrameBundle, form: Form, j: int, order=None):
    """All contractions of `form` by flag vectors theta_1..theta_j, reduced.

    Recursion: a degree-1 form is emitted modulo the independence forms;
    otherwise, for j > 0, recurse on the form itself and on its hook
    with the j-th flag vector.
    """
    if not 0 <= j <= bundle.n:
        raise DimensionError(f"flag length {j} outside 0..{bundle.n}")
    if order is None:
        order = list(range(1, bundle.n + 1))
    out = []

    def rec(w, jj):
        if degree(w) == 1:
            out.append(bundle.modulo_ic(w))
        elif jj > 0:
            rec(w, jj - 1)
            rec(hook(bundle.theta(order[jj - 1]), w), jj - 1)

    rec(form, j)
    return out


@dataclass(frozen=True)
class CartanReport:
    c: tuple
    codim: int
    involutive: bool


def cartan_test(bundle: FrameBundle, ideal, flag_order=None) -> CartanReport:
    """Cartan's involutivity test for a linear system at one flag.

    Reports the polar ranks c_j for j = 0..n-1 and the codimension of
    V_n; the verdict is the equality sum(c) == codim.  Raises
    NotLinearError for non-linear ideals and InconsistentError when the
    affine equations admit no integral element.
    """
    ideal = list(ideal)
    if not is_linear(bundle, ideal):
        raise NotLinearError("the ideal is not linear in the connection forms")
    if flag_order is None:
        flag_order = list(range(1, bundle.n + 1))
    else:
        flag_order = list(flag_order)
        if sorted(flag_order) != list(range(1, bundle.n + 1)):
            raise DimensionError(f"flag order must be a permutation of 1..{bundle.n}")
    container = equations_for_Vn(bundle, ideal)
    if container.inconsistent:
        raise InconsistentError("the equations for V_n are contradictory")
    codim = container.size()
    c = []
    for j in range(bundle.n):
        polar = FormBasis(bundle.manifold)
        for form in ideal:
            for eq in reduced_polar_equations(bundle, form, j, flag_order):
                polar.insert(eq)
        c.append(polar.size())
    return CartanReport(tuple(c), codim, sum(c) == codim)


def load_ideal(bundle: FrameBundle, text: str):
    """Parse an ideal file: `d: <form>` lines differentiate a theta-form,

    bare `<form>` lines are taken verbatim; all indices must be theta
    indices.  '#' starts a comment.
    """
    forms = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("d:"):
            body, differentiate = line[2:].strip(), True
        else:
            body, differentiate = line, False
        try:
            form = bundle.parse(body)
        except (FormParseError, FrameIndexError) as exc:
            raise FileFormatError(lineno, str(exc)) from None
        bad = sorted({g for mono in form.terms for g in mono if g > bundle.n})
        if bad:
            raise FileFormatError(
                lineno, f"index {bad[0]} is not a theta index (base dimension {bundle.n})"
            )
        forms.append(bundle.d(form) if differentiate else form)
    return forms
