"""Flag-preserving independent generating sets with lazy dual bases.

A Basis stores the expressions it retains verbatim, in insertion order;
dependence is decided against a separately maintained reduced-echelon
shadow, so the flag span{x1..xk} of the first k retained inputs is
never disturbed.  The first call to components() or dual_basis() sets
up the simple-element set S, extends the retained elements to a basis
of span S, and inverts the pairing matrix (a_j_alpha); the inverse and
the dual basis stay cached until the next mutation.

Two expression spaces are supported: differential forms (simple
elements are wedge monomials of one manifold) and polynomials of degree
at most one (simple elements are symbols, plus the constant coordinate
used by AffineBasis).
"""

from __future__ import annotations

from .errors import (
    FrameMismatchError,
    NonConstantCoefficientError,
    NonLinearError,
    NotInSpanError,
)
from .exterior import Form
from .scalar import GaussianRational, Poly, as_poly

__all__ = ["Basis", "FormBasis", "SymbolBasis", "AffineBasis", "CONST"]


class _ConstKey:
    """Sentinel simple element for the constant coordinate of affine systems."""

    __slots__ = ()

    def __repr__(self):
        return "CONST"


CONST = _ConstKey()

_ONE = GaussianRational(1)


class _FormSpace:
    def __init__(self, manifold):
        self.manifold = manifold

    def decompose(self, x):
        if not isinstance(x, Form):
            x = Form.scalar(self.manifold, x)
        if x.manifold is not self.manifold:
            raise FrameMismatchError("form belongs to a different manifold")
        return dict(x.terms)

    def sort_key(self, key):
        return (len(key), key)

    def build(self, pairs):
        return Form._make(self.manifold, {k: _as_poly_coeff(c) for k, c in pairs})


class _PolySpace:
    def decompose(self, x):
        p = as_poly(x)
        out = {}
        for mono, c in p.terms.items():
            if not mono:
                out[CONST] = Poly.constant(c)
            elif len(mono) == 1 and mono[0][1] == 1:
                out[mono[0][0]] = Poly.constant(c)
            else:
                raise NonLinearError(f"{p} is not affine in its symbols")
        return out

    def sort_key(self, key):
        if key is CONST:
            return (1, 0)
        return (0, key.index)

    def build(self, pairs):
        out = Poly.zero()
        for k, c in pairs:
            c = _as_poly_coeff(c)
            out = out + (c if k is CONST else c * Poly.from_symbol(k))
        return out


def _as_poly_coeff(c):
    return c if isinstance(c, Poly) else Poly.constant(c)


def _constant_vec(dec):
    out = {}
    for k, p in dec.items():
        if not p.is_constant():
            raise NonConstantCoefficientError(
                "basis elements must have constant coefficients on simple elements"
            )
        v = p.constant_value()
        if v:
            out[k] = v
    return out


class Basis:
    """Ordered independent generating set over one expression space."""

    def __init__(self, space):
        self._space = space
        self._elements = []
        self._rows = {}  # pivot key -> fully reduced row (dict key -> GaussianRational)
        self._cache = None
        self.setup_count = 0
        self.setup_ops = 0

    @property
    def elements(self):
        return tuple(self._elements)

    def __len__(self):
        return len(self._elements)

    def size(self):
        return len(self._elements)

    def __iter__(self):
        return iter(self._elements)

    def __getitem__(self, i):
        return self._elements[i]

    def _reduce(self, vec):
        v = dict(vec)
        for pk, row in self._rows.items():
            c = v.get(pk)
            if not c:
                continue
            for k, rv in row.items():
                s = v.get(k, 0) - c * rv
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
        return v

    def _insert_reduced(self, x, red):
        pivot = min(red, key=self._space.sort_key)
        inv = red[pivot]
        row = {k: v / inv for k, v in red.items()}
        for pk, prow in self._rows.items():
            c = prow.get(pivot)
            if not c:
                continue
            for k, rv in row.items():
                s = prow.get(k, 0) - c * rv
                if s:
                    prow[k] = s
                else:
                    prow.pop(k, None)
        self._rows[pivot] = row
        self._elements.append(x)
        self._cache = None

    def insert(self, x) -> bool:
        """Append x verbatim when independent of the current span."""
        vec = _constant_vec(self._space.decompose(x))
        red = self._reduce(vec)
        if not red:
            return False
        self._insert_reduced(x, red)
        return True

    # -- lazy dual/component machinery ------------------------------------

    def _setup(self):
        if self._cache is not None:
            return self._cache
        decs = [_constant_vec(self._space.decompose(x)) for x in self._elements]
        key = self._space.sort_key
        simple = sorted({k for d in decs for k in d}, key=key)
        m = len(self._elements)
        n = len(simple)
        # Extend the retained elements to a basis of span S with unit
        # vectors of S, preserving the leading block.
        scratch = {pk: dict(row) for pk, row in self._rows.items()}
        extension = []
        for alpha in simple:
            if m + len(extension) == n:
                break
            v = {alpha: _ONE}
            for pk, row in scratch.items():
                c = v.get(pk)
                if not c:
                    continue
                for k, rv in row.items():
                    s = v.get(k, 0) - c * rv
                    if s:
                        v[k] = s
                    else:
                        v.pop(k, None)
            if not v:
                continue
            pivot = min(v, key=key)
            inv = v[pivot]
            scratch[pivot] = {k: val / inv for k, val in v.items()}
            extension.append(alpha)
            decs.append({alpha: _ONE})
        a = [[dec.get(alpha, 0) for alpha in simple] for dec in decs]
        b = self._invert(a)
        pos = {alpha: idx for idx, alpha in enumerate(simple)}
        duals = []
        for k in range(m):
            pairs = [(simple[ai], b[ai][k]) for ai in range(n) if b[ai][k]]
            duals.append(self._space.build(pairs))
        self._cache = (simple, pos, m, n, b, duals)
        self.setup_count += 1
        return self._cache

    def _invert(self, a):
        n = len(a)
        zero = GaussianRational(0)
        work = [
            [GaussianRational._coerce(v) for v in row]
            + [(_ONE if j == i else zero) for j in range(n)]
            for i, row in enumerate(a)
        ]
        ops = 0
        for col in range(n):
            pivot_row = None
            for r in range(col, n):
                if work[r][col]:
                    pivot_row = r
                    break
            if pivot_row is None:
                raise NonConstantCoefficientError("pairing matrix is singular")
            work[col], work[pivot_row] = work[pivot_row], work[col]
            inv = _ONE / work[col][col]
            work[col] = [v * inv for v in work[col]]
            ops += 2 * n
            for r in range(n):
                if r == col:
                    continue
                c = work[r][col]
                if not c:
                    continue
                prow = work[col]
                work[r] = [v - c * pv for v, pv in zip(work[r], prow)]
                ops += 2 * n
        self.setup_ops += ops
        return [row[n:] for row in work]

    def components(self, x):
        """Exact coordinates of x in the stored basis (lazy setup)."""
        simple, pos, m, n, b, _ = self._setup()
        dec = self._space.decompose(x)
        c = [Poly.zero()] * n
        for k, p in dec.items():
            if not p:
                continue
            if k not in pos:
                raise NotInSpanError(f"{x} pairs with a simple element outside the basis span")
            c[pos[k]] = p
        comps = []
        for j in range(n):
            s = Poly.zero()
            for ai in range(n):
                if c[ai] and b[ai][j]:
                    s = s + c[ai] * b[ai][j]
            comps.append(s)
        if any(comps[j] for j in range(m, n)):
            raise NotInSpanError(f"{x} is not in the span of the basis")
        return comps[:m]

    def dual_basis(self):
        """The dual sequence x^1..x^m with pairing(x^i, x_j) = delta_ij."""
        if not self._elements:
            raise ValueError("dual_basis of an empty basis")
        return list(self._setup()[5])


class FormBasis(Basis):
    """Basis of differential forms over one manifold."""

    def __init__(self, manifold):
        super().__init__(_FormSpace(manifold))
        self.manifold = manifold


class SymbolBasis(Basis):
    """Basis of expressions linear in symbols (the constant counts as a coordinate)."""

    def __init__(self):
        super().__init__(_PolySpace())


class AffineBasis(SymbolBasis):
    """Rank tracker for affine equation sets with contradiction detection."""

    def __init__(self):
        super().__init__()
        self.inconsistent = False

    def insert(self, x) -> bool:
        vec = _constant_vec(self._space.decompose(x))
        red = self._reduce(vec)
        if not red:
            return False
        if set(red) == {CONST}:
            self.inconsistent = True
        self._insert_reduced(x, red)
        return True
