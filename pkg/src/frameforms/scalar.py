"""Exact scalar arithmetic: symbols, Gaussian rationals, polynomials.

The scalar field of the whole engine is Q(i), represented exactly by
pairs of Fractions.  Polynomials are sparse maps from multi-degree
monomials over session symbols to Gaussian-rational coefficients, kept
in a unique canonical form (zero coefficients are never stored).

Symbols are created through a Session, which assigns a strictly
increasing creation index; the index is the identity of the symbol and
the total order used everywhere canonical ordering is needed.  A
session and every object created in it are confined to one thread at a
time.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InconsistentError, NonLinearError

__all__ = [
    "Session",
    "Symbol",
    "GaussianRational",
    "I",
    "Poly",
    "LinearSolution",
    "linear_solve",
]


class GaussianRational:
    """An exact complex number re + im*i with rational re, im.

    Floats are rejected outright: everything in the engine is exact.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("floating point is not supported; use Fraction")
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        im = _imag_str(self.im)
        return f"{self.re}+{im}" if self.im > 0 else f"{self.re}{im}"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


def _imag_str(im):
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}*i"


I = GaussianRational(0, 1)

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


class Symbol:
    """A named atom identified by its per-session creation index."""

    __slots__ = ("name", "index")

    def __init__(self, name, index):
        self.name = name
        self.index = index

    def __eq__(self, other):
        if isinstance(other, Symbol):
            return self.index == other.index
        return NotImplemented

    def __hash__(self):
        return hash(self.index)

    def __lt__(self, other):
        return self.index < other.index

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"Symbol({self.name!r}, {self.index})"

    # Arithmetic on symbols promotes to Poly so that expressions read
    # naturally in user code and tests.
    def _p(self):
        return Poly.from_symbol(self)

    def __add__(self, other):
        return self._p() + other

    __radd__ = __add__

    def __sub__(self, other):
        return self._p() - other

    def __rsub__(self, other):
        return -self._p() + other

    def __mul__(self, other):
        return self._p() * other

    __rmul__ = __mul__

    def __neg__(self):
        return -self._p()


class Session:
    """Registry that hands out symbols with unique creation indices.

    All objects of one computation (symbols, manifolds, connections)
    must come from the same session; the creation index provides the
    stable total order behind every canonical ordering in the engine.
    """

    def __init__(self):
        self._counter = itertools.count()

    def next_index(self):
        return next(self._counter)

    def symbol(self, name) -> Symbol:
        return Symbol(name, self.next_index())

    def symbols(self, names) -> list[Symbol]:
        """Create several symbols at once; names is a whitespace-separated string."""
        return [self.symbol(n) for n in names.split()]


# A monomial is a tuple of (Symbol, exponent) pairs sorted by symbol
# index, exponents >= 1.  The empty tuple is the constant monomial.
def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        s1, e1 = m1[i]
        s2, e2 = m2[j]
        if s1.index == s2.index:
            out.append((s1, e1 + e2))
            i += 1
            j += 1
        elif s1.index < s2.index:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


class Poly:
    """A multivariate polynomial over GaussianRational in canonical form."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms is trusted to be canonical; use the constructors below.
        self.terms = terms or {}

    @staticmethod
    def _make(raw):
        return Poly({m: c for m, c in raw.items() if c})

    @classmethod
    def zero(cls):
        return cls({})

    @classmethod
    def constant(cls, c) -> "Poly":
        c = _as_gaussian(c)
        return cls({(): c} if c else {})

    @classmethod
    def from_symbol(cls, sym: Symbol) -> "Poly":
        return cls({((sym, 1),): _ONE})

    @staticmethod
    def _coerce(x):
        if isinstance(x, Poly):
            return x
        if isinstance(x, Symbol):
            return Poly.from_symbol(x)
        if isinstance(x, (int, Fraction, GaussianRational)):
            return Poly.constant(x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m, _ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                c = out.get(m, _ZERO) + c1 * c2
                if c:
                    out[m] = c
                else:
                    out.pop(m, None)
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = Poly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    __hash__ = None

    def is_constant(self):
        return not self.terms or set(self.terms) == {()}

    def constant_value(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self}")
        return self.terms.get((), _ZERO)

    def free_symbols(self):
        out = set()
        for m in self.terms:
            for s, _ in m:
                out.add(s)
        return out

    def total_degree(self):
        if not self.terms:
            return 0
        return max(sum(e for _, e in m) for m in self.terms)

    def substitute(self, rules: dict) -> "Poly":
        """Simultaneous (non-iterated) substitution of symbols by polynomials."""
        if not rules:
            return self
        out = Poly.zero()
        for m, c in self.terms.items():
            term = Poly.constant(c)
            for s, e in m:
                rep = rules.get(s)
                base = rep if rep is not None else Poly.from_symbol(s)
                term = term * base**e
            out = out + term
        return out

    def real_imag(self):
        """Split into (re, im) with symbols treated as real-valued quantities."""
        re = {}
        im = {}
        for m, c in self.terms.items():
            if c.re:
                re[m] = GaussianRational(c.re)
            if c.im:
                im[m] = GaussianRational(c.im)
        return Poly(re), Poly(im)

    def linear_split(self, unknowns):
        """Split into (coefficients on unknowns, unknown-free rest).

        Requires the polynomial to be affine in the unknowns with
        constant coefficients; raises NonLinearError otherwise.
        """
        coeffs = {}
        rest = {}
        for m, c in self.terms.items():
            hit = [(s, e) for s, e in m if s in unknowns]
            if not hit:
                rest[m] = c
                continue
            if len(hit) > 1 or hit[0][1] > 1:
                raise NonLinearError(f"term {_mono_str(m)} is not linear in the unknowns")
            if len(m) > 1:
                raise NonLinearError(
                    f"unknown {hit[0][0]} carries a parametric coefficient in {_mono_str(m)}"
                )
            s = hit[0][0]
            coeffs[s] = coeffs.get(s, _ZERO) + c
        return {s: c for s, c in coeffs.items() if c}, Poly(rest)

    def _sorted_terms(self):
        def key(item):
            m, _ = item
            return (-sum(e for _, e in m), tuple((s.index, e) for s, e in m))

        return sorted(self.terms.items(), key=key)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self._sorted_terms():
            mono = _mono_str(m)
            if not mono:
                t = str(c)
            elif c == _ONE:
                t = mono
            elif c == -_ONE:
                t = "-" + mono
            else:
                cs = str(c)
                if c.re and c.im:
                    cs = f"({cs})"
                t = f"{cs}*{mono}"
            if parts and not t.startswith("-"):
                parts.append("+")
            parts.append(t)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self})"


def _mono_str(m):
    return "*".join(s.name if e == 1 else f"{s.name}^{e}" for s, e in m)


def _as_gaussian(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x)


def as_poly(x) -> Poly:
    p = Poly._coerce(x)
    if p is None:
        raise TypeError(f"cannot interpret {x!r} as a scalar")
    return p


@dataclass(frozen=True)
class LinearSolution:
    """Result of linear_solve: assignments plus the leftover free unknowns."""

    assignments: dict
    free: frozenset = field(default_factory=frozenset)

    def apply(self, p: Poly) -> Poly:
        return p.substitute(self.assignments)


def linear_solve(equations, unknowns) -> LinearSolution:
    """Solve a linear system over Q(i) by exact Gaussian elimination.

    Each equation must be affine in the unknowns with constant
    coefficients on the unknowns; parameters (other symbols) may appear
    only in the unknown-free part.  Pivots are chosen deterministically:
    the first equation, in input order, with a nonzero coefficient on
    the earliest-created unsolved unknown.  Underdetermined systems
    leave the unsolved unknowns in `free`; an equation that reduces to a
    nonzero constant or a nonzero parameter-only polynomial raises
    InconsistentError.
    """
    unknown_list = sorted(set(unknowns), key=lambda s: s.index)
    unknown_set = set(unknown_list)
    rows = []
    for eq in equations:
        p = as_poly(eq)
        coeffs, rest = p.linear_split(unknown_set)
        rows.append([coeffs, rest, True])

    exprs = {}
    order = []
    for u in unknown_list:
        pivot = None
        for row in rows:
            if row[2] and u in row[0]:
                pivot = row
                break
        if pivot is None:
            continue
        coeffs, rest, _ = pivot
        cu = coeffs.pop(u)
        expr_coeffs = {v: -(cv / cu) for v, cv in coeffs.items()}
        expr_rest = rest * (-_ONE / cu)
        pivot[2] = False
        for row in rows:
            if not row[2]:
                continue
            c = row[0].pop(u, None)
            if c is None:
                continue
            for v, cv in expr_coeffs.items():
                s = row[0].get(v, _ZERO) + c * cv
                if s:
                    row[0][v] = s
                else:
                    row[0].pop(v, None)
            row[1] = row[1] + expr_rest * c
        exprs[u] = (expr_coeffs, expr_rest)
        order.append(u)

    for coeffs, rest, active in rows:
        if active and rest:
            raise InconsistentError(f"equation reduces to {rest} = 0")

    assignments = {}
    for u in reversed(order):
        expr_coeffs, expr_rest = exprs[u]
        p = expr_rest
        for v, c in expr_coeffs.items():
            p = p + (assignments[v] if v in assignments else Poly.from_symbol(v)) * c
        assignments[u] = p
    free = frozenset(u for u in unknown_list if u not in assignments)
    return LinearSolution(assignments, free)
