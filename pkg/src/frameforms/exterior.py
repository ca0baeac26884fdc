"""The exterior algebra over frame generators.

A Form is a Poly-weighted sum of wedge monomials; a monomial is a
strictly increasing tuple of 1-based generator indices of its owner
manifold, so every stored form is fully normalized and equality is
dictionary equality.  The canonical pairing makes the monomials an
orthonormal set, which is what lets one-forms double as vector fields
throughout the engine.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    DegreeError,
    FormParseError,
    FrameIndexError,
    FrameMismatchError,
    MixedDegreeError,
)
from .scalar import GaussianRational, Poly, Symbol, as_poly

__all__ = [
    "Form",
    "wedge",
    "hook",
    "pairing",
    "degree",
    "coefficients",
    "substitute_form",
    "parse_form",
    "print_form",
]


def _merge_indices(m1, m2):
    """Merge two strictly increasing index tuples, tracking the sign.

    Returns (merged, sign) with sign in {1, -1}, or (None, 0) when an
    index repeats (the wedge is zero).
    """
    if not m1:
        return m2, 1
    if not m2:
        return m1, 1
    out = []
    sign = 1
    i = j = 0
    n1 = len(m1)
    while i < n1 and j < len(m2):
        a, b = m1[i], m2[j]
        if a == b:
            return None, 0
        if a < b:
            out.append(a)
            i += 1
        else:
            out.append(b)
            j += 1
            if (n1 - i) % 2:
                sign = -sign
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out), sign


def _mono_key(mono):
    return (len(mono), mono)


class Form:
    """A graded exterior-algebra element over one manifold's frame."""

    __slots__ = ("manifold", "terms")

    def __init__(self, manifold, terms=None):
        self.manifold = manifold
        self.terms = terms or {}

    @staticmethod
    def _make(manifold, raw):
        return Form(manifold, {m: c for m, c in raw.items() if c})

    @classmethod
    def zero(cls, manifold):
        return cls(manifold, {})

    @classmethod
    def scalar(cls, manifold, value):
        p = as_poly(value)
        return cls(manifold, {(): p} if p else {})

    @classmethod
    def generator(cls, manifold, i):
        if not 1 <= i <= manifold.dim:
            raise FrameIndexError(f"generator index {i} outside 1..{manifold.dim}")
        return cls(manifold, {(i,): Poly.constant(1)})

    def _coerce(self, x):
        if isinstance(x, Form):
            if x.manifold is not self.manifold:
                raise FrameMismatchError("forms belong to different manifolds")
            return x
        if isinstance(x, (int, Fraction, GaussianRational, Poly, Symbol)):
            return Form.scalar(self.manifold, x)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Form(self.manifold, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return Form(self.manifold, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        """Wedge with another form; scalars multiply coefficients."""
        if isinstance(other, Form):
            return wedge(self, other)
        p = as_poly(other)
        if not p:
            return Form.zero(self.manifold)
        return Form._make(self.manifold, {m: c * p for m, c in self.terms.items()})

    def __rmul__(self, other):
        # Scalars commute past forms; Form*Form never reaches here.
        return self.__mul__(other)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Form):
            return self.manifold is other.manifold and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational, Poly, Symbol)):
            p = as_poly(other)
            if not p:
                return not self.terms
            return self.terms == {(): p}
        return NotImplemented

    __hash__ = None

    def degree(self):
        return degree(self)

    def is_homogeneous(self, k):
        return all(len(m) == k for m in self.terms)

    def coefficient(self, mono) -> Poly:
        return self.terms.get(tuple(mono), Poly.zero())

    def scalar_part(self) -> Poly:
        return self.terms.get((), Poly.zero())

    def coefficients(self):
        return coefficients(self)

    def substitute_scalars(self, rules: dict) -> "Form":
        """Apply a symbol substitution to every coefficient polynomial."""
        if not rules:
            return self
        return Form._make(
            self.manifold, {m: c.substitute(rules) for m, c in self.terms.items()}
        )

    def __str__(self):
        return print_form(self)

    def __repr__(self):
        return f"Form({print_form(self)})"


def wedge(a: Form, b: Form) -> Form:
    """Exterior product; bilinear over Poly and graded-anticommutative."""
    if b.manifold is not a.manifold:
        raise FrameMismatchError("forms belong to different manifolds")
    out = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            m, sign = _merge_indices(m1, m2)
            if not sign:
                continue
            c = c1 * c2
            if sign < 0:
                c = -c
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return Form(a.manifold, out)


def hook(v: Form, w: Form) -> Form:
    """Interior product v ⌟ w for a degree-1 (or zero) first argument.

    Extends ``<v, e^j>`` as a degree -1 antiderivation: on a monomial
    a1∧...∧ak it contracts each factor in turn with alternating sign.
    """
    if w.manifold is not v.manifold:
        raise FrameMismatchError("forms belong to different manifolds")
    if v and not v.is_homogeneous(1):
        raise DegreeError("hook expects a degree-1 first argument")
    out = {}
    for (g,), cv in v.terms.items():
        for mono, cm in w.terms.items():
            try:
                pos = mono.index(g)
            except ValueError:
                continue
            rest = mono[:pos] + mono[pos + 1 :]
            c = cv * cm
            if pos % 2:
                c = -c
            s = out.get(rest)
            s = c if s is None else s + c
            if s:
                out[rest] = s
            else:
                out.pop(rest, None)
    return Form(v.manifold, out)


def pairing(a: Form, b: Form) -> Poly:
    """Canonical bilinear pairing; monomials form an orthonormal set."""
    if b.manifold is not a.manifold:
        raise FrameMismatchError("forms belong to different manifolds")
    out = Poly.zero()
    small, large = (a.terms, b.terms) if len(a.terms) <= len(b.terms) else (b.terms, a.terms)
    for m, c in small.items():
        c2 = large.get(m)
        if c2 is not None:
            out = out + c * c2
    return out


def degree(w: Form) -> int:
    """Common monomial length of a homogeneous form; 0 for scalars."""
    lengths = {len(m) for m in w.terms}
    if not lengths:
        return 0
    if len(lengths) > 1:
        raise MixedDegreeError(f"form has mixed degrees {sorted(lengths)}")
    return lengths.pop()


def coefficients(w: Form):
    """All (monomial, coefficient) pairs in canonical monomial order."""
    return [(m, w.terms[m]) for m in sorted(w.terms, key=_mono_key)]


def substitute_form(w: Form, rules: dict) -> Form:
    """Simultaneously replace generators by degree <= 1 forms.

    Keys are generator indices; each right-hand side must be a form of
    degree 1, a scalar, or zero.  Monomials are re-expanded through the
    wedge, so signs and cancellations come out normalized.
    """
    M = w.manifold
    repl = {}
    for g, f in rules.items():
        if not 1 <= g <= M.dim:
            raise FrameIndexError(f"generator index {g} outside 1..{M.dim}")
        f = f if isinstance(f, Form) else Form.scalar(M, f)
        if f.manifold is not M:
            raise FrameMismatchError("replacement form from a different manifold")
        if any(len(m) > 1 for m in f.terms):
            raise DegreeError(f"replacement for e{g} must have degree <= 1")
        repl[g] = f
    out = Form.zero(M)
    for mono, c in w.terms.items():
        term = Form.scalar(M, c)
        for g in mono:
            factor = repl.get(g)
            if factor is None:
                factor = Form.generator(M, g)
            term = wedge(term, factor)
            if not term:
                break
        out = out + term
    return out


# --- printing -------------------------------------------------------------

def _mono_print(mono):
    if not mono:
        return ""
    if all(i <= 9 for i in mono):
        return "e" + "".join(str(i) for i in mono)
    return "e[" + ",".join(str(i) for i in mono) + "]"


def _coeff_print(c: Poly, mono_str: str) -> str:
    if not mono_str:
        s = str(c)
        return s if c.is_constant() else f"({s})"
    if c.is_constant():
        v = c.constant_value()
        if v == 1:
            return mono_str
        if v == -1:
            return "-" + mono_str
        s = str(v)
        if v.re and v.im:
            s = f"({s})"
        return f"{s}*{mono_str}"
    if len(c.terms) == 1:
        return f"{c}*{mono_str}"
    return f"({c})*{mono_str}"


def print_form(w: Form) -> str:
    """Deterministic text rendering; inverse of parse_form on its range."""
    if not w.terms:
        return "0"
    parts = []
    for m in sorted(w.terms, key=_mono_key):
        t = _coeff_print(w.terms[m], _mono_print(m))
        if parts and not t.startswith("-"):
            parts.append("+")
        parts.append(t)
    return "".join(parts)


# --- parsing --------------------------------------------------------------

class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self):
        ch = self.peek()
        self.pos += 1
        return ch

    def error(self, reason):
        raise FormParseError(self.pos, reason)


def parse_form(frame, text: str) -> Form:
    """Parse a form string like "567-512" or "3/2*123-42" over a frame.

    Grammar: form := ['-'] term (('+'|'-') term)*;
    term := [coeff '*'] ['e'] digits; coeff := integer ['/' integer];
    digits := one or more of '1'..'9', each a frame index.
    The optional 'e' lets print_form output parse back.
    """
    sc = _Scanner(text.strip())
    if not sc.text:
        sc.error("empty form string")
    out = Form.zero(frame)
    sign = 1
    if sc.peek() == "-":
        sc.take()
        sign = -1
    while True:
        out = out + _parse_term(frame, sc, sign)
        ch = sc.peek()
        if not ch:
            return out
        if ch == "+":
            sign = 1
        elif ch == "-":
            sign = -1
        else:
            sc.error(f"unexpected character {ch!r}")
        sc.take()


def _parse_int(sc):
    start = sc.pos
    while sc.peek().isdigit():
        sc.take()
    if sc.pos == start:
        sc.error("expected an integer")
    return int(sc.text[start : sc.pos]), start


def _parse_term(frame, sc, sign):
    coeff = Fraction(sign)
    start = sc.pos
    if not (sc.peek().isdigit() or sc.peek() == "e"):
        sc.error("expected a term")
    if sc.peek().isdigit():
        value, num_start = _parse_int(sc)
        if sc.peek() == "/":
            sc.take()
            den, _ = _parse_int(sc)
            if den == 0:
                sc.error("zero denominator")
            coeff *= Fraction(value, den)
            if sc.peek() != "*":
                sc.error("expected '*' after coefficient")
            sc.take()
        elif sc.peek() == "*":
            sc.take()
            coeff *= value
        else:
            # The integer was the digit string of the monomial itself.
            sc.pos = num_start
    if sc.peek() == "e":
        sc.take()
    digit_start = sc.pos
    mono = Form.scalar(frame, coeff)
    while sc.peek().isdigit():
        d = int(sc.take())
        if d == 0:
            sc.error("frame index digit must be 1-9")
        if d > frame.dim:
            raise FrameIndexError(
                f"index {d} exceeds frame dimension {frame.dim} at position {sc.pos - 1}"
            )
        mono = wedge(mono, Form.generator(frame, d))
    if sc.pos == digit_start:
        sc.error("expected frame index digits")
    return mono
