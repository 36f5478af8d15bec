"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`PolyRing` fixes an ordered tuple of parameter names.  A
:class:`Poly` stores ``{exponent tuple: Fraction}`` with no zero
coefficients, so two polynomials are equal exactly when their term
dictionaries are equal.  Terms print in graded-lexicographic order
(total degree first, then lexicographic on the ring's name order).

Integers and :class:`fractions.Fraction` values coerce into any ring;
polynomials from two different rings never mix.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


class ParameterMismatch(ValueError):
    """Raised when polynomials over different parameter sets are combined."""


class MissingParameter(KeyError):
    """Raised when an evaluation assignment does not cover a parameter."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


class PolyRing:
    """Polynomial ring Q[x_1, ..., x_n] over a declared list of names."""

    __slots__ = ("names", "index", "_zero_exp")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        self.names = names
        self.index = {name: k for k, name in enumerate(names)}
        self._zero_exp = (0,) * len(names)

    def __repr__(self):
        return f"PolyRing({list(self.names)!r})"

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    @property
    def ngens(self) -> int:
        return len(self.names)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self._zero_exp: Fraction(1)})

    def const(self, value) -> "Poly":
        c = as_fraction(value)
        return Poly(self, {self._zero_exp: c} if c else {})

    def gen(self, name: str) -> "Poly":
        try:
            k = self.index[name]
        except KeyError:
            raise ParameterMismatch(f"{name!r} is not a parameter of {self!r}") from None
        exp = [0] * len(self.names)
        exp[k] = 1
        return Poly(self, {tuple(exp): Fraction(1)})

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.gen(n) for n in self.names)

    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring != self:
                raise ParameterMismatch(f"{value.ring!r} vs {self!r}")
            return value
        if isinstance(value, str) and value in self.index:
            return self.gen(value)
        return self.const(value)

    def monomial(self, exponents: Mapping[str, int], coeff=1) -> "Poly":
        exp = [0] * len(self.names)
        for name, e in exponents.items():
            if e < 0:
                raise ValueError("negative exponent")
            exp[self.index[name]] = e
        c = as_fraction(coeff)
        return Poly(self, {tuple(exp): c} if c else {})


def _glex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class Poly:
    """Immutable sparse polynomial.  Build through a :class:`PolyRing`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- coercion -------------------------------------------------------
    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ParameterMismatch(
                    f"cannot combine polynomials over {self.ring.names} and {other.ring.names}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring._zero_exp in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get(self.ring._zero_exp, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self.terms
            return self.terms == {self.ring._zero_exp: Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.names, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic -----------------------------------------------------
    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            return self
        if not self.terms:
            return o
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly(self.ring, {})
            return Poly(self.ring, {m: c * other for m, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return Poly(self.ring, {})
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a polynomial by zero")
            inv = 1 / Fraction(other)
            return Poly(self.ring, {m: c * inv for m, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.exact_div(o)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- structure ------------------------------------------------------
    def leading(self):
        """Leading ``(exponents, coefficient)`` in graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=_glex_key)
        return m, self.terms[m]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self) -> set[str]:
        used = set()
        for m in self.terms:
            for k, e in enumerate(m):
                if e:
                    used.add(self.ring.names[k])
        return used

    def exact_div(self, divisor: "Poly") -> "Poly":
        """Quotient ``self / divisor``; raises ``ArithmeticError`` unless exact."""
        if not divisor.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if divisor.is_constant():
            return self / divisor.constant_value()
        lm, lc = divisor.leading()
        rem = self
        quot: dict = {}
        while rem.terms:
            m, c = rem.leading()
            diff = tuple(a - b for a, b in zip(m, lm))
            if any(d < 0 for d in diff):
                raise ArithmeticError(f"{divisor} does not divide {self}")
            q = c / lc
            quot[diff] = quot.get(diff, 0) + q
            rem = rem - Poly(self.ring, {diff: q}) * divisor
        return Poly(self.ring, {m: c for m, c in quot.items() if c})

    # -- evaluation / substitution --------------------------------------
    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        """Exact value under ``assignment``; every used parameter must be given."""
        values = []
        for name in self.ring.names:
            if name in assignment:
                values.append(as_fraction(assignment[name]))
            else:
                values.append(None)
        total = Fraction(0)
        for m, c in self.terms.items():
            t = c
            for k, e in enumerate(m):
                if e:
                    v = values[k]
                    if v is None:
                        raise MissingParameter(self.ring.names[k])
                    t *= v**e
            total += t
        return total

    def subs(self, mapping: Mapping[str, "Poly | Scalar"], ring: PolyRing | None = None) -> "Poly":
        """Substitute parameters by polynomials (or scalars) in ``ring``.

        Parameters absent from ``mapping`` are carried over by name, so
        they must exist in the target ring.
        """
        target = ring or self.ring
        images = []
        for name in self.ring.names:
            if name in mapping:
                images.append(target(mapping[name]))
            else:
                images.append(None)
        out = target.zero()
        power_cache: dict = {}
        for m, c in self.terms.items():
            t = target.const(c)
            for k, e in enumerate(m):
                if not e:
                    continue
                img = images[k]
                if img is None:
                    img = target.gen(self.ring.names[k])
                    images[k] = img
                key = (k, e)
                p = power_cache.get(key)
                if p is None:
                    p = img**e
                    power_cache[key] = p
                t = t * p
            out = out + t
        return out

    def to_ring(self, ring: PolyRing) -> "Poly":
        """Re-embed into a ring containing all used parameter names."""
        if ring == self.ring:
            return self
        perm = []
        for name in self.ring.names:
            perm.append(ring.index.get(name))
        out = {}
        for m, c in self.terms.items():
            exp = [0] * ring.ngens
            for k, e in enumerate(m):
                if e:
                    if perm[k] is None:
                        raise ParameterMismatch(f"{self.ring.names[k]} missing from {ring!r}")
                    exp[perm[k]] = e
            out[tuple(exp)] = c
        return Poly(ring, out)

    # -- printing -------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _glex_key(mc[0]), reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.names, m)
                if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Poly({str(self)!r})"


def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    """Add, subtract or multiply two polynomials over the same ring."""
    if p.ring != q.ring:
        raise ParameterMismatch(f"{p.ring.names} vs {q.ring.names}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def poly_eval(p: Poly, assignment: Mapping[str, Scalar]) -> Fraction:
    return p.evaluate(assignment)


def coeff_is_zero(c) -> bool:
    """Zero test that works for Poly, Fraction and int coefficients."""
    if isinstance(c, Poly):
        return not c.terms
    return c == 0


def coeff_str(c) -> str:
    return str(c)


def coeff_subs(c, fn):
    """Apply ``fn`` to a Poly coefficient; pass plain scalars through."""
    if isinstance(c, Poly):
        return fn(c)
    return c
