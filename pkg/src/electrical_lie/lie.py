"""Sparse Lie algebra elements and the model interface shared by all backends.

An element is an immutable ``{basis key: coefficient}`` mapping.  Keys are
model-specific (matrix positions, root-space basis indices, loop degrees);
coefficients are :class:`~electrical_lie.arith.Poly`, ``Fraction`` or ``int``.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterable

from .arith.poly import Poly, coeff_is_zero


class BudgetExceeded(RuntimeError):
    """A computation needed more height/degree than the model provides."""


class SeriesDidNotTerminate(BudgetExceeded):
    pass


def _add_into(out: dict, key, value) -> None:
    cur = out.get(key)
    if cur is None:
        if not coeff_is_zero(value):
            out[key] = value
        return
    s = cur + value
    if coeff_is_zero(s):
        del out[key]
    else:
        out[key] = s


class SparseElement:
    __slots__ = ("model", "terms")

    def __init__(self, model, terms: dict):
        self.model = model
        self.terms = terms

    @classmethod
    def from_pairs(cls, model, pairs: Iterable):
        out: dict = {}
        for k, v in pairs:
            _add_into(out, k, v)
        return cls(model, out)

    def _like(self, terms):
        return type(self)(self.model, terms)

    def _check(self, other):
        if not isinstance(other, SparseElement) or other.model is not self.model:
            raise TypeError("elements belong to different models")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(out, k, v)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            _add_into(out, k, -v)
        return self._like(out)

    def __mul__(self, scalar):
        if isinstance(scalar, SparseElement):
            return NotImplemented
        if coeff_is_zero(scalar):
            return self._like({})
        out = {}
        for k, v in self.terms.items():
            p = v * scalar
            if not coeff_is_zero(p):
                out[k] = p
        return self._like(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / Fraction(scalar))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, SparseElement):
            return NotImplemented
        return self.model is other.model and (self - other).is_zero()

    __hash__ = None

    def map_coeffs(self, fn: Callable):
        out = {}
        for k, v in self.terms.items():
            w = fn(v)
            if not coeff_is_zero(w):
                out[k] = w
        return self._like(out)

    def specialize(self, assignment) -> "SparseElement":
        return self.map_coeffs(lambda c: c.evaluate(assignment) if isinstance(c, Poly) else Fraction(c))

    def subs(self, mapping, ring=None):
        return self.map_coeffs(lambda c: c.subs(mapping, ring) if isinstance(c, Poly) else c)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: self.model.key_sort(kv[0]))

    def first_nonzero(self):
        """Smallest nonzero component, used as a failure witness."""
        if not self.terms:
            return None
        k, v = self.sorted_items()[0]
        return self.model.describe_key(k), str(v)

    def bracket(self, other):
        return self.model.bracket(self, other)

    def __repr__(self):
        if not self.terms:
            return f"<{type(self).__name__} 0>"
        parts = [f"({v})*{self.model.describe_key(k)}" for k, v in self.sorted_items()]
        return f"<{type(self).__name__} " + " + ".join(parts) + ">"


class LieModel:
    """Common operations; subclasses supply generators and the bracket."""

    kind = "abstract"
    element_class = SparseElement

    def __init__(self, gcm):
        self.gcm = gcm

    @property
    def labels(self):
        return self.gcm.labels

    def element(self, terms: dict):
        return self.element_class(self, terms)

    def zero(self):
        return self.element({})

    def e(self, i):
        raise NotImplementedError

    def f(self, i):
        raise NotImplementedError

    def h(self, i):
        return self.bracket(self.e(i), self.f(i))

    def bracket(self, x, y):
        raise NotImplementedError

    def key_sort(self, key):
        return repr(key)

    def describe_key(self, key) -> str:
        return repr(key)

    def positive_part(self, x):
        """Projection onto the span of positive root vectors."""
        raise NotImplementedError

    def ad_pow(self, x, k: int, y):
        for _ in range(k):
            y = self.bracket(x, y)
        return y

    def ad_exp(self, s, x, y, max_terms: int = 64):
        """``sum_k s^k/k! (ad x)^k (y)``; the series must terminate."""
        total = y
        term = y
        power = 1
        for k in range(1, max_terms + 1):
            term = self.bracket(x, term)
            if term.is_zero():
                return total
            power = power * s
            total = total + term * (power * Fraction(1, factorial(k)))
        raise SeriesDidNotTerminate(f"ad-exponential did not terminate within {max_terms} terms")

    def conjugate(self, factors, y):
        """Apply ``Ad(exp(s_1 x_1) ... exp(s_m x_m))`` to ``y``.

        ``factors`` is the product as written, left to right, so the
        rightmost factor acts first.
        """
        for s, x in reversed(list(factors)):
            y = self.ad_exp(s, x, y)
        return y
