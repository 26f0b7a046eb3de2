"""Exact scalars: rationals, Gaussian rationals and polynomials in a formal pi.

``pi`` is never a float here.  A :class:`PiGaussCoeff` is a finite sum
``sum_k c_k pi**k`` with Gaussian-rational ``c_k``, which is enough to hold
every ``2 pi (k X + b)`` shift and every ``2 pi c^2`` constant term that the
label and polygon code produces.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

from gmpy2 import mpq

Rational = type(mpq(0))

_ZERO = mpq(0)
_ONE = mpq(1)


def rat(x) -> "Rational":
    """Coerce ``x`` (int, str ``"n/d"``, Fraction, mpq) to an exact rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    if isinstance(x, str):
        s = x.strip().replace(" ", "")
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
            raise ValueError(f"not a rational literal: {x!r}")
        if s.endswith("/0"):
            raise ZeroDivisionError("zero divisor")
        return mpq(s)
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return mpq(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational")


def rat_str(x) -> str:
    x = rat(x)
    return f"{x.numerator}/{x.denominator}"


class GaussRational:
    """``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = rat(re)
        self.im = rat(im)

    @classmethod
    def coerce(cls, x) -> "GaussRational":
        if isinstance(x, GaussRational):
            return x
        if isinstance(x, PiGaussCoeff):
            return x.as_gauss()
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(rat(x), 0)

    @classmethod
    def parse(cls, s: str) -> "GaussRational":
        """Inverse of ``str``: accepts ``"1/2+3/4 i"``, ``"-1/3"``, ``"2 i"``."""
        t = s.replace(" ", "")
        m = re.fullmatch(r"([+-]?\d+(?:/\d+)?)(?:([+-])(\d+(?:/\d+)?)i)?", t)
        if m:
            im = rat(m.group(3)) if m.group(3) else _ZERO
            if m.group(2) == "-":
                im = -im
            return cls(rat(m.group(1)), im)
        m = re.fullmatch(r"([+-]?\d+(?:/\d+)?)i", t)
        if m:
            return cls(0, rat(m.group(1)))
        # tolerate the "n/d+-n/d i" spelling
        m = re.fullmatch(r"([+-]?\d+(?:/\d+)?)\+([+-]\d+(?:/\d+)?)i", t)
        if m:
            return cls(rat(m.group(1)), rat(m.group(2)))
        raise ValueError(f"not a Gaussian rational literal: {s!r}")

    def __str__(self):
        sign = "-" if self.im < 0 else "+"
        return f"{rat_str(self.re)}{sign}{rat_str(abs(self.im))} i"

    def __repr__(self):
        return f"GaussRational({self})"

    def __eq__(self, other):
        try:
            o = GaussRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, PiGaussCoeff):
            return NotImplemented
        o = GaussRational.coerce(other)
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, PiGaussCoeff):
            return NotImplemented
        o = GaussRational.coerce(other)
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussRational.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, PiGaussCoeff):
            return NotImplemented
        o = GaussRational.coerce(other)
        return GaussRational(self.re * o.re - self.im * o.im,
                             self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussRational.coerce(other)
        n = o.abs2()
        if n == 0:
            raise ZeroDivisionError("zero divisor")
        return self * GaussRational(o.re / n, -o.im / n)

    def __rtruediv__(self, other):
        return GaussRational.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return (GaussRational(1) / self) ** (-n)
        out = GaussRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def pair(self) -> Tuple["Rational", "Rational"]:
        return (self.re, self.im)


I = GaussRational(0, 1)


class PiGaussCoeff:
    """Finite sum ``sum_k c_k * pi**k`` with Gaussian-rational ``c_k``.

    Immutable.  ``terms`` never holds a zero coefficient, so two values are
    equal exactly when their term maps coincide.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        t: Dict[int, GaussRational] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                k = int(k)
                if k < 0:
                    raise ValueError("pi exponents are non-negative")
                c = GaussRational.coerce(c)
                if k in t:
                    c = t[k] + c
                if c:
                    t[k] = c
                else:
                    t.pop(k, None)
        self._terms = dict(sorted(t.items()))

    # construction -------------------------------------------------------
    @classmethod
    def coerce(cls, x) -> "PiGaussCoeff":
        if isinstance(x, PiGaussCoeff):
            return x
        return cls({0: GaussRational.coerce(x)})

    @classmethod
    def pi(cls, power: int = 1, coeff=1) -> "PiGaussCoeff":
        return cls({power: coeff})

    @classmethod
    def _from_raw(cls, raw: Dict[int, Tuple]) -> "PiGaussCoeff":
        out = cls.__new__(cls)
        out._terms = {k: GaussRational(*v) for k, v in sorted(raw.items())
                      if v[0] or v[1]}
        return out

    def _raw(self) -> Dict[int, Tuple]:
        return {k: (c.re, c.im) for k, c in self._terms.items()}

    @property
    def terms(self) -> Dict[int, GaussRational]:
        return dict(self._terms)

    # predicates ---------------------------------------------------------
    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_real(self) -> bool:
        return all(c.im == 0 for c in self._terms.values())

    def is_pi_free(self) -> bool:
        return all(k == 0 for k in self._terms)

    def as_gauss(self) -> GaussRational:
        if not self.is_pi_free():
            raise ValueError("coefficient involves pi")
        return self._terms.get(0, GaussRational(0))

    def as_rational(self):
        g = self.as_gauss()
        if g.im:
            raise ValueError("coefficient is not real")
        return g.re

    # arithmetic ---------------------------------------------------------
    def __eq__(self, other):
        try:
            o = PiGaussCoeff.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self.is_pi_free():
            return hash(self.as_gauss())
        return hash(tuple((k, c.re, c.im) for k, c in self._terms.items()))

    def __neg__(self):
        return PiGaussCoeff({k: -c for k, c in self._terms.items()})

    def __add__(self, other):
        o = PiGaussCoeff.coerce(other)
        t = dict(self._terms)
        for k, c in o._terms.items():
            t[k] = t[k] + c if k in t else c
        return PiGaussCoeff(t)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-PiGaussCoeff.coerce(other))

    def __rsub__(self, other):
        return PiGaussCoeff.coerce(other) - self

    def __mul__(self, other):
        o = PiGaussCoeff.coerce(other)
        t: Dict[int, GaussRational] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in o._terms.items():
                k = k1 + k2
                t[k] = t[k] + c1 * c2 if k in t else c1 * c2
        return PiGaussCoeff(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Exact division by a nonzero rational or Gaussian rational."""
        if isinstance(other, PiGaussCoeff):
            other = other.as_gauss()
        d = GaussRational.coerce(other)
        if not d:
            raise ZeroDivisionError("zero divisor")
        return PiGaussCoeff({k: c / d for k, c in self._terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not closed in this ring")
        out = PiGaussCoeff.coerce(1)
        for _ in range(n):
            out = out * self
        return out

    def conj(self) -> "PiGaussCoeff":
        return PiGaussCoeff({k: c.conj() for k, c in self._terms.items()})

    # display / serialisation -------------------------------------------
    def __repr__(self):
        return f"PiGaussCoeff({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in self._terms.items():
            s = f"({c})"
            if k == 1:
                s += "*pi"
            elif k > 1:
                s += f"*pi^{k}"
            parts.append(s)
        return " + ".join(parts)

    def to_json(self):
        return [{"pi": k, "re": rat_str(c.re), "im": rat_str(c.im)}
                for k, c in self._terms.items()]

    @classmethod
    def from_json(cls, data) -> "PiGaussCoeff":
        if isinstance(data, (int, str)):
            return cls.coerce(GaussRational.parse(str(data)))
        if not isinstance(data, list):
            raise ValueError("coefficient must be a list of {pi, re, im}")
        terms = []
        for item in data:
            k = int(item.get("pi", 0))
            terms.append((k, GaussRational(rat(item.get("re", "0")),
                                           rat(item.get("im", "0")))))
        return cls(terms)


def is_real(a) -> bool:
    return PiGaussCoeff.coerce(a).is_real()


def is_pi_free(a) -> bool:
    return PiGaussCoeff.coerce(a).is_pi_free()


def as_scalar_pair(c) -> Dict[int, Tuple]:
    """Raw ``{pi_power: (re, im)}`` view of any exact scalar."""
    return PiGaussCoeff.coerce(c)._raw()


def gauss_sum(values: Iterable[GaussRational]) -> GaussRational:
    out = GaussRational(0)
    for v in values:
        out = out + v
    return out


Scalar = Union[int, Fraction, "Rational", GaussRational, PiGaussCoeff]
