"""Truncated bivariate jets and the abscissa-preserving germ group.

Three monomial bases are supported for a :class:`SmoothJet`:

* ``"XY"``: real series in ``X, Y``;
* ``"Z"``: complex series in ``Z = X + iY`` and ``Zbar``;
* ``Mu(mu)``: series in ``Z_mu = Z/(1+conj mu) + mu Zbar/(1+mu)`` and its
  conjugate.

Every jet carries its truncation order ``N`` (total degree ``<= N``) and
arithmetic between jets of different orders is refused.
"""

from __future__ import annotations

from typing import Dict, Iterable, Optional, Tuple

from . import _kernel as K
from .coeffring import GaussRational, PiGaussCoeff, rat

ONE, ZERO, HALF = K.ONE, K.ZERO, K.HALF


class JetError(ValueError):
    pass


class Mu:
    """A point of the open unit disk with Gaussian-rational coordinates."""

    __slots__ = ("value",)

    def __init__(self, value=0):
        v = GaussRational.coerce(value)
        if not v.abs2() < 1:
            raise JetError(f"first-order invariant must satisfy |mu|^2 < 1, got {v}")
        self.value = v

    def __eq__(self, other):
        if isinstance(other, Mu):
            return self.value == other.value
        try:
            return self.value == GaussRational.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(("mu", self.value))

    def __repr__(self):
        return f"Mu({self.value})"

    def __str__(self):
        return str(self.value)

    def is_zero(self) -> bool:
        return not self.value

    def coefficients(self):
        """``(alpha, beta)`` with ``Z_mu = alpha Z + beta Zbar`` as raw pairs."""
        mu = self.value.pair()
        one_plus_mubar = (ONE + mu[0], -mu[1])
        one_plus_mu = (ONE + mu[0], mu[1])
        alpha = K.cinv(one_plus_mubar)
        beta = K.cmul(mu, K.cinv(one_plus_mu))
        return alpha, beta


def _basis_key(basis):
    if isinstance(basis, Mu):
        return "Z" if basis.is_zero() else ("Zmu", basis.value.re, basis.value.im)
    if basis in ("XY", "Z"):
        return basis
    raise JetError(f"unknown basis {basis!r}")


def _basis_name(basis) -> str:
    if isinstance(basis, Mu):
        return f"Zmu({basis.value})"
    return basis


def _to_raw(coeffs) -> Dict:
    raw: Dict = {}
    items = coeffs.items() if isinstance(coeffs, dict) else coeffs
    for (p, q), c in items:
        if p < 0 or q < 0:
            raise JetError("smooth jets have non-negative exponents")
        for k, pair in PiGaussCoeff.coerce(c)._raw().items():
            key = (int(p), int(q), k)
            if key in raw:
                o = raw[key]
                pair = (o[0] + pair[0], o[1] + pair[1])
            raw[key] = pair
    return K.clean(raw)


class SmoothJet:
    """A truncated series ``sum c_{pq} u^p v^q`` of total degree ``<= order``.

    ``coeffs`` maps ``(p, q)`` to any exact scalar.  In the ``XY`` basis the
    series must be real.
    """

    __slots__ = ("order", "basis", "_raw", "_key")

    def __init__(self, order: int, basis="XY", coeffs=None, *, _raw=None):
        order = int(order)
        if order < 1:
            raise JetError("order must be at least 1")
        self.order = order
        if isinstance(basis, Mu) and basis.is_zero():
            basis = "Z"
        self.basis = basis
        self._key = _basis_key(basis)
        raw = _raw if _raw is not None else _to_raw(coeffs or {})
        self._raw = K.truncate(raw, order)
        if self._key == "XY" and any(v[1] for v in self._raw.values()):
            raise JetError("XY-basis jets must be real")

    @classmethod
    def from_raw(cls, order, basis, raw) -> "SmoothJet":
        return cls(order, basis, _raw=K.clean(raw))

    # accessors ----------------------------------------------------------
    @property
    def raw(self):
        return self._raw

    @property
    def coeffs(self) -> Dict[Tuple[int, int], PiGaussCoeff]:
        out: Dict[Tuple[int, int], Dict] = {}
        for (p, q, k), v in self._raw.items():
            out.setdefault((p, q), {})[k] = v
        return {pq: PiGaussCoeff._from_raw(t) for pq, t in sorted(out.items())}

    def coeff(self, p: int, q: int) -> PiGaussCoeff:
        t = {k: v for (a, b, k), v in self._raw.items() if a == p and b == q}
        return PiGaussCoeff._from_raw(t)

    def constant(self) -> PiGaussCoeff:
        return self.coeff(0, 0)

    def is_zero(self) -> bool:
        return not self._raw

    def is_real(self) -> bool:
        if self._key == "XY":
            return True
        if self._key == "Z":
            return self._raw == K.conj_swap(self._raw)
        return to_z(self).is_real()

    def is_pi_free(self) -> bool:
        return all(k == 0 for (_p, _q, k) in self._raw)

    def homogeneous(self, d: int) -> "SmoothJet":
        return SmoothJet.from_raw(self.order, self.basis, K.homogeneous(self._raw, d))

    def truncate(self, n: int) -> "SmoothJet":
        if n > self.order:
            raise JetError("cannot raise the order of a truncated jet")
        return SmoothJet.from_raw(n, self.basis, K.truncate(self._raw, n))

    # arithmetic ---------------------------------------------------------
    def _check(self, other: "SmoothJet"):
        if not isinstance(other, SmoothJet):
            raise TypeError("expected a SmoothJet")
        if other.order != self.order:
            raise JetError(f"order mismatch: {self.order} vs {other.order}")
        if other._key != self._key:
            raise JetError(f"basis mismatch: {_basis_name(self.basis)} vs "
                           f"{_basis_name(other.basis)}")

    def _lift(self, other):
        if isinstance(other, SmoothJet):
            self._check(other)
            return other._raw
        return _to_raw({(0, 0): other})

    def _new(self, raw) -> "SmoothJet":
        return SmoothJet.from_raw(self.order, self.basis, raw)

    def __add__(self, other):
        return self._new(K.add(self._raw, self._lift(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return self._new(K.sub(self._raw, self._lift(other)))

    def __rsub__(self, other):
        return self._new(K.sub(self._lift(other), self._raw))

    def __neg__(self):
        return self._new(K.neg(self._raw))

    def __mul__(self, other):
        if isinstance(other, SmoothJet):
            self._check(other)
            return self._new(K.mul(self._raw, other._raw, self.order))
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise JetError("negative powers of a jet")
        return self._new(K.powers(self._raw, n, self.order)[n])

    def scale(self, c) -> "SmoothJet":
        return self._new(K.scale_pi(self._raw, PiGaussCoeff.coerce(c)._raw()))

    def conj(self) -> "SmoothJet":
        if self._key == "XY":
            return self
        return self._new(K.conj_swap(self._raw))

    def __eq__(self, other):
        if not isinstance(other, SmoothJet):
            return NotImplemented
        return (self.order == other.order and self._key == other._key
                and self._raw == other._raw)

    def __hash__(self):
        return hash((self.order, self._key, frozenset(self._raw.items())))

    def __repr__(self):
        return f"SmoothJet(order={self.order}, basis={_basis_name(self.basis)}, {self})"

    def __str__(self):
        if not self._raw:
            return "0"
        names = {"XY": ("X", "Y")}.get(self._key, None)
        if names is None:
            names = ("Z", "Zb") if self._key == "Z" else ("Zm", "Zmb")
        parts = []
        for (p, q), c in self.coeffs.items():
            mono = "*".join(f"{n}^{e}" if e > 1 else n
                            for n, e in ((names[0], p), (names[1], q)) if e)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    # substitution ---------------------------------------------------------
    def compose(self, G) -> "SmoothJet":
        return compose(self, G)

    def to_basis(self, basis) -> "SmoothJet":
        return to_basis(self, basis)


# --- constructors ----------------------------------------------------------

def const(order: int, c, basis="XY") -> SmoothJet:
    return SmoothJet(order, basis, {(0, 0): c})


def X(order: int) -> SmoothJet:
    return SmoothJet(order, "XY", {(1, 0): 1})


def Y(order: int) -> SmoothJet:
    return SmoothJet(order, "XY", {(0, 1): 1})


def Z(order: int, mu: Optional[Mu] = None) -> SmoothJet:
    return SmoothJet(order, mu if mu is not None else "Z", {(1, 0): 1})


def Zbar(order: int, mu: Optional[Mu] = None) -> SmoothJet:
    return SmoothJet(order, mu if mu is not None else "Z", {(0, 1): 1})


# --- basis changes -----------------------------------------------------------

_X_IN_Z = {(1, 0, 0): (HALF, ZERO), (0, 1, 0): (HALF, ZERO)}
_Y_IN_Z = {(1, 0, 0): (ZERO, -HALF), (0, 1, 0): (ZERO, HALF)}
_Z_IN_XY = {(1, 0, 0): (ONE, ZERO), (0, 1, 0): (ZERO, ONE)}
_ZB_IN_XY = {(1, 0, 0): (ONE, ZERO), (0, 1, 0): (ZERO, -ONE)}


def _linear(a, b):
    return K.clean({(1, 0, 0): a, (0, 1, 0): b})


def xy_to_z(f: SmoothJet) -> SmoothJet:
    if f._key != "XY":
        raise JetError("expected an XY-basis jet")
    return SmoothJet.from_raw(f.order, "Z", K.substitute(f._raw, _X_IN_Z, _Y_IN_Z, f.order))


def z_to_xy(f: SmoothJet) -> SmoothJet:
    if f._key != "Z":
        raise JetError("expected a Z-basis jet")
    raw = K.substitute(f._raw, _Z_IN_XY, _ZB_IN_XY, f.order)
    if any(v[1] for v in raw.values()):
        raise JetError("series is not real; it has no XY-basis form")
    return SmoothJet.from_raw(f.order, "XY", raw)


def mu_substitution(mu: Mu):
    """Raw ``(Z_mu, Zbar_mu)`` in terms of ``(Z, Zbar)``."""
    a, b = mu.coefficients()
    zm = _linear(a, b)
    zmb = _linear((b[0], -b[1]), (a[0], -a[1]))
    return zm, zmb


def mu_inverse_substitution(mu: Mu):
    """Raw ``(Z, Zbar)`` in terms of ``(Z_mu, Zbar_mu)``."""
    a, b = mu.coefficients()
    det = a[0] * a[0] + a[1] * a[1] - b[0] * b[0] - b[1] * b[1]
    z = _linear((a[0] / det, -a[1] / det), (-b[0] / det, -b[1] / det))
    zb = _linear((-b[0] / det, b[1] / det), (a[0] / det, a[1] / det))
    return z, zb


def z_to_zmu(f: SmoothJet, mu: Mu) -> SmoothJet:
    if f._key != "Z":
        raise JetError("expected a Z-basis jet")
    if mu.is_zero():
        return f
    z, zb = mu_inverse_substitution(mu)
    return SmoothJet.from_raw(f.order, mu, K.substitute(f._raw, z, zb, f.order))


def zmu_to_z(f: SmoothJet) -> SmoothJet:
    if not isinstance(f.basis, Mu):
        if f._key == "Z":
            return f
        raise JetError("expected a Zmu-basis jet")
    zm, zmb = mu_substitution(f.basis)
    return SmoothJet.from_raw(f.order, "Z", K.substitute(f._raw, zm, zmb, f.order))


def to_z(f: SmoothJet) -> SmoothJet:
    if f._key == "XY":
        return xy_to_z(f)
    return zmu_to_z(f)


def to_basis(f: SmoothJet, basis) -> SmoothJet:
    key = _basis_key(basis)
    if key == f._key:
        return f
    z = to_z(f)
    if key == "Z":
        return z
    if key == "XY":
        return z_to_xy(z)
    return z_to_zmu(z, basis)


# --- abscissa-preserving jets ---------------------------------------------------

class VPlusJet:
    """Jet of ``G(X, Y) = (X, g(X, Y))``.

    ``sign="+"`` is the group of germs with positive Y-derivative.  ``"-"``
    tags the reflected coset produced by :func:`z2_reflect`.
    """

    __slots__ = ("g", "sign", "_gc")

    def __init__(self, g: SmoothJet, sign: str = "+"):
        if not isinstance(g, SmoothJet) or g._key != "XY":
            raise JetError("g must be an XY-basis SmoothJet")
        if sign not in ("+", "-"):
            raise JetError("sign must be '+' or '-'")
        if g.constant():
            raise JetError("g must have zero constant term")
        b = g.coeff(0, 1)
        if not b.is_pi_free():
            raise JetError("the Y-coefficient of g must be pi-free")
        b = b.as_rational()
        if b == 0:
            raise JetError("not invertible: zero Y-coefficient")
        if sign == "+" and b < 0:
            raise JetError("the Y-coefficient of g must be positive")
        if not g.coeff(1, 0).is_pi_free():
            raise JetError("the X-coefficient of g must be pi-free")
        self.g = g
        self.sign = sign
        self._gc = None

    @property
    def order(self) -> int:
        return self.g.order

    @classmethod
    def identity(cls, order: int) -> "VPlusJet":
        return cls(Y(order))

    @classmethod
    def from_coeffs(cls, order: int, coeffs, sign="+") -> "VPlusJet":
        return cls(SmoothJet(order, "XY", coeffs), sign)

    @classmethod
    def from_complex(cls, gc: SmoothJet, sign="+") -> "VPlusJet":
        """Build from ``G_C = X + i g`` given in any complex basis."""
        z = to_z(gc) if gc._key != "XY" else None
        if z is None:
            raise JetError("G_C must be given in a complex basis")
        re_part = K.scale(K.add(z._raw, K.conj_swap(z._raw)), (HALF, ZERO))
        if re_part != {(1, 0, 0): (HALF, ZERO), (0, 1, 0): (HALF, ZERO)}:
            raise JetError("not abscissa-preserving: Re G_C differs from X")
        g_raw = K.scale(K.sub(z._raw, K.conj_swap(z._raw)), (ZERO, -HALF))
        g = z_to_xy(SmoothJet.from_raw(z.order, "Z", g_raw))
        return cls(g, sign)

    def linear(self) -> Tuple:
        """``(a, b)`` with linear part ``g = aX + bY``."""
        return self.g.coeff(1, 0).as_rational(), self.g.coeff(0, 1).as_rational()

    def complex(self) -> SmoothJet:
        """``G_C = X + i g`` in the Z basis."""
        if self._gc is None:
            n = self.order
            gz = xy_to_z(self.g)._raw
            self._gc = SmoothJet.from_raw(n, "Z", K.add(_X_IN_Z, K.scale(gz, (ZERO, ONE))))
        return self._gc

    def complex_in(self, mu: Mu) -> SmoothJet:
        return z_to_zmu(self.complex(), mu)

    def mu(self) -> Mu:
        return complex_mu(self.complex())

    def to_plane(self) -> "PlaneJet":
        return PlaneJet(self.complex())

    def is_identity(self) -> bool:
        return self.sign == "+" and self.g == Y(self.order)

    def __eq__(self, other):
        if not isinstance(other, VPlusJet):
            return NotImplemented
        return self.sign == other.sign and self.g == other.g

    def __hash__(self):
        return hash((self.sign, self.g))

    def __repr__(self):
        return f"VPlusJet(sign={self.sign}, g={self.g})"



def complex_mu(gc: SmoothJet) -> Mu:
    """First-order invariant of a normalised complex jet ``G_C``."""
    z = to_z(gc)
    g10 = K.coeff(z._raw, 1, 0)
    g01 = K.coeff(z._raw, 0, 1)
    if any(k for (p, q, k) in z._raw if p + q == 1):
        raise JetError("linear part involves pi")
    if (g01[0] + g10[0], g01[1] - g10[1]) != (ONE, ZERO):
        raise JetError("linear part is not normalised: G^(0,1) + conj G^(1,0) != 1")
    return Mu(GaussRational(*K.cmul(g01, K.cinv((g10[0], -g10[1])))))


def compose(f: SmoothJet, G) -> SmoothJet:
    """The jet of ``f o G`` for ``G`` a VPlusJet or PlaneJet."""
    if f.order != G.order:
        raise JetError(f"order mismatch: {f.order} vs {G.order}")
    n = f.order
    if isinstance(G, VPlusJet) and f._key == "XY":
        return SmoothJet.from_raw(n, "XY", K.substitute(f._raw, _X_XY, G.g._raw, n))
    gc = G.complex()._raw
    if f._key == "XY":
        z = xy_to_z(f)
        out = SmoothJet.from_raw(n, "Z", K.substitute(z._raw, gc, K.conj_swap(gc), n))
        return z_to_xy(out)
    z = to_z(f)
    out = SmoothJet.from_raw(n, "Z", K.substitute(z._raw, gc, K.conj_swap(gc), n))
    return to_basis(out, f.basis)


_X_XY = {(1, 0, 0): (ONE, ZERO)}


def group_compose(G: VPlusJet, H: VPlusJet) -> VPlusJet:
    """``G o H``."""
    if G.order != H.order:
        raise JetError(f"order mismatch: {G.order} vs {H.order}")
    n = G.order
    g = K.substitute(G.g._raw, _X_XY, H.g._raw, n)
    sign = "+" if G.sign == H.sign else "-"
    return VPlusJet(SmoothJet.from_raw(n, "XY", g), sign)


def revert(G: VPlusJet) -> VPlusJet:
    """The compositional inverse, by fixed-point iteration on ``g(X, h) = Y``.

    Each pass of ``h <- (Y - aX - nonlin(X, h)) / b`` fixes one more degree.
    """
    n = G.order
    a, b = G.linear()
    if b == 0:
        raise JetError("not invertible")
    inv_b = (1 / b, ZERO)
    nonlin = {k: v for k, v in G.g._raw.items() if k[0] + k[1] >= 2}
    base = K.scale(K.clean({(0, 1, 0): (ONE, ZERO), (1, 0, 0): (-a, ZERO)}), inv_b)
    h = base
    for _ in range(n - 1):
        if not nonlin:
            break
        h = K.sub(base, K.scale(K.substitute(nonlin, _X_XY, h, n), inv_b))
    return VPlusJet(SmoothJet.from_raw(n, "XY", h), G.sign)


def z2_reflect(G: VPlusJet) -> VPlusJet:
    """Substitute ``X -> -X`` in ``g`` and toggle the sign class."""
    return VPlusJet(reflect_x(G.g), "-" if G.sign == "+" else "+")


def reflect_x(f: SmoothJet) -> SmoothJet:
    if f._key != "XY":
        raise JetError("expected an XY-basis jet")
    raw = {(p, q, k): ((-r, -i) if p % 2 else (r, i)) for (p, q, k), (r, i) in f._raw.items()}
    return SmoothJet.from_raw(f.order, "XY", raw)


def vplus_sum(tup: Iterable) -> SmoothJet:
    """``sum_j G_C,j`` in the Z basis (equal sums of maps iff equal)."""
    tup = list(tup)
    if not tup:
        raise JetError("empty tuple")
    n = tup[0].order
    raw: Dict = {}
    for G in tup:
        if G.order != n:
            raise JetError("order mismatch inside tuple")
        raw = K.add(raw, G.complex()._raw)
    return SmoothJet.from_raw(n, "Z", raw)


# --- general plane maps --------------------------------------------------------

class PlaneJet:
    """A normalised complex plane-map jet ``G_C(Z, Zbar)``.

    Used where a formula only needs the complex expansion, and for inputs
    such as ``Z + Z^2`` that do not preserve the abscissa.  Requires zero
    constant term and ``G^(0,1) + conj G^(1,0) = 1``.
    """

    __slots__ = ("_gc",)

    def __init__(self, gc: SmoothJet):
        z = to_z(gc) if gc._key != "XY" else None
        if z is None:
            raise JetError("PlaneJet needs a complex basis")
        if z.constant():
            raise JetError("plane jets fix the origin")
        complex_mu(z)
        self._gc = z

    @property
    def order(self) -> int:
        return self._gc.order

    @classmethod
    def identity(cls, order: int) -> "PlaneJet":
        return cls(Z(order))

    def complex(self) -> SmoothJet:
        return self._gc

    def complex_in(self, mu: Mu) -> SmoothJet:
        return z_to_zmu(self._gc, mu)

    def mu(self) -> Mu:
        return complex_mu(self._gc)

    def is_vplus(self) -> bool:
        try:
            VPlusJet.from_complex(self._gc)
            return True
        except JetError:
            return False

    def to_vplus(self) -> VPlusJet:
        return VPlusJet.from_complex(self._gc)

    def __eq__(self, other):
        if isinstance(other, (PlaneJet, VPlusJet)):
            return self._gc == other.complex()
        return NotImplemented

    def __hash__(self):
        return hash(self._gc)

    def __repr__(self):
        return f"PlaneJet({self._gc})"


def compose_maps(F, G) -> PlaneJet:
    """``F o G`` for complex plane jets."""
    if F.order != G.order:
        raise JetError(f"order mismatch: {F.order} vs {G.order}")
    n = F.order
    g = G.complex()._raw
    return PlaneJet(SmoothJet.from_raw(n, "Z", K.substitute(F.complex()._raw, g, K.conj_swap(g), n)))


def revert_map(F) -> PlaneJet:
    """Inverse of a plane jet: ``H = L^-1(W - nonlin(H))`` iterated."""
    n = F.order
    f = F.complex()._raw
    a = K.coeff(f, 1, 0)
    b = K.coeff(f, 0, 1)
    det = a[0] * a[0] + a[1] * a[1] - b[0] * b[0] - b[1] * b[1]
    if det == 0:
        raise JetError("not invertible")
    # L^-1(W) = (conj(a) W - b Wbar) / det
    ca = (a[0] / det, -a[1] / det)
    cb = (-b[0] / det, -b[1] / det)

    def linv(w):
        return K.add(K.scale(w, ca), K.scale(K.conj_swap(w), cb))

    nonlin = {k: v for k, v in f.items() if k[0] + k[1] >= 2}
    w = {(1, 0, 0): (ONE, ZERO)}
    h = linv(w)
    for _ in range(n - 1):
        if not nonlin:
            break
        h = linv(K.sub(w, K.substitute(nonlin, h, K.conj_swap(h), n)))
    return PlaneJet(SmoothJet.from_raw(n, "Z", h))


def as_map(G):
    """Accept a VPlusJet or PlaneJet for the complex-only calculus."""
    if isinstance(G, (VPlusJet, PlaneJet)):
        return G
    raise TypeError(f"expected a VPlusJet or PlaneJet, got {type(G).__name__}")


def rat_coeffs(order: int, coeffs: Dict[Tuple[int, int], object]) -> SmoothJet:
    """Convenience: real XY jet from ``{(p, q): rational-like}``."""
    return SmoothJet(order, "XY", {pq: rat(c) for pq, c in coeffs.items()})
