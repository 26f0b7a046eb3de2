"""Jets of multi-valued germs built from ``G ln G``.

A :class:`LogLaurentGerm` is a finite sum

    sum c_{pq} Z_mu^p Zbar_mu^q  +  A(Z_mu, Zbar_mu) ln Z_mu  +  B ln Zbar_mu

with ``p, q`` allowed to be negative (down to ``-P``) and ``A, B`` smooth
jets.  Two germs differ by a smooth function exactly when their
:class:`SingularPart` (negative-exponent terms plus both log coefficients)
agree, which is how admissibility is decided.

The expansion used for ``G ln G`` writes ``G = Z_mu + w`` with ``w`` the part
of degree at least two and ``u = w / Z_mu``::

    G ln G = G ln Z_mu + Z_mu (1 + u) ln(1 + u)
           = G ln Z_mu + w + sum_{l>=1} (-1)^(l-1) / (l (l+1)) * w^(l+1) Z_mu^(-l)

Every ``l``-term has total degree at least ``l + 2``, so ``l <= N - 2``
suffices at order ``N``.
"""

from __future__ import annotations

from collections import Counter
from typing import Dict, List, Optional, Sequence

from gmpy2 import mpq

from . import _kernel as K
from .coeffring import GaussRational, PiGaussCoeff
from .jet import (Mu, SmoothJet, as_map, mu_inverse_substitution, mu_substitution,
                  to_basis)

ONE, ZERO, HALF = K.ONE, K.ZERO, K.HALF
_INV_2I = (ZERO, -HALF)


class GermError(ValueError):
    pass


def log_coefficient(l: int):
    """Coefficient of ``w^(l+1) Z^(-l)`` in ``Z (1+u) ln(1+u)``."""
    return mpq((-1) ** (l - 1), l * (l + 1))


class SingularPart:
    """Negative-exponent terms and log coefficients of a germ."""

    __slots__ = ("order", "mu", "neg_terms", "lnz", "lnzbar", "note")

    def __init__(self, order: int, mu: Mu, neg_terms: Dict, lnz: SmoothJet,
                 lnzbar: SmoothJet, note: str = ""):
        self.order = order
        self.mu = mu
        self.neg_terms = K.clean(neg_terms)
        self.lnz = lnz
        self.lnzbar = lnzbar
        self.note = note

    @classmethod
    def empty(cls, order: int, mu: Optional[Mu] = None) -> "SingularPart":
        mu = mu if mu is not None else Mu(0)
        zero = SmoothJet(order, mu)
        return cls(order, mu, {}, zero, zero)

    def is_empty(self) -> bool:
        return not self.neg_terms and self.lnz.is_zero() and self.lnzbar.is_zero()

    def __bool__(self):
        return not self.is_empty()

    def coeff(self, p: int, q: int) -> PiGaussCoeff:
        return PiGaussCoeff._from_raw({k: v for (a, b, k), v in self.neg_terms.items()
                                       if (a, b) == (p, q)})

    def neg_coeffs(self) -> Dict:
        out: Dict = {}
        for (p, q, k), v in self.neg_terms.items():
            out.setdefault((p, q), {})[k] = v
        return {pq: PiGaussCoeff._from_raw(t) for pq, t in sorted(out.items())}

    def __eq__(self, other):
        if not isinstance(other, SingularPart):
            return NotImplemented
        return (self.order == other.order and self.mu == other.mu
                and self.neg_terms == other.neg_terms
                and self.lnz == other.lnz and self.lnzbar == other.lnzbar)

    def __repr__(self):
        if self.is_empty():
            return f"SingularPart(order={self.order}, empty)"
        return (f"SingularPart(order={self.order}, mu={self.mu}, neg={self.neg_coeffs()}, "
                f"lnz={self.lnz}, lnzbar={self.lnzbar})")


class LogLaurentGerm:
    """Laurent-log jet in the ``(Z_mu, Zbar_mu)`` basis.

    ``laurent`` is a raw map ``{(p, q, pi_power): (re, im)}``.
    ``experimental`` marks germs whose smooth part is not exact (see
    :func:`admissibility_difference`).
    """

    __slots__ = ("order", "mu", "laurent", "lnz", "lnzbar", "depth", "experimental")

    def __init__(self, order: int, mu: Mu, laurent=None, lnz: Optional[SmoothJet] = None,
                 lnzbar: Optional[SmoothJet] = None, depth: Optional[int] = None,
                 experimental: bool = False):
        self.order = order
        self.mu = mu
        self.depth = max(order - 2, 0) if depth is None else depth
        raw = K.clean({k: v for k, v in (laurent or {}).items() if k[0] + k[1] <= order})
        for (p, q, _k) in raw:
            if p < -self.depth or q < -self.depth:
                raise GermError(f"Laurent exponent ({p},{q}) exceeds depth {self.depth}")
        self.laurent = raw
        zero = SmoothJet(order, mu)
        self.lnz = zero if lnz is None else self._own(lnz)
        self.lnzbar = zero if lnzbar is None else self._own(lnzbar)
        self.experimental = experimental

    def _own(self, f: SmoothJet) -> SmoothJet:
        if f.order != self.order:
            raise GermError("order mismatch")
        return to_basis(f, self.mu)

    @classmethod
    def of_smooth(cls, f: SmoothJet, mu: Optional[Mu] = None) -> "LogLaurentGerm":
        mu = mu if mu is not None else (f.basis if isinstance(f.basis, Mu) else Mu(0))
        g = to_basis(f, mu)
        return cls(f.order, mu, dict(g.raw))

    # structure ------------------------------------------------------------
    def _like(self, other: "LogLaurentGerm"):
        if not isinstance(other, LogLaurentGerm):
            raise TypeError("expected a LogLaurentGerm")
        if other.order != self.order:
            raise GermError(f"order mismatch: {self.order} vs {other.order}")
        if other.mu != self.mu:
            raise GermError(f"mu mismatch: {self.mu} vs {other.mu}")

    def _new(self, laurent, lnz, lnzbar, experimental=None) -> "LogLaurentGerm":
        return LogLaurentGerm(self.order, self.mu, laurent, lnz, lnzbar, self.depth,
                              self.experimental if experimental is None else experimental)

    def __add__(self, other):
        self._like(other)
        return self._new(K.add(self.laurent, other.laurent), self.lnz + other.lnz,
                         self.lnzbar + other.lnzbar, self.experimental or other.experimental)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._new(K.neg(self.laurent), -self.lnz, -self.lnzbar)

    def scale(self, c) -> "LogLaurentGerm":
        craw = PiGaussCoeff.coerce(c)._raw()
        return self._new(K.scale_pi(self.laurent, craw), self.lnz.scale(c), self.lnzbar.scale(c))

    def conj(self) -> "LogLaurentGerm":
        return self._new(K.conj_swap(self.laurent), self.lnzbar.conj(), self.lnz.conj())

    def is_real(self) -> bool:
        return self == self.conj()

    def __eq__(self, other):
        if not isinstance(other, LogLaurentGerm):
            return NotImplemented
        return (self.order == other.order and self.mu == other.mu
                and self.laurent == other.laurent and self.lnz == other.lnz
                and self.lnzbar == other.lnzbar)

    def coeff(self, p: int, q: int) -> PiGaussCoeff:
        return PiGaussCoeff._from_raw({k: v for (a, b, k), v in self.laurent.items()
                                       if (a, b) == (p, q)})

    def __repr__(self):
        return (f"LogLaurentGerm(order={self.order}, mu={self.mu}, "
                f"laurent={len(self.laurent)} terms, lnz={self.lnz}, lnzbar={self.lnzbar})")

    def smooth_part(self) -> SmoothJet:
        """The non-negative Laurent terms as a jet in the ``Z_mu`` basis."""
        raw = {k: v for k, v in self.laurent.items() if k[0] >= 0 and k[1] >= 0}
        return SmoothJet.from_raw(self.order, self.mu, raw)


def _check_order(G, N: Optional[int]) -> int:
    if N is None:
        return G.order
    if N != G.order:
        raise GermError(f"order mismatch: jet has order {G.order}, requested {N}")
    return N


def expand_raw(gc_mu: Dict, n: int) -> Dict:
    """Laurent terms of ``G ln G - G ln Z_mu`` from ``G_C`` in its own basis."""
    w = {k: v for k, v in gc_mu.items() if k[0] + k[1] >= 2}
    out = dict(w)
    if not w:
        return out
    power = w
    for l in range(1, n - 1):
        power = K.mul(power, w, n + l)
        if not power:
            break
        term = K.scale(K.shift(power, -l, 0), (log_coefficient(l), ZERO))
        out = K.add(out, term)
    return K.truncate(out, n)


def expand_g_ln_g(G, mu: Optional[Mu] = None, N: Optional[int] = None) -> LogLaurentGerm:
    """The germ jet of ``G ln G`` in the ``Z_mu`` basis.

    ``mu`` must be the first-order invariant of ``G``; the split into the
    linear part ``Z_mu`` and the rest depends on it.
    """
    G = as_map(G)
    n = _check_order(G, N)
    own = G.mu()
    if mu is None:
        mu = own
    elif own != mu:
        raise GermError(f"mu mismatch: G has first-order invariant {own}, got {mu}")
    gc = G.complex_in(mu)
    return LogLaurentGerm(n, mu, expand_raw(gc.raw, n), lnz=gc)


def im_germ(f: LogLaurentGerm) -> LogLaurentGerm:
    """``(f - conj f) / (2i)``."""
    d = f - f.conj()
    return d._new(K.scale(d.laurent, _INV_2I), d.lnz.scale(_gauss(_INV_2I)),
                  d.lnzbar.scale(_gauss(_INV_2I)))


def _gauss(pair):
    return GaussRational(*pair)


def singular_part(f: LogLaurentGerm) -> SingularPart:
    neg = {k: v for k, v in f.laurent.items() if k[0] < 0 or k[1] < 0}
    return SingularPart(f.order, f.mu, neg, f.lnz, f.lnzbar,
                        "experimental" if f.experimental else "")


def is_smooth(f: LogLaurentGerm) -> bool:
    return singular_part(f).is_empty()


def im_potential(G, mu: Mu, n: int) -> LogLaurentGerm:
    """``Im(G ln G - G)`` as a germ."""
    germ = expand_g_ln_g(G, mu, n)
    germ = germ - LogLaurentGerm.of_smooth(G.complex_in(mu), mu)
    return im_germ(germ)


# --- tuples --------------------------------------------------------------------

def _key(G):
    return frozenset(G.complex().raw.items())


def cancel_common(tup: Sequence, tup2: Sequence):
    """Remove entries common to both tuples, with multiplicity."""
    c1 = Counter(_key(G) for G in tup)
    c2 = Counter(_key(G) for G in tup2)
    common = c1 & c2
    left, right = [], []
    budget = Counter(common)
    for G in tup:
        k = _key(G)
        if budget[k]:
            budget[k] -= 1
        else:
            left.append(G)
    budget = Counter(common)
    for G in tup2:
        k = _key(G)
        if budget[k]:
            budget[k] -= 1
        else:
            right.append(G)
    return left, right


def _sum_raw(tup) -> Dict:
    raw: Dict = {}
    for G in tup:
        raw = K.add(raw, G.complex().raw)
    return raw


def common_mu(tup: Sequence) -> Optional[Mu]:
    mus = {G.mu() for G in tup}
    return mus.pop() if len(mus) == 1 else None


def _prepare(tup, tup2, mu, N):
    tup = [as_map(G) for G in tup]
    tup2 = [as_map(G) for G in tup2]
    if len(tup) != len(tup2):
        raise GermError(f"length mismatch: {len(tup)} vs {len(tup2)}")
    if not tup:
        raise GermError("empty tuples")
    n = N if N is not None else tup[0].order
    for G in tup + tup2:
        if G.order != n:
            raise GermError(f"order mismatch: {G.order} vs {n}")
    return tup, tup2, n


def difference_germ(tup, tup2, mu: Optional[Mu] = None, N: Optional[int] = None,
                    experimental: bool = False) -> LogLaurentGerm:
    """``sum Im(G' ln G' - G') - sum Im(G ln G - G)`` after cancelling the
    entries the two tuples share."""
    tup, tup2, n = _prepare(tup, tup2, mu, N)
    left, right = cancel_common(tup, tup2)
    rest = left + right
    if not rest:
        return LogLaurentGerm(n, mu if mu is not None else Mu(0))
    if mu is not None:
        for G in rest:
            if G.mu() != mu:
                if not experimental:
                    raise GermError(f"mu mismatch: entry has {G.mu()}, expected {mu}")
    else:
        mu = common_mu(rest)
        if mu is None:
            if not experimental:
                raise GermError("mu mismatch: entries have different first-order invariants")
            mu = rest[0].mu()
    total = LogLaurentGerm(n, mu)
    for sign, part in ((1, right), (-1, left)):
        for G in part:
            if G.mu() == mu:
                term = im_potential(G, mu, n)
            else:
                term = _rebased_potential(G, mu, n)
            total = total + term if sign > 0 else total - term
    return total


def admissibility_difference(tup, tup2, mu: Optional[Mu] = None, N: Optional[int] = None,
                             experimental: bool = False) -> SingularPart:
    """Singular part of ``sum Im(G' ln G' - G') - sum Im(G ln G - G)``.

    Empty iff the tuples are affine admissible at order ``N``.  Entries the
    tuples share cancel exactly whatever their invariants.  If the remaining
    second components have different sums the ``ln|Z|`` coefficient cannot
    vanish for any choice of invariants, so that verdict is reported even
    when the invariants differ.
    """
    tup, tup2, n = _prepare(tup, tup2, mu, N)
    left, right = cancel_common(tup, tup2)
    if not left and not right:
        return SingularPart.empty(n, mu)
    rest_mu = mu if mu is not None else common_mu(left + right)
    if rest_mu is None or any(G.mu() != rest_mu for G in left + right):
        diff = K.sub(_sum_raw(right), _sum_raw(left))
        if diff and not experimental:
            lnz = SmoothJet.from_raw(n, "Z", K.scale(diff, _INV_2I))
            return SingularPart(n, Mu(0), {}, lnz, lnz.conj().scale(-1),
                                "sums differ; invariants not common, log part in Z basis")
    return singular_part(difference_germ(tup, tup2, mu, n, experimental))


def smooth_difference(tup, tup2, mu: Optional[Mu] = None, N: Optional[int] = None) -> SmoothJet:
    """The smooth function ``sum Im(G' ln G' - G') - sum Im(G ln G - G)`` as
    a real XY jet.  Raises if the tuples are not admissible."""
    germ = difference_germ(tup, tup2, mu, N)
    sp = singular_part(germ)
    if not sp.is_empty():
        raise GermError("not admissible: the difference has a singular part")
    if germ.experimental:
        raise GermError("smooth part is not exact for heterogeneous invariants")
    return to_basis(germ.smooth_part(), "XY")


# --- heterogeneous invariants (experimental) -------------------------------------

def _rebased_potential(G, mu0: Mu, n: int) -> LogLaurentGerm:
    """``Im(G ln G - G)`` for ``G`` with invariant ``mu1`` re-expressed in the
    ``Z_mu0`` basis, modulo smooth functions.

    ``Z_mu1 = alpha Z_mu0 + beta Zbar_mu0`` so ``Z_mu1^(-l)`` and
    ``ln Z_mu1`` expand in the degree-0 ratio ``r = Zbar_mu0 / Z_mu0``.  The
    ratio series is cut at ``r^P`` and ``ln alpha`` (times a smooth factor)
    is dropped, so only the singular part is meaningful.
    """
    mu1 = G.mu()
    depth = max(n - 2, 0)
    gc1 = G.complex_in(mu1).raw
    lau1 = expand_raw(gc1, n)
    # Z_mu1 in terms of (Z_mu0, Zbar_mu0)
    zm1, zmb1 = mu_substitution(mu1)
    z, zb = mu_inverse_substitution(mu0)
    zm1_0 = K.substitute(zm1, z, zb, 1)
    zmb1_0 = K.substitute(zmb1, z, zb, 1)
    alpha = K.coeff(zm1_0, 1, 0)
    ratio = K.scale(K.coeff(zm1_0, 0, 1), K.cinv(alpha))
    big = n + 2 * depth + 2
    out: Dict = {}
    for (p, q, k), c in lau1.items():
        if p >= 0:
            mono = K.mul(K.powers(zm1_0, p, big)[p], K.powers(zmb1_0, q, big)[q], big)
            out = K.add(out, K.scale_pi(mono, {k: c}))
            continue
        l = -p
        # Z_mu1^(-l) = alpha^(-l) Z0^(-l) (1 + ratio Zb0/Z0)^(-l)
        series: Dict = {}
        binom = ONE
        for j in range(depth + 1):
            coef = K.cmul((binom, ZERO), _cpow(ratio, j))
            series = K.add(series, {(-l - j, j, 0): coef})
            binom = binom * (-l - j) / (j + 1)
        series = K.scale(series, _cpow(K.cinv(alpha), l))
        zbq = K.scale_pi(K.powers(zmb1_0, q, big)[q], {k: c})
        out = K.add(out, _laurent_mul(series, zbq))
    # ln Z_mu1 = ln Z0 + ln alpha + ln(1 + ratio r); the middle term is smooth
    gc0 = K.substitute(gc1, zm1_0, zmb1_0, n)
    logser: Dict = {}
    for j in range(1, depth + 1):
        coef = K.cmul((mpq((-1) ** (j - 1), j), ZERO), _cpow(ratio, j))
        logser = K.add(logser, {(-j, j, 0): coef})
    out = K.add(out, _laurent_mul(gc0, logser))
    out = K.sub(out, gc0)
    out = {k: v for k, v in out.items() if k[0] + k[1] <= n
           and k[0] >= -depth - n and k[1] >= -depth - n}
    germ = LogLaurentGerm(n, mu0, {}, lnz=SmoothJet.from_raw(n, mu0, gc0),
                          depth=depth + n, experimental=True)
    germ.laurent = K.clean(out)
    return im_germ(germ)


def _cpow(c, e):
    out = (ONE, ZERO)
    for _ in range(e):
        out = K.cmul(out, c)
    return out


def _laurent_mul(a, b):
    out: Dict = {}
    for (p1, q1, k1), v1 in a.items():
        for (p2, q2, k2), v2 in b.items():
            key = (p1 + p2, q1 + q2, k1 + k2)
            prod = K.cmul(v1, v2)
            if key in out:
                o = out[key]
                prod = (o[0] + prod[0], o[1] + prod[1])
            out[key] = prod
    return K.clean(out)


# --- power sums -------------------------------------------------------------------

def power_sums(values: Sequence, start: int = 2, count: Optional[int] = None) -> List:
    """``[sum_j c_j^e for e in start .. start + count - 1]`` (``count``
    defaults to ``len(values)``)."""
    vals = [GaussRational.coerce(v) for v in values]
    count = len(vals) if count is None else count
    out = []
    for e in range(start, start + count):
        s = GaussRational(0)
        for v in vals:
            s = s + v ** e
        out.append(s)
    return out


def power_sums_vanish(values: Sequence) -> bool:
    """True iff ``sum_j c_j^(l+1) = 0`` for ``l = 1 .. m``."""
    return all(not s for s in power_sums(values))


def power_sum_rigidity(values: Sequence) -> bool:
    """The Vandermonde statement for one tuple: vanishing power sums
    ``p_2 .. p_(m+1)`` force every value to be zero."""
    return (not power_sums_vanish(values)) or all(not v for v in values)


def obstruction_coefficients(germ: LogLaurentGerm, q: int, lmax: Optional[int] = None) -> Dict:
    """``{l: coeff of Z^(-l) Zbar^(q l + q)}`` for ``l = 1 .. lmax``; for a sum
    of potentials whose entries have no pure-antiholomorphic terms below
    degree ``q`` this equals ``sum_j c_l (G_j^(0,q))^(l+1) / (2i)``."""
    lmax = germ.depth if lmax is None else lmax
    out = {}
    for l in range(1, lmax + 1):
        if q * (l + 1) - l <= germ.order:
            out[l] = germ.coeff(-l, q * (l + 1))
    return out
