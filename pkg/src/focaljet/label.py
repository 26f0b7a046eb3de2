"""Focus-focus labels ``[s_j, g_{j,l}]`` and their complete versions.

A label of multiplicity ``m`` is determined by the chain ``g_{j,j+1}`` and
the seed ``s_0``: with ``G_0 = id`` and ``G_{j+1} = (X, g_{j,j+1}) o G_j``,

    g_{j,l} = proj_2(G_l o G_j^-1),    s_j = s_0 o G_j^-1.

Complete labels keep constant terms and compare exactly.  Plain labels have
no constant term and compare modulo ``2 pi Z X``.
"""

from __future__ import annotations

from typing import List, Optional, Sequence

from . import _kernel as K
from .coeffring import PiGaussCoeff, rat
from .jet import JetError, SmoothJet, VPlusJet, Y, compose, group_compose, reflect_x, revert


class LabelError(ValueError):
    pass


def _as_vplus(g: SmoothJet) -> VPlusJet:
    try:
        return VPlusJet(g)
    except JetError as exc:
        raise LabelError(f"not an element of R_+: {exc}") from None


def normalize_mod_2pi_x(s: SmoothJet) -> SmoothJet:
    """Canonical representative modulo ``2 pi Z X``: the pi-part of the
    X-coefficient is moved into ``[0, 2)``."""
    c = K.coeff(s.raw, 1, 0, 1)[0]
    n = int(c.numerator) // (2 * int(c.denominator))
    if n == 0:
        return s
    return s - SmoothJet(s.order, "XY", {(1, 0): PiGaussCoeff.pi(1, 2 * n)})


def equal_mod_2pi_x(a: SmoothJet, b: SmoothJet) -> bool:
    return normalize_mod_2pi_x(a) == normalize_mod_2pi_x(b)


class CompleteFFLabel:
    """Complete focus-focus label: ``ts`` may carry constant terms."""

    mod2pi = False

    def __init__(self, ts: Sequence[SmoothJet], g: Sequence[Sequence[SmoothJet]]):
        ts = list(ts)
        g = [list(row) for row in g]
        m = len(ts)
        if m < 1:
            raise LabelError("multiplicity must be at least 1")
        if len(g) != m or any(len(row) != m for row in g):
            raise LabelError("g must be an m x m matrix")
        n = ts[0].order
        for f in ts + [x for row in g for x in row]:
            if not isinstance(f, SmoothJet) or f.basis != "XY":
                raise LabelError("label entries must be XY-basis jets")
            if f.order != n:
                raise LabelError("label entries must share one order")
        if self.mod2pi:
            ts = [normalize_mod_2pi_x(s) for s in ts]
        self.ts = ts
        self.g = g

    @property
    def m(self) -> int:
        return len(self.ts)

    @property
    def order(self) -> int:
        return self.ts[0].order

    @property
    def s(self) -> List[SmoothJet]:
        return self.ts

    def _eq_s(self, a: SmoothJet, b: SmoothJet) -> bool:
        return equal_mod_2pi_x(a, b) if self.mod2pi else a == b

    def __eq__(self, other):
        if not isinstance(other, CompleteFFLabel) or self.mod2pi != other.mod2pi:
            return NotImplemented
        return (self.m == other.m and self.order == other.order
                and all(self._eq_s(a, b) for a, b in zip(self.ts, other.ts))
                and self.g == other.g)

    def __hash__(self):
        return hash((self.mod2pi, tuple(self.ts), tuple(tuple(r) for r in self.g)))

    def __repr__(self):
        return f"{type(self).__name__}(m={self.m}, order={self.order}, ts0={self.ts[0]})"

    def tuple_maps(self) -> List[VPlusJet]:
        """``G_j = (X, g_{0,j})``."""
        return [VPlusJet(self.g[0][j]) for j in range(self.m)]

    def with_ts(self, ts: Sequence[SmoothJet]) -> "CompleteFFLabel":
        return type(self)(ts, self.g)


class FFLabel(CompleteFFLabel):
    """Focus-focus label: ``s_j`` without constant term, modulo ``2 pi Z X``."""

    mod2pi = True

    def __init__(self, s, g):
        super().__init__(s, g)
        for f in self.ts:
            if f.constant():
                raise LabelError("s_j must have no constant term")


def generate(m: int, chain: Sequence[SmoothJet], seed: SmoothJet, N: Optional[int] = None,
             complete: bool = True) -> CompleteFFLabel:
    """Build the full label from ``g_{j,j+1}`` (``j < m-1``) and ``ts_0``."""
    if m < 1:
        raise LabelError("multiplicity must be at least 1")
    chain = list(chain)
    if len(chain) != m - 1:
        raise LabelError(f"expected {m - 1} chain entries, got {len(chain)}")
    n = seed.order if N is None else N
    if seed.order != n or any(c.order != n for c in chain):
        raise LabelError("order mismatch")
    maps = [VPlusJet.identity(n)]
    for c in chain:
        maps.append(group_compose(_as_vplus(c), maps[-1]))
    inverses = [revert(G) for G in maps]
    g = [[Y(n) if j == l else group_compose(maps[l], inverses[j]).g for l in range(m)]
         for j in range(m)]
    ts = [seed] + [compose(seed, inverses[j]) for j in range(1, m)]
    cls = CompleteFFLabel if complete else FFLabel
    return cls(ts, g)


def extract_generators(label: CompleteFFLabel):
    """``(chain, seed)`` with ``generate`` reproducing a valid label."""
    return [label.g[j][j + 1] for j in range(label.m - 1)], label.ts[0]


def validate(label: CompleteFFLabel) -> List[str]:
    """The violated label relations (empty when the label is valid)."""
    out: List[str] = []
    m, n = label.m, label.order
    vplus = {}
    for j in range(m):
        for l in range(m):
            try:
                vplus[j, l] = VPlusJet(label.g[j][l])
            except JetError as exc:
                out.append(f"g[{j}][{l}] not in R_+: {exc}")
    if isinstance(label, FFLabel):
        for j, s in enumerate(label.ts):
            if s.constant():
                out.append(f"s[{j}] has a constant term")
    if out:
        return out
    ident = Y(n)
    for j in range(m):
        if label.g[j][j] != ident:
            out.append(f"relation 2: g[{j}][{j}] != Y")
    for j in range(m):
        for l in range(m):
            lhs = compose(label.ts[l], vplus[j, l])
            if not label._eq_s(label.ts[j], lhs):
                out.append(f"relation 1: s[{j}] != s[{l}](X, g[{j}][{l}])")
    for j in range(m):
        for l in range(m):
            if j == l:
                continue
            for p in range(m):
                if compose(label.g[l][p], vplus[j, l]) != label.g[j][p]:
                    out.append(f"relation 3: g[{j}][{p}] != g[{l}][{p}](X, g[{j}][{l}])")
    return out


def is_valid(label: CompleteFFLabel) -> bool:
    return not validate(label)


# --- actions -----------------------------------------------------------------------

def z2_action(label: CompleteFFLabel, k: int) -> CompleteFFLabel:
    """``s_j(-X, Y) + k pi X`` and ``g_{j,l}(-X, Y)``."""
    n = label.order
    shift = SmoothJet(n, "XY", {(1, 0): PiGaussCoeff.pi(1, int(k))})
    ts = [reflect_x(s) + shift for s in label.ts]
    g = [[reflect_x(x) for x in row] for row in label.g]
    return type(label)(ts, g)


def is_cyclic(sigma: Sequence[int]) -> bool:
    m = len(sigma)
    r = sigma[0] if m else 0
    return all(sigma[j] == (j + r) % m for j in range(m))


def _check_perm(sigma: Sequence[int], m: int):
    if sorted(sigma) != list(range(m)):
        raise LabelError(f"not a permutation of Z_{m}: {list(sigma)}")


def zm_reindex(label: CompleteFFLabel, sigma: Sequence[int]) -> CompleteFFLabel:
    """``ts'_j = ts_{sigma j}``, ``g'_{j,l} = g_{sigma j, sigma l}``."""
    sigma = list(sigma)
    _check_perm(sigma, label.m)
    ts = [label.ts[sigma[j]] for j in range(label.m)]
    g = [[label.g[sigma[j]][sigma[l]] for l in range(label.m)] for j in range(label.m)]
    return type(label)(ts, g)


def rotation(m: int, r: int) -> List[int]:
    return [(j + r) % m for j in range(m)]


def zr_shift(label: CompleteFFLabel, k: int, b) -> CompleteFFLabel:
    """``ts_j + 2 pi (k X + b)``."""
    if label.mod2pi:
        raise LabelError("zr_shift acts on complete labels")
    n = label.order
    b = rat(b)
    shift = SmoothJet(n, "XY", {(1, 0): PiGaussCoeff.pi(1, 2 * int(k)),
                                (0, 0): PiGaussCoeff.pi(1, 2 * b)})
    return type(label)([s + shift for s in label.ts], label.g)


def to_ff_label(label: CompleteFFLabel) -> FFLabel:
    """Drop constant terms and pass to the quotient by ``2 pi Z X``."""
    ts = [s - SmoothJet(s.order, "XY", {(0, 0): s.constant()}) for s in label.ts]
    return FFLabel(ts, label.g)
