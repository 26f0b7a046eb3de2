"""Semitoric polygon data: corners, ingredient representatives, the Z x R
action and affine comparison of representatives.

Corner convention: at a vertex ``v`` of a counter-clockwise polygon, ``xi_1``
is the primitive direction towards the next vertex and ``xi_2`` towards the
previous one, so that sweeping counter-clockwise from ``xi_1`` to ``xi_2``
passes through the interior.  With this order the usual cut-and-shear fake
corner satisfies ``det(xi_1, T^s xi_2) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence, Tuple

from .affine import EquivalenceCertificate, label_equivalent
from .coeffring import PiGaussCoeff, rat
from .label import CompleteFFLabel, LabelError, validate, zr_shift


class PolygonError(ValueError):
    pass


Point = Tuple  # (Rational, Rational)


def det(u, v):
    return u[0] * v[1] - u[1] * v[0]


def shear(v, s: int):
    """``T^s v`` with ``T = [[1, 0], [1, 1]]``."""
    return (v[0], s * v[0] + v[1])


def is_primitive(v) -> bool:
    a, b = int(v[0]), int(v[1])
    return (a, b) == (v[0], v[1]) and gcd(a, b) == 1


def primitive(v) -> Tuple[int, int]:
    """Primitive integer vector in the direction of a rational vector."""
    x, y = rat(v[0]), rat(v[1])
    if x == 0 and y == 0:
        raise PolygonError("zero vector has no direction")
    den = int(x.denominator) * int(y.denominator)
    a, b = int(x * den), int(y * den)
    g = gcd(a, b)
    return (a // g, b // g)


CATEGORIES = ("delzant", "fake", "hidden")


def classify_corner(xi1, xi2, s: int) -> List[str]:
    """Every category the corner satisfies: ``"delzant"`` if
    ``det(xi1, xi2) = +-1``, ``"fake"`` if ``det(xi1, T^s xi2) = 0`` and
    ``"hidden"`` if ``det(xi1, T^s xi2) = +-1``."""
    for v in (xi1, xi2):
        if not is_primitive(v):
            raise PolygonError(f"not a primitive integer vector: {tuple(v)}")
    if s < 0:
        raise PolygonError("s must be a natural number")
    out = []
    if abs(det(xi1, xi2)) == 1:
        out.append("delzant")
    d = det(xi1, shear(xi2, s))
    if d == 0:
        out.append("fake")
    elif abs(d) == 1:
        out.append("hidden")
    return out


class Polygon:
    """A compact, strictly convex polygon with rational vertices listed
    counter-clockwise."""

    def __init__(self, vertices: Sequence[Sequence]):
        vs = [(rat(x), rat(y)) for x, y in vertices]
        if len(vs) < 3:
            raise PolygonError("a polygon needs at least three vertices")
        n = len(vs)
        for i in range(n):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % n]
            if det((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1])) <= 0:
                raise PolygonError("vertices must be strictly convex and counter-clockwise")
        self.vertices = vs

    def __len__(self):
        return len(self.vertices)

    def canonical(self) -> Tuple:
        i = min(range(len(self.vertices)), key=lambda j: self.vertices[j])
        return tuple(self.vertices[i:] + self.vertices[:i])

    def __eq__(self, other):
        if not isinstance(other, Polygon):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):
        return f"Polygon({[(str(x), str(y)) for x, y in self.vertices]})"

    def edge_vectors(self, i: int):
        """``(xi_1, xi_2)`` at vertex ``i``."""
        n = len(self.vertices)
        v = self.vertices[i]
        nxt, prv = self.vertices[(i + 1) % n], self.vertices[i - 1]
        return (primitive((nxt[0] - v[0], nxt[1] - v[1])),
                primitive((prv[0] - v[0], prv[1] - v[1])))

    def contains_interior(self, p) -> bool:
        n = len(self.vertices)
        for i in range(n):
            a, b = self.vertices[i], self.vertices[(i + 1) % n]
            if det((b[0] - a[0], b[1] - a[1]), (p[0] - a[0], p[1] - a[1])) <= 0:
                return False
        return True

    def transform(self, k: int, b) -> "Polygon":
        b = rat(b)
        return Polygon([(x, k * x + y + b) for x, y in self.vertices])


@dataclass(frozen=True)
class MarkedPoint:
    c: Tuple
    m: int = 1

    def __post_init__(self):
        object.__setattr__(self, "c", (rat(self.c[0]), rat(self.c[1])))
        if int(self.m) < 1:
            raise PolygonError("multiplicity must be at least 1")
        object.__setattr__(self, "m", int(self.m))


class IngredientRep:
    """``(polygon, marked points, complete labels)``."""

    def __init__(self, polygon: Polygon, points: Sequence[MarkedPoint],
                 labels: Sequence[CompleteFFLabel]):
        self.polygon = polygon
        self.points = list(points)
        self.labels = list(labels)

    def __eq__(self, other):
        if not isinstance(other, IngredientRep):
            return NotImplemented
        return (self.polygon == other.polygon and self.points == other.points
                and self.labels == other.labels)

    def __repr__(self):
        return f"IngredientRep({self.polygon}, {self.points})"

    def s_index(self, i: int) -> int:
        x = self.points[i].c[0]
        return sum(p.m for p in self.points if p.c[0] == x)


def validate_ingredient(rep: IngredientRep) -> List[str]:
    """Violated conditions of a complete ingredient representative."""
    out: List[str] = []
    pts = rep.points
    if len(pts) != len(rep.labels):
        out.append("points and labels have different lengths")
        return out
    for i in range(len(pts) - 1):
        if not pts[i].c < pts[i + 1].c:
            out.append(f"lexicographic order: point {i} is not before point {i + 1}")
    for i, (p, lab) in enumerate(zip(pts, rep.labels)):
        if not rep.polygon.contains_interior(p.c):
            out.append(f"point {i} is not in the interior")
        if not isinstance(lab, CompleteFFLabel) or lab.mod2pi:
            out.append(f"label {i} is not a complete label")
            continue
        if lab.m != p.m:
            out.append(f"label {i} has multiplicity {lab.m}, point has {p.m}")
        bad = validate(lab)
        if bad:
            out.append(f"label {i} invalid: {bad[0]}")
        want = PiGaussCoeff.pi(1, 2 * p.c[1])
        for j, ts in enumerate(lab.ts):
            if ts.constant() != want:
                out.append(f"constant term: label {i}, ts[{j}] has {ts.constant()}, "
                           f"expected {want}")
    for vi, v in enumerate(rep.polygon.vertices):
        xi1, xi2 = rep.polygon.edge_vectors(vi)
        on_ray = [i for i, p in enumerate(pts) if p.c[0] == v[0] and v[1] >= p.c[1]]
        if on_ray:
            s = rep.s_index(on_ray[0])
            cats = classify_corner(xi1, xi2, s)
            if "fake" not in cats and "hidden" not in cats:
                out.append(f"corner: vertex {vi} lies on a ray but is neither "
                           f"{s}-fake nor {s}-hidden")
        elif "delzant" not in classify_corner(xi1, xi2, 0):
            out.append(f"corner: vertex {vi} is not Delzant")
    return out


def zr_action_rep(rep: IngredientRep, k: int, b) -> IngredientRep:
    """Shear by ``T^k`` and translate by ``(0, b)``.  The label at ``c`` is
    shifted by ``2 pi (k X + b + k c^1)`` so that its constant term follows
    the new ordinate ``k c^1 + c^2 + b``."""
    b = rat(b)
    k = int(k)
    pts = [MarkedPoint((p.c[0], k * p.c[0] + p.c[1] + b), p.m) for p in rep.points]
    labels = [zr_shift(lab, k, b + k * p.c[0]) for p, lab in zip(rep.points, rep.labels)]
    return IngredientRep(rep.polygon.transform(k, b), pts, labels)


def geometric_witness(rep: IngredientRep, rep2: IngredientRep) -> Optional[Tuple[int, object]]:
    """``(k, b)`` mapping polygon and marked points of ``rep`` onto those of
    ``rep2``, or None.

    The shear keeps abscissae and vertical order, so the lowest vertices at
    the extreme abscissae correspond; ``k`` and ``b`` then follow linearly.
    """
    P, Q = rep.polygon.vertices, rep2.polygon.vertices
    if len(P) != len(Q) or len(rep.points) != len(rep2.points):
        return None

    def extremes(vs):
        left = min(vs)
        right = min(vs, key=lambda v: (-v[0], v[1]))
        return left, right

    (l1, r1), (l2, r2) = extremes(P), extremes(Q)
    if l1[0] != l2[0] or r1[0] != r2[0]:
        return None
    dl, dr = l2[1] - l1[1], r2[1] - r1[1]
    k = (dr - dl) / (r1[0] - l1[0])
    if k.denominator != 1:
        return None
    k = int(k)
    b = dl - k * l1[0]
    if rep.polygon.transform(k, b) != rep2.polygon:
        return None
    moved = [(p.c[0], k * p.c[0] + p.c[1] + b, p.m) for p in rep.points]
    if moved != [(p.c[0], p.c[1], p.m) for p in rep2.points]:
        return None
    return k, b


def rep_orbit_equal(rep: IngredientRep, rep2: IngredientRep) -> Optional[Tuple[int, object]]:
    """A witness ``(k, b)`` with ``zr_action_rep(rep, k, b) == rep2``, or None."""
    w = geometric_witness(rep, rep2)
    if w is None:
        return None
    try:
        moved = zr_action_rep(rep, *w)
    except LabelError:
        return None
    return w if moved.labels == rep2.labels else None


def rep_affine_equivalent(rep: IngredientRep, rep2: IngredientRep, G,
                          N: Optional[int] = None):
    """``(verdict, certificates)``: polygons and points must agree up to the
    Z x R action (applied first), and every node's labels must be affine
    equivalent via ``G`` (one jet for all nodes, or a list per node)."""
    w = geometric_witness(rep, rep2)
    if w is None:
        return False, []
    rep = zr_action_rep(rep, *w)
    Gs = list(G) if isinstance(G, (list, tuple)) else [G] * len(rep.points)
    if len(Gs) != len(rep.points):
        raise PolygonError("one mediating jet per marked point is required")
    certs: List[EquivalenceCertificate] = []
    for lab, lab2, Gi in zip(rep.labels, rep2.labels, Gs):
        certs.append(label_equivalent(lab, lab2, Gi, N))
    return all(c.verdict for c in certs), certs
